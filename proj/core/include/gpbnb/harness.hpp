#pragma once

#include "gpbnb/baselines.hpp"
#include "gpbnb/bnb.hpp"
#include "gpbnb/kernel.hpp"
#include "gpbnb/lattice.hpp"
#include "gpbnb/objective.hpp"
#include "gpbnb/trace.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gpbnb {

enum class OptimizerKind { Bnb, PlainUcb, Lipschitz };

struct ObjectiveSpec {
    enum class Kind { GpDraw, SyntheticPeak } kind = Kind::GpDraw;
    std::vector<std::uint64_t> seeds; // optional explicit GP-draw seeds
    PeakParams peak;                  // SyntheticPeak
};

struct ExperimentConfig {
    BoxDomain domain;
    KernelSpec kernel;
    ObjectiveSpec objective;
    OptimizerKind optimizer = OptimizerKind::Bnb;
    double alpha = 0.1;
    int budget = 100;
    int max_depth = 7;
    int ucb_depth = -1;                     // plain-ucb / lipschitz grid depth; -1 = max_depth
    bool allow_resample = false;            // plain-ucb only
    std::optional<double> lipschitz_constant; // default: certified from peak params
    int replications = 1;
    std::filesystem::path output_dir = "out";
    std::uint64_t master_seed = 0;

    DyadicLattice lattice() const { return {domain, max_depth}; }
    void validate() const;

    /// Parse from JSON text; unknown fields are rejected with their paths.
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::filesystem::path& path);
    std::string to_json_text() const;
};

struct RunSummary {
    int replication = 0;
    std::uint64_t seed = 0;
    std::string optimizer;
    StopReason reason = StopReason::Running;
    double final_simple_regret = 0.0;
    double total_cumulative_regret = 0.0;
    bool envelope_violated = false;
    bool argmax_exited_region = false;
    int samples = 0;
    std::vector<IterationStat> iterations;
};

struct ExperimentResult {
    std::vector<RunSummary> summaries;
    std::vector<RegretTrace> traces;
    bool partial_failure = false;
};

/// Execute the replications (seeds derived from the master seed), write one
/// trace CSV per replication plus summary.csv and metadata.json. Identical
/// config and seed produce byte-identical files.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Build the ground-truth objective for one replication.
TabulatedObjective make_objective(const ExperimentConfig& config,
                                  int replication);
std::uint64_t replication_seed(const ExperimentConfig& config, int replication);

struct FitRateResult {
    bool defined = false;   // false when no positive regret remains post burn-in
    double a_hat = 0.0;     // amplitude of A exp(-tau t / (ln t)^{d/4})
    double tau_hat = 0.0;
    double r_squared = 0.0;
    int floored = 0;        // zero-regret rows floored for the log fit
    int used = 0;           // rows entering the regression
};

/// Least squares of ln r_t against t/(ln t)^{d/4}; burn-in drops t with
/// ln t <= d/4, where that abscissa is still decreasing.
FitRateResult fit_rate_series(const std::vector<int>& ts,
                              const std::vector<double>& regrets, int d);
FitRateResult fit_rate(const RegretTrace& trace, int d);

std::vector<double> cumulative_regret(const RegretTrace& trace);

struct CoverageResult {
    int replications = 0;
    int envelope_violations = 0;  // |f - mu| exceeded sqrt(beta)*sigma somewhere
    int retention_violations = 0; // argmax left the region at some shrink
    double envelope_rate = 0.0;
    double retention_rate = 0.0;
    double threshold = 0.0;       // alpha + 3 sigma binomial slack
};

/// Run M seeded well-specified GP-draw replications of the bnb optimizer and
/// replay each trace, checking |f(x) - mu_{t-1}(x)| <= sqrt(beta_t) sigma_{t-1}(x)
/// at every lattice point before every sample.
CoverageResult envelope_coverage(const ExperimentConfig& config);

/// Check a single trace's envelope over the full lattice (the per-run flag
/// behind CoverageResult).
bool envelope_violated(const RegretTrace& trace,
                       const TabulatedObjective& objective,
                       const KernelSpec& kernel, const DyadicLattice& lattice,
                       double alpha, double jitter = GpPosterior::kDefaultJitter);

struct VarianceBoundRow {
    double delta = 0.0;
    double bound = 0.0;    // Q delta^2 / 4
    double measured = 0.0; // sup sigma_T over the 10x denser probe grid
    double ratio = 0.0;    // measured / bound
};

struct VarianceBoundReport {
    std::vector<VarianceBoundRow> rows;
    std::vector<double> decay_ratios; // measured sup shrink factor per halving
    bool all_within_bound = false;    // ratio <= 1 + 1e-4 everywhere
};

VarianceBoundReport verify_variance_bound(const KernelSpec& kernel,
                                          const BoxDomain& domain,
                                          const std::vector<double>& deltas);

/// Frozen trace schema: t,iter,x,f_x,regret,cum_regret,delta,beta,
/// region_radius,n_new with semicolon-joined 17-digit coordinates.
void write_trace_csv(const std::filesystem::path& path,
                     const RegretTrace& trace);
RegretTrace read_trace_csv(const std::filesystem::path& path);

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<RunSummary>& summaries);

/// Plot-ready series: regret vs t, cumulative regret vs t, the rate-shape
/// coordinates, and region radius vs iteration.
void emit_plot_data(const std::filesystem::path& dir,
                    const ExperimentResult& result, int dim);

/// Join of paired traces for optimizer comparisons, keyed (optimizer, seed, t).
void write_comparison_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& optimizers,
                          const std::vector<std::uint64_t>& seeds,
                          const std::vector<const RegretTrace*>& traces);

std::string format_double(double v); // shortest round-trip-exact decimal

} // namespace gpbnb
