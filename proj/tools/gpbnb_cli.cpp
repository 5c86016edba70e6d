// Command-line front end: seeded experiment runs, optimizer comparisons,
// bound verification, envelope coverage, and regret-rate fitting.

#include <gpbnb/harness.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

int cmd_run(const std::string& config_path) {
    const auto config = gpbnb::ExperimentConfig::from_file(config_path);
    const auto result = gpbnb::run_experiment(config);
    gpbnb::emit_plot_data(config.output_dir / "plots", result,
                          config.domain.dim());
    for (const auto& s : result.summaries)
        std::printf("rep %d seed %llu: %s, samples=%d, final regret=%.6g, "
                    "cumulative=%.6g\n",
                    s.replication, static_cast<unsigned long long>(s.seed),
                    gpbnb::to_string(s.reason).c_str(), s.samples,
                    s.final_simple_regret, s.total_cumulative_regret);
    std::printf("wrote %s\n", config.output_dir.string().c_str());
    return result.partial_failure ? kExitRuntimeError : kExitOk;
}

int cmd_compare(const std::string& config_path) {
    auto config = gpbnb::ExperimentConfig::from_file(config_path);
    std::vector<gpbnb::OptimizerKind> kinds = {gpbnb::OptimizerKind::Bnb,
                                               gpbnb::OptimizerKind::PlainUcb};
    if (config.lipschitz_constant ||
        config.objective.kind == gpbnb::ObjectiveSpec::Kind::SyntheticPeak)
        kinds.push_back(gpbnb::OptimizerKind::Lipschitz);

    std::vector<std::string> names;
    std::vector<std::uint64_t> seeds;
    std::vector<gpbnb::RegretTrace> traces;
    bool partial = false;
    for (const auto kind : kinds) {
        gpbnb::ExperimentConfig variant = config;
        variant.optimizer = kind;
        const char* name = kind == gpbnb::OptimizerKind::Bnb ? "bnb"
                           : kind == gpbnb::OptimizerKind::PlainUcb
                               ? "plain_ucb"
                               : "lipschitz";
        variant.output_dir = config.output_dir / name;
        const auto result = gpbnb::run_experiment(variant);
        partial = partial || result.partial_failure;
        for (std::size_t rep = 0; rep < result.traces.size(); ++rep) {
            names.emplace_back(name);
            seeds.push_back(gpbnb::replication_seed(variant,
                                                    static_cast<int>(rep)));
            traces.push_back(result.traces[rep]);
            std::printf("%s rep %zu: samples=%zu, cumulative regret=%.6g\n",
                        name, rep, result.traces[rep].rows.size(),
                        result.traces[rep].total_cumulative_regret());
        }
    }
    std::vector<const gpbnb::RegretTrace*> ptrs;
    for (const auto& t : traces) ptrs.push_back(&t);
    std::filesystem::create_directories(config.output_dir);
    gpbnb::write_comparison_csv(config.output_dir / "comparison.csv", names,
                                seeds, ptrs);
    std::printf("wrote %s\n",
                (config.output_dir / "comparison.csv").string().c_str());
    return partial ? kExitRuntimeError : kExitOk;
}

int cmd_verify_variance_bound(const std::vector<double>& lengthscales,
                              const std::vector<double>& lower,
                              const std::vector<double>& upper,
                              std::vector<double> deltas) {
    gpbnb::BoxDomain domain;
    domain.lower = Eigen::Map<const Eigen::VectorXd>(
        lower.data(), static_cast<Eigen::Index>(lower.size()));
    domain.upper = Eigen::Map<const Eigen::VectorXd>(
        upper.data(), static_cast<Eigen::Index>(upper.size()));
    const auto kernel = gpbnb::KernelSpec::squared_exponential(
        Eigen::Map<const Eigen::VectorXd>(
            lengthscales.data(),
            static_cast<Eigen::Index>(lengthscales.size())));
    const auto report = gpbnb::verify_variance_bound(kernel, domain, deltas);
    std::printf("%-10s %-14s %-14s %-10s\n", "delta", "bound", "measured",
                "ratio");
    for (const auto& row : report.rows)
        std::printf("%-10g %-14.8g %-14.8g %-10.6g\n", row.delta, row.bound,
                    row.measured, row.ratio);
    for (std::size_t i = 0; i < report.decay_ratios.size(); ++i)
        std::printf("decay ratio %zu: %.4g\n", i, report.decay_ratios[i]);
    std::printf("within bound: %s\n", report.all_within_bound ? "yes" : "no");
    return report.all_within_bound ? kExitOk : kExitRuntimeError;
}

int cmd_coverage(const std::string& config_path) {
    const auto config = gpbnb::ExperimentConfig::from_file(config_path);
    const auto result = gpbnb::envelope_coverage(config);
    std::printf("replications: %d\n", result.replications);
    std::printf("envelope violation rate: %.4f (%d)\n", result.envelope_rate,
                result.envelope_violations);
    std::printf("retention violation rate: %.4f (%d)\n", result.retention_rate,
                result.retention_violations);
    std::printf("alpha-calibrated threshold: %.4f\n", result.threshold);
    return kExitOk;
}

int cmd_fit_rate(const std::string& trace_path, int dim) {
    const auto trace = gpbnb::read_trace_csv(trace_path);
    const auto fit = gpbnb::fit_rate(trace, dim);
    if (!fit.defined) {
        std::printf("fit undefined: no positive regret after burn-in\n");
        return kExitOk;
    }
    std::printf("A_hat=%.8g tau_hat=%.8g R2=%.8g rows=%d floored=%d\n",
                fit.a_hat, fit.tau_hat, fit.r_squared, fit.used, fit.floored);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic GP bandit optimization toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a seeded experiment batch");
    run->add_option("config", config_path, "JSON experiment config")->required();

    std::string compare_config;
    auto* compare = app.add_subcommand(
        "compare", "Run bnb against baselines with paired seeds");
    compare->add_option("config", compare_config, "JSON experiment config")
        ->required();

    std::vector<double> vb_ls{0.5}, vb_lower{0.0}, vb_upper{1.0},
        vb_deltas{0.2, 0.1, 0.05};
    auto* verify = app.add_subcommand("verify-variance-bound",
                                      "Measure sup sigma against the "
                                      "quadratic cover bound");
    verify->add_option("--lengthscales", vb_ls, "SE kernel lengthscales");
    verify->add_option("--lower", vb_lower, "domain lower corner");
    verify->add_option("--upper", vb_upper, "domain upper corner");
    verify->add_option("--deltas", vb_deltas, "descending cover diameters");

    std::string coverage_config;
    auto* coverage = app.add_subcommand(
        "coverage", "Empirical confidence-envelope violation rate");
    coverage->add_option("config", coverage_config, "JSON experiment config")
        ->required();

    std::string trace_path;
    int fit_dim = 1;
    auto* fit = app.add_subcommand("fit-rate",
                                   "Fit the exponential regret decay shape");
    fit->add_option("trace", trace_path, "trace CSV file")->required();
    fit->add_option("--dim", fit_dim, "search-space dimension");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path);
        if (compare->parsed()) return cmd_compare(compare_config);
        if (verify->parsed())
            return cmd_verify_variance_bound(vb_ls, vb_lower, vb_upper,
                                             vb_deltas);
        if (coverage->parsed()) return cmd_coverage(coverage_config);
        if (fit->parsed()) return cmd_fit_rate(trace_path, fit_dim);
    } catch (const gpbnb::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}
