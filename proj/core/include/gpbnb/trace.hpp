#pragma once

#include "gpbnb/types.hpp"

#include <string>
#include <vector>

namespace gpbnb {

enum class StopReason {
    Running,
    RelevantSetEmpty,    // terminal: UCB everywhere submerged under the LCB sup
    ResolutionExhausted, // next cover would exceed max_depth
    BudgetExhausted,
    Error,
};

std::string to_string(StopReason reason);

/// One row per function evaluation, in query order.
struct TraceRow {
    int t = 0;                  // 1-based sample index
    int iter = 0;               // refinement iteration the sample belongs to
    Point x;
    double f = 0.0;
    double regret = 0.0;        // max f - f(x), against the tabulated ground truth
    double cum_regret = 0.0;
    double delta = 0.0;         // lattice resolution when sampled
    double beta = 0.0;          // beta_T with T = t
    double region_radius = 0.0;
    int n_new = 0;              // samples added in this row's iteration
};

/// Per-iteration counters matching the proof bookkeeping:
/// N = samples so far, dN = new samples, rho = region radius,
/// eps = max posterior std over the region's candidate points.
struct IterationStat {
    int iter = 0;
    int n_total = 0;
    int n_new = 0;
    double delta = 0.0;
    double rho = 0.0;
    double eps = 0.0;
};

struct RegretTrace {
    std::vector<TraceRow> rows;
    std::vector<IterationStat> iterations;
    StopReason reason = StopReason::Running;
    std::string error_message;
    /// Whether the ground-truth argmax was ever outside the region after a
    /// shrink (the retention statistic).
    bool argmax_exited_region = false;

    double final_simple_regret() const {
        return rows.empty() ? 0.0 : rows.back().regret;
    }
    double total_cumulative_regret() const {
        return rows.empty() ? 0.0 : rows.back().cum_regret;
    }
};

} // namespace gpbnb
