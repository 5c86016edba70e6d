#pragma once

#include "gpbnb/gp.hpp"
#include "gpbnb/kernel.hpp"
#include "gpbnb/lattice.hpp"
#include "gpbnb/objective.hpp"
#include "gpbnb/trace.hpp"

#include <cstdint>
#include <set>
#include <utility>

namespace gpbnb {

/// beta_T = 2 ln(|L| T^2 / alpha), the confidence-width schedule.
double beta_schedule(std::int64_t t, std::uint64_t lattice_size, double alpha);

struct BnbConfig {
    double alpha = 0.1;       // confidence parameter in (0, 1)
    DyadicLattice lattice;
    KernelSpec kernel;
    int budget = 1;           // max total samples
    double jitter = GpPosterior::kDefaultJitter;

    void validate() const;
};

/// Branch and Bound loop state. delta halves every iteration; beta is
/// recomputed after sampling with |L| fixed to the finest reachable grid.
struct OptimizerState {
    Region region;
    double delta = 0.0;
    int samples = 0; // T
    GpPosterior posterior;
    double beta = 0.0;
    int iteration = 0;
    RegretTrace trace;
    PointList sampled_lex; // sampled points, kept lex-sorted for dedup

    explicit OptimizerState(const BnbConfig& config);

    bool running() const { return trace.reason == StopReason::Running; }
    bool already_sampled(const Point& p) const;
};

/// Halve delta and sample every not-yet-sampled cover point of the region,
/// folding the observations into the posterior.
OptimizerState densify(OptimizerState state, const BnbConfig& config,
                       const TabulatedObjective& objective);

/// Keep the finest-lattice points of the region whose UCB strictly exceeds
/// the best LCB (taken over sampled points plus the next refinement's cover
/// of the region) and replace the region by the enclosing ball of their
/// farthest pair. An empty relevant set marks the state terminal.
std::pair<OptimizerState, PointList> shrink(OptimizerState state,
                                            const BnbConfig& config);

/// Alternate densify and shrink until terminal, resolution exhausted, or
/// budget. Errors still yield the partial trace with the reason recorded.
RegretTrace run_bnb(const BnbConfig& config, const TabulatedObjective& objective);

} // namespace gpbnb
