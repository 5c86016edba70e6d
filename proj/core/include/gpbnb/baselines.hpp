#pragma once

#include "gpbnb/bnb.hpp"
#include "gpbnb/gp.hpp"
#include "gpbnb/kernel.hpp"
#include "gpbnb/lattice.hpp"
#include "gpbnb/objective.hpp"
#include "gpbnb/trace.hpp"

#include <utility>

namespace gpbnb {

/// Posterior mean/std over a fixed candidate set, updated in O(|candidates|)
/// per new observation via an incrementally extended Cholesky factor.
/// Prediction-equivalent to GpPosterior on the same data and jitter.
class LatticePredictor {
public:
    LatticePredictor(KernelSpec kernel, PointList candidates,
                     double jitter = GpPosterior::kDefaultJitter);

    void add_observation(const Point& x, double value);

    const Eigen::VectorXd& mean() const { return mean_; }
    Eigen::VectorXd std_dev() const;
    int observations() const { return static_cast<int>(sampled_.size()); }
    const PointList& candidates() const { return candidates_; }

private:
    KernelSpec kernel_;
    PointList candidates_;
    double jitter_;
    PointList sampled_;
    Eigen::MatrixXd chol_;   // growing lower-triangular factor
    Eigen::VectorXd white_;  // L^-1 f
    Eigen::MatrixXd basis_;  // L^-1 K(sampled, candidates), grown row by row
    Eigen::VectorXd mean_;
    Eigen::VectorXd var_;
};

struct UcbBaselineConfig {
    double alpha = 0.1;
    int depth = 0;            // lattice depth of the fixed candidate grid
    DyadicLattice lattice;
    KernelSpec kernel;
    int budget = 1;
    bool allow_resample = false;
    double jitter = GpPosterior::kDefaultJitter;

    void validate() const;
};

/// GP-UCB over the full lattice without any shrinking. Default mode skips
/// already-sampled points (noise-free resampling is informationless); the
/// resample-allowed mode demonstrates the noise-free fixed point instead.
RegretTrace plain_ucb_run(const UcbBaselineConfig& config,
                          const TabulatedObjective& objective);

/// Lipschitz-cone elimination: a candidate is discarded when
/// min_i [f(x_i) + L ||x - x_i||] falls strictly below the incumbent value,
/// so the true argmax is never discarded when f is L-Lipschitz.
std::pair<PointList, PointList>
lipschitz_eliminate(const std::vector<std::pair<Point, double>>& samples,
                    double lipschitz_constant, const PointList& candidates);

/// Shubert-Piyavskii style loop built on lipschitz_eliminate: repeatedly
/// sample the kept candidate with the highest cone upper bound.
RegretTrace lipschitz_run(const DyadicLattice& lattice, int depth,
                          double lipschitz_constant, int budget,
                          const TabulatedObjective& objective);

} // namespace gpbnb
