#include "gpbnb/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gpbnb {

LatticePredictor::LatticePredictor(KernelSpec kernel, PointList candidates,
                                   double jitter)
    : kernel_(std::move(kernel)), candidates_(std::move(candidates)),
      jitter_(jitter * kernel_.signal_variance) {
    kernel_.validate();
    if (candidates_.empty())
        throw InvalidInput("LatticePredictor: empty candidate set");
    const auto m = static_cast<Eigen::Index>(candidates_.size());
    mean_ = Eigen::VectorXd::Zero(m);
    var_ = Eigen::VectorXd::Constant(m, kernel_.signal_variance);
}

void LatticePredictor::add_observation(const Point& x, double value) {
    for (const Point& p : sampled_)
        if ((p - x).norm() <= 1e-12)
            throw InvalidInput("LatticePredictor: duplicate sample point");
    const auto t = static_cast<Eigen::Index>(sampled_.size());
    const auto m = static_cast<Eigen::Index>(candidates_.size());

    Eigen::VectorXd k_train(t);
    for (Eigen::Index i = 0; i < t; ++i)
        k_train[i] = eval(kernel_, sampled_[static_cast<std::size_t>(i)], x);
    Eigen::VectorXd k_cand(m);
    for (Eigen::Index j = 0; j < m; ++j)
        k_cand[j] = eval(kernel_, candidates_[static_cast<std::size_t>(j)], x);

    Eigen::VectorXd l(t);
    if (t > 0)
        l = chol_.topLeftCorner(t, t)
                .triangularView<Eigen::Lower>()
                .solve(k_train);
    const double pivot2 =
        kernel_.signal_variance + jitter_ - (t > 0 ? l.squaredNorm() : 0.0);
    const double pivot = std::sqrt(std::max(pivot2, jitter_));

    Eigen::RowVectorXd v_new = k_cand.transpose();
    if (t > 0) v_new -= l.transpose() * basis_.topRows(t);
    v_new /= pivot;
    const double c_new =
        (value - (t > 0 ? l.dot(white_.head(t)) : 0.0)) / pivot;

    mean_ += c_new * v_new.transpose();
    var_ -= v_new.array().square().matrix().transpose();

    chol_.conservativeResize(t + 1, t + 1);
    if (t > 0) chol_.block(t, 0, 1, t) = l.transpose();
    chol_(t, t) = pivot;
    white_.conservativeResize(t + 1);
    white_[t] = c_new;
    basis_.conservativeResize(t + 1, m);
    basis_.row(t) = v_new;
    sampled_.push_back(x);
}

Eigen::VectorXd LatticePredictor::std_dev() const {
    return var_.array().max(0.0).sqrt();
}

void UcbBaselineConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidInput("ucb: alpha must lie in (0, 1)");
    if (budget < 1) throw InvalidInput("ucb: budget must be >= 1");
    lattice.validate();
    kernel.validate();
    if (depth < 0 || depth > lattice.max_depth)
        throw InvalidInput("ucb: depth out of lattice range");
}

RegretTrace plain_ucb_run(const UcbBaselineConfig& config,
                          const TabulatedObjective& objective) {
    config.validate();
    const PointList candidates = lattice_points(config.lattice, config.depth);
    const auto m = static_cast<Eigen::Index>(candidates.size());
    LatticePredictor predictor(config.kernel, candidates, config.jitter);
    std::vector<bool> sampled(candidates.size(), false);

    RegretTrace trace;
    double cum = 0.0;
    for (int t = 1; t <= config.budget; ++t) {
        const double beta = beta_schedule(t, static_cast<std::uint64_t>(m),
                                          config.alpha);
        const double sqrt_beta = std::sqrt(beta);
        const Eigen::VectorXd sigma = predictor.std_dev();
        const Eigen::VectorXd ucb = predictor.mean() + sqrt_beta * sigma;

        // Candidates are in lex order, so the first strict maximum realizes
        // the lexicographic tie-break.
        Eigen::Index pick = -1;
        double best = -std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < m; ++j) {
            if (!config.allow_resample && sampled[static_cast<std::size_t>(j)])
                continue;
            if (ucb[j] > best) {
                best = ucb[j];
                pick = j;
            }
        }
        if (pick < 0) break; // every lattice point visited

        const Point& x = candidates[static_cast<std::size_t>(pick)];
        const double f = objective.value_at(x);
        const bool fresh = !sampled[static_cast<std::size_t>(pick)];
        if (fresh) predictor.add_observation(x, f);
        sampled[static_cast<std::size_t>(pick)] = true;

        TraceRow row;
        row.t = t;
        row.iter = t;
        row.x = x;
        row.f = f;
        row.regret = objective.max_value() - f;
        cum += row.regret;
        row.cum_regret = cum;
        row.delta = config.lattice.cell_diameter(config.depth);
        row.beta = beta;
        row.n_new = fresh ? 1 : 0;
        trace.rows.push_back(std::move(row));
    }
    trace.reason = StopReason::BudgetExhausted;
    return trace;
}

std::pair<PointList, PointList>
lipschitz_eliminate(const std::vector<std::pair<Point, double>>& samples,
                    double lipschitz_constant, const PointList& candidates) {
    if (samples.empty())
        throw InvalidInput("lipschitz_eliminate: nonempty samples required");
    if (!(lipschitz_constant > 0.0))
        throw InvalidInput("lipschitz_eliminate: L must be positive");
    double incumbent = -std::numeric_limits<double>::infinity();
    for (const auto& [x, f] : samples) incumbent = std::max(incumbent, f);

    PointList kept, discarded;
    for (const Point& c : candidates) {
        double upper = std::numeric_limits<double>::infinity();
        for (const auto& [x, f] : samples)
            upper = std::min(upper, f + lipschitz_constant * (c - x).norm());
        (upper < incumbent ? discarded : kept).push_back(c);
    }
    return {std::move(kept), std::move(discarded)};
}

RegretTrace lipschitz_run(const DyadicLattice& lattice, int depth,
                          double lipschitz_constant, int budget,
                          const TabulatedObjective& objective) {
    if (budget < 1) throw InvalidInput("lipschitz_run: budget must be >= 1");
    PointList kept = lattice_points(lattice, depth);
    std::vector<std::pair<Point, double>> samples;

    RegretTrace trace;
    double cum = 0.0;
    for (int t = 1; t <= budget; ++t) {
        Point pick;
        bool found = false;
        double best = -std::numeric_limits<double>::infinity();
        for (const Point& c : kept) {
            bool visited = false;
            for (const auto& [x, f] : samples)
                if (points_equal(x, c)) { visited = true; break; }
            if (visited) continue;
            double upper = std::numeric_limits<double>::infinity();
            for (const auto& [x, f] : samples)
                upper = std::min(upper,
                                 f + lipschitz_constant * (c - x).norm());
            if (upper > best) {
                best = upper;
                pick = c;
                found = true;
            }
        }
        if (!found) break;

        const double f = objective.value_at(pick);
        samples.emplace_back(pick, f);
        auto [next_kept, discarded] =
            lipschitz_eliminate(samples, lipschitz_constant, kept);
        kept = std::move(next_kept);

        TraceRow row;
        row.t = t;
        row.iter = t;
        row.x = pick;
        row.f = f;
        row.regret = objective.max_value() - f;
        cum += row.regret;
        row.cum_regret = cum;
        row.delta = lattice.cell_diameter(depth);
        row.n_new = 1;
        trace.rows.push_back(std::move(row));
    }
    trace.reason = StopReason::BudgetExhausted;
    return trace;
}

} // namespace gpbnb
