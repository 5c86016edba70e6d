#include "gpbnb/bnb.hpp"

#include <algorithm>
#include <cmath>

namespace gpbnb {

std::string to_string(StopReason reason) {
    switch (reason) {
    case StopReason::Running: return "running";
    case StopReason::RelevantSetEmpty: return "relevant-set-empty";
    case StopReason::ResolutionExhausted: return "resolution-exhausted";
    case StopReason::BudgetExhausted: return "budget-exhausted";
    case StopReason::Error: return "error";
    }
    return "unknown";
}

double beta_schedule(std::int64_t t, std::uint64_t lattice_size, double alpha) {
    if (t < 1 || lattice_size < 1 || !(alpha > 0.0 && alpha < 1.0))
        throw InvalidInput("beta_schedule: need T >= 1, |L| >= 1, alpha in (0,1)");
    const double td = static_cast<double>(t);
    return 2.0 * std::log(static_cast<double>(lattice_size) * td * td / alpha);
}

void BnbConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidInput("bnb: alpha must lie in (0, 1)");
    if (budget < 1) throw InvalidInput("bnb: budget must be >= 1");
    lattice.validate();
    kernel.validate();
    if (kernel.dim() != lattice.domain.dim())
        throw InvalidInput("bnb: kernel and domain dimensions differ");
}

OptimizerState::OptimizerState(const BnbConfig& config)
    : region(Region::whole(config.lattice.domain)),
      delta(config.lattice.domain.diameter()), posterior(config.kernel) {}

bool OptimizerState::already_sampled(const Point& p) const {
    const auto it = std::lower_bound(sampled_lex.begin(), sampled_lex.end(), p,
                                     lex_less);
    return it != sampled_lex.end() && points_equal(*it, p);
}

OptimizerState densify(OptimizerState state, const BnbConfig& config,
                       const TabulatedObjective& objective) {
    if (!state.running()) return state;
    state.iteration += 1;
    state.delta *= 0.5;

    PointList cover;
    try {
        cover = cover_points(config.lattice, state.region, state.delta);
    } catch (const ResolutionExhausted&) {
        state.trace.reason = StopReason::ResolutionExhausted;
        return state;
    }

    PointList new_points;
    Eigen::VectorXd new_values;
    std::vector<double> vals;
    bool budget_hit = false;
    for (const Point& p : cover) {
        if (state.already_sampled(p)) continue;
        if (state.samples + static_cast<int>(new_points.size()) >= config.budget) {
            budget_hit = true;
            break;
        }
        new_points.push_back(p);
        vals.push_back(objective.value_at(p));
    }

    const int n_new = static_cast<int>(new_points.size());
    if (n_new > 0) {
        new_values = Eigen::Map<Eigen::VectorXd>(vals.data(), n_new);
        state.posterior = state.posterior.update(new_points, new_values);
        double cum = state.trace.rows.empty()
                         ? 0.0
                         : state.trace.rows.back().cum_regret;
        for (int i = 0; i < n_new; ++i) {
            TraceRow row;
            row.t = state.samples + i + 1;
            row.iter = state.iteration;
            row.x = new_points[static_cast<std::size_t>(i)];
            row.f = new_values[i];
            row.regret = objective.max_value() - row.f;
            cum += row.regret;
            row.cum_regret = cum;
            row.delta = state.delta;
            row.beta = beta_schedule(row.t, config.lattice.size(), config.alpha);
            row.region_radius = state.region.radius;
            row.n_new = n_new;
            state.trace.rows.push_back(std::move(row));
        }
        state.samples += n_new;
        state.beta =
            beta_schedule(state.samples, config.lattice.size(), config.alpha);
        for (const Point& p : new_points) {
            const auto it = std::lower_bound(state.sampled_lex.begin(),
                                             state.sampled_lex.end(), p, lex_less);
            state.sampled_lex.insert(it, p);
        }
    }

    IterationStat stat;
    stat.iter = state.iteration;
    stat.n_total = state.samples;
    stat.n_new = n_new;
    stat.delta = state.delta;
    stat.rho = state.region.radius;
    state.trace.iterations.push_back(stat);

    if (budget_hit) state.trace.reason = StopReason::BudgetExhausted;
    return state;
}

std::pair<OptimizerState, PointList> shrink(OptimizerState state,
                                            const BnbConfig& config) {
    if (!state.running()) return {std::move(state), {}};
    if (state.samples < 1)
        throw InvalidInput("shrink: requires at least one sample");

    // The LCB supremum is taken over the finite set the algorithm has
    // reasoned about: sampled points plus the next refinement's cover of R
    // (the just-sampled cover has sigma ~ 0 everywhere, so the uncertainty
    // lives at the yet-unsampled midpoints one depth finer). Membership in
    // the relevant set is then tested at every finest-lattice point of R,
    // so the true maximizer can always defend itself through its UCB.
    int depth;
    try {
        depth = config.lattice.depth_for(state.delta);
    } catch (const ResolutionExhausted&) {
        depth = config.lattice.max_depth;
    }
    depth = std::min(depth + 1, config.lattice.max_depth);

    const double tol = 1e-12;
    PointList lcb_points;
    for (const Point& p : cover_points(config.lattice, state.region,
                                       config.lattice.cell_diameter(depth)))
        if (state.region.contains(p, config.lattice.domain, tol))
            lcb_points.push_back(p);
    for (const Point& p : state.sampled_lex)
        if (state.region.contains(p, config.lattice.domain, tol))
            lcb_points.push_back(p);
    std::sort(lcb_points.begin(), lcb_points.end(), lex_less);
    lcb_points.erase(std::unique(lcb_points.begin(), lcb_points.end(),
                                 [](const Point& a, const Point& b) {
                                     return points_equal(a, b);
                                 }),
                     lcb_points.end());

    PointList candidates;
    for (const Point& p : cover_points(
             config.lattice, state.region,
             config.lattice.cell_diameter(config.lattice.max_depth)))
        if (state.region.contains(p, config.lattice.domain, tol))
            candidates.push_back(p);

    if (lcb_points.empty() || candidates.empty()) {
        state.trace.reason = StopReason::RelevantSetEmpty;
        return {std::move(state), {}};
    }

    state.beta =
        beta_schedule(state.samples, config.lattice.size(), config.alpha);
    const double sqrt_beta = std::sqrt(state.beta);

    Eigen::VectorXd mu, sigma;
    state.posterior.predict_at(lcb_points, mu, sigma);
    const double lcb_sup = (mu - sqrt_beta * sigma).maxCoeff();

    state.posterior.predict_at(candidates, mu, sigma);
    PointList relevant;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        if (mu[ii] + sqrt_beta * sigma[ii] > lcb_sup)
            relevant.push_back(candidates[i]);
    }

    if (!state.trace.iterations.empty())
        state.trace.iterations.back().eps = sigma.maxCoeff();

    if (relevant.empty()) {
        state.trace.reason = StopReason::RelevantSetEmpty;
        return {std::move(state), {}};
    }

    const auto pair = farthest_pair(relevant);
    state.region = enclosing_ball(pair->p1, pair->p2);
    if (!state.trace.iterations.empty())
        state.trace.iterations.back().rho = state.region.radius;
    return {std::move(state), std::move(relevant)};
}

RegretTrace run_bnb(const BnbConfig& config, const TabulatedObjective& objective) {
    config.validate();
    OptimizerState state(config);
    try {
        while (state.running()) {
            state = densify(state, config, objective);
            if (!state.running()) break;
            auto [next, relevant] = shrink(std::move(state), config);
            state = std::move(next);
            if (!state.region.contains(objective.argmax(),
                                       config.lattice.domain, 1e-12))
                state.trace.argmax_exited_region = true;
        }
    } catch (const std::exception& e) {
        state.trace.reason = StopReason::Error;
        state.trace.error_message = e.what();
    }
    return std::move(state.trace);
}

} // namespace gpbnb
