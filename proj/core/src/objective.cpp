#include "gpbnb/objective.hpp"

#include "gpbnb/rng.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gpbnb {

std::string Provenance::describe() const {
    std::ostringstream os;
    if (kind == Kind::GpDraw) {
        os << "gp-draw(seed=" << seed << ", rng=" << kRngId << ")";
    } else {
        os << "synthetic-peak(f_max=" << peak.f_max << ", c1=" << peak.c1
           << ", c2=" << peak.c2 << ", rho0=" << peak.rho0 << ")";
    }
    return os.str();
}

TabulatedObjective::TabulatedObjective(PointList support,
                                       Eigen::VectorXd values,
                                       Provenance provenance)
    : support_(std::move(support)), values_(std::move(values)),
      provenance_(std::move(provenance)) {
    if (support_.empty() ||
        values_.size() != static_cast<Eigen::Index>(support_.size()))
        throw InvalidInput("objective: support/values size mismatch");
    order_.resize(support_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
        return lex_less(support_[a], support_[b]);
    });
    argmax_index_ = 0;
    double second = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < support_.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        if (values_[ii] > values_[static_cast<Eigen::Index>(argmax_index_)]) {
            second = values_[static_cast<Eigen::Index>(argmax_index_)];
            argmax_index_ = i;
        } else if (values_[ii] > second) {
            second = values_[ii];
        }
    }
    max_value_ = values_[static_cast<Eigen::Index>(argmax_index_)];
    top2_gap_ = support_.size() > 1 ? max_value_ - second : 0.0;
}

bool TabulatedObjective::on_support(const Point& x) const {
    const auto it = std::lower_bound(
        order_.begin(), order_.end(), x,
        [&](std::size_t i, const Point& p) { return lex_less(support_[i], p); });
    return it != order_.end() && points_equal(support_[*it], x);
}

double TabulatedObjective::value_at(const Point& x) const {
    const auto it = std::lower_bound(
        order_.begin(), order_.end(), x,
        [&](std::size_t i, const Point& p) { return lex_less(support_[i], p); });
    if (it == order_.end() || !points_equal(support_[*it], x))
        throw InvalidInput("objective: query point is off the tabulated support");
    return values_[static_cast<Eigen::Index>(*it)];
}

TabulatedObjective sample_gp_prior(const KernelSpec& kernel,
                                   const PointList& support,
                                   std::uint64_t seed) {
    if (support.empty())
        throw InvalidInput("sample_gp_prior: empty support");
    Eigen::MatrixXd K = gram_matrix(kernel, support);
    double jitter = 1e-10 * kernel.signal_variance;
    const double jitter_max = 1e-6 * kernel.signal_variance;
    Eigen::LLT<Eigen::MatrixXd> llt;
    while (true) {
        Eigen::MatrixXd reg = K;
        reg.diagonal().array() += jitter;
        llt.compute(reg);
        if (llt.info() == Eigen::Success) break;
        jitter *= 10.0;
        if (jitter > jitter_max)
            throw SingularGram("sample_gp_prior: Gram factorization failed");
    }
    CounterRng rng(seed);
    Eigen::VectorXd z(static_cast<Eigen::Index>(support.size()));
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.next_normal();
    Eigen::VectorXd values = Eigen::MatrixXd(llt.matrixL()) * z;
    Provenance prov;
    prov.kind = Provenance::Kind::GpDraw;
    prov.seed = seed;
    return TabulatedObjective(support, std::move(values), std::move(prov));
}

TabulatedObjective synthetic_peak(const BoxDomain& domain,
                                  const PeakParams& params,
                                  const PointList& support) {
    domain.validate();
    if (!(params.c2 > 0.0) || !(params.c1 > params.c2))
        throw InvalidInput("synthetic_peak: need 0 < c2 < c1");
    if (!(params.rho0 > 0.0))
        throw InvalidInput("synthetic_peak: rho0 must be positive");
    if (params.x_max.size() != domain.lower.size())
        throw InvalidInput("synthetic_peak: x_max dimension mismatch");
    for (Eigen::Index i = 0; i < params.x_max.size(); ++i) {
        if (params.x_max[i] - params.rho0 < domain.lower[i] ||
            params.x_max[i] + params.rho0 > domain.upper[i])
            throw InvalidInput(
                "synthetic_peak: B(x_max, rho0) must lie inside the domain");
    }
    const double cbar = 0.5 * (params.c1 + params.c2);
    Eigen::VectorXd values(static_cast<Eigen::Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) {
        const double r2 = (support[i] - params.x_max).squaredNorm();
        values[static_cast<Eigen::Index>(i)] = params.f_max - cbar * r2;
    }
    Provenance prov;
    prov.kind = Provenance::Kind::SyntheticPeak;
    prov.peak = params;
    return TabulatedObjective(support, std::move(values), std::move(prov));
}

bool verify_peak_condition(const TabulatedObjective& obj,
                           const BoxDomain& domain, const Point& x_max,
                           double c1, double c2, double rho0) {
    if (!obj.on_support(x_max)) return false;
    const double f_max = obj.value_at(x_max);

    bool on_boundary = false;
    Eigen::Index boundary_axis = -1;
    double inward_sign = 1.0;
    const double edge_tol = 1e-12;
    for (Eigen::Index i = 0; i < x_max.size(); ++i) {
        if (std::abs(x_max[i] - domain.lower[i]) <= edge_tol) {
            on_boundary = true;
            boundary_axis = i;
            inward_sign = 1.0;
        } else if (std::abs(x_max[i] - domain.upper[i]) <= edge_tol) {
            on_boundary = true;
            boundary_axis = i;
            inward_sign = -1.0;
        }
    }

    if (on_boundary) {
        // Nonvanishing inward gradient: one-sided difference against the
        // nearest support point that moves strictly inward on the boundary
        // axis while staying put elsewhere.
        double best_dist = std::numeric_limits<double>::infinity();
        double slope = 0.0;
        const auto& support = obj.support();
        for (std::size_t i = 0; i < support.size(); ++i) {
            const Point& p = support[i];
            const double step = inward_sign * (p[boundary_axis] - x_max[boundary_axis]);
            if (step <= edge_tol) continue;
            Point lateral = p - x_max;
            lateral[boundary_axis] = 0.0;
            if (lateral.norm() > edge_tol) continue;
            if (step < best_dist) {
                best_dist = step;
                slope = (obj.values()[static_cast<Eigen::Index>(i)] - f_max) / step;
            }
        }
        return std::isfinite(best_dist) && std::abs(slope) >= 1e-8;
    }

    for (std::size_t i = 0; i < obj.support().size(); ++i) {
        const Point& p = obj.support()[i];
        const double r2 = (p - x_max).squaredNorm();
        if (r2 <= 0.0 || r2 > rho0 * rho0) continue;
        const double v = obj.values()[static_cast<Eigen::Index>(i)];
        if (!(f_max - c1 * r2 < v)) return false;
        if (!(v <= f_max - c2 * r2)) return false;
    }
    return true;
}

} // namespace gpbnb
