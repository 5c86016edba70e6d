#pragma once

#include "gpbnb/kernel.hpp"
#include "gpbnb/lattice.hpp"
#include "gpbnb/types.hpp"

#include <cstdint>
#include <string>

namespace gpbnb {

struct PeakParams {
    Point x_max;
    double f_max = 0.0;
    double c1 = 0.0; // strict lower-envelope curvature
    double c2 = 0.0; // upper-envelope curvature, 0 < c2 < c1
    double rho0 = 0.0;
};

struct Provenance {
    enum class Kind { GpDraw, SyntheticPeak } kind = Kind::GpDraw;
    std::uint64_t seed = 0;   // GpDraw
    PeakParams peak;          // SyntheticPeak
    std::string describe() const;
};

/// Ground-truth objective tabulated on the finest lattice used by a run.
/// Off-support queries are rejected so regret accounting stays exact.
class TabulatedObjective {
public:
    TabulatedObjective(PointList support, Eigen::VectorXd values,
                       Provenance provenance);

    double value_at(const Point& x) const; // InvalidInput off support
    bool on_support(const Point& x) const;

    const PointList& support() const { return support_; }
    const Eigen::VectorXd& values() const { return values_; }
    std::size_t argmax_index() const { return argmax_index_; }
    double max_value() const { return max_value_; }
    const Point& argmax() const { return support_[argmax_index_]; }
    /// Gap between the best and second-best values (0 if a single point).
    double top2_gap() const { return top2_gap_; }
    const Provenance& provenance() const { return provenance_; }

private:
    PointList support_;
    Eigen::VectorXd values_;
    std::vector<std::size_t> order_; // support indices in lex order
    std::size_t argmax_index_ = 0;
    double max_value_ = 0.0;
    double top2_gap_ = 0.0;
    Provenance provenance_;
};

/// Draw f ~ GP(0, k) on the support: values = chol(K + jitter I) z with z
/// from the counter-based generator. Same seed reproduces bitwise.
TabulatedObjective sample_gp_prior(const KernelSpec& kernel,
                                   const PointList& support,
                                   std::uint64_t seed);

/// Tabulate f(x) = f_max - cbar ||x - x_max||^2 with cbar = (c1 + c2)/2,
/// which satisfies the quadratic peak envelope on B(x_max, rho0) by
/// construction. Requires B(x_max, rho0) inside the domain.
TabulatedObjective synthetic_peak(const BoxDomain& domain,
                                  const PeakParams& params,
                                  const PointList& support);

/// Check the quadratic envelope at every support point inside B(x_max, rho0)
/// (strict lower bound off the peak, non-strict upper bound). For a boundary
/// maximizer, checks a nonvanishing finite-difference gradient along the
/// inward normal instead.
bool verify_peak_condition(const TabulatedObjective& obj,
                           const BoxDomain& domain, const Point& x_max,
                           double c1, double c2, double rho0);

} // namespace gpbnb
