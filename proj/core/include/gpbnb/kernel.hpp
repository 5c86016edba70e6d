#pragma once

#include "gpbnb/types.hpp"

#include <Eigen/Core>

namespace gpbnb {

enum class KernelFamily {
    SquaredExponential,
    Matern52,
    Matern72,
};

/// Gradient / second-derivative constants of the kernel along its diagonal.
/// L bounds |h'| / ||h||_H, Q bounds |h''| / ||h||_H for any h in the RKHS.
struct DerivativeBounds {
    double L = 0.0;
    double Q = 0.0;
};

/// Stationary anisotropic kernel
///   k(x, x') = signal_variance * k~(q),  q = sum_i (x_i - x'_i)^2 / (2 l_i^2).
/// The anisotropy matrix is diagonal with entries 1/(2 l_i^2).
struct KernelSpec {
    KernelFamily family = KernelFamily::SquaredExponential;
    Eigen::VectorXd lengthscales; // one positive entry per dimension
    double signal_variance = 1.0;

    int dim() const { return static_cast<int>(lengthscales.size()); }

    /// Throws InvalidInput on non-positive lengthscales or signal variance.
    void validate() const;

    static KernelSpec squared_exponential(Eigen::VectorXd lengthscales,
                                          double signal_variance = 1.0);
    static KernelSpec matern(double nu, Eigen::VectorXd lengthscales,
                             double signal_variance = 1.0);
};

/// Covariance between two points. Symmetric; k(x, x) = signal_variance.
double eval(const KernelSpec& kernel, const Point& x, const Point& y);

/// T x T covariance matrix of a point list.
Eigen::MatrixXd gram_matrix(const KernelSpec& kernel, const PointList& points);

/// Closed-form gradient bound constant (Lipschitz constant of unit-norm
/// RKHS elements). For anisotropic kernels this is the per-coordinate maximum.
double derivative_bound_L(const KernelSpec& kernel);

/// Closed-form second-derivative bound constant, from the fourth derivative
/// of the 1D profile at zero lag; per-coordinate maximum in d > 1.
double derivative_bound_Q(const KernelSpec& kernel);

inline DerivativeBounds derivative_bounds(const KernelSpec& kernel) {
    return {derivative_bound_L(kernel), derivative_bound_Q(kernel)};
}

} // namespace gpbnb
