#pragma once

#include "gpbnb/kernel.hpp"
#include "gpbnb/types.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace gpbnb {

/// Minimum-norm RKHS interpolant k(x)^T K^-1 h, returned by GpPosterior::project.
class Interpolant {
public:
    Interpolant(KernelSpec kernel, PointList points, Eigen::VectorXd coeffs)
        : kernel_(std::move(kernel)), points_(std::move(points)),
          coeffs_(std::move(coeffs)) {}

    double operator()(const Point& x) const;

private:
    KernelSpec kernel_;
    PointList points_;
    Eigen::VectorXd coeffs_;
};

/// Exact noise-free GP posterior over T sampled locations.
///
/// Immutable after construction; fit/update return new values. The Gram
/// matrix carries a small diagonal jitter (escalated x10 on factorization
/// failure, up to jitter_max) to keep the noise-free Cholesky stable.
class GpPosterior {
public:
    static constexpr double kDefaultJitter = 1e-10;
    static constexpr double kMaxJitter = 1e-6;

    /// Empty prior: mean 0, variance k(x, x).
    explicit GpPosterior(KernelSpec kernel);

    static GpPosterior fit(const KernelSpec& kernel, PointList points,
                           Eigen::VectorXd values,
                           double jitter = kDefaultJitter);

    /// Refit on the union of old and new data; prediction-equivalent to a
    /// fresh fit (and implemented as one).
    GpPosterior update(const PointList& new_points,
                       const Eigen::VectorXd& new_values) const;

    double predict_mean(const Point& x) const;
    double predict_std(const Point& x) const;

    /// Batch prediction; one triangular solve per probe, vectorized.
    void predict_at(const PointList& probes, Eigen::VectorXd& mean,
                    Eigen::VectorXd& std_dev) const;

    /// ||(1 - P_{1:T}) k(x, .)||_H computed through the projection formula,
    /// expanding the inner product without using idempotency. Algebraically
    /// equal to predict_std; kept as an independent numerical route.
    double residual_norm(const Point& x) const;

    /// Minimum-norm interpolant through (points, h_values).
    Interpolant project(const Eigen::VectorXd& h_values_at_points) const;

    int size() const { return static_cast<int>(points_.size()); }
    const PointList& points() const { return points_; }
    const Eigen::VectorXd& values() const { return values_; }
    const KernelSpec& kernel() const { return kernel_; }
    double jitter() const { return jitter_; }

private:
    KernelSpec kernel_;
    PointList points_;
    Eigen::VectorXd values_;
    Eigen::MatrixXd gram_;          // without jitter
    Eigen::LLT<Eigen::MatrixXd> llt_; // of gram_ + jitter * I
    Eigen::VectorXd alpha_;         // (K + jitter I)^-1 values
    double jitter_ = 0.0;

    Eigen::VectorXd cross_covariance(const Point& x) const;
};

/// Proposition-4 bound on sup sigma_T when the samples form a delta-cover.
inline double interpolation_error_bound(double delta, double q_constant) {
    if (delta < 0.0 || q_constant < 0.0)
        throw InvalidInput("interpolation_error_bound: negative argument");
    return q_constant * delta * delta / 4.0;
}

} // namespace gpbnb
