#include "gpbnb/gp.hpp"

#include <cmath>

namespace gpbnb {

double Interpolant::operator()(const Point& x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i)
        acc += coeffs_[static_cast<Eigen::Index>(i)] * eval(kernel_, points_[i], x);
    return acc;
}

GpPosterior::GpPosterior(KernelSpec kernel) : kernel_(std::move(kernel)) {
    kernel_.validate();
}

GpPosterior GpPosterior::fit(const KernelSpec& kernel, PointList points,
                             Eigen::VectorXd values, double jitter) {
    kernel.validate();
    if (static_cast<Eigen::Index>(points.size()) != values.size())
        throw InvalidInput("fit: points and values differ in length");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != kernel.dim())
            throw InvalidInput("fit: point dimension does not match kernel");
        for (std::size_t j = 0; j < i; ++j)
            if ((points[i] - points[j]).norm() <= 1e-12)
                throw InvalidInput("fit: duplicate sample points");
    }

    GpPosterior gp(kernel);
    gp.points_ = std::move(points);
    gp.values_ = std::move(values);
    if (gp.points_.empty()) return gp;

    gp.gram_ = gram_matrix(kernel, gp.points_);
    double j = jitter * kernel.signal_variance;
    const double j_max = kMaxJitter * kernel.signal_variance;
    while (true) {
        Eigen::MatrixXd reg = gp.gram_;
        reg.diagonal().array() += j;
        gp.llt_.compute(reg);
        if (gp.llt_.info() == Eigen::Success) break;
        j *= 10.0;
        if (j > j_max)
            throw SingularGram("fit: Cholesky failed after jitter escalation");
    }
    gp.jitter_ = j;
    gp.alpha_ = gp.llt_.solve(gp.values_);
    return gp;
}

GpPosterior GpPosterior::update(const PointList& new_points,
                                const Eigen::VectorXd& new_values) const {
    if (static_cast<Eigen::Index>(new_points.size()) != new_values.size())
        throw InvalidInput("update: points and values differ in length");
    PointList pts = points_;
    pts.insert(pts.end(), new_points.begin(), new_points.end());
    Eigen::VectorXd vals(values_.size() + new_values.size());
    vals << values_, new_values;
    return fit(kernel_, std::move(pts), std::move(vals));
}

Eigen::VectorXd GpPosterior::cross_covariance(const Point& x) const {
    Eigen::VectorXd k(static_cast<Eigen::Index>(points_.size()));
    for (std::size_t i = 0; i < points_.size(); ++i)
        k[static_cast<Eigen::Index>(i)] = eval(kernel_, points_[i], x);
    return k;
}

double GpPosterior::predict_mean(const Point& x) const {
    if (x.size() != kernel_.dim())
        throw InvalidInput("predict_mean: dimension mismatch");
    if (points_.empty()) return 0.0;
    return cross_covariance(x).dot(alpha_);
}

double GpPosterior::predict_std(const Point& x) const {
    if (x.size() != kernel_.dim())
        throw InvalidInput("predict_std: dimension mismatch");
    if (points_.empty()) return std::sqrt(kernel_.signal_variance);
    const Eigen::VectorXd k = cross_covariance(x);
    const Eigen::VectorXd v = llt_.matrixL().solve(k);
    const double var = kernel_.signal_variance - v.squaredNorm();
    return std::sqrt(std::max(0.0, var));
}

void GpPosterior::predict_at(const PointList& probes, Eigen::VectorXd& mean,
                             Eigen::VectorXd& std_dev) const {
    const auto m = static_cast<Eigen::Index>(probes.size());
    mean.resize(m);
    std_dev.resize(m);
    if (points_.empty()) {
        mean.setZero();
        std_dev.setConstant(std::sqrt(kernel_.signal_variance));
        return;
    }
    const auto n = static_cast<Eigen::Index>(points_.size());
    Eigen::MatrixXd cross(n, m);
    for (Eigen::Index j = 0; j < m; ++j)
        cross.col(j) = cross_covariance(probes[static_cast<std::size_t>(j)]);
    mean = cross.transpose() * alpha_;
    const Eigen::MatrixXd v = llt_.matrixL().solve(cross);
    for (Eigen::Index j = 0; j < m; ++j) {
        const double var = kernel_.signal_variance - v.col(j).squaredNorm();
        std_dev[j] = std::sqrt(std::max(0.0, var));
    }
}

double GpPosterior::residual_norm(const Point& x) const {
    if (x.size() != kernel_.dim())
        throw InvalidInput("residual_norm: dimension mismatch");
    if (points_.empty()) return std::sqrt(kernel_.signal_variance);
    const Eigen::VectorXd k = cross_covariance(x);
    // <(1-P)k(x,.), (1-P)k(x,.)> expanded termwise: k(x,x) - 2 k.w + w.K.w,
    // with K the regularized Gram the projection is defined against. The
    // route is independent of predict_std: LDLT instead of LLT, no
    // idempotency shortcut.
    Eigen::MatrixXd reg = gram_;
    reg.diagonal().array() += jitter_;
    const Eigen::VectorXd w = reg.ldlt().solve(k);
    const double val =
        kernel_.signal_variance - 2.0 * k.dot(w) + w.dot(reg * w);
    return std::sqrt(std::max(0.0, val));
}

Interpolant GpPosterior::project(const Eigen::VectorXd& h_values) const {
    if (h_values.size() != static_cast<Eigen::Index>(points_.size()))
        throw InvalidInput("project: one value per sampled point required");
    if (points_.empty())
        return Interpolant(kernel_, {}, Eigen::VectorXd());
    return Interpolant(kernel_, points_, llt_.solve(h_values));
}

} // namespace gpbnb
