#include "gpbnb/kernel.hpp"

#include <cmath>

namespace gpbnb {

void KernelSpec::validate() const {
    if (lengthscales.size() == 0)
        throw InvalidInput("kernel: lengthscales must be nonempty");
    for (Eigen::Index i = 0; i < lengthscales.size(); ++i)
        if (!(lengthscales[i] > 0.0))
            throw InvalidInput("kernel: lengthscales must be positive");
    if (!(signal_variance > 0.0))
        throw InvalidInput("kernel: signal_variance must be positive");
}

KernelSpec KernelSpec::squared_exponential(Eigen::VectorXd lengthscales,
                                           double signal_variance) {
    KernelSpec k{KernelFamily::SquaredExponential, std::move(lengthscales),
                 signal_variance};
    k.validate();
    return k;
}

KernelSpec KernelSpec::matern(double nu, Eigen::VectorXd lengthscales,
                              double signal_variance) {
    KernelFamily family;
    if (nu == 2.5) family = KernelFamily::Matern52;
    else if (nu == 3.5) family = KernelFamily::Matern72;
    else
        throw InvalidInput("kernel: Matern nu must be 5/2 or 7/2");
    KernelSpec k{family, std::move(lengthscales), signal_variance};
    k.validate();
    return k;
}

namespace {

// Isotropic profile at scaled distance r (lengthscale already divided out),
// unit signal variance.
double profile(KernelFamily family, double r) {
    switch (family) {
    case KernelFamily::SquaredExponential:
        return std::exp(-0.5 * r * r);
    case KernelFamily::Matern52: {
        const double t = std::sqrt(5.0) * r;
        return (1.0 + t + t * t / 3.0) * std::exp(-t);
    }
    case KernelFamily::Matern72: {
        const double t = std::sqrt(7.0) * r;
        return (1.0 + t + 0.4 * t * t + t * t * t / 15.0) * std::exp(-t);
    }
    }
    throw InvalidInput("kernel: unknown family");
}

// -k~''(0) and k~''''(0) of the unit-lengthscale 1D profile.
// SE:        exp(-r^2/2)                      -> 1, 3
// Matern5/2: (1+t+t^2/3)e^-t, t=sqrt5 r       -> 5/3, 25/5 = ... see below
// Matern7/2: (1+t+2t^2/5+t^3/15)e^-t, t=sqrt7 -> 7/5, 49/5
double neg_second_deriv_at_zero(KernelFamily family) {
    switch (family) {
    case KernelFamily::SquaredExponential: return 1.0;
    case KernelFamily::Matern52: return 5.0 / 3.0;
    case KernelFamily::Matern72: return 7.0 / 5.0;
    }
    throw InvalidInput("kernel: unknown family");
}

double fourth_deriv_at_zero(KernelFamily family) {
    switch (family) {
    case KernelFamily::SquaredExponential: return 3.0;
    case KernelFamily::Matern52: return 25.0;
    case KernelFamily::Matern72: return 49.0 / 5.0;
    }
    throw InvalidInput("kernel: unknown family");
}

} // namespace

double eval(const KernelSpec& kernel, const Point& x, const Point& y) {
    const int d = kernel.dim();
    if (x.size() != d || y.size() != d)
        throw InvalidInput("eval: point dimension does not match kernel");
    double q = 0.0;
    for (int i = 0; i < d; ++i) {
        const double u = (x[i] - y[i]) / kernel.lengthscales[i];
        q += u * u;
    }
    return kernel.signal_variance * profile(kernel.family, std::sqrt(q));
}

Eigen::MatrixXd gram_matrix(const KernelSpec& kernel, const PointList& points) {
    if (points.empty())
        throw InvalidInput("gram_matrix: empty point list");
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        K(i, i) = kernel.signal_variance;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = eval(kernel, points[i], points[j]);
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    return K;
}

double derivative_bound_L(const KernelSpec& kernel) {
    const double c = neg_second_deriv_at_zero(kernel.family);
    const double lmin = kernel.lengthscales.minCoeff();
    return std::sqrt(kernel.signal_variance * c) / lmin;
}

double derivative_bound_Q(const KernelSpec& kernel) {
    const double c = fourth_deriv_at_zero(kernel.family);
    const double lmin = kernel.lengthscales.minCoeff();
    return std::sqrt(kernel.signal_variance * c) / (lmin * lmin);
}

} // namespace gpbnb
