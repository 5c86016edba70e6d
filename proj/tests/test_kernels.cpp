#include <gpbnb/kernel.hpp>
#include <gpbnb/rng.hpp>

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

using namespace gpbnb;

namespace {

KernelSpec se1(double lengthscale, double sv = 1.0) {
    return KernelSpec::squared_exponential(
        Eigen::VectorXd::Constant(1, lengthscale), sv);
}

Point pt1(double x) { return Eigen::VectorXd::Constant(1, x); }

// Richardson-extrapolated central difference of a symmetric function of one
// lag variable; order controls which even derivative at zero is estimated.
double central_diff_at_zero(const KernelSpec& kernel, int order, double h) {
    auto k = [&](double r) { return eval(kernel, pt1(0.0), pt1(r)); };
    auto stencil = [&](double step) {
        if (order == 2)
            return (k(step) - 2.0 * k(0.0) + k(-step)) / (step * step);
        // fourth derivative
        return (k(2 * step) - 4 * k(step) + 6 * k(0.0) - 4 * k(-step) +
                k(-2 * step)) /
               (step * step * step * step);
    };
    const double c1 = stencil(h);
    const double c2 = stencil(h / 2.0);
    return (4.0 * c2 - c1) / 3.0;
}

// Numerical oracle for L: sqrt of the mixed derivative d_x d_x' k at x = x',
// which for a stationary kernel equals -k~''(0) along the lag.
double oracle_L(const KernelSpec& kernel) {
    return std::sqrt(-central_diff_at_zero(kernel, 2, 1e-3));
}

double oracle_Q(const KernelSpec& kernel) {
    return std::sqrt(central_diff_at_zero(kernel, 4, 3e-3));
}

} // namespace

TEST_CASE("eval basics for the squared exponential") {
    const auto k = se1(1.0);
    CHECK(eval(k, pt1(0.3), pt1(0.3)) == doctest::Approx(1.0));
    CHECK(eval(k, pt1(0.0), pt1(1.0)) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("matern 5/2 closed form") {
    const auto k = KernelSpec::matern(2.5, Eigen::VectorXd::Ones(1));
    CHECK(eval(k, pt1(0.0), pt1(0.0)) == doctest::Approx(1.0));
    const double r = 0.7;
    const double expected =
        (1.0 + std::sqrt(5.0) * r + 5.0 * r * r / 3.0) *
        std::exp(-std::sqrt(5.0) * r);
    CHECK(eval(k, pt1(0.0), pt1(r)) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("matern below nu=2 rejected") {
    CHECK_THROWS_AS(KernelSpec::matern(1.5, Eigen::VectorXd::Ones(1)),
                    InvalidInput);
}

TEST_CASE("dimension mismatch rejected") {
    const auto k = se1(1.0);
    Point p2(2);
    p2 << 0.0, 0.0;
    CHECK_THROWS_AS(eval(k, p2, p2), InvalidInput);
}

TEST_CASE("symmetry and diagonal dominance on random pairs") {
    const auto k = KernelSpec::squared_exponential(
        (Eigen::VectorXd(3) << 0.4, 1.1, 2.0).finished(), 1.7);
    CounterRng rng(42);
    for (int i = 0; i < 10000; ++i) {
        Point a(3), b(3);
        for (int j = 0; j < 3; ++j) {
            a[j] = rng.next_in(-2, 2);
            b[j] = rng.next_in(-2, 2);
        }
        const double kab = eval(k, a, b);
        CHECK(kab == eval(k, b, a)); // exact: same arithmetic both ways
        CHECK(std::abs(kab) <= eval(k, a, a));
    }
}

TEST_CASE("gram matrix entries match eval and are PSD") {
    const auto k = se1(0.7);
    SUBCASE("single point") {
        const auto g = gram_matrix(k, {pt1(0.2)});
        CHECK(g.rows() == 1);
        CHECK(g(0, 0) == doctest::Approx(1.0));
    }
    SUBCASE("coincident points give the rank-deficient all-ones block") {
        const auto g = gram_matrix(k, {pt1(0.5), pt1(0.5)});
        CHECK(g(0, 1) == doctest::Approx(1.0));
        CHECK(g(1, 0) == doctest::Approx(1.0));
    }
    SUBCASE("entrywise oracle on three distinct points") {
        const PointList pts = {pt1(0.0), pt1(0.4), pt1(1.0)};
        const auto g = gram_matrix(k, pts);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(g(i, j) == doctest::Approx(eval(k, pts[i], pts[j])));
    }
    SUBCASE("smallest eigenvalue of random gram matrices") {
        CounterRng rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 5 + static_cast<int>(rng.next_below(46));
            PointList pts;
            for (int i = 0; i < n; ++i) {
                Point p(2);
                p << rng.next_uniform(), rng.next_uniform();
                pts.push_back(p);
            }
            const auto kern = KernelSpec::squared_exponential(
                Eigen::VectorXd::Constant(2, 0.5), 2.0);
            const auto g = gram_matrix(kern, pts);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
            CHECK(es.eigenvalues().minCoeff() >= -1e-8 * kern.signal_variance);
        }
    }
}

TEST_CASE("derivative bound L against the finite-difference oracle") {
    CHECK(derivative_bound_L(se1(1.0)) == doctest::Approx(1.0));
    CHECK(derivative_bound_L(se1(0.5)) == doctest::Approx(2.0));
    CHECK(derivative_bound_L(se1(2.0)) == doctest::Approx(0.5));
    for (const double ls : {0.5, 1.0, 2.0}) {
        const auto k = se1(ls);
        CHECK(derivative_bound_L(k) ==
              doctest::Approx(oracle_L(k)).epsilon(1e-4));
    }
    const auto m52 = KernelSpec::matern(2.5, Eigen::VectorXd::Constant(1, 0.8));
    CHECK(derivative_bound_L(m52) ==
          doctest::Approx(oracle_L(m52)).epsilon(1e-4));
    const auto m72 = KernelSpec::matern(3.5, Eigen::VectorXd::Constant(1, 1.3));
    CHECK(derivative_bound_L(m72) ==
          doctest::Approx(oracle_L(m72)).epsilon(1e-4));
}

TEST_CASE("derivative bound Q against the finite-difference oracle") {
    CHECK(derivative_bound_Q(se1(1.0)) == doctest::Approx(std::sqrt(3.0)));
    CHECK(derivative_bound_Q(se1(0.5)) == doctest::Approx(4.0 * std::sqrt(3.0)));
    for (const double ls : {0.5, 1.0, 2.0}) {
        const auto k = se1(ls);
        CHECK(derivative_bound_Q(k) ==
              doctest::Approx(oracle_Q(k)).epsilon(1e-4));
    }
    const auto m72 = KernelSpec::matern(3.5, Eigen::VectorXd::Ones(1));
    CHECK(derivative_bound_Q(m72) ==
          doctest::Approx(oracle_Q(m72)).epsilon(1e-4));
}

TEST_CASE("signal variance scales L and Q by its square root") {
    const double s = 3.7;
    CHECK(derivative_bound_L(se1(1.0, s)) ==
          doctest::Approx(std::sqrt(s) * derivative_bound_L(se1(1.0))));
    CHECK(derivative_bound_Q(se1(1.0, s)) ==
          doctest::Approx(std::sqrt(s) * derivative_bound_Q(se1(1.0))));
}

TEST_CASE("anisotropic bounds use the tightest coordinate") {
    const auto k = KernelSpec::squared_exponential(
        (Eigen::VectorXd(2) << 0.25, 1.0).finished());
    CHECK(derivative_bound_L(k) == doctest::Approx(4.0));
    CHECK(derivative_bound_Q(k) == doctest::Approx(16.0 * std::sqrt(3.0)));
}
