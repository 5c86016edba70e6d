#include <gpbnb/objective.hpp>
#include <gpbnb/rng.hpp>

#include <doctest.h>

#include <cmath>

using namespace gpbnb;

namespace {

Point pt1(double x) { return Eigen::VectorXd::Constant(1, x); }

BoxDomain unit_box(int d) {
    return {Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d)};
}

KernelSpec se(int d, double lengthscale) {
    return KernelSpec::squared_exponential(
        Eigen::VectorXd::Constant(d, lengthscale));
}

} // namespace

TEST_CASE("counter rng is stateless in the counter") {
    CounterRng a(42), b(42);
    (void)a.next_u64();
    (void)a.next_u64();
    (void)b.next_u64();
    (void)b.next_u64();
    CHECK(a.next_uniform() == b.next_uniform());
    CHECK(CounterRng(1).next_u64() != CounterRng(2).next_u64());
    CHECK(derive_seed(7, 0) != derive_seed(7, 1));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("uniform and normal draws match their first two moments") {
    CounterRng rng(2718);
    const int n = 200000;
    double usum = 0.0, usq = 0.0, nsum = 0.0, nsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        usum += u;
        usq += u * u;
        const double z = rng.next_normal();
        nsum += z;
        nsq += z * z;
    }
    CHECK(usum / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(usq / n - 0.25 == doctest::Approx(1.0 / 12.0).epsilon(0.02));
    CHECK(std::abs(nsum / n) <= 0.01);
    CHECK(nsq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gp prior draws have the kernel's covariance empirically") {
    const auto kernel = se(1, 0.5);
    const PointList support = {pt1(0.0), pt1(0.25), pt1(0.5)};
    const int reps = 4000;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (int r = 0; r < reps; ++r) {
        const auto draw = sample_gp_prior(kernel, support,
                                          static_cast<std::uint64_t>(r));
        const Eigen::Vector3d v = draw.values();
        mean += v;
        cov += v * v.transpose();
    }
    mean /= reps;
    cov /= reps;
    const auto gram = gram_matrix(kernel, support);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(mean[i]) <= 0.05);
        for (int j = 0; j < 3; ++j)
            CHECK(cov(i, j) == doctest::Approx(gram(i, j)).epsilon(0.08));
    }
}

TEST_CASE("gp prior draws are bitwise reproducible per seed") {
    const auto kernel = se(1, 0.4);
    const DyadicLattice lat{unit_box(1), 5};
    const auto support = lattice_points(lat, 5);
    const auto a = sample_gp_prior(kernel, support, 99);
    const auto b = sample_gp_prior(kernel, support, 99);
    const auto c = sample_gp_prior(kernel, support, 100);
    CHECK(a.values() == b.values());
    CHECK(a.values() != c.values());
    CHECK(a.provenance().kind == Provenance::Kind::GpDraw);
    CHECK(a.provenance().seed == 99);
}

TEST_CASE("tabulated objective lookups and ordering stats") {
    const PointList support = {pt1(0.0), pt1(0.5), pt1(1.0)};
    Eigen::Vector3d vals(0.2, 1.5, -0.3);
    const TabulatedObjective obj(support, vals, {});
    CHECK(obj.value_at(pt1(0.5)) == 1.5);
    CHECK(obj.on_support(pt1(1.0)));
    CHECK_FALSE(obj.on_support(pt1(0.3)));
    CHECK_THROWS_AS(obj.value_at(pt1(0.3)), InvalidInput);
    CHECK(obj.max_value() == 1.5);
    CHECK(points_equal(obj.argmax(), pt1(0.5)));
    CHECK(obj.top2_gap() == doctest::Approx(1.3));
}

TEST_CASE("synthetic peak satisfies its own envelope") {
    const auto domain = unit_box(1);
    const DyadicLattice lat{domain, 6};
    PeakParams peak;
    peak.x_max = pt1(0.5);
    peak.f_max = 2.0;
    peak.c1 = 2.0;
    peak.c2 = 1.0;
    peak.rho0 = 0.3;
    const auto obj = synthetic_peak(domain, peak, lattice_points(lat, 6));
    CHECK(points_equal(obj.argmax(), pt1(0.5)));
    CHECK(obj.max_value() == doctest::Approx(2.0));
    CHECK(verify_peak_condition(obj, domain, peak.x_max, peak.c1, peak.c2,
                                peak.rho0));
    // value check: f = f_max - cbar r^2 with cbar = 1.5
    CHECK(obj.value_at(pt1(0.25)) == doctest::Approx(2.0 - 1.5 * 0.0625));
}

TEST_CASE("synthetic peak rejects a ball poking out of the domain") {
    PeakParams peak;
    peak.x_max = pt1(0.1);
    peak.f_max = 1.0;
    peak.c1 = 2.0;
    peak.c2 = 1.0;
    peak.rho0 = 0.3;
    const DyadicLattice lat{unit_box(1), 4};
    CHECK_THROWS_AS(synthetic_peak(unit_box(1), peak, lattice_points(lat, 4)),
                    InvalidInput);
}

TEST_CASE("peak condition verifier rejects a flat objective") {
    const DyadicLattice lat{unit_box(1), 5};
    const auto support = lattice_points(lat, 5);
    const TabulatedObjective flat(
        support, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(support.size())),
        {});
    CHECK_FALSE(verify_peak_condition(flat, unit_box(1), pt1(0.5), 2.0, 1.0,
                                      0.25));
}
