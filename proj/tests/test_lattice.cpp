#include <gpbnb/lattice.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace gpbnb;

namespace {

Point pt1(double x) { return Eigen::VectorXd::Constant(1, x); }

Point pt2(double x, double y) {
    Point p(2);
    p << x, y;
    return p;
}

BoxDomain unit_box(int d) {
    return {Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d)};
}

} // namespace

TEST_CASE("domain validation") {
    CHECK_THROWS_AS((BoxDomain{pt1(1.0), pt1(0.0)}.validate()), InvalidInput);
    CHECK_THROWS_AS((BoxDomain{pt1(0.0), pt1(0.0)}.validate()), InvalidInput);
    CHECK_NOTHROW(unit_box(3).validate());
    CHECK(unit_box(2).diameter() == doctest::Approx(std::sqrt(2.0)));
    CHECK(unit_box(1).contains(pt1(0.5)));
    CHECK_FALSE(unit_box(1).contains(pt1(1.5)));
}

TEST_CASE("lattice sizes and point counts") {
    const DyadicLattice lat1{unit_box(1), 7};
    CHECK(lat1.size() == 129);
    CHECK(lattice_points(lat1, 0).size() == 2);
    CHECK(lattice_points(lat1, 3).size() == 9);

    const DyadicLattice lat2{unit_box(2), 3};
    CHECK(lat2.size() == 81);
    CHECK(lattice_points(lat2, 2).size() == 25);
}

TEST_CASE("lattice points are lex sorted and bitwise nested") {
    const DyadicLattice lat{unit_box(2), 4};
    for (int depth = 0; depth < 4; ++depth) {
        const auto coarse = lattice_points(lat, depth);
        const auto fine = lattice_points(lat, depth + 1);
        CHECK(std::is_sorted(coarse.begin(), coarse.end(), lex_less));
        // every coarse point appears bit-for-bit at the next depth
        for (const Point& p : coarse) {
            const bool found = std::binary_search(fine.begin(), fine.end(), p,
                                                  lex_less);
            CHECK(found);
        }
    }
}

TEST_CASE("depth_for picks the coarsest delta-fine depth") {
    const DyadicLattice lat{unit_box(1), 5};
    CHECK(lat.cell_diameter(0) == doctest::Approx(1.0));
    CHECK(lat.depth_for(1.0) == 0);
    CHECK(lat.depth_for(0.5) == 1);
    CHECK(lat.depth_for(0.3) == 2);
    CHECK(lat.depth_for(1.0 / 32.0) == 5);
    CHECK_THROWS_AS(lat.depth_for(0.01), ResolutionExhausted);
}

TEST_CASE("cover points contain the dilated region and fall on the grid") {
    const DyadicLattice lat{unit_box(1), 6};
    const Region region{pt1(0.5), 0.2};
    const auto cover = cover_points(lat, region, 0.1);
    CHECK(std::is_sorted(cover.begin(), cover.end(), lex_less));
    const int depth = lat.depth_for(0.1);
    const auto grid = lattice_points(lat, depth);
    const double cell = lat.cell_diameter(depth);
    for (const Point& p : cover) {
        CHECK(std::binary_search(grid.begin(), grid.end(), p, lex_less));
        CHECK((p - region.center).norm() <= region.radius + cell + 1e-12);
    }
    // every grid point within the region (not just dilation) is present
    for (const Point& p : grid)
        if (region.contains(p, lat.domain))
            CHECK(std::binary_search(cover.begin(), cover.end(), p, lex_less));
    // a fine probe in the region is within delta of some cover point
    for (double x = 0.3; x <= 0.7; x += 0.01) {
        double best = 1e9;
        for (const Point& p : cover) best = std::min(best, std::abs(p[0] - x));
        CHECK(best <= 0.1);
    }
}

TEST_CASE("whole-domain region covers the full grid") {
    const DyadicLattice lat{unit_box(2), 3};
    const auto cover = cover_points(lat, Region::whole(lat.domain), 0.5);
    const auto grid = lattice_points(lat, lat.depth_for(0.5));
    CHECK(cover.size() == grid.size());
}

TEST_CASE("covering number formula") {
    CHECK(covering_number(1.0, 0.5, 1) == 2);
    CHECK(covering_number(1.0, 0.5, 2) == 9); // ceil(sqrt(2)/0.5)^2
    CHECK(covering_number(0.3, 0.1, 3) ==
          static_cast<std::uint64_t>(std::pow(
              std::ceil(0.3 * std::sqrt(3.0) / 0.1), 3)));
    CHECK_THROWS_AS(covering_number(1.0, 0.0, 1), InvalidInput);
}

TEST_CASE("farthest pair") {
    SUBCASE("empty set is the termination signal") {
        CHECK_FALSE(farthest_pair({}).has_value());
    }
    SUBCASE("singleton") {
        const auto fp = farthest_pair({pt1(0.3)});
        REQUIRE(fp.has_value());
        CHECK(fp->distance == 0.0);
    }
    SUBCASE("hand case in 2d") {
        const PointList pts = {pt2(0, 0), pt2(1, 0), pt2(0.5, 0.1),
                               pt2(3, 4)};
        const auto fp = farthest_pair(pts);
        REQUIRE(fp.has_value());
        CHECK(fp->distance == doctest::Approx(5.0));
        CHECK(points_equal(fp->p1, pt2(0, 0)));
        CHECK(points_equal(fp->p2, pt2(3, 4)));
    }
    SUBCASE("lex tie break is deterministic") {
        // square: two diagonals tie; the lex-smaller pair must win
        const PointList pts = {pt2(0, 0), pt2(0, 1), pt2(1, 0), pt2(1, 1)};
        const auto fp = farthest_pair(pts);
        REQUIRE(fp.has_value());
        CHECK(points_equal(fp->p1, pt2(0, 0)));
        CHECK(points_equal(fp->p2, pt2(1, 1)));
    }
}

TEST_CASE("enclosing ball uses the full pair distance as radius") {
    const auto ball = enclosing_ball(pt1(0.0), pt1(1.0));
    CHECK(points_equal(ball.center, pt1(0.5)));
    CHECK(ball.radius == doctest::Approx(1.0));
    // generous radius: both endpoints strictly interior
    CHECK((pt1(0.0) - ball.center).norm() < ball.radius);
}

TEST_CASE("lattice condition report") {
    const DyadicLattice lat{unit_box(1), 7};
    const auto report = check_lattice_conditions(lat, 0.1);
    CHECK(report.nesting_ok);
    CHECK(report.fineness_ok);
    CHECK(report.required_depth <= 7);

    const DyadicLattice shallow{unit_box(1), 2};
    const auto bad = check_lattice_conditions(shallow, 0.01);
    CHECK_FALSE(bad.fineness_ok);
}
