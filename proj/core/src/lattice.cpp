#include "gpbnb/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace gpbnb {

bool BoxDomain::contains(const Point& x, double tol) const {
    if (x.size() != lower.size()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
    return true;
}

void BoxDomain::validate() const {
    if (lower.size() == 0 || lower.size() != upper.size())
        throw InvalidInput("domain: lower/upper must be nonempty and match");
    for (Eigen::Index i = 0; i < lower.size(); ++i)
        if (!(lower[i] < upper[i]))
            throw InvalidInput("domain: lower must be strictly below upper");
}

void DyadicLattice::validate() const {
    domain.validate();
    if (max_depth < 0)
        throw InvalidInput("lattice: max_depth must be nonnegative");
}

std::uint64_t DyadicLattice::size() const {
    const std::uint64_t side = (std::uint64_t{1} << max_depth) + 1;
    std::uint64_t n = 1;
    for (int i = 0; i < domain.dim(); ++i) n *= side;
    return n;
}

int DyadicLattice::depth_for(double delta) const {
    if (!(delta > 0.0)) throw InvalidInput("depth_for: delta must be positive");
    int depth = 0;
    while (cell_diameter(depth) > delta) {
        ++depth;
        if (depth > max_depth)
            throw ResolutionExhausted("lattice depth exceeds max_depth");
    }
    return depth;
}

namespace {

// Visit the grid multi-indices in lexicographic order; the grid point for
// index k at depth m is lower + (upper - lower) * k / 2^m, which is exact in
// binary arithmetic, so nested depths produce bitwise identical coordinates.
template <typename F>
void for_each_grid_point(const BoxDomain& domain, int depth, F&& visit) {
    const int d = domain.dim();
    const std::int64_t side = (std::int64_t{1} << depth) + 1;
    const double denom = static_cast<double>(std::int64_t{1} << depth);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
    Point p(d);
    while (true) {
        for (int i = 0; i < d; ++i)
            p[i] = domain.lower[i] + (domain.upper[i] - domain.lower[i]) *
                                         (static_cast<double>(idx[static_cast<std::size_t>(i)]) / denom);
        visit(p);
        int i = d - 1;
        while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == side) {
            idx[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
}

} // namespace

PointList lattice_points(const DyadicLattice& lat, int depth) {
    lat.validate();
    if (depth < 0 || depth > lat.max_depth)
        throw ResolutionExhausted("lattice_points: depth out of range");
    PointList pts;
    for_each_grid_point(lat.domain, depth,
                        [&](const Point& p) { pts.push_back(p); });
    return pts;
}

PointList cover_points(const DyadicLattice& lat, const Region& region,
                       double delta) {
    lat.validate();
    const int depth = lat.depth_for(delta);
    const double cell = lat.cell_diameter(depth);
    PointList pts;
    for_each_grid_point(lat.domain, depth, [&](const Point& p) {
        const double gap = (p - region.center).norm() - region.radius;
        if (gap <= cell) pts.push_back(p);
    });
    return pts;
}

std::uint64_t covering_number(double rho, double delta, int d) {
    if (!(rho > 0.0) || !(delta > 0.0) || d < 1)
        throw InvalidInput("covering_number: rho, delta, d must be positive");
    const double per_axis = std::ceil(rho * std::sqrt(static_cast<double>(d)) / delta);
    const auto n = static_cast<std::uint64_t>(std::max(1.0, per_axis));
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= n;
    return total;
}

std::optional<FarthestPair> farthest_pair(const PointList& points) {
    if (points.empty()) return std::nullopt;
    PointList sorted = points;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    FarthestPair best{sorted.front(), sorted.front(), 0.0};
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const double dist = (sorted[i] - sorted[j]).norm();
            if (dist > best.distance) best = {sorted[i], sorted[j], dist};
        }
    return best;
}

Region enclosing_ball(const Point& p1, const Point& p2) {
    return {0.5 * (p1 + p2), (p1 - p2).norm()};
}

LatticeConditionReport check_lattice_conditions(const DyadicLattice& lat,
                                                double rho0) {
    lat.validate();
    if (!(rho0 > 0.0))
        throw InvalidInput("check_lattice_conditions: rho0 must be positive");
    LatticeConditionReport report;

    // Nesting: depth-m points must be a subset of depth-(m+1) points.
    report.nesting_ok = true;
    const int probe_max = std::min(lat.max_depth, 3);
    for (int m = 0; m < probe_max && report.nesting_ok; ++m) {
        const PointList coarse = lattice_points(lat, m);
        PointList fine = lattice_points(lat, m + 1);
        std::sort(fine.begin(), fine.end(), lex_less);
        for (const Point& p : coarse) {
            const bool found = std::binary_search(
                fine.begin(), fine.end(), p,
                [](const Point& a, const Point& b) { return lex_less(a, b); });
            if (!found) {
                report.nesting_ok = false;
                break;
            }
        }
    }

    const double ratio = rho0 / lat.domain.diameter();
    report.required_depth =
        static_cast<int>(std::ceil(-std::log2(ratio))) + 1;
    report.fineness_ok = lat.max_depth >= report.required_depth;
    report.note =
        "fineness read as: the lattice admits spacing <= rho0/2 inside the "
        "domain, i.e. max_depth >= ceil(-log2(rho0/diam)) + 1";
    return report;
}

} // namespace gpbnb
