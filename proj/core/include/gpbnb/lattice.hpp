#pragma once

#include "gpbnb/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace gpbnb {

/// Raised when a requested cover would need a lattice depth beyond
/// max_depth; the optimizer treats it as a clean termination cause.
struct ResolutionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoxDomain {
    Point lower;
    Point upper;

    int dim() const { return static_cast<int>(lower.size()); }
    double diameter() const { return (upper - lower).norm(); }
    Point center() const { return 0.5 * (lower + upper); }
    bool contains(const Point& x, double tol = 0.0) const;

    void validate() const;
};

/// Ball B(center, radius); the effective region is its intersection with
/// the domain box.
struct Region {
    Point center;
    double radius = 0.0;

    bool contains(const Point& x, const BoxDomain& domain,
                  double tol = 0.0) const {
        return (x - center).norm() <= radius + tol && domain.contains(x, tol);
    }

    /// Ball around the box center covering every corner.
    static Region whole(const BoxDomain& domain) {
        return {domain.center(), 0.5 * domain.diameter()};
    }
};

/// Dyadic grid family over a box: depth m has (2^m + 1)^d points and each
/// depth's points are a subset of the next (halving the spacing stays in
/// the family).
struct DyadicLattice {
    BoxDomain domain;
    int max_depth = 0;

    void validate() const;

    /// (2^max_depth + 1)^d, the size used in the beta schedule.
    std::uint64_t size() const;

    /// Cell diameter (diagonal norm) at a depth.
    double cell_diameter(int depth) const {
        return domain.diameter() / static_cast<double>(1 << depth);
    }

    /// Smallest depth whose cell diameter is <= delta; throws
    /// ResolutionExhausted past max_depth.
    int depth_for(double delta) const;
};

/// Full grid at a depth, in lexicographic coordinate order.
PointList lattice_points(const DyadicLattice& lat, int depth);

/// Grid points at the coarsest delta-fine depth, restricted to the region
/// dilated by one cell diameter, so every point of region cap domain lies in
/// a cell of diameter <= delta with all vertices returned.
PointList cover_points(const DyadicLattice& lat, const Region& region,
                       double delta);

/// Grid upper bound ceil(rho sqrt(d) / delta)^d on the covering number
/// n_delta(B(0, rho)); an upper bound, not the exact minimum.
std::uint64_t covering_number(double rho, double delta, int d);

struct FarthestPair {
    Point p1;
    Point p2;
    double distance = 0.0;
};

/// Exact diameter pair by exhaustive scan; ties broken lexicographically.
/// Empty input yields nullopt (the empty-region termination signal).
std::optional<FarthestPair> farthest_pair(const PointList& points);

/// Ball centered at the midpoint with radius equal to the full distance
/// (the generous radius of the shrink step, not half of it).
Region enclosing_ball(const Point& p1, const Point& p2);

struct LatticeConditionReport {
    bool nesting_ok = false;       // dyadic refinement stays in the family
    int required_depth = 0;        // fineness needed to sample inside B(x_M, rho0)
    bool fineness_ok = false;
    std::string note;
};

LatticeConditionReport check_lattice_conditions(const DyadicLattice& lat,
                                                double rho0);

} // namespace gpbnb
