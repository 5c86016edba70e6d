#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpbnb {

using Point = Eigen::VectorXd;
using PointList = std::vector<Point>;

/// Thrown when an input violates a documented precondition.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when the Gram matrix cannot be factorized even after jitter escalation.
struct SingularGram : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Strict lexicographic order on coordinates; the tie-break rule used everywhere.
inline bool lex_less(const Point& a, const Point& b) {
    const auto n = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return a.size() < b.size();
}

inline bool points_equal(const Point& a, const Point& b, double tol = 0.0) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

} // namespace gpbnb
