#pragma once

#include "gbc/discretize.hpp"

#include <utility>
#include <vector>

namespace gbc {

/// The parametric curve {(x(u_i), u_i)}; a function graph u(x) only while x is increasing.
struct GraphCurve {
    /// (x, u) pairs, ordered by u.
    std::vector<std::pair<double, double>> points;
    double time = 0.0;
    bool monotone_in_x = true;
};

/// Inverse of an increasing x-profile, resampled on target_grid (spanning [-1,1]).
/// Throws NotMonotone once x(., t) has folded over.
Profile x_to_u(const Profile& xp, const Grid& target_grid);

/// Inverse of an increasing u-profile on [-1,1], resampled on target_grid (spanning [a,b]).
Profile u_to_x(const Profile& up, const Grid& target_grid);

/// Never fails; x-values are kept as they are, including excursions beyond [-1,1].
GraphCurve to_graph(const Profile& xp);

} // namespace gbc
