#include "gbc/transform.hpp"

#include "gbc/errors.hpp"

namespace gbc {

namespace {

Profile invert_onto(const Profile& p, const Grid& target_grid, const char* who) {
    if (target_grid.a() != p.front() || target_grid.b() != p.back())
        throw InvalidArgument(std::string(who) + ": target grid must span the profile's range");
    std::vector<double> inv = invert_monotone(p, target_grid.nodes());
    inv.front() = p.grid.a();
    inv.back() = p.grid.b();
    return Profile(target_grid, std::move(inv), p.time);
}

} // namespace

Profile x_to_u(const Profile& xp, const Grid& target_grid) {
    return invert_onto(xp, target_grid, "x_to_u");
}

Profile u_to_x(const Profile& up, const Grid& target_grid) {
    return invert_onto(up, target_grid, "u_to_x");
}

GraphCurve to_graph(const Profile& xp) {
    GraphCurve curve;
    curve.time = xp.time;
    curve.points.reserve(xp.size());
    for (std::size_t i = 0; i < xp.size(); ++i) {
        curve.points.emplace_back(xp[i], xp.grid.node(static_cast<int>(i)));
        if (i > 0 && !(xp[i] > xp[i - 1])) curve.monotone_in_x = false;
    }
    return curve;
}

} // namespace gbc
