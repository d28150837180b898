#pragma once

#include <span>
#include <vector>

namespace gbc {

/// Uniform grid on [a,b] with n cells. Nodes are u_i = ((n-i)a + i b)/n with
/// both endpoints pinned, so a grid with a = -b is exactly symmetric.
class Grid {
public:
    Grid(double a, double b, int n);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int cells() const noexcept { return n_; }
    int size() const noexcept { return n_ + 1; }
    double h() const noexcept { return h_; }
    double node(int i) const noexcept { return nodes_[static_cast<std::size_t>(i)]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    /// Index of the node closest to u (clamped to the grid).
    int nearest(double u) const noexcept;

    bool operator==(const Grid& other) const noexcept {
        return a_ == other.a_ && b_ == other.b_ && n_ == other.n_;
    }

private:
    double a_;
    double b_;
    int n_;
    double h_;
    std::vector<double> nodes_;
};

/// Nodal values of one function on a grid at one time.
struct Profile {
    Grid grid;
    std::vector<double> values;
    double time = 0.0;

    Profile(Grid g, std::vector<double> v, double t = 0.0);

    template <class F>
    static Profile sample(const Grid& g, F&& fn, double t = 0.0) {
        std::vector<double> v(static_cast<std::size_t>(g.size()));
        for (int i = 0; i < g.size(); ++i) v[static_cast<std::size_t>(i)] = fn(g.node(i));
        return Profile(g, std::move(v), t);
    }

    double front() const { return values.front(); }
    double back() const { return values.back(); }
    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

// Span kernels; the Profile overloads below wrap these.
void diff1(std::span<const double> p, double h, std::span<double> out);
void diff2(std::span<const double> p, double h, std::span<double> out);
double trapezoid(std::span<const double> p, double h);

/// Second-order first derivative: centered inside, three-point one-sided at the ends.
Profile diff1(const Profile& p);
/// Three-point second difference inside, four-point one-sided at the ends.
Profile diff2(const Profile& p);
double trapezoid(const Profile& p);

/// Abscissae at which the shape-preserving cubic interpolant of p takes the
/// target values. Throws NotMonotone / OutOfRange.
std::vector<double> invert_monotone(const Profile& p, std::span<const double> targets);

double max_abs(std::span<const double> v);
/// max_i |p_i - q_i|
double max_abs_diff(std::span<const double> p, std::span<const double> q);

} // namespace gbc
