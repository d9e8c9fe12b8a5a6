#include "sususy/interp.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sususy {

namespace {

std::size_t find_segment(const std::vector<double>& xs, double x) {
    // index i such that xs[i] <= x < xs[i+1], clamped to valid segments
    if (x <= xs.front()) return 0;
    if (x >= xs.back()) return xs.size() - 2;
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    return static_cast<std::size_t>(it - xs.begin()) - 1;
}

void check_nodes(std::span<const double> x, std::size_t n_arrays_equal) {
    if (x.size() < 2) throw std::invalid_argument("interpolation needs at least 2 nodes");
    if (x.size() != n_arrays_equal)
        throw std::invalid_argument("interpolation arrays differ in length");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw std::invalid_argument("interpolation abscissas must be strictly increasing");
}

}  // namespace

CubicSpline::CubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
    check_nodes(x, y.size());
    const std::size_t n = x_.size();
    m_.assign(n, 0.0);
    if (n == 2) return;  // natural spline through two points is a line

    // Thomas algorithm for the natural-spline tridiagonal system.
    std::vector<double> c(n, 0.0), rhs(n, 0.0);
    std::vector<double> diag(n, 1.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        diag[i] = 2.0 * (h0 + h1);
        c[i] = h1;
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    // forward sweep over interior rows; lower entry of row i is h0
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double w = h0 / diag[i - 1];
        diag[i] -= w * c[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = (rhs[i] - c[i] * m_[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

double CubicSpline::operator()(double x) const {
    const std::size_t i = find_segment(x_, x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
    const std::size_t i = find_segment(x_, x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

QuinticHermiteSpline::QuinticHermiteSpline(std::span<const double> x,
                                           std::span<const double> y,
                                           std::span<const double> dy,
                                           std::span<const double> d2y)
    : x_(x.begin(), x.end()),
      y_(y.begin(), y.end()),
      dy_(dy.begin(), dy.end()),
      d2y_(d2y.begin(), d2y.end()) {
    check_nodes(x, y.size());
    if (dy.size() != x.size() || d2y.size() != x.size())
        throw std::invalid_argument("interpolation arrays differ in length");
}

double QuinticHermiteSpline::operator()(double x) const {
    const std::size_t i = find_segment(x_, x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
    const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double h2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
    const double h3 = 10 * t3 - 15 * t4 + 6 * t5;
    const double h4 = -4 * t3 + 7 * t4 - 3 * t5;
    const double h5 = 0.5 * (t3 - 2 * t4 + t5);
    return h0 * y_[i] + h1 * h * dy_[i] + h2 * h * h * d2y_[i] + h3 * y_[i + 1] +
           h4 * h * dy_[i + 1] + h5 * h * h * d2y_[i + 1];
}

double QuinticHermiteSpline::derivative(double x) const {
    const std::size_t i = find_segment(x_, x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    const double g0 = -30 * t2 + 60 * t3 - 30 * t4;
    const double g1 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
    const double g2 = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4);
    const double g3 = 30 * t2 - 60 * t3 + 30 * t4;
    const double g4 = -12 * t2 + 28 * t3 - 15 * t4;
    const double g5 = 0.5 * (3 * t2 - 8 * t3 + 5 * t4);
    return (g0 * y_[i] + g1 * h * dy_[i] + g2 * h * h * d2y_[i] + g3 * y_[i + 1] +
            g4 * h * dy_[i + 1] + g5 * h * h * d2y_[i + 1]) /
           h;
}

HermiteSpline::HermiteSpline(std::span<const double> x, std::span<const double> y,
                             std::span<const double> dy)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), dy_(dy.begin(), dy.end()) {
    check_nodes(x, y.size());
    if (dy.size() != x.size())
        throw std::invalid_argument("interpolation arrays differ in length");
}

std::size_t HermiteSpline::segment(double x) const { return find_segment(x_, x); }

double HermiteSpline::operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * dy_[i] +
           (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * dy_[i + 1];
}

double HermiteSpline::derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y_[i] + (3 * t2 - 4 * t + 1) * h * dy_[i] +
            (-6 * t2 + 6 * t) * y_[i + 1] + (3 * t2 - 2 * t) * h * dy_[i + 1]) /
           h;
}

}  // namespace sususy
