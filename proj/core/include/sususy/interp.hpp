#pragma once

#include <span>
#include <vector>

namespace sususy {

/// Natural cubic spline through (x_i, y_i), x strictly increasing.
/// Queries outside the node range are clamped to the end cubics.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::span<const double> x, std::span<const double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, m_;  // m_ = second derivatives at nodes
};

/// Piecewise quintic Hermite interpolant matching value, first and second
/// derivative at every node; globally C^2 with O(h^6) error. Used where
/// downstream finite differences would amplify the curvature jumps of a
/// lower-order interpolant.
class QuinticHermiteSpline {
  public:
    QuinticHermiteSpline() = default;
    QuinticHermiteSpline(std::span<const double> x, std::span<const double> y,
                         std::span<const double> dy, std::span<const double> d2y);

    double operator()(double x) const;
    double derivative(double x) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, dy_, d2y_;
};

/// Piecewise cubic Hermite interpolant from values and first derivatives
/// at the nodes. C^1, local, and exact for the data it was built from.
class HermiteSpline {
  public:
    HermiteSpline() = default;
    HermiteSpline(std::span<const double> x, std::span<const double> y,
                  std::span<const double> dy);

    double operator()(double x) const;
    double derivative(double x) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

  private:
    std::size_t segment(double x) const;
    std::vector<double> x_, y_, dy_;
};

}  // namespace sususy
