#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace stcut {

/// Barycentric point with weight normalised to sum 1 over the reference
/// triangle (multiply by the physical area).
struct TrianglePoint {
  std::array<double, 3> bary;
  double weight;
};

/// Point on [0,1] with weight summing to 1 over the interval.
struct LinePoint {
  double s;
  double weight;
};

/// Symmetric rules exact for polynomials of the given degree (1, 2 or 4).
std::span<const TrianglePoint> triangle_rule(int degree);

/// Gauss-Legendre rule with `points` nodes (1..5) on [0,1].
std::span<const LinePoint> gauss_line_rule(int points);

enum class TimeRule { Trapezoid, Simpson };

TimeRule parse_time_rule(const std::string& name);
std::string to_string(TimeRule rule);

/// Quadrature on one slab (t_prev, t_prev + k]: absolute points and weights,
/// plus the reference coordinate s = (t - t_prev)/k of each point.
struct TimeQuadrature {
  std::vector<double> points;
  std::vector<double> weights;
  std::vector<double> s;
};

TimeQuadrature time_quadrature(TimeRule rule, double t_prev, double k);

}  // namespace stcut
