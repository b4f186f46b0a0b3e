#include "stcut/quadrature.hpp"

#include <cmath>

#include "stcut/error.hpp"

namespace stcut {

namespace {

constexpr TrianglePoint kCentroid[] = {{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 1.0}};

constexpr TrianglePoint kDegree2[] = {
    {{2.0 / 3, 1.0 / 6, 1.0 / 6}, 1.0 / 3},
    {{1.0 / 6, 2.0 / 3, 1.0 / 6}, 1.0 / 3},
    {{1.0 / 6, 1.0 / 6, 2.0 / 3}, 1.0 / 3},
};

// Strang-Fix / Dunavant six point rule.
constexpr double kA = 0.445948490915965;
constexpr double kB = 0.091576213509771;
constexpr double kWA = 0.223381589678011;
constexpr double kWB = 0.109951743655322;
constexpr TrianglePoint kDegree4[] = {
    {{1 - 2 * kA, kA, kA}, kWA}, {{kA, 1 - 2 * kA, kA}, kWA},
    {{kA, kA, 1 - 2 * kA}, kWA}, {{1 - 2 * kB, kB, kB}, kWB},
    {{kB, 1 - 2 * kB, kB}, kWB}, {{kB, kB, 1 - 2 * kB}, kWB},
};

const std::array<std::vector<LinePoint>, 5>& gauss_tables() {
  static const std::array<std::vector<LinePoint>, 5> tables = [] {
    std::array<std::vector<LinePoint>, 5> t;
    t[0] = {{0.5, 1.0}};
    const double g2 = 0.5 / std::sqrt(3.0);
    t[1] = {{0.5 - g2, 0.5}, {0.5 + g2, 0.5}};
    const double g3 = 0.5 * std::sqrt(0.6);
    t[2] = {{0.5 - g3, 5.0 / 18}, {0.5, 8.0 / 18}, {0.5 + g3, 5.0 / 18}};
    const double a4 = std::sqrt(3.0 / 7 - 2.0 / 7 * std::sqrt(1.2));
    const double b4 = std::sqrt(3.0 / 7 + 2.0 / 7 * std::sqrt(1.2));
    const double wa4 = (18 + std::sqrt(30.0)) / 72;
    const double wb4 = (18 - std::sqrt(30.0)) / 72;
    t[3] = {{0.5 - 0.5 * b4, wb4},
            {0.5 - 0.5 * a4, wa4},
            {0.5 + 0.5 * a4, wa4},
            {0.5 + 0.5 * b4, wb4}};
    const double a5 = std::sqrt(5 - 2 * std::sqrt(10.0 / 7)) / 3;
    const double b5 = std::sqrt(5 + 2 * std::sqrt(10.0 / 7)) / 3;
    const double wa5 = (322 + 13 * std::sqrt(70.0)) / 1800;
    const double wb5 = (322 - 13 * std::sqrt(70.0)) / 1800;
    t[4] = {{0.5 - 0.5 * b5, wb5},
            {0.5 - 0.5 * a5, wa5},
            {0.5, 128.0 / 450},
            {0.5 + 0.5 * a5, wa5},
            {0.5 + 0.5 * b5, wb5}};
    return t;
  }();
  return tables;
}

}  // namespace

std::span<const TrianglePoint> triangle_rule(int degree) {
  if (degree <= 1) return kCentroid;
  if (degree == 2) return kDegree2;
  if (degree <= 4) return kDegree4;
  throw InvalidInput("triangle rule degree must be at most 4");
}

std::span<const LinePoint> gauss_line_rule(int points) {
  if (points < 1 || points > 5) {
    throw InvalidInput("Gauss line rule supports 1..5 points");
  }
  return gauss_tables()[points - 1];
}

TimeRule parse_time_rule(const std::string& name) {
  if (name == "trapezoid") return TimeRule::Trapezoid;
  if (name == "simpson") return TimeRule::Simpson;
  throw ConfigError("unknown time quadrature rule '" + name + "'");
}

std::string to_string(TimeRule rule) {
  return rule == TimeRule::Trapezoid ? "trapezoid" : "simpson";
}

TimeQuadrature time_quadrature(TimeRule rule, double t_prev, double k) {
  if (!(k > 0.0)) throw InvalidInput("time step must be positive");
  TimeQuadrature q;
  switch (rule) {
    case TimeRule::Trapezoid:
      q.s = {0.0, 1.0};
      q.weights = {k / 2, k / 2};
      break;
    case TimeRule::Simpson:
      q.s = {0.0, 0.5, 1.0};
      q.weights = {k / 6, 4 * k / 6, k / 6};
      break;
    default:
      throw ConfigError("unknown time quadrature rule");
  }
  for (double s : q.s) q.points.push_back(t_prev + s * k);
  q.points.back() = t_prev + k;
  return q;
}

}  // namespace stcut
