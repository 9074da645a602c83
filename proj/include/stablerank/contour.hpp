#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stablerank {

/// Sampled density f > 0 on a grid 0 = x_0 < ... < x_m; beyond x_m the
/// density extends as a constant so the cumulative integral stays invertible
/// on all of [0, inf).
struct DensitySpec {
  std::vector<double> grid;
  std::vector<double> values;
  std::optional<double> extension;
};

/// A two-argument function C(v, eps) that is monotone in both arguments,
/// dominates v, and is superadditive under composition:
///   v <= C(v, eps) <= C(w, tau)   for v <= w, eps <= tau
///   C(C(v, eps), tau) <= C(v, eps + tau)
class Contour {
public:
  enum class Kind { standard, power, multiplicative, density };

  static Contour standard() { return Contour(Kind::standard, 0.0); }

  static Contour power(double exponent) {
    if (!(exponent >= 1.0)) throw std::invalid_argument("Contour::power: exponent must be >= 1");
    return Contour(Kind::power, exponent);
  }

  static Contour multiplicative(double base) {
    if (!(base > 0.0)) throw std::invalid_argument("Contour::multiplicative: base must be positive");
    return Contour(Kind::multiplicative, base);
  }

  static Contour from_density(const DensitySpec& spec) {
    if (spec.grid.empty() || spec.grid.size() != spec.values.size()) {
      throw std::invalid_argument("Contour::from_density: grid and values must be nonempty and equal-sized");
    }
    if (spec.grid.front() != 0.0) throw std::invalid_argument("Contour::from_density: grid must start at 0");
    for (std::size_t i = 1; i < spec.grid.size(); ++i) {
      if (!(spec.grid[i] > spec.grid[i - 1])) {
        throw std::invalid_argument("Contour::from_density: grid must be strictly increasing");
      }
    }
    for (double v : spec.values) {
      if (!(v > 0.0)) throw std::invalid_argument("Contour::from_density: density values must be positive");
    }
    Contour c(Kind::density, 0.0);
    c.grid_ = spec.grid;
    // Piecewise-linear cumulative integral (trapezoidal over the grid).
    c.cumulative_.resize(c.grid_.size());
    c.cumulative_[0] = 0.0;
    for (std::size_t i = 1; i < c.grid_.size(); ++i) {
      c.cumulative_[i] =
          c.cumulative_[i - 1] + (c.grid_[i] - c.grid_[i - 1]) * 0.5 * (spec.values[i] + spec.values[i - 1]);
    }
    c.extension_ = spec.extension.value_or(spec.values.back());
    if (!(c.extension_ > 0.0)) throw std::invalid_argument("Contour::from_density: extension must be positive");
    return c;
  }

  double operator()(double v, double eps) const {
    if (!(v >= 0.0) || !(eps >= 0.0)) throw std::invalid_argument("Contour: arguments must be nonnegative");
    switch (kind_) {
      case Kind::standard: return v + eps;
      case Kind::power: return v + std::pow(eps, parameter_);
      case Kind::multiplicative: return std::pow(parameter_, eps) * v;
      case Kind::density:
        if (eps == 0.0) return v;
        return cumulative(cumulative_inverse(v) + eps);
    }
    return 0.0;  // unreachable
  }

  /// sup{eps >= 0 : C(b, eps) < d} for a bar [b, d); +inf when the bar is
  /// counted at every eps. Exact: closed forms for the analytic kinds, and
  /// for density contours the piecewise-linear cumulative is inverted
  /// segment-exactly.
  double critical_epsilon(double b, double d) const {
    if (!(b >= 0.0) || !(b < d)) throw std::invalid_argument("critical_epsilon: requires 0 <= b < d");
    if (std::isinf(d)) return std::numeric_limits<double>::infinity();
    switch (kind_) {
      case Kind::standard: return d - b;
      case Kind::power: return std::pow(d - b, 1.0 / parameter_);
      case Kind::multiplicative:
        if (parameter_ <= 1.0 || b == 0.0) return std::numeric_limits<double>::infinity();
        return std::log(d / b) / std::log(parameter_);
      case Kind::density: return cumulative_inverse(d) - cumulative_inverse(b);
    }
    return 0.0;  // unreachable
  }

  Kind kind() const { return kind_; }
  double parameter() const { return parameter_; }

private:
  Contour(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  double cumulative(double x) const {
    if (x >= grid_.back()) return cumulative_.back() + (x - grid_.back()) * extension_;
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    const std::size_t seg = static_cast<std::size_t>(it - grid_.begin()) - 1;
    const double t = (x - grid_[seg]) / (grid_[seg + 1] - grid_[seg]);
    return cumulative_[seg] + t * (cumulative_[seg + 1] - cumulative_[seg]);
  }

  double cumulative_inverse(double v) const {
    if (v >= cumulative_.back()) return grid_.back() + (v - cumulative_.back()) / extension_;
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), v);
    const std::size_t seg = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    const double t = (v - cumulative_[seg]) / (cumulative_[seg + 1] - cumulative_[seg]);
    return grid_[seg] + t * (grid_[seg + 1] - grid_[seg]);
  }

  Kind kind_;
  double parameter_;
  std::vector<double> grid_;
  std::vector<double> cumulative_;
  double extension_ = 0.0;
};

inline Contour contour_from_density(const DensitySpec& spec) { return Contour::from_density(spec); }

struct AxiomSample {
  double v, w, eps, tau;  // v <= w and eps <= tau
};

/// Checks both contour inequalities on every sample, within tolerance.
/// Accepts any callable C(v, eps) so that candidate functions can be vetted
/// before being wrapped in a Contour.
template <class ContourFn>
bool check_axioms(const ContourFn& c, std::span<const AxiomSample> samples, double tolerance = 1e-9) {
  for (const AxiomSample& s : samples) {
    if (!(s.v <= s.w) || !(s.eps <= s.tau) || !(s.v >= 0.0) || !(s.eps >= 0.0)) {
      throw std::invalid_argument("check_axioms: malformed sample");
    }
    const double cv = c(s.v, s.eps);
    if (s.v > cv + tolerance) return false;
    if (cv > c(s.w, s.tau) + tolerance) return false;
    if (c(cv, s.tau) > c(s.v, s.eps + s.tau) + tolerance) return false;
  }
  return true;
}

}  // namespace stablerank
