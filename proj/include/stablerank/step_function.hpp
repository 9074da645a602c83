#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stablerank {

/// Right-continuous piecewise-constant function on [0, inf) with finitely
/// many breakpoints. values()[i] holds on [breakpoints()[i], breakpoints()[i+1]);
/// the last value holds from the last breakpoint on. breakpoints()[0] is
/// always 0, and adjacent equal values are collapsed, so representations are
/// canonical and comparable with ==.
class StepFunction {
public:
  StepFunction() : xs_{0.0}, ys_{0.0} {}

  static StepFunction constant(double v) {
    StepFunction f;
    f.ys_[0] = v;
    return f;
  }

  StepFunction(std::vector<double> breakpoints, std::vector<double> values) {
    if (breakpoints.empty() || breakpoints.size() != values.size()) {
      throw std::invalid_argument("StepFunction: breakpoints and values must be nonempty and equal-sized");
    }
    if (breakpoints.front() != 0.0) throw std::invalid_argument("StepFunction: first breakpoint must be 0");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
      if (i > 0 && !(breakpoints[i] > breakpoints[i - 1])) {
        throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing");
      }
      if (!std::isfinite(breakpoints[i]) || !std::isfinite(values[i])) {
        throw std::invalid_argument("StepFunction: breakpoints and values must be finite");
      }
    }
    xs_.reserve(breakpoints.size());
    ys_.reserve(values.size());
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
      if (!ys_.empty() && values[i] == ys_.back()) continue;
      xs_.push_back(breakpoints[i]);
      ys_.push_back(values[i]);
    }
  }

  double operator()(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("StepFunction: argument must be nonnegative");
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
    return ys_[static_cast<std::size_t>(it - xs_.begin()) - 1];
  }

  const std::vector<double>& breakpoints() const { return xs_; }
  const std::vector<double>& values() const { return ys_; }
  double initial_value() const { return ys_.front(); }
  double final_value() const { return ys_.back(); }

  bool is_non_increasing() const {
    for (std::size_t i = 1; i < ys_.size(); ++i) {
      if (ys_[i] > ys_[i - 1]) return false;
    }
    return true;
  }

  bool is_non_decreasing() const {
    for (std::size_t i = 1; i < ys_.size(); ++i) {
      if (ys_[i] < ys_[i - 1]) return false;
    }
    return true;
  }

  friend bool operator==(const StepFunction& a, const StepFunction& b) = default;

private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

namespace detail {

inline std::vector<double> merged_grid(const StepFunction& f, const StepFunction& g) {
  std::vector<double> grid;
  grid.reserve(f.breakpoints().size() + g.breakpoints().size());
  std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(), g.breakpoints().end(),
             std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace detail

/// Pointwise combination over the merged breakpoint grid.
template <class Op>
StepFunction zip(const StepFunction& f, const StepFunction& g, Op op) {
  const std::vector<double> grid = detail::merged_grid(f, g);
  std::vector<double> values;
  values.reserve(grid.size());
  std::size_t fi = 0, gi = 0;
  for (double x : grid) {
    while (fi + 1 < f.breakpoints().size() && f.breakpoints()[fi + 1] <= x) ++fi;
    while (gi + 1 < g.breakpoints().size() && g.breakpoints()[gi + 1] <= x) ++gi;
    values.push_back(op(f.values()[fi], g.values()[gi]));
  }
  return StepFunction(grid, std::move(values));
}

inline StepFunction scaled(const StepFunction& f, double factor) {
  std::vector<double> values = f.values();
  for (double& v : values) v *= factor;
  return StepFunction(f.breakpoints(), std::move(values));
}

/// Exact pointwise mean: breakpoints are the union of the inputs', and each
/// segment value is (f_1(x) + ... + f_n(x)) / n summed in input order.
inline StepFunction pointwise_mean(std::span<const StepFunction> fs) {
  if (fs.empty()) throw std::invalid_argument("pointwise_mean: empty list");
  std::vector<double> grid;
  for (const StepFunction& f : fs) {
    grid.insert(grid.end(), f.breakpoints().begin(), f.breakpoints().end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<std::size_t> cursor(fs.size(), 0);
  std::vector<double> values;
  values.reserve(grid.size());
  const double n = static_cast<double>(fs.size());
  for (double x : grid) {
    double sum = 0.0;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const auto& xs = fs[k].breakpoints();
      while (cursor[k] + 1 < xs.size() && xs[cursor[k] + 1] <= x) ++cursor[k];
      sum += fs[k].values()[cursor[k]];
    }
    values.push_back(sum / n);
  }
  return StepFunction(grid, std::move(values));
}

/// L_p distance (p >= 1) computed exactly segment-by-segment. Infinite when
/// the functions disagree beyond their last breakpoints.
inline double lp_distance(const StepFunction& f, const StepFunction& g, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_distance: p must be >= 1");
  if (std::fabs(f.final_value() - g.final_value()) != 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const std::vector<double> grid = detail::merged_grid(f, g);
  double sum = 0.0;
  std::size_t fi = 0, gi = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    while (fi + 1 < f.breakpoints().size() && f.breakpoints()[fi + 1] <= grid[i]) ++fi;
    while (gi + 1 < g.breakpoints().size() && g.breakpoints()[gi + 1] <= grid[i]) ++gi;
    const double diff = std::fabs(f.values()[fi] - g.values()[gi]);
    if (diff > 0.0) sum += std::pow(diff, p) * (grid[i + 1] - grid[i]);
  }
  return std::pow(sum, 1.0 / p);
}

namespace detail {

// Smallest x with h(x) <= c, or +inf if none; h must be non-increasing.
inline double first_value_at_most(const StepFunction& h, double c) {
  const auto& ys = h.values();
  std::size_t lo = 0, hi = ys.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (ys[mid] > c) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == ys.size()) return std::numeric_limits<double>::infinity();
  return h.breakpoints()[lo];
}

}  // namespace detail

/// Interleaving distance between non-increasing step functions: the least
/// shift eps with f(t) >= g(t + eps) and g(t) >= f(t + eps) for all t.
/// Because both sides are right-continuous steps, the inequalities only need
/// checking at breakpoints, and the infimum is itself an exact difference of
/// breakpoints:  max over breakpoints a of f of (first x where g <= f(a)) - a,
/// and symmetrically. Infinite when the eventual values differ.
inline double interleaving_distance(const StepFunction& f, const StepFunction& g) {
  if (!f.is_non_increasing() || !g.is_non_increasing()) {
    throw std::invalid_argument("interleaving_distance: requires non-increasing functions");
  }
  if (f.final_value() != g.final_value()) return std::numeric_limits<double>::infinity();
  double shift = 0.0;
  const auto one_side = [&shift](const StepFunction& a, const StepFunction& b) {
    for (std::size_t i = 0; i < a.breakpoints().size(); ++i) {
      const double x = detail::first_value_at_most(b, a.values()[i]);
      shift = std::max(shift, x - a.breakpoints()[i]);
    }
  };
  one_side(f, g);
  one_side(g, f);
  return shift;
}

}  // namespace stablerank
