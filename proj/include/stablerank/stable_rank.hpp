#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stablerank/contour.hpp"
#include "stablerank/persistence.hpp"
#include "stablerank/step_function.hpp"

namespace stablerank {

/// A stable rank is a non-increasing, piecewise-constant function of eps.
using StableRank = StepFunction;

/// How to treat essential bars [b, inf) before counting.
enum class Truncation { cap_at_max_scale, drop_essential };

/// Stable rank of a barcode under a contour:
///   eps |-> |{ bars [b, d) : C(b, eps) < d }|.
/// Each bar stops counting exactly at its critical eps; identical critical
/// values merge by summing the drops. Bars whose bound is never reached
/// (multiplicative contours on bars born at 0) raise the eventual value
/// instead of adding a breakpoint.
inline StableRank stable_rank(const Barcode& bc, int degree, const Contour& c,
                              Truncation truncation = Truncation::cap_at_max_scale) {
  std::vector<double> drops;
  double floor_count = 0.0;
  for (const Bar& bar : bc.bars_in(degree)) {
    double death = bar.death;
    if (bar.essential()) {
      if (truncation == Truncation::drop_essential) continue;
      death = bc.max_scale;
      if (!(bar.birth < death)) continue;
    }
    const double eps = c.critical_epsilon(bar.birth, death);
    if (std::isinf(eps)) {
      floor_count += 1.0;
    } else {
      drops.push_back(eps);
    }
  }
  std::sort(drops.begin(), drops.end());

  std::vector<double> xs{0.0};
  std::vector<double> ys{static_cast<double>(drops.size()) + floor_count};
  for (std::size_t i = 0; i < drops.size();) {
    std::size_t j = i;
    while (j < drops.size() && drops[j] == drops[i]) ++j;
    xs.push_back(drops[i]);
    ys.push_back(static_cast<double>(drops.size() - j) + floor_count);
    i = j;
  }
  return StableRank(std::move(xs), std::move(ys));
}

/// Divides by the value at 0, so the result starts at exactly 1.
inline StableRank normalize(const StableRank& s) {
  const double v0 = s.initial_value();
  if (!(v0 > 0.0)) throw std::invalid_argument("normalize: stable rank vanishes at 0");
  return scaled(s, 1.0 / v0);
}

}  // namespace stablerank
