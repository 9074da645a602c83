#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stablerank/point_cloud.hpp"
#include "stablerank/simplex.hpp"

namespace stablerank {

struct FiltrationEntry {
  double scale = 0.0;
  Simplex simplex;
};

namespace detail {

// 21 bits per vertex id; enough for any point count this library targets.
inline std::uint64_t simplex_key(const Simplex& s) {
  std::uint64_t key = 0;
  for (int i = 0; i < 3; ++i) {
    key = (key << 21) | static_cast<std::uint64_t>(s.v[i] + 1);
  }
  return key;
}

inline bool filtration_order(const FiltrationEntry& a, const FiltrationEntry& b) {
  if (a.scale != b.scale) return a.scale < b.scale;
  return a.simplex < b.simplex;
}

}  // namespace detail

/// A totally ordered family of simplices with appearance scales. Entries are
/// sorted by (scale, dimension, lexicographic vertices), which places every
/// face strictly before each of its cofaces.
class Filtration {
public:
  Filtration() = default;

  static Filtration from_simplices(std::vector<FiltrationEntry> entries, int max_dim, double max_scale) {
    if (max_dim < 0 || max_dim > 2) throw std::invalid_argument("Filtration: max_dim must be 0, 1 or 2");
    std::sort(entries.begin(), entries.end(), detail::filtration_order);
    std::unordered_map<std::uint64_t, double> scale_of;
    scale_of.reserve(entries.size() * 2);
    for (const auto& e : entries) {
      if (e.simplex.dim() < 0 || e.simplex.dim() > max_dim) {
        throw std::invalid_argument("Filtration: simplex dimension out of range");
      }
      if (!(e.scale >= 0.0) || e.scale > max_scale) {
        throw std::invalid_argument("Filtration: appearance scale out of range");
      }
      if (!scale_of.emplace(detail::simplex_key(e.simplex), e.scale).second) {
        throw std::invalid_argument("Filtration: duplicate simplex");
      }
    }
    // Closure: every face must be present, no later than its cofacet.
    for (const auto& e : entries) {
      for (int i = 0; i <= e.simplex.dim() && e.simplex.dim() > 0; ++i) {
        const auto it = scale_of.find(detail::simplex_key(face(e.simplex, i)));
        if (it == scale_of.end()) throw std::invalid_argument("Filtration: missing face");
        if (it->second > e.scale) throw std::invalid_argument("Filtration: face appears after cofacet");
      }
    }
    Filtration f;
    f.entries_ = std::move(entries);
    f.max_dim_ = max_dim;
    f.max_scale_ = max_scale;
    return f;
  }

  const std::vector<FiltrationEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  int max_dim() const { return max_dim_; }
  double max_scale() const { return max_scale_; }

private:
  friend Filtration build_vr_filtration(const DissimilarityMatrix&, int, double);

  // Trusted path for builders whose output is closed and duplicate-free by
  // construction; only sorts.
  static Filtration presorted(std::vector<FiltrationEntry> entries, int max_dim, double max_scale) {
    std::sort(entries.begin(), entries.end(), detail::filtration_order);
    Filtration f;
    f.entries_ = std::move(entries);
    f.max_dim_ = max_dim;
    f.max_scale_ = max_scale;
    return f;
  }

  std::vector<FiltrationEntry> entries_;
  int max_dim_ = 0;
  double max_scale_ = 0.0;
};

/// Vietoris-Rips filtration: a simplex appears at the largest pairwise
/// dissimilarity among its vertices; simplices past max_scale are omitted.
inline Filtration build_vr_filtration(const DissimilarityMatrix& d, int max_dim, double max_scale) {
  if (max_dim < 0 || max_dim > 2) throw std::invalid_argument("build_vr_filtration: max_dim must be 0, 1 or 2");
  if (!(max_scale > 0.0)) throw std::invalid_argument("build_vr_filtration: max_scale must be positive");
  const std::size_t n = d.size();
  std::vector<FiltrationEntry> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    entries.push_back({0.0, Simplex::vertex(static_cast<std::int32_t>(i))});
  }
  if (max_dim >= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double s = d(i, j);
        if (s <= max_scale) {
          entries.push_back({s, Simplex::edge(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j))});
        }
      }
    }
  }
  if (max_dim >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dij = d(i, j);
        if (dij > max_scale) continue;
        for (std::size_t k = j + 1; k < n; ++k) {
          const double s = std::max({dij, d(i, k), d(j, k)});
          if (s <= max_scale) {
            entries.push_back({s, Simplex::triangle(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                                                    static_cast<std::int32_t>(k))});
          }
        }
      }
    }
  }
  return Filtration::presorted(std::move(entries), max_dim, max_scale);
}

}  // namespace stablerank
