#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stablerank {

enum class Metric { euclidean, toroidal_euclidean };

/// A finite set of points in R^d, optionally living on a torus with the given
/// per-axis period lengths.
struct PointCloud {
  std::vector<std::vector<double>> points;
  std::size_t ambient_dim = 0;
  std::optional<std::vector<double>> torus_extents;

  static PointCloud from_points(std::vector<std::vector<double>> pts,
                                std::optional<std::vector<double>> extents = std::nullopt) {
    PointCloud cloud;
    cloud.ambient_dim = pts.empty() ? 0 : pts.front().size();
    for (const auto& p : pts) {
      if (p.size() != cloud.ambient_dim) {
        throw std::invalid_argument("PointCloud: points have mismatched dimensions");
      }
    }
    if (extents) {
      if (extents->size() != cloud.ambient_dim) {
        throw std::invalid_argument("PointCloud: torus extents do not match the ambient dimension");
      }
      for (double L : *extents) {
        if (!(L > 0.0)) throw std::invalid_argument("PointCloud: torus extents must be positive");
      }
    }
    cloud.points = std::move(pts);
    cloud.torus_extents = std::move(extents);
    return cloud;
  }

  std::size_t size() const { return points.size(); }
};

/// Symmetric nonnegative relation on n points with zero diagonal, stored as
/// the strict lower triangle.
class DissimilarityMatrix {
public:
  DissimilarityMatrix() = default;

  static DissimilarityMatrix from_condensed(std::size_t n, std::vector<double> lower) {
    if (lower.size() != n * (n - (n > 0 ? 1 : 0)) / 2) {
      throw std::invalid_argument("DissimilarityMatrix: condensed size does not match n");
    }
    for (double x : lower) {
      if (!(x >= 0.0)) throw std::invalid_argument("DissimilarityMatrix: entries must be nonnegative");
    }
    DissimilarityMatrix d;
    d.n_ = n;
    d.lower_ = std::move(lower);
    return d;
  }

  static DissimilarityMatrix from_full(const std::vector<std::vector<double>>& full) {
    const std::size_t n = full.size();
    std::vector<double> lower;
    lower.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      if (full[i].size() != n) throw std::invalid_argument("DissimilarityMatrix: matrix is not square");
      if (full[i][i] != 0.0) throw std::invalid_argument("DissimilarityMatrix: diagonal must be zero");
      for (std::size_t j = 0; j < i; ++j) {
        if (full[i][j] != full[j][i]) {
          throw std::invalid_argument("DissimilarityMatrix: matrix is not symmetric");
        }
        lower.push_back(full[i][j]);
      }
    }
    return from_condensed(n, std::move(lower));
  }

  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i < j) std::swap(i, j);
    return lower_[i * (i - 1) / 2 + j];
  }

  std::size_t size() const { return n_; }

private:
  std::size_t n_ = 0;
  std::vector<double> lower_;
};

inline double point_distance(const std::vector<double>& a, const std::vector<double>& b, Metric metric,
                             const std::vector<double>* extents) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double delta = std::fabs(a[k] - b[k]);
    if (metric == Metric::toroidal_euclidean) {
      const double period = (*extents)[k];
      delta = std::fmod(delta, period);
      delta = std::min(delta, period - delta);
    }
    sum += delta * delta;
  }
  return std::sqrt(sum);
}

inline DissimilarityMatrix pairwise_dissimilarity(const PointCloud& cloud, Metric metric) {
  const std::vector<double>* extents = nullptr;
  if (metric == Metric::toroidal_euclidean) {
    if (!cloud.torus_extents) {
      throw std::invalid_argument("pairwise_dissimilarity: toroidal metric requires torus extents");
    }
    extents = &*cloud.torus_extents;
  }
  const std::size_t n = cloud.size();
  std::vector<double> lower;
  lower.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      lower.push_back(point_distance(cloud.points[i], cloud.points[j], metric, extents));
    }
  }
  return DissimilarityMatrix::from_condensed(n, std::move(lower));
}

/// Default truncation scale offered by the CLI: the largest nearest-neighbor
/// dissimilarity, i.e. max over rows of the smallest off-diagonal entry.
inline double suggested_max_scale(const DissimilarityMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) throw std::invalid_argument("suggested_max_scale: needs at least 2 points");
  double result = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) row_min = std::min(row_min, d(i, j));
    }
    result = std::max(result, row_min);
  }
  return result;
}

}  // namespace stablerank
