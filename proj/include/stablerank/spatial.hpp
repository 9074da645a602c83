#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stablerank/filtration.hpp"
#include "stablerank/parallel.hpp"
#include "stablerank/persistence.hpp"
#include "stablerank/point_cloud.hpp"
#include "stablerank/rng.hpp"
#include "stablerank/stable_rank.hpp"

namespace stablerank {

/// A 2-D scalar field on a regular grid, e.g. column liquid water content.
struct GridField {
  std::vector<double> values;  // row-major, values[iy * nx + ix]
  std::size_t nx = 0;
  std::size_t ny = 0;
  double cell_size = 1.0;
  bool periodic = true;

  static GridField create(std::vector<double> values, std::size_t nx, std::size_t ny, double cell_size,
                          bool periodic) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("GridField: nx and ny must be >= 1");
    if (!(cell_size > 0.0)) throw std::invalid_argument("GridField: cell_size must be positive");
    if (values.size() != nx * ny) throw std::invalid_argument("GridField: value count does not match nx * ny");
    return GridField{std::move(values), nx, ny, cell_size, periodic};
  }

  double at(std::size_t ix, std::size_t iy) const { return values[iy * nx + ix]; }
  double extent_x() const { return static_cast<double>(nx) * cell_size; }
  double extent_y() const { return static_cast<double>(ny) * cell_size; }
};

struct Component {
  std::vector<std::size_t> cells;  // linear indices iy * nx + ix, sorted
  std::array<double, 2> centroid{0.0, 0.0};
  std::size_t argmax_cell = 0;
  double max_value = 0.0;

  std::size_t size() const { return cells.size(); }
};

struct ComponentSet {
  std::vector<Component> components;
  std::size_t nx = 0;
  std::size_t ny = 0;
  double cell_size = 1.0;
  bool periodic = true;

  double extent_x() const { return static_cast<double>(nx) * cell_size; }
  double extent_y() const { return static_cast<double>(ny) * cell_size; }
};

/// Points in the plane, possibly on a torus.
struct PlanarPoints {
  std::vector<std::array<double, 2>> points;
  double extent_x = 1.0;
  double extent_y = 1.0;
  bool periodic = true;
};

namespace detail {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];  // path halving
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

// Circular mean of cell-center coordinates on a periodic axis, mapped back
// to [0, period).
inline double circular_mean(const std::vector<double>& coords, double period) {
  double c = 0.0, s = 0.0;
  for (double x : coords) {
    const double angle = 2.0 * M_PI * x / period;
    c += std::cos(angle);
    s += std::sin(angle);
  }
  double mean = std::atan2(s, c) / (2.0 * M_PI) * period;
  mean = std::fmod(mean + period, period);
  if (mean == period) mean = 0.0;
  return mean;
}

}  // namespace detail

/// Connected components of {cells : value > threshold} under 4-connectivity
/// (8 optional), wrapping across boundaries when the field is periodic.
/// Components smaller than min_size are discarded.
inline ComponentSet label_components(const GridField& f, double threshold, std::size_t min_size,
                                     int connectivity = 4) {
  if (!(threshold >= 0.0)) throw std::invalid_argument("label_components: threshold must be >= 0");
  if (connectivity != 4 && connectivity != 8) {
    throw std::invalid_argument("label_components: connectivity must be 4 or 8");
  }
  const std::size_t nx = f.nx, ny = f.ny;
  const auto active = [&](std::size_t ix, std::size_t iy) { return f.at(ix, iy) > threshold; };

  detail::UnionFind uf(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      if (!active(ix, iy)) continue;
      const auto link = [&](long dx, long dy) {
        const long jx = static_cast<long>(ix) + dx;
        const long jy = static_cast<long>(iy) + dy;
        if (!f.periodic && (jx < 0 || jy < 0 || jx >= static_cast<long>(nx) || jy >= static_cast<long>(ny))) {
          return;
        }
        const std::size_t wx = static_cast<std::size_t>((jx + static_cast<long>(nx)) % static_cast<long>(nx));
        const std::size_t wy = static_cast<std::size_t>((jy + static_cast<long>(ny)) % static_cast<long>(ny));
        if (active(wx, wy)) uf.unite(iy * nx + ix, wy * nx + wx);
      };
      link(1, 0);
      link(0, 1);
      if (connectivity == 8) {
        link(1, 1);
        link(1, -1);
      }
    }
  }

  std::vector<std::vector<std::size_t>> grouped(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      if (active(ix, iy)) grouped[uf.find(iy * nx + ix)].push_back(iy * nx + ix);
    }
  }

  ComponentSet cs;
  cs.nx = nx;
  cs.ny = ny;
  cs.cell_size = f.cell_size;
  cs.periodic = f.periodic;
  for (auto& cells : grouped) {
    if (cells.empty() || cells.size() < min_size) continue;
    Component comp;
    comp.cells = std::move(cells);
    std::vector<double> xs, ys;
    xs.reserve(comp.cells.size());
    ys.reserve(comp.cells.size());
    comp.argmax_cell = comp.cells.front();
    comp.max_value = f.values[comp.cells.front()];
    for (std::size_t cell : comp.cells) {
      xs.push_back((static_cast<double>(cell % nx) + 0.5) * f.cell_size);
      ys.push_back((static_cast<double>(cell / nx) + 0.5) * f.cell_size);
      if (f.values[cell] > comp.max_value) {
        comp.max_value = f.values[cell];
        comp.argmax_cell = cell;
      }
    }
    if (f.periodic) {
      comp.centroid = {detail::circular_mean(xs, f.extent_x()), detail::circular_mean(ys, f.extent_y())};
    } else {
      comp.centroid = {std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size()),
                       std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size())};
    }
    cs.components.push_back(std::move(comp));
  }
  return cs;
}

enum class RepresentMode { centroid, max_value, random_cells };

/// One point set standing in for the components: centroids, per-component
/// argmax cells, or ceil(rate * size) random distinct cells per component
/// (component i draws from substream i of the seed).
inline PlanarPoints represent(const ComponentSet& cs, RepresentMode mode, double rate = 0.05,
                              std::uint64_t seed = 0) {
  if (mode == RepresentMode::random_cells && !(rate > 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("represent: random mode needs a rate in (0, 1]");
  }
  PlanarPoints out;
  out.extent_x = cs.extent_x();
  out.extent_y = cs.extent_y();
  out.periodic = cs.periodic;
  const auto cell_center = [&](std::size_t cell) -> std::array<double, 2> {
    return {(static_cast<double>(cell % cs.nx) + 0.5) * cs.cell_size,
            (static_cast<double>(cell / cs.nx) + 0.5) * cs.cell_size};
  };
  for (std::size_t i = 0; i < cs.components.size(); ++i) {
    const Component& comp = cs.components[i];
    switch (mode) {
      case RepresentMode::centroid: out.points.push_back(comp.centroid); break;
      case RepresentMode::max_value: out.points.push_back(cell_center(comp.argmax_cell)); break;
      case RepresentMode::random_cells: {
        const std::size_t k =
            static_cast<std::size_t>(std::ceil(rate * static_cast<double>(comp.size())));
        Rng rng(derive_seed(seed, i));
        for (std::size_t idx : rng.sample_without_replacement(comp.size(), std::max<std::size_t>(k, 1))) {
          out.points.push_back(cell_center(comp.cells[idx]));
        }
        break;
      }
    }
  }
  return out;
}

inline double planar_distance(const PlanarPoints& p, std::size_t i, std::size_t j) {
  double dx = std::fabs(p.points[i][0] - p.points[j][0]);
  double dy = std::fabs(p.points[i][1] - p.points[j][1]);
  if (p.periodic) {
    dx = std::min(dx, p.extent_x - dx);
    dy = std::min(dy, p.extent_y - dy);
  }
  return std::hypot(dx, dy);
}

/// Distance from each point to its nearest neighbor.
inline std::vector<double> nn_distances(const PlanarPoints& p) {
  const std::size_t n = p.points.size();
  if (n < 2) throw std::invalid_argument("nn_distances: needs at least 2 points");
  std::vector<double> result(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = planar_distance(p, i, j);
      result[i] = std::min(result[i], d);
      result[j] = std::min(result[j], d);
    }
  }
  return result;
}

namespace detail {

// Area under the polyline through the given points, extended to (1, 1).
inline double area_under_points(const std::vector<std::array<double, 2>>& pts) {
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    area += (pts[i + 1][0] - pts[i][0]) * 0.5 * (pts[i][1] + pts[i + 1][1]);
  }
  if (!pts.empty()) {
    area += (1.0 - pts.back()[0]) * 0.5 * (pts.back()[1] + 1.0);
  }
  return area;
}

}  // namespace detail

struct IOrgResult {
  double value = 0.0;
  bool degenerate = false;  // all points identical; value forced to 1
};

/// Nearest-neighbor spatial organization index: area under the parametric
/// curve (G_CSR(r), Ghat(r)), where G_CSR(r) = 1 - exp(-lambda pi r^2) with
/// lambda = N / area, and Ghat is the empirical CDF of nearest-neighbor
/// distances. 0.5 under complete spatial randomness.
inline IOrgResult i_org(const PlanarPoints& p, std::size_t r_grid_size = 512) {
  if (r_grid_size < 2) throw std::invalid_argument("i_org: r_grid_size must be >= 2");
  std::vector<double> nn = nn_distances(p);
  std::sort(nn.begin(), nn.end());
  if (nn.back() == 0.0) return {1.0, true};
  const double n = static_cast<double>(p.points.size());
  const double lambda = n / (p.extent_x * p.extent_y);
  // G_CSR(r_max) = 1 - 1e-6
  const double r_max = std::sqrt(std::log(1e6) / (lambda * M_PI));
  std::vector<std::array<double, 2>> pts;
  pts.reserve(r_grid_size);
  for (std::size_t i = 0; i < r_grid_size; ++i) {
    const double r = r_max * static_cast<double>(i) / static_cast<double>(r_grid_size - 1);
    const double x = 1.0 - std::exp(-lambda * M_PI * r * r);
    const double count = static_cast<double>(std::upper_bound(nn.begin(), nn.end(), r) - nn.begin());
    pts.push_back({x, count / n});
  }
  return {detail::area_under_points(pts), false};
}

/// Homogeneous Poisson point process on the torus [0,ex) x [0,ey): counts are
/// Poisson(intensity * area), positions uniform. Realization k draws from
/// substream k of the seed.
inline std::vector<PlanarPoints> poisson_realizations(double intensity, double extent_x, double extent_y,
                                                      std::size_t n, std::uint64_t seed) {
  if (!(intensity > 0.0)) throw std::invalid_argument("poisson_realizations: intensity must be positive");
  std::vector<PlanarPoints> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng(derive_seed(seed, k));
    const long count = rng.poisson(intensity * extent_x * extent_y);
    PlanarPoints& p = out[k];
    p.extent_x = extent_x;
    p.extent_y = extent_y;
    p.periodic = true;
    p.points.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
      const double x = rng.uniform(0.0, extent_x);
      const double y = rng.uniform(0.0, extent_y);
      p.points.push_back({x, y});
    }
  }
  return out;
}

/// Empirical CDF of homological persistence: 1 - s for a normalized stable
/// rank s, a non-decreasing step function rising to 1.
inline StepFunction g_ph(const StableRank& s) {
  if (std::fabs(s.initial_value() - 1.0) > 1e-12) {
    throw std::invalid_argument("g_ph: stable rank must be normalized (value 1 at 0)");
  }
  std::vector<double> values = s.values();
  for (double& v : values) v = 1.0 - v;
  return StepFunction(s.breakpoints(), std::move(values));
}

struct GphPair {
  StepFunction h0;
  StepFunction h1;
};

/// G_PH curves of one planar point set: Vietoris-Rips persistence under the
/// point set's metric, truncated at the domain's half diagonal (the toroidal
/// diameter, beyond which the complex is complete), stable ranks normalized
/// per degree. A degree with no bars contributes the constant-1 CDF.
inline GphPair point_set_g_ph(const PlanarPoints& p, const Contour& contour) {
  const double diagonal = std::hypot(p.extent_x, p.extent_y);
  const double max_scale = p.periodic ? diagonal / 2.0 : diagonal;
  if (p.points.empty()) return {StepFunction::constant(1.0), StepFunction::constant(1.0)};
  std::vector<std::vector<double>> coords;
  coords.reserve(p.points.size());
  for (const auto& pt : p.points) coords.push_back({pt[0], pt[1]});
  std::optional<std::vector<double>> extents;
  if (p.periodic) extents = std::vector<double>{p.extent_x, p.extent_y};
  const PointCloud cloud = PointCloud::from_points(std::move(coords), std::move(extents));
  const Metric metric = p.periodic ? Metric::toroidal_euclidean : Metric::euclidean;
  const DissimilarityMatrix d = pairwise_dissimilarity(cloud, metric);
  const Barcode bc = reduce_and_pair(build_vr_filtration(d, 2, max_scale));
  GphPair out;
  for (int degree = 0; degree <= 1; ++degree) {
    StepFunction& target = degree == 0 ? out.h0 : out.h1;
    if (rank_invariant(bc, degree) == 0) {
      target = StepFunction::constant(1.0);
    } else {
      target = g_ph(normalize(stable_rank(bc, degree, contour, Truncation::cap_at_max_scale)));
    }
  }
  return out;
}

/// Monte Carlo CSR reference: pointwise mean G_PH curves over Poisson
/// realizations, per degree.
inline GphPair csr_baseline(double intensity, double extent_x, double extent_y, std::size_t n_realizations,
                            const Contour& contour, std::uint64_t seed, unsigned threads = 1) {
  if (n_realizations < 1) throw std::invalid_argument("csr_baseline: needs at least one realization");
  const std::vector<PlanarPoints> realizations =
      poisson_realizations(intensity, extent_x, extent_y, n_realizations, seed);
  std::vector<StepFunction> h0s(n_realizations), h1s(n_realizations);
  parallel_for(n_realizations, threads, [&](std::size_t i) {
    GphPair pair = point_set_g_ph(realizations[i], contour);
    h0s[i] = std::move(pair.h0);
    h1s[i] = std::move(pair.h1);
  });
  return {pointwise_mean(h0s), pointwise_mean(h1s)};
}

struct PhIndex {
  double i_ph_0 = 0.0;
  double i_ph_1 = 0.0;
  double i_ph = 0.0;  // arithmetic mean of the two
};

/// Area under the parametric curve (abscissa(r), ordinate(r)) over the merged
/// breakpoint grid, closed to (1, 1). Exact for step-function inputs.
inline double parametric_area(const StepFunction& abscissa, const StepFunction& ordinate) {
  std::vector<double> grid;
  std::merge(abscissa.breakpoints().begin(), abscissa.breakpoints().end(), ordinate.breakpoints().begin(),
             ordinate.breakpoints().end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<std::array<double, 2>> pts;
  pts.reserve(grid.size());
  for (double r : grid) pts.push_back({abscissa(r), ordinate(r)});
  return detail::area_under_points(pts);
}

/// Persistent-homology organization index: per degree the area under
/// (baseline(r), field(r)), averaged over the two degrees.
inline PhIndex i_ph(const StepFunction& field_gph_0, const StepFunction& field_gph_1,
                    const StepFunction& baseline_0, const StepFunction& baseline_1) {
  PhIndex out;
  out.i_ph_0 = parametric_area(baseline_0, field_gph_0);
  out.i_ph_1 = parametric_area(baseline_1, field_gph_1);
  out.i_ph = (out.i_ph_0 + out.i_ph_1) / 2.0;
  return out;
}

struct IndexReport {
  double i_org = 0.0;
  bool i_org_degenerate = false;
  double i_ph_0 = 0.0;
  double i_ph_1 = 0.0;
  double i_ph = 0.0;
  std::string represent_mode;
  std::size_t min_size = 0;
  std::uint64_t seed = 0;
};

}  // namespace stablerank
