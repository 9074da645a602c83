#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stablerank/filtration.hpp"

namespace stablerank {

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

/// Sparse boundary matrix over F2, columns indexed in filtration order. The
/// column of a k-simplex lists the positions of its k+1 faces, all of which
/// precede it in the order.
struct BoundaryMatrix {
  std::vector<std::int32_t> offsets;  // column j spans entries[offsets[j], offsets[j+1])
  std::vector<std::int32_t> entries;  // ascending row indices
  std::vector<std::int8_t> degree;    // simplex dimension per column

  std::size_t columns() const { return degree.size(); }

  std::pair<const std::int32_t*, const std::int32_t*> column(std::size_t j) const {
    return {entries.data() + offsets[j], entries.data() + offsets[j + 1]};
  }
};

inline BoundaryMatrix boundary_matrix(const Filtration& f) {
  const auto& entries = f.entries();
  BoundaryMatrix bm;
  bm.offsets.reserve(entries.size() + 1);
  bm.offsets.push_back(0);
  bm.degree.reserve(entries.size());

  // Faces precede cofaces in filtration order, so positions fill in as we go.
  // Vertices and edges are the only simplices ever looked up; with small
  // vertex ids a flat edge table avoids hashing on the hot path.
  std::int32_t max_vertex = -1;
  for (const auto& e : entries) max_vertex = std::max(max_vertex, e.simplex.v[e.simplex.dim()]);
  const std::size_t n = static_cast<std::size_t>(max_vertex + 1);
  const bool use_table = n <= 4096;
  std::vector<std::int32_t> vertex_pos(use_table ? n : 0, -1);
  std::vector<std::int32_t> edge_pos(use_table ? n * n : 0, -1);
  std::unordered_map<std::uint64_t, std::int32_t> position;
  if (!use_table) position.reserve(entries.size() * 2);

  const auto lookup = [&](const Simplex& s) -> std::int32_t {
    std::int32_t found = -1;
    if (use_table) {
      found = s.dim() == 0 ? vertex_pos[static_cast<std::size_t>(s.v[0])]
                           : edge_pos[static_cast<std::size_t>(s.v[0]) * n + static_cast<std::size_t>(s.v[1])];
    } else {
      const auto it = position.find(detail::simplex_key(s));
      if (it != position.end()) found = it->second;
    }
    if (found < 0) throw std::runtime_error("boundary_matrix: face missing from filtration");
    return found;
  };

  std::array<std::int32_t, 3> rows;
  for (std::size_t j = 0; j < entries.size(); ++j) {
    const Simplex& s = entries[j].simplex;
    const int k = s.dim();
    if (k == 1) {
      rows[0] = lookup(face(s, 1));
      rows[1] = lookup(face(s, 0));
    } else if (k == 2) {
      for (int i = 0; i <= 2; ++i) rows[i] = lookup(face(s, i));
    }
    std::sort(rows.begin(), rows.begin() + (k > 0 ? k + 1 : 0));
    for (int i = 0; i < (k > 0 ? k + 1 : 0); ++i) bm.entries.push_back(rows[i]);
    bm.offsets.push_back(static_cast<std::int32_t>(bm.entries.size()));
    bm.degree.push_back(static_cast<std::int8_t>(k));
    if (k <= 1) {
      if (use_table) {
        if (k == 0) {
          vertex_pos[static_cast<std::size_t>(s.v[0])] = static_cast<std::int32_t>(j);
        } else {
          edge_pos[static_cast<std::size_t>(s.v[0]) * n + static_cast<std::size_t>(s.v[1])] =
              static_cast<std::int32_t>(j);
        }
      } else {
        position.emplace(detail::simplex_key(s), static_cast<std::int32_t>(j));
      }
    }
  }
  return bm;
}

/// A single interval [birth, death) of the bar decomposition; death is
/// kInfiniteDeath for essential bars.
struct Bar {
  double birth = 0.0;
  double death = kInfiniteDeath;
  int degree = 0;

  bool essential() const { return std::isinf(death); }
  double length() const { return death - birth; }

  friend bool operator==(const Bar& a, const Bar& b) {
    return a.birth == b.birth && a.death == b.death && a.degree == b.degree;
  }
};

/// Bar decomposition of a filtration truncated at max_scale, degrees 0 and 1.
struct Barcode {
  std::array<std::vector<Bar>, 2> bars;
  double max_scale = 0.0;

  const std::vector<Bar>& bars_in(int degree) const {
    if (degree < 0 || degree > 1) throw std::invalid_argument("Barcode: degree must be 0 or 1");
    return bars[static_cast<std::size_t>(degree)];
  }
};

namespace detail {

// Working column for the reduction: a bitset over all row indices. Owner
// columns stay sparse; XORing one in touches only its entries, and the pivot
// bit always cancels, so the pivot scan only ever moves downward.
class WorkColumn {
public:
  explicit WorkColumn(std::size_t rows) : words_((rows + 63) / 64, 0) {}

  void load(const std::int32_t* begin, const std::int32_t* end) {
    lo_word_ = words_.size();
    hi_word_ = 0;
    pivot_ = -1;
    for (const std::int32_t* p = begin; p != end; ++p) flip(*p);
    if (begin != end) pivot_ = *(end - 1);  // entries arrive sorted
  }

  // Pivot (highest set bit) of the current column, or -1 if empty.
  std::int32_t pivot() const { return pivot_; }

  void xor_sparse(const std::vector<std::int32_t>& column) {
    for (std::int32_t r : column) flip(r);
    rescan_pivot();
  }

  // Extracts the set bits in ascending order and leaves the column empty.
  std::vector<std::int32_t> take_entries() {
    std::vector<std::int32_t> out;
    for (std::size_t w = lo_word_; w <= hi_word_ && hi_word_ < words_.size(); ++w) {
      std::uint64_t x = words_[w];
      words_[w] = 0;
      while (x) {
        const int bit = std::countr_zero(x);
        x &= x - 1;
        out.push_back(static_cast<std::int32_t>(w * 64 + static_cast<std::size_t>(bit)));
      }
    }
    pivot_ = -1;
    return out;
  }

private:
  void flip(std::int32_t r) {
    const std::size_t w = static_cast<std::size_t>(r) / 64;
    words_[w] ^= std::uint64_t{1} << (static_cast<std::size_t>(r) % 64);
    lo_word_ = std::min(lo_word_, w);
    hi_word_ = std::max(hi_word_, w);
  }

  void rescan_pivot() {
    std::size_t w = static_cast<std::size_t>(pivot_) / 64;
    for (;;) {
      if (words_[w]) {
        pivot_ = static_cast<std::int32_t>(w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[w])));
        return;
      }
      if (w == lo_word_ || w == 0) {
        pivot_ = -1;
        return;
      }
      --w;
    }
  }

  std::vector<std::uint64_t> words_;
  std::size_t lo_word_ = 0;
  std::size_t hi_word_ = 0;
  std::int32_t pivot_ = -1;
};

}  // namespace detail

/// Standard persistence pairing by column reduction over F2, processing
/// dimensions top-down so that columns already identified as pivot rows are
/// cleared without work. Each reduced column with lowest nonzero row r pairs
/// simplex r (birth) with the column's simplex (death); unpaired births give
/// essential bars. Zero-length bars are discarded.
inline Barcode reduce_and_pair(const Filtration& f) {
  const BoundaryMatrix bm = boundary_matrix(f);
  const auto& entries = f.entries();
  const std::int32_t m = static_cast<std::int32_t>(bm.columns());

  // Rows of the dimension-k phase are (k-1)-simplices; reindexing them
  // per dimension keeps the working bitset small. Local ranks preserve the
  // filtration order, so pivots are unchanged.
  std::array<std::vector<std::int32_t>, 3> to_global;
  std::vector<std::int32_t> local_rank(static_cast<std::size_t>(m));
  for (std::int32_t j = 0; j < m; ++j) {
    auto& dim_list = to_global[static_cast<std::size_t>(bm.degree[j])];
    local_rank[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(dim_list.size());
    dim_list.push_back(j);
  }

  std::vector<std::uint8_t> cleared(static_cast<std::size_t>(m), 0);   // claimed as a pivot row
  std::vector<std::uint8_t> is_death(static_cast<std::size_t>(m), 0);  // owns a pivot row
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;

  for (int dim = f.max_dim(); dim >= 1; --dim) {
    const std::vector<std::int32_t>& row_map = to_global[static_cast<std::size_t>(dim - 1)];
    std::vector<std::int32_t> owner(row_map.size(), -1);            // local pivot row -> global column
    std::vector<std::vector<std::int32_t>> owner_col(row_map.size());  // reduced column, local rows
    detail::WorkColumn work(row_map.size());
    std::vector<std::int32_t> local;
    for (std::int32_t j : to_global[static_cast<std::size_t>(dim)]) {
      if (cleared[static_cast<std::size_t>(j)]) continue;  // known birth, killed in dimension dim+1
      const auto [begin, end] = bm.column(static_cast<std::size_t>(j));
      local.clear();
      for (const std::int32_t* p = begin; p != end; ++p) {
        local.push_back(local_rank[static_cast<std::size_t>(*p)]);
      }
      work.load(local.data(), local.data() + local.size());
      for (;;) {
        const std::int32_t r = work.pivot();
        if (r < 0) break;
        if (owner[static_cast<std::size_t>(r)] == -1) {
          owner[static_cast<std::size_t>(r)] = j;
          is_death[static_cast<std::size_t>(j)] = 1;
          cleared[static_cast<std::size_t>(row_map[static_cast<std::size_t>(r)])] = 1;
          pairs.emplace_back(row_map[static_cast<std::size_t>(r)], j);
          owner_col[static_cast<std::size_t>(r)] = work.take_entries();
          break;
        }
        work.xor_sparse(owner_col[static_cast<std::size_t>(r)]);
      }
    }
  }

  Barcode bc;
  bc.max_scale = f.max_scale();
  for (const auto& [r, j] : pairs) {
    const int k = bm.degree[static_cast<std::size_t>(r)];
    if (k > 1) continue;
    const double b = entries[static_cast<std::size_t>(r)].scale;
    const double d = entries[static_cast<std::size_t>(j)].scale;
    if (b < d) bc.bars[static_cast<std::size_t>(k)].push_back({b, d, k});
  }
  for (std::int32_t i = 0; i < m; ++i) {
    const int k = bm.degree[static_cast<std::size_t>(i)];
    if (k > 1 || is_death[static_cast<std::size_t>(i)] || cleared[static_cast<std::size_t>(i)]) continue;
    bc.bars[static_cast<std::size_t>(k)].push_back({entries[static_cast<std::size_t>(i)].scale, kInfiniteDeath, k});
  }
  for (auto& degree_bars : bc.bars) {
    std::sort(degree_bars.begin(), degree_bars.end(), [](const Bar& a, const Bar& b) {
      if (a.birth != b.birth) return a.birth < b.birth;
      return a.death < b.death;
    });
  }
  return bc;
}

/// Number of bars alive at scale t: birth <= t < death.
inline int betti_at_scale(const Barcode& bc, int degree, double t) {
  if (!(t >= 0.0) || t > bc.max_scale) throw std::invalid_argument("betti_at_scale: t outside [0, max_scale]");
  int count = 0;
  for (const Bar& bar : bc.bars_in(degree)) {
    if (bar.birth <= t && t < bar.death) ++count;
  }
  return count;
}

/// Total number of bars in the degree: the dimension of the space of new
/// homology generators appearing along the filtration.
inline int rank_invariant(const Barcode& bc, int degree) {
  return static_cast<int>(bc.bars_in(degree).size());
}

namespace detail {

// Dense F2 matrix held column-wise as bitsets; only used by the brute-force
// homology oracle, so no attention is paid to efficiency.
class F2Matrix {
public:
  F2Matrix(std::size_t rows, std::size_t cols)
      : words_((rows + 63) / 64), columns_(cols, std::vector<std::uint64_t>(words_, 0)) {}

  void set(std::size_t row, std::size_t col) { columns_[col][row / 64] |= std::uint64_t{1} << (row % 64); }

  std::size_t rank() const {
    std::vector<std::vector<std::uint64_t>> pivots;
    for (auto col : columns_) {
      for (;;) {
        const long low = lowest_bit(col);
        if (low < 0) break;
        bool reduced = false;
        for (const auto& p : pivots) {
          if (lowest_bit(p) == low) {
            for (std::size_t w = 0; w < words_; ++w) col[w] ^= p[w];
            reduced = true;
            break;
          }
        }
        if (!reduced) {
          pivots.push_back(col);
          break;
        }
      }
    }
    return pivots.size();
  }

private:
  static long lowest_bit(const std::vector<std::uint64_t>& col) {
    for (std::size_t w = 0; w < col.size(); ++w) {
      if (col[w]) {
        std::uint64_t x = col[w];
        long bit = 0;
        while (!(x & 1)) {
          x >>= 1;
          ++bit;
        }
        return static_cast<long>(w) * 64 + bit;
      }
    }
    return -1;
  }

  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> columns_;
};

}  // namespace detail

/// Brute-force homology dimension at a single scale, straight from the
/// definition: dim H_k = dim ker d_k - rank d_{k+1}, computed by dense
/// Gaussian elimination over F2 on the complex restricted to scale <= t.
/// Independent of reduce_and_pair; exists to cross-check it.
inline int homology_at_scale_oracle(const Filtration& f, int degree, double t) {
  if (degree < 0 || degree > 1) throw std::invalid_argument("homology_at_scale_oracle: degree must be 0 or 1");
  if (t > f.max_scale()) throw std::invalid_argument("homology_at_scale_oracle: t beyond max_scale");

  std::array<std::vector<Simplex>, 3> simplices;
  for (const auto& e : f.entries()) {
    if (e.scale <= t) simplices[static_cast<std::size_t>(e.simplex.dim())].push_back(e.simplex);
  }
  std::array<std::unordered_map<std::uint64_t, std::size_t>, 3> index;
  for (int k = 0; k <= 2; ++k) {
    for (std::size_t i = 0; i < simplices[k].size(); ++i) {
      index[k].emplace(detail::simplex_key(simplices[k][i]), i);
    }
  }

  const auto boundary_rank = [&](int k) -> std::size_t {
    if (k < 1 || k > 2 || simplices[k].empty() || simplices[k - 1].empty()) return 0;
    detail::F2Matrix mat(simplices[k - 1].size(), simplices[k].size());
    for (std::size_t j = 0; j < simplices[k].size(); ++j) {
      for (int i = 0; i <= k; ++i) {
        mat.set(index[k - 1].at(detail::simplex_key(face(simplices[k][j], i))), j);
      }
    }
    return mat.rank();
  };

  const std::size_t n_k = simplices[static_cast<std::size_t>(degree)].size();
  const std::size_t kernel_dim = n_k - boundary_rank(degree);  // d_0 is the zero map
  return static_cast<int>(kernel_dim - boundary_rank(degree + 1));
}

}  // namespace stablerank
