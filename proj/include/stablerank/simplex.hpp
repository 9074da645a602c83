#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace stablerank {

/// An abstract simplex of dimension <= 2, stored as a strictly increasing
/// vertex list. dim() == -1 is the empty simplex (the face of a vertex).
struct Simplex {
  std::array<std::int32_t, 3> v{-1, -1, -1};
  std::int8_t k = -1;

  Simplex() = default;

  static Simplex empty() { return Simplex{}; }

  static Simplex vertex(std::int32_t a) {
    Simplex s;
    s.v[0] = a;
    s.k = 0;
    return s;
  }

  static Simplex edge(std::int32_t a, std::int32_t b) {
    if (!(a < b)) throw std::invalid_argument("Simplex: vertices must be strictly increasing");
    Simplex s;
    s.v[0] = a;
    s.v[1] = b;
    s.k = 1;
    return s;
  }

  static Simplex triangle(std::int32_t a, std::int32_t b, std::int32_t c) {
    if (!(a < b && b < c)) throw std::invalid_argument("Simplex: vertices must be strictly increasing");
    Simplex s;
    s.v = {a, b, c};
    s.k = 2;
    return s;
  }

  static Simplex from_vertices(const std::vector<std::int32_t>& vs) {
    switch (vs.size()) {
      case 0: return empty();
      case 1: return vertex(vs[0]);
      case 2: return edge(vs[0], vs[1]);
      case 3: return triangle(vs[0], vs[1], vs[2]);
      default: throw std::invalid_argument("Simplex: dimension above 2 is not supported");
    }
  }

  int dim() const { return k; }
  std::size_t vertex_count() const { return static_cast<std::size_t>(k + 1); }

  friend bool operator==(const Simplex& a, const Simplex& b) { return a.k == b.k && a.v == b.v; }

  /// Orders by dimension, then lexicographically by vertex list.
  friend bool operator<(const Simplex& a, const Simplex& b) {
    if (a.k != b.k) return a.k < b.k;
    return a.v < b.v;
  }

  friend std::ostream& operator<<(std::ostream& os, const Simplex& s) {
    os << '[';
    for (int i = 0; i <= s.k; ++i) os << (i ? "," : "") << s.v[i];
    return os << ']';
  }
};

/// Face map: removes the i-th vertex (in the fixed increasing vertex order).
inline Simplex face(const Simplex& s, int i) {
  if (i < 0 || i > s.dim()) throw std::out_of_range("face: index out of range");
  std::vector<std::int32_t> rest;
  rest.reserve(s.vertex_count() - 1);
  for (int j = 0; j <= s.dim(); ++j) {
    if (j != i) rest.push_back(s.v[j]);
  }
  return Simplex::from_vertices(rest);
}

}  // namespace stablerank
