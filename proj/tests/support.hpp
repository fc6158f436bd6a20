#pragma once

// Shared helpers for the test suites: seeded random generators for
// configurations, maps, matrices, and polygons, plus oracles that are
// deliberately independent of the library paths they check.

#include <algorithm>
#include <cstddef>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "toric/toric.hpp"

namespace toric_test {

using Rng = std::mt19937_64;
using toric::Int;
using toric::IntVec;
using toric::Rat;

inline long rand_range(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline IntVec random_point(Rng& rng, std::size_t d, long bound) {
  IntVec p(d);
  for (std::size_t j = 0; j < d; ++j) p[j] = rand_range(rng, -bound, bound);
  return p;
}

inline toric::PointConfiguration random_configuration(Rng& rng, std::size_t d,
                                                      std::size_t n, long bound) {
  std::vector<IntVec> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point(rng, d, bound));
  return toric::PointConfiguration(d, std::move(pts));
}

inline toric::PointConfiguration random_generating_configuration(
    Rng& rng, std::size_t d, std::size_t n_min, std::size_t n_max, long bound) {
  const std::size_t lo = std::max(n_min, d + 1);
  for (;;) {
    std::size_t n = static_cast<std::size_t>(
        rand_range(rng, static_cast<long>(lo), static_cast<long>(n_max)));
    toric::PointConfiguration s = random_configuration(rng, d, n, bound);
    if (toric::is_affinely_generating(s)) return s;
  }
}

inline toric::IntMatrix random_matrix(Rng& rng, std::size_t rows,
                                      std::size_t cols, long bound) {
  toric::IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rand_range(rng, -bound, bound);
  return m;
}

inline toric::AffineMap random_unimodular_map(Rng& rng, std::size_t d,
                                              long entry_bound,
                                              long translation_bound) {
  for (;;) {
    toric::IntMatrix a = random_matrix(rng, d, d, entry_bound);
    Int det = toric::determinant(a);
    if (det != 1 && det != -1) continue;
    IntVec b(d);
    for (std::size_t j = 0; j < d; ++j)
      b[j] = rand_range(rng, -translation_bound, translation_bound);
    return toric::AffineMap{std::move(a), std::move(b)};
  }
}

// Generators of a solid random lattice polygon: points in [-bound, bound]^2
// whose affine span is the whole plane.
inline std::vector<IntVec> random_solid_polygon(Rng& rng, long bound,
                                                std::size_t max_points) {
  for (;;) {
    std::size_t n = static_cast<std::size_t>(
        rand_range(rng, 3, static_cast<long>(max_points)));
    std::vector<IntVec> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point(rng, 2, bound));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) continue;
    std::vector<IntVec> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i)
      diffs.push_back(toric::sub(pts[i], pts[0]));
    if (toric::rank(toric::IntMatrix::from_rows(2, diffs)) == 2) return pts;
  }
}

// Cofactor expansion along the first row; independent of the fraction-free
// elimination used by the library.
inline Int minor_determinant(const toric::IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Int(1);
  if (n == 1) return m(0, 0);
  Int acc(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    toric::IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    Int term = m(0, j) * minor_determinant(minor);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

// Validates the canonical Hermite shape: echelon with strictly increasing
// pivot columns, positive pivots, entries above each pivot in [0, pivot),
// zero rows last.
inline bool is_canonical_hnf(const toric::IntMatrix& h) {
  long prev_pivot_col = -1;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (p == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (static_cast<long>(p) <= prev_pivot_col) return false;
    prev_pivot_col = static_cast<long>(p);
    if (h(i, p) <= 0) return false;
    for (std::size_t r = 0; r < i; ++r)
      if (h(r, p) < 0 || h(r, p) >= h(i, p)) return false;
  }
  return true;
}

namespace bf {

// Small self-contained rational elimination, so the facet oracle does not
// lean on the library's row reduction.
inline std::size_t rat_rank(std::vector<std::vector<Rat>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      Rat f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
    if (rank == rows.size()) break;
  }
  return rank;
}

// One-dimensional rational nullspace of the given rows (returns empty if the
// nullspace dimension differs from 1), scaled to a primitive integer vector.
inline IntVec primitive_nullspace(const std::vector<std::vector<Rat>>& rows,
                                  std::size_t cols) {
  std::vector<std::vector<Rat>> work = rows;
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < work.size(); ++c) {
    std::size_t p = rank;
    while (p < work.size() && work[p][c] == 0) ++p;
    if (p == work.size()) continue;
    std::swap(work[p], work[rank]);
    Rat piv = work[rank][c];
    for (std::size_t j = 0; j < cols; ++j) work[rank][j] /= piv;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (i == rank || work[i][c] == 0) continue;
      Rat f = work[i][c];
      for (std::size_t j = 0; j < cols; ++j) work[i][j] -= f * work[rank][j];
    }
    pivot_of_col[c] = static_cast<long>(rank);
    ++rank;
  }
  if (cols - rank != 1) return {};
  std::size_t free_col = 0;
  while (pivot_of_col[free_col] != -1) ++free_col;
  std::vector<Rat> sol(cols, Rat(0));
  sol[free_col] = 1;
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] != -1)
      sol[c] = -work[static_cast<std::size_t>(pivot_of_col[c])][free_col];
  Int lcm(1);
  for (const Rat& q : sol)
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(q));
  IntVec v(cols);
  for (std::size_t c = 0; c < cols; ++c)
    v[c] = boost::multiprecision::numerator(sol[c] * Rat(lcm));
  Int g(0);
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

}  // namespace bf

// Brute-force facet enumeration for a full-dimensional point set in Z^k:
// every k-subset that spans a hyperplane proposes it; supporting hyperplanes
// are kept, oriented inward, primitive, deduplicated.
inline std::vector<std::pair<IntVec, Int>> brute_force_facets(
    const std::vector<IntVec>& pts, std::size_t k) {
  std::set<std::pair<IntVec, Int>> facets;
  const std::size_t n = pts.size();
  std::vector<std::size_t> idx(k);
  auto consider = [&]() {
    std::vector<std::vector<Rat>> diffs;
    for (std::size_t i = 1; i < k; ++i) {
      std::vector<Rat> row(k);
      for (std::size_t j = 0; j < k; ++j)
        row[j] = Rat(pts[idx[i]][j] - pts[idx[0]][j]);
      diffs.push_back(std::move(row));
    }
    IntVec normal = bf::primitive_nullspace(diffs, k);
    if (normal.empty()) return;
    Int offset = toric::dot(normal, pts[idx[0]]);
    bool all_le = true, all_ge = true;
    for (const IntVec& p : pts) {
      Int v = toric::dot(normal, p);
      if (v > offset) all_le = false;
      if (v < offset) all_ge = false;
    }
    if (all_le) facets.insert({normal, offset});
    if (all_ge) {
      IntVec neg = normal;
      for (Int& x : neg) x = -x;
      facets.insert({neg, -offset});
    }
  };
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
    if (pos == k) {
      consider();
      return;
    }
    for (std::size_t i = start; i + (k - pos - 1) < n; ++i) {
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  if (k >= 1 && n >= k) rec(rec, 0, 0);
  return std::vector<std::pair<IntVec, Int>>(facets.begin(), facets.end());
}

}  // namespace toric_test
