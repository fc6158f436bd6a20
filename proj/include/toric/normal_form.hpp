#pragma once

#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/matrix.hpp"

namespace toric {

// H = U * A with U unimodular and H in row-style Hermite normal form:
// row echelon, pivots positive, entries above a pivot reduced into [0, pivot),
// zero rows last.
struct HermiteDecomposition {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};

inline HermiteDecomposition hnf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  HermiteDecomposition out{a, IntMatrix::identity(m), 0};
  IntMatrix& h = out.H;
  IntMatrix& u = out.U;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // Repeatedly reduce rows r..m-1 against the smallest nonzero entry of
    // this column until a single nonzero survives at row r.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (h(i, c) == 0) continue;
        if (best == m || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == m) break;  // column is zero below r
      if (best != r) {
        h.swap_rows(best, r);
        u.swap_rows(best, r);
      }
      bool cleared = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Int q = h(i, c) / h(r, c);
        if (q != 0) {
          h.add_row_multiple(i, r, -q);
          u.add_row_multiple(i, r, -q);
        }
        if (h(i, c) != 0) cleared = false;
      }
      if (cleared) {
        if (h(r, c) < 0) {
          h.negate_row(r);
          u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
          Int q = floor_div(h(i, c), h(r, c));
          if (q != 0) {
            h.add_row_multiple(i, r, -q);
            u.add_row_multiple(i, r, -q);
          }
        }
        ++r;
        break;
      }
    }
  }
  out.rank = r;
  return out;
}

// U * A * V = D with U, V unimodular and D diagonal, nonnegative, each
// diagonal entry dividing the next; zeros trail.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;
};

inline SmithDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithDecomposition out{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
  IntMatrix& u = out.U;
  IntMatrix& d = out.D;
  IntMatrix& v = out.V;
  const std::size_t t_end = m < n ? m : n;
  std::size_t t = 0;
  for (; t < t_end; ++t) {
    for (;;) {
      // Bring the smallest nonzero entry of the trailing block to (t, t).
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          if (pi == m || abs(d(i, j)) < abs(d(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) break;  // trailing block is zero
      if (pi != t) {
        d.swap_rows(pi, t);
        u.swap_rows(pi, t);
      }
      if (pj != t) {
        d.swap_cols(pj, t);
        v.swap_cols(pj, t);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        if (q != 0) {
          d.add_row_multiple(i, t, -q);
          u.add_row_multiple(i, t, -q);
        }
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        if (q != 0) {
          d.add_col_multiple(j, t, -q);
          v.add_col_multiple(j, t, -q);
        }
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Pivot is alone in its row and column; enforce divisibility into the
      // remaining block by folding a bad row into row t.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row_multiple(t, i, Int(1));
            u.add_row_multiple(t, i, Int(1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (d(t, t) == 0) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  std::size_t r = 0;
  while (r < t_end && d(r, r) != 0) ++r;
  out.rank = r;
  return out;
}

// A sublattice of Z^n, stored as a canonical Hermite basis (one row per basis
// vector, no zero rows). Two LatticeBasis objects describe the same lattice
// exactly when their stored bases are equal.
class LatticeBasis {
 public:
  explicit LatticeBasis(std::size_t ambient_dimension)
      : ambient_(ambient_dimension), basis_(0, ambient_dimension) {}

  // Rows of `generators` span the lattice; they may be redundant or dependent.
  static LatticeBasis from_generators(std::size_t ambient_dimension,
                                      const IntMatrix& generators) {
    if (generators.cols() != ambient_dimension && generators.rows() != 0)
      throw std::invalid_argument("LatticeBasis: generator length mismatch");
    LatticeBasis out(ambient_dimension);
    if (generators.rows() == 0) return out;
    HermiteDecomposition hd = hnf(generators);
    IntMatrix b(hd.rank, ambient_dimension);
    for (std::size_t i = 0; i < hd.rank; ++i)
      for (std::size_t j = 0; j < ambient_dimension; ++j) b(i, j) = hd.H(i, j);
    out.basis_ = b;
    return out;
  }

  std::size_t ambient_dimension() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  bool is_full() const {
    return rank() == ambient_ && basis_ == IntMatrix::identity(ambient_);
  }

  // Membership by exact division against the echelon basis.
  bool contains(const IntVec& v) const {
    if (v.size() != ambient_)
      throw std::invalid_argument("LatticeBasis::contains: length mismatch");
    IntVec w = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      std::size_t p = 0;
      while (basis_(i, p) == 0) ++p;  // pivot column of row i
      if (w[p] == 0) continue;
      if (w[p] % basis_(i, p) != 0) return false;
      Int q = w[p] / basis_(i, p);
      for (std::size_t j = p; j < ambient_; ++j) w[j] -= q * basis_(i, j);
    }
    return is_zero(w);
  }

  // Nonzero diagonal of the Smith form of the basis; length equals rank().
  std::vector<Int> elementary_divisors() const {
    SmithDecomposition sd = snf(basis_);
    std::vector<Int> div(sd.rank);
    for (std::size_t i = 0; i < sd.rank; ++i) div[i] = sd.D(i, i);
    return div;
  }

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const LatticeBasis& a, const LatticeBasis& b) {
    return !(a == b);
  }

 private:
  std::size_t ambient_;
  IntMatrix basis_;
};

// Divisors of a lattice viewed inside an ambient rank; the padding zeros up
// to ambient_rank are conceptual (never materialized), so this returns
// exactly rank() entries.
inline std::vector<Int> elementary_divisors(const LatticeBasis& l,
                                            std::size_t ambient_rank) {
  if (ambient_rank < l.rank())
    throw std::invalid_argument("elementary_divisors: ambient rank below lattice rank");
  return l.elementary_divisors();
}

inline bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.ambient_dimension() != b.ambient_dimension())
    throw std::invalid_argument("lattice_equal: ambient dimension mismatch");
  return a == b;
}

// Integer kernel {x : A x = 0} of an m x n integer matrix, via the Smith
// decomposition: the last n - rank columns of V span it, and the kernel of a
// matrix is always saturated.
inline LatticeBasis kernel_basis(const IntMatrix& a) {
  const std::size_t n = a.cols();
  SmithDecomposition sd = snf(a);
  IntMatrix gens(n - sd.rank, n);
  for (std::size_t k = 0; k < gens.rows(); ++k)
    for (std::size_t j = 0; j < n; ++j) gens(k, j) = sd.V(j, sd.rank + k);
  return LatticeBasis::from_generators(n, gens);
}

inline std::string format_divisors(const std::vector<Int>& div) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < div.size(); ++i) {
    if (i) os << ",";
    os << div[i];
  }
  os << ")";
  return os.str();
}

}  // namespace toric
