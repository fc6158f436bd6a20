#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toric/matrix.hpp"
#include "toric/normal_form.hpp"
#include "toric/point_configuration.hpp"

namespace toric {

// A full-rank lattice M in Q^d, given by a rational basis (rows generate M).
// The default is Z^d itself. Points of M are handled in lattice coordinates:
// the coordinate vector c of an ambient point x satisfies x = sum c_i row_i.
class AmbientLattice {
 public:
  explicit AmbientLattice(std::size_t dimension)
      : dim_(dimension),
        basis_(RatMatrix::identity(dimension)),
        inv_(RatMatrix::identity(dimension)) {}

  explicit AmbientLattice(RatMatrix basis) : dim_(basis.rows()), basis_(std::move(basis)) {
    if (basis_.cols() != dim_)
      throw std::invalid_argument("AmbientLattice: basis matrix not square");
    try {
      inv_ = inverse(basis_);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("AmbientLattice: basis is singular");
    }
  }

  std::size_t dimension() const { return dim_; }
  const RatMatrix& basis() const { return basis_; }

  bool is_standard() const { return basis_ == RatMatrix::identity(dim_); }

  // c = x * basis^{-1} (x as a row vector).
  RatVec to_lattice(const RatVec& x) const {
    if (x.size() != dim_)
      throw std::invalid_argument("AmbientLattice::to_lattice: length mismatch");
    RatVec c(dim_, Rat(0));
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t i = 0; i < dim_; ++i) c[j] += x[i] * inv_(i, j);
    return c;
  }

  RatVec to_ambient(const RatVec& c) const {
    if (c.size() != dim_)
      throw std::invalid_argument("AmbientLattice::to_ambient: length mismatch");
    RatVec x(dim_, Rat(0));
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t i = 0; i < dim_; ++i) x[j] += c[i] * basis_(i, j);
    return x;
  }

  friend bool operator==(const AmbientLattice& a, const AmbientLattice& b) {
    return a.dim_ == b.dim_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t dim_;
  RatMatrix basis_;
  RatMatrix inv_;
};

// normal . x <= offset, in lattice coordinates, with primitive integer normal.
struct Halfspace {
  IntVec normal;
  Int offset;
  friend bool operator==(const Halfspace& a, const Halfspace& b) {
    return a.normal == b.normal && a.offset == b.offset;
  }
};

// normal . x = offset; present only for lower-dimensional polytopes.
struct HyperplaneEquation {
  IntVec normal;
  Int offset;
  friend bool operator==(const HyperplaneEquation& a, const HyperplaneEquation& b) {
    return a.normal == b.normal && a.offset == b.offset;
  }
};

// Exact H-representation inside the affine hull: the equations cut out the
// hull, the inequalities are irredundant facets of the polytope within it.
struct HalfspaceRep {
  std::vector<HyperplaneEquation> equations;
  std::vector<Halfspace> inequalities;
};

namespace detail {

inline Int vec_gcd(const IntVec& v) {
  Int g(0);
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

// Facets of the full-dimensional polytope conv(pts) in Z^k, k >= 1, as pairs
// (primitive normal a, support value c) with a.t <= c. Fourier-Motzkin: the
// convex hull is written as a projection of the simplex of barycentric
// weights, the weight variables are eliminated one by one, and the surviving
// directions are filtered down to genuine facets by the rank of their contact
// sets.
inline std::vector<std::pair<IntVec, Int>> facet_enumeration(
    const std::vector<IntVec>& pts, std::size_t k) {
  const std::size_t n = pts.size();
  // Solve the coupling equations x = sum l_i p_i, sum l_i = 1 for k+1 of the
  // weights. Columns: x_0..x_{k-1}, l_0..l_{n-1}, rhs.
  RatMatrix sys(k + 1, k + n + 1);
  for (std::size_t c = 0; c < k; ++c) {
    sys(c, c) = -1;
    for (std::size_t i = 0; i < n; ++i) sys(c, k + i) = Rat(pts[i][c]);
  }
  for (std::size_t i = 0; i < n; ++i) sys(k, k + i) = 1;
  sys(k, k + n) = 1;
  std::vector<std::size_t> pivot_cols;
  std::vector<bool> is_pivot(n, false);
  std::size_t r = 0;
  for (std::size_t c = k; c < k + n && r < k + 1; ++c) {
    std::size_t p = r;
    while (p < k + 1 && sys(p, c) == 0) ++p;
    if (p == k + 1) continue;
    sys.swap_rows(p, r);
    Rat piv = sys(r, c);
    for (std::size_t j = 0; j < k + n + 1; ++j) sys(r, j) /= piv;
    for (std::size_t i = 0; i < k + 1; ++i) {
      if (i == r || sys(i, c) == 0) continue;
      Rat f = sys(i, c);
      for (std::size_t j = 0; j < k + n + 1; ++j) sys(i, j) -= f * sys(r, j);
    }
    pivot_cols.push_back(c);
    is_pivot[c - k] = true;
    ++r;
  }
  if (r != k + 1)
    throw std::logic_error("facet_enumeration: weight system rank deficient");
  // Inequality rows over the free variables [x_0..x_{k-1}, free weights],
  // stored as integer vectors (coefficients..., bound) meaning coeff.v <= bound.
  std::vector<std::size_t> free_cols;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_pivot[i]) free_cols.push_back(k + i);
  const std::size_t m = free_cols.size();
  const std::size_t width = k + m + 1;
  // Each inequality carries the set of starting rows it combines, as a
  // bitmask. After j eliminations any combination of more than j+1 starting
  // rows is redundant (Imbert's criterion), which keeps the row count tame.
  const std::size_t hist_words = (k + 1 + m + 63) / 64;
  struct FmRow {
    IntVec row;
    std::vector<std::uint64_t> hist;
  };
  auto hist_count = [](const std::vector<std::uint64_t>& h) {
    std::size_t c = 0;
    for (std::uint64_t w : h) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  };
  std::vector<FmRow> rows;
  auto singleton_hist = [&](std::size_t idx) {
    std::vector<std::uint64_t> h(hist_words, 0);
    h[idx / 64] |= std::uint64_t(1) << (idx % 64);
    return h;
  };
  auto push_scaled = [&](const RatVec& coeff, const Rat& bound) {
    Int lcm(1);
    for (const Rat& q : coeff)
      lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(q));
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(bound));
    IntVec row(width);
    for (std::size_t i = 0; i < k + m; ++i)
      row[i] = boost::multiprecision::numerator(coeff[i] * Rat(lcm));
    row[k + m] = boost::multiprecision::numerator(bound * Rat(lcm));
    Int g = vec_gcd(row);
    if (g > 1)
      for (Int& x : row) x /= g;
    rows.push_back({std::move(row), singleton_hist(rows.size())});
  };
  // Each eliminated weight must stay nonnegative: l_pivot = rhs - (other
  // terms) >= 0 becomes (other terms) <= rhs.
  for (std::size_t rr = 0; rr < k + 1; ++rr) {
    RatVec coeff(k + m, Rat(0));
    for (std::size_t j = 0; j < k; ++j) coeff[j] = sys(rr, j);
    for (std::size_t j = 0; j < m; ++j) coeff[k + j] = sys(rr, free_cols[j]);
    push_scaled(coeff, sys(rr, k + n));
  }
  // The free weights carry their own sign constraints: -l <= 0.
  for (std::size_t j = 0; j < m; ++j) {
    IntVec row(width, Int(0));
    row[k + j] = -1;
    rows.push_back({std::move(row), singleton_hist(rows.size())});
  }
  // Eliminate the free-weight columns, cheapest column first.
  std::vector<std::size_t> remaining;
  for (std::size_t v = k; v < k + m; ++v) remaining.push_back(v);
  for (std::size_t round = 1; !remaining.empty(); ++round) {
    std::size_t best = 0;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t c = 0; c < remaining.size(); ++c) {
      std::size_t np = 0, nn = 0;
      for (const FmRow& fr : rows) {
        if (fr.row[remaining[c]] > 0) ++np;
        if (fr.row[remaining[c]] < 0) ++nn;
      }
      const std::size_t cost = np * nn;
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    const std::size_t v = remaining[best];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    std::vector<FmRow> pos, neg, next;
    for (FmRow& fr : rows) {
      if (fr.row[v] > 0)
        pos.push_back(std::move(fr));
      else if (fr.row[v] < 0)
        neg.push_back(std::move(fr));
      else
        next.push_back(std::move(fr));
    }
    for (const FmRow& p : pos)
      for (const FmRow& q : neg) {
        std::vector<std::uint64_t> hist(hist_words);
        for (std::size_t w = 0; w < hist_words; ++w)
          hist[w] = p.hist[w] | q.hist[w];
        if (hist_count(hist) > round + 1) continue;
        IntVec row(width);
        bool nonzero = false;
        for (std::size_t j = 0; j < width; ++j) {
          row[j] = -q.row[v] * p.row[j] + p.row[v] * q.row[j];
          if (j < k + m && row[j] != 0) nonzero = true;
        }
        if (!nonzero) {
          if (row[width - 1] < 0)
            throw std::logic_error("facet_enumeration: infeasible combination");
          continue;
        }
        Int g = vec_gcd(row);
        if (g > 1)
          for (Int& x : row) x /= g;
        next.push_back({std::move(row), std::move(hist)});
      }
    // Sort by coefficients, then bound: of two rows with the same direction
    // the smaller bound implies the other, so each run collapses to its head.
    std::sort(next.begin(), next.end(), [&](const FmRow& a, const FmRow& b) {
      return a.row < b.row;
    });
    std::vector<FmRow> kept;
    for (FmRow& fr : next) {
      if (!kept.empty() &&
          std::equal(fr.row.begin(), fr.row.end() - 1,
                     kept.back().row.begin(), kept.back().row.end() - 1))
        continue;
      kept.push_back(std::move(fr));
    }
    rows = std::move(kept);
  }
  // Surviving directions: recompute the support value against the generators
  // and keep directions whose contact set spans a facet.
  std::vector<std::pair<IntVec, Int>> facets;
  for (const FmRow& fm_row : rows) {
    const IntVec& row = fm_row.row;
    IntVec a(row.begin(), row.begin() + k);
    if (is_zero(a)) continue;
    Int g = vec_gcd(a);
    if (g > 1)
      for (Int& x : a) x /= g;
    Int support = dot(a, pts[0]);
    for (std::size_t i = 1; i < n; ++i) {
      Int val = dot(a, pts[i]);
      if (val > support) support = val;
    }
    std::vector<IntVec> contact;
    for (const IntVec& p : pts)
      if (dot(a, p) == support) contact.push_back(p);
    std::vector<IntVec> diffs;
    for (std::size_t i = 1; i < contact.size(); ++i)
      diffs.push_back(sub(contact[i], contact[0]));
    std::size_t contact_rank =
        diffs.empty() ? 0 : rank(IntMatrix::from_rows(k, diffs));
    if (contact_rank + 1 == k) facets.emplace_back(std::move(a), std::move(support));
  }
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  return facets;
}

}  // namespace detail

// Convex hull of finitely many points of an ambient lattice M. All geometry
// is carried out in lattice coordinates; lower-dimensional polytopes are
// handled through a unimodular change of coordinates that flattens the affine
// hull onto the leading coordinates.
class LatticePolytope {
 public:
  // Generators in ambient coordinates; they must lie in M.
  LatticePolytope(AmbientLattice ambient, const std::vector<IntVec>& points)
      : ambient_(std::move(ambient)) {
    std::vector<IntVec> coords;
    coords.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      RatVec c = ambient_.to_lattice(to_rational(points[i]));
      for (const Rat& q : c)
        if (!is_integer(q)) {
          std::ostringstream os;
          os << "generator " << i << " is not a point of the ambient lattice";
          throw std::invalid_argument(os.str());
        }
      coords.push_back(to_integer(c));
    }
    init(std::move(coords));
  }

  // Generators already in lattice coordinates.
  static LatticePolytope from_lattice_coords(AmbientLattice ambient,
                                             std::vector<IntVec> coords) {
    return LatticePolytope(std::move(ambient), std::move(coords), 0);
  }

  const AmbientLattice& ambient() const { return ambient_; }
  std::size_t dimension() const { return ambient_.dimension(); }
  const std::vector<IntVec>& generators() const { return gens_; }
  std::size_t affine_dimension() const { return hull_dim_; }
  const HalfspaceRep& halfspaces() const { return rep_; }
  const std::vector<IntVec>& vertices() const { return vertices_; }

  bool is_solid() const { return hull_dim_ == dimension(); }

  // Points of the ambient lattice inside the polytope, in lattice
  // coordinates, lexicographic order. Enumerates the bounding box in hull
  // coordinates and filters by the facet inequalities.
  PointConfiguration lattice_points() const {
    const std::size_t d = dimension();
    const std::size_t k = hull_dim_;
    if (k == 0) return PointConfiguration(d, {base_});
    IntVec lo = tpts_[0], hi = tpts_[0];
    for (const IntVec& t : tpts_)
      for (std::size_t j = 0; j < k; ++j) {
        if (t[j] < lo[j]) lo[j] = t[j];
        if (t[j] > hi[j]) hi[j] = t[j];
      }
    std::vector<IntVec> found;
    IntVec t = lo;
    for (;;) {
      bool inside = true;
      for (const auto& [a, c] : tfacets_)
        if (dot(a, t) > c) {
          inside = false;
          break;
        }
      if (inside) {
        IntVec pad(d, Int(0));
        for (std::size_t j = 0; j < k; ++j) pad[j] = t[j];
        found.push_back(add(base_, u_inv_ * pad));
      }
      std::size_t pos = k;
      while (pos > 0 && t[pos - 1] == hi[pos - 1]) {
        t[pos - 1] = lo[pos - 1];
        --pos;
      }
      if (pos == 0) break;
      ++t[pos - 1];
    }
    return PointConfiguration(d, std::move(found));
  }

  // Alias kept for the relative-lattice reading: the points of M inside the
  // polytope, expressed in M-coordinates.
  PointConfiguration relative_points() const { return lattice_points(); }

  bool is_Z_solid() const { return is_affinely_generating(lattice_points()); }

 private:
  LatticePolytope(AmbientLattice ambient, std::vector<IntVec> coords, int)
      : ambient_(std::move(ambient)) {
    init(std::move(coords));
  }

  void init(std::vector<IntVec> coords) {
    const std::size_t d = ambient_.dimension();
    if (coords.empty())
      throw std::invalid_argument("LatticePolytope: no generators");
    for (const IntVec& c : coords)
      if (c.size() != d)
        throw std::invalid_argument("LatticePolytope: generator length mismatch");
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    gens_ = std::move(coords);
    base_ = gens_[0];
    const std::size_t n = gens_.size();
    IntMatrix diff_rows(n - 1, d);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j)
        diff_rows(i - 1, j) = gens_[i][j] - base_[j];
    hull_dim_ = rank(diff_rows);
    const std::size_t k = hull_dim_;
    if (k == d) {
      u_ = IntMatrix::identity(d);
      u_inv_ = u_;
    } else {
      IntMatrix diff_cols = transpose(diff_rows);
      SmithDecomposition sd = snf(diff_cols);
      u_ = sd.U;
      u_inv_ = unimodular_inverse(u_);
    }
    tpts_.reserve(n);
    for (const IntVec& g : gens_) {
      IntVec w = u_ * sub(g, base_);
      for (std::size_t j = k; j < d; ++j)
        if (w[j] != 0)
          throw std::logic_error("LatticePolytope: hull flattening failed");
      w.resize(k);
      tpts_.push_back(std::move(w));
    }
    if (k > 0) tfacets_ = detail::facet_enumeration(tpts_, k);
    // Affine hull equations: the integer kernel of the difference rows gives
    // the normals, canonically ordered by the kernel's Hermite basis.
    LatticeBasis eq = kernel_basis(diff_rows);
    for (std::size_t i = 0; i < eq.rank(); ++i) {
      IntVec normal = eq.basis().row(i);
      rep_.equations.push_back({normal, dot(normal, base_)});
    }
    // Facet inequalities lifted back to lattice coordinates: a facet (a, c)
    // in hull coordinates pulls back along t = (U (x - base)) restricted to
    // the leading k entries; the lifted normal is automatically primitive
    // because U is unimodular.
    for (const auto& [a, c] : tfacets_) {
      IntVec normal(d, Int(0));
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < k; ++i) normal[j] += a[i] * u_(i, j);
      rep_.inequalities.push_back({normal, c + dot(normal, base_)});
    }
    std::sort(rep_.inequalities.begin(), rep_.inequalities.end(),
              [](const Halfspace& x, const Halfspace& y) {
                return x.normal != y.normal ? x.normal < y.normal
                                            : x.offset < y.offset;
              });
    // Vertices: generators whose tight facet normals span the hull.
    if (k == 0) {
      vertices_ = gens_;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<IntVec> tight;
        for (const auto& [a, c] : tfacets_)
          if (dot(a, tpts_[i]) == c) tight.push_back(a);
        if (!tight.empty() &&
            rank(IntMatrix::from_rows(k, tight)) == k)
          vertices_.push_back(gens_[i]);
      }
    }
  }

  AmbientLattice ambient_;
  std::vector<IntVec> gens_;
  IntVec base_;
  std::size_t hull_dim_ = 0;
  IntMatrix u_, u_inv_;
  std::vector<IntVec> tpts_;
  std::vector<std::pair<IntVec, Int>> tfacets_;
  HalfspaceRep rep_;
  std::vector<IntVec> vertices_;
};

}  // namespace toric
