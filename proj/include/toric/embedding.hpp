#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toric/matrix.hpp"
#include "toric/normal_form.hpp"
#include "toric/point_configuration.hpp"

namespace toric {

// The monomial map t |-> [t^{m_0} : ... : t^{m_r} : 0 : ... : 0] into P^N
// determined by a point configuration, with r + 1 = #S and N >= r. The
// coordinates beyond r are structurally zero and never affect equality or
// equivalence; all computation happens in the leading r + 1 coordinates.
class MonomialEmbedding {
 public:
  explicit MonomialEmbedding(PointConfiguration config)
      : config_(std::move(config)), n_(config_.size() - 1) {}

  MonomialEmbedding(PointConfiguration config, std::size_t projective_dimension)
      : config_(std::move(config)), n_(projective_dimension) {
    if (config_.size() > n_ + 1)
      throw std::invalid_argument("MonomialEmbedding: cardinality exceeds N + 1");
  }

  const PointConfiguration& config() const { return config_; }
  std::size_t r() const { return config_.size() - 1; }
  std::size_t N() const { return n_; }

 private:
  PointConfiguration config_;
  std::size_t n_;
};

// (d+1) x n matrix whose columns are (1, m_i) for the given enumeration.
inline IntMatrix homogenized_matrix(const std::vector<IntVec>& pts,
                                    std::size_t dimension) {
  IntMatrix m(dimension + 1, pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].size() != dimension)
      throw std::invalid_argument("homogenized_matrix: point length mismatch");
    m(0, i) = 1;
    for (std::size_t j = 0; j < dimension; ++j) m(j + 1, i) = pts[i][j];
  }
  return m;
}

// Integer kernel of the homogenized matrix for an explicitly ordered
// enumeration. The order matters: it fixes which projective coordinate each
// point governs, so transported enumerations must use this overload.
inline LatticeBasis relation_lattice(const std::vector<IntVec>& pts,
                                     std::size_t dimension) {
  return kernel_basis(homogenized_matrix(pts, dimension));
}

struct RelationLattice {
  LatticeBasis lattice;
  std::size_t r = 0;
};

inline RelationLattice relation_lattice(const MonomialEmbedding& e) {
  return RelationLattice{
      relation_lattice(e.config().points(), e.config().ambient_dimension()),
      e.r()};
}

// A point of P^N by exact homogeneous coordinates, canonicalized so the first
// nonzero coordinate is 1.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(RatVec homogeneous) : coords_(std::move(homogeneous)) {
    std::size_t p = 0;
    while (p < coords_.size() && coords_[p] == 0) ++p;
    if (p == coords_.size())
      throw std::invalid_argument("ProjectivePoint: all coordinates zero");
    Rat scale = coords_[p];
    for (Rat& c : coords_) c /= scale;
  }

  const RatVec& coordinates() const { return coords_; }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const ProjectivePoint& a, const ProjectivePoint& b) {
    return !(a == b);
  }

 private:
  RatVec coords_;
};

namespace detail {

inline Rat rat_pow(const Rat& base, const Int& e) {
  if (e == 0) return Rat(1);
  Rat b = base;
  Int exp = e;
  if (exp < 0) {
    if (b == 0) throw std::invalid_argument("rat_pow: zero base, negative exponent");
    b = Rat(1) / b;
    exp = -exp;
  }
  Rat acc(1);
  while (exp > 0) {
    if ((exp & 1) != 0) acc *= b;
    b *= b;
    exp >>= 1;
  }
  return acc;
}

inline Rat monomial_value(const RatVec& t, const IntVec& exponents) {
  Rat acc(1);
  for (std::size_t j = 0; j < exponents.size(); ++j)
    acc *= rat_pow(t[j], exponents[j]);
  return acc;
}

inline std::vector<unsigned long> first_primes(std::size_t count) {
  std::vector<unsigned long> primes;
  unsigned long c = 2;
  while (primes.size() < count) {
    bool prime = true;
    for (unsigned long p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
    ++c;
  }
  return primes;
}

}  // namespace detail

inline ProjectivePoint orbit_point(const MonomialEmbedding& e, const RatVec& t) {
  const std::size_t d = e.config().ambient_dimension();
  if (t.size() != d)
    throw std::invalid_argument("orbit_point: parameter length mismatch");
  for (const Rat& c : t)
    if (c == 0)
      throw std::invalid_argument("orbit_point: zero coordinate in parameter");
  RatVec coords(e.N() + 1, Rat(0));
  for (std::size_t i = 0; i <= e.r(); ++i)
    coords[i] = detail::monomial_value(t, e.config()[i]);
  return ProjectivePoint(std::move(coords));
}

// Dimension of the projective span of the orbit, computed as an exact rank of
// orbit samples. Sample k draws its coordinates from the primes numbered
// k*d+1 .. k*d+d, so all samples are deterministic. Should those samples ever
// be rank deficient, further samples of the form (p_1^k, ..., p_d^k) are
// appended; their monomial values form a Vandermonde matrix in the pairwise
// distinct values prod_j p_j^{m_ij}, so the rank they realize is exact.
inline std::size_t span_dimension(const MonomialEmbedding& e) {
  const std::size_t n = e.config().size();
  const std::size_t d = e.config().ambient_dimension();
  std::vector<unsigned long> primes = detail::first_primes(n * d);
  RatMatrix samples(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    RatVec t(d);
    for (std::size_t j = 0; j < d; ++j) t[j] = Rat(primes[k * d + j]);
    for (std::size_t i = 0; i < n; ++i)
      samples(k, i) = detail::monomial_value(t, e.config()[i]);
  }
  std::size_t rk = rank(samples);
  if (rk < n) {
    std::vector<unsigned long> base = detail::first_primes(d);
    RatMatrix extended(2 * n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) extended(k, i) = samples(k, i);
    for (std::size_t k = 0; k < n; ++k) {
      RatVec t(d);
      for (std::size_t j = 0; j < d; ++j)
        t[j] = detail::rat_pow(Rat(base[j]), Int(k));
      for (std::size_t i = 0; i < n; ++i)
        extended(n + k, i) = detail::monomial_value(t, e.config()[i]);
    }
    rk = rank(extended);
  }
  return rk - 1;
}

inline std::size_t variety_dimension(const MonomialEmbedding& e) {
  return dimension(e.config());
}

// Equality of the toric subvarieties in fixed coordinates of P^N. Demands
// matching shapes; decided exactly at the relation-lattice level.
inline bool same_subvariety(const MonomialEmbedding& e1,
                            const MonomialEmbedding& e2) {
  if (e1.N() != e2.N())
    throw std::invalid_argument("same_subvariety: ambient dimension N differs");
  if (e1.r() != e2.r())
    throw std::invalid_argument("same_subvariety: coordinate count r differs");
  return lattice_equal(relation_lattice(e1).lattice,
                       relation_lattice(e2).lattice);
}

// Projective equivalence of the subvarieties X(S) and X(S'): both
// configurations are reduced and the reductions are compared for affine
// unimodular equivalence. The witness lives at the reduced level.
inline EquivalenceVerdict projectively_equivalent(const PointConfiguration& s,
                                                  const PointConfiguration& t,
                                                  std::size_t projective_dimension) {
  if (s.size() > projective_dimension + 1 || t.size() > projective_dimension + 1)
    throw std::invalid_argument(
        "projectively_equivalent: cardinality exceeds N + 1");
  if (s.size() != t.size())
    return detail::not_equivalent(
        detail::versus("cardinality", s.size(), t.size()));
  ReducedConfiguration rs = reduce(s);
  ReducedConfiguration rt = reduce(t);
  if (rs.reduced_dimension != rt.reduced_dimension)
    return detail::not_equivalent(detail::versus(
        "reduced dimension", rs.reduced_dimension, rt.reduced_dimension));
  return affinely_equivalent(rs.config, rt.config);
}

}  // namespace toric
