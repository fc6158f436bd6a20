#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "toric/matrix.hpp"
#include "toric/normal_form.hpp"

using namespace toric;
using toric_test::Rng;

TEST_CASE("determinant on frozen cases") {
  CHECK(determinant(IntMatrix(0, 0)) == 1);
  CHECK(determinant(IntMatrix{{5}}) == 5);
  CHECK(determinant(IntMatrix{{1, 2}, {3, 4}}) == -2);
  CHECK(determinant(IntMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}) == 30);
  CHECK(determinant(IntMatrix{{1, 1}, {2, 2}}) == 0);
  CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  Rng rng(20260801);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = static_cast<std::size_t>(toric_test::rand_range(rng, 0, 5));
    IntMatrix m = toric_test::random_matrix(rng, n, n, 9);
    CHECK(determinant(m) == toric_test::minor_determinant(m));
  }
}

TEST_CASE("rational inverse") {
  RatMatrix a = to_rational(IntMatrix{{2, 1}, {1, 1}});
  RatMatrix inv = inverse(a);
  CHECK(a * inv == RatMatrix::identity(2));
  CHECK_THROWS_AS(inverse(to_rational(IntMatrix{{1, 1}, {2, 2}})),
                  std::invalid_argument);
  CHECK(inverse(RatMatrix(0, 0)) == RatMatrix(0, 0));
}

TEST_CASE("hnf on frozen cases") {
  SECTION("identity") {
    auto hd = hnf(IntMatrix::identity(2));
    CHECK(hd.H == IntMatrix::identity(2));
    CHECK(hd.U == IntMatrix::identity(2));
    CHECK(hd.rank == 2);
  }
  SECTION("2x2 with nontrivial reduction") {
    IntMatrix a{{2, 4}, {6, 8}};
    auto hd = hnf(a);
    CHECK(hd.H == IntMatrix{{2, 0}, {0, 4}});
    CHECK(hd.U * a == hd.H);
    Int du = determinant(hd.U);
    CHECK((du == 1 || du == -1));
  }
  SECTION("zero matrix") {
    auto hd = hnf(IntMatrix(2, 2));
    CHECK(hd.H == IntMatrix(2, 2));
    CHECK(hd.rank == 0);
  }
}

TEST_CASE("snf on frozen cases") {
  SECTION("diag(2,3) collapses to diag(1,6)") {
    IntMatrix a{{2, 0}, {0, 3}};
    auto sd = snf(a);
    CHECK(sd.D == IntMatrix{{1, 0}, {0, 6}});
    CHECK(sd.U * a * sd.V == sd.D);
    Int du = determinant(sd.U);
    Int dv = determinant(sd.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
  }
  SECTION("identity") {
    auto sd = snf(IntMatrix::identity(3));
    CHECK(sd.D == IntMatrix::identity(3));
  }
  SECTION("difference matrix with divisor 2") {
    // differences of {e_1, e_2, e_1+e_2+2e_3} against the configuration base
    IntMatrix a{{1, 0, 0}, {0, 1, 0}, {1, 1, 2}};
    auto sd = snf(a);
    CHECK(sd.rank == 3);
    CHECK(sd.D(0, 0) == 1);
    CHECK(sd.D(1, 1) == 1);
    CHECK(sd.D(2, 2) == 2);
    CHECK(toric_test::minor_determinant(a) == 2);
  }
}

TEST_CASE("kernel_basis on frozen cases") {
  SECTION("2x3 system with one relation") {
    IntMatrix a{{1, 1, 1}, {0, 1, 2}};
    LatticeBasis k = kernel_basis(a);
    CHECK(k.rank() == 1);
    CHECK(k.basis() == IntMatrix{{1, -2, 1}});
  }
  SECTION("identity has zero kernel") {
    LatticeBasis k = kernel_basis(IntMatrix::identity(3));
    CHECK(k.rank() == 0);
    CHECK(k.ambient_dimension() == 3);
  }
  SECTION("zero 1x3 has full kernel") {
    LatticeBasis k = kernel_basis(IntMatrix(1, 3));
    CHECK(k.rank() == 3);
    CHECK(k.is_full());
  }
}

TEST_CASE("lattice equality and membership") {
  auto span = [](std::initializer_list<std::initializer_list<Int>> gens,
                 std::size_t ambient) {
    return LatticeBasis::from_generators(ambient, IntMatrix(gens));
  };
  SECTION("same lattice through different generators") {
    CHECK(lattice_equal(span({{2, 0}, {0, 2}}, 2), span({{2, 2}, {0, 2}}, 2)));
  }
  SECTION("index-2 sublattice differs") {
    CHECK_FALSE(lattice_equal(span({{1, 0}}, 2), span({{2, 0}}, 2)));
  }
  SECTION("reflexivity") {
    LatticeBasis l = span({{3, 1}, {1, 2}}, 2);
    CHECK(lattice_equal(l, l));
  }
  SECTION("ambient mismatch is an error") {
    CHECK_THROWS_AS(lattice_equal(span({{1}}, 1), span({{1, 0}}, 2)),
                    std::invalid_argument);
  }
  SECTION("membership") {
    LatticeBasis l = span({{2, 0}, {0, 2}}, 2);
    CHECK(l.contains({Int(4), Int(-2)}));
    CHECK_FALSE(l.contains({Int(1), Int(0)}));
    CHECK(l.contains({Int(0), Int(0)}));
    CHECK_THROWS_AS(l.contains({Int(0)}), std::invalid_argument);
  }
}

TEST_CASE("elementary divisors") {
  SECTION("full standard lattice") {
    LatticeBasis l = LatticeBasis::from_generators(3, IntMatrix::identity(3));
    CHECK(l.elementary_divisors() == std::vector<Int>{1, 1, 1});
    CHECK(l.is_full());
  }
  SECTION("index-2 sublattice of Z^3") {
    LatticeBasis l = LatticeBasis::from_generators(
        3, IntMatrix{{1, 0, 0}, {0, 1, 0}, {1, 1, 2}});
    CHECK(l.elementary_divisors() == std::vector<Int>{1, 1, 2});
    CHECK(elementary_divisors(l, 3) == std::vector<Int>{1, 1, 2});
    CHECK_FALSE(l.is_full());
  }
  SECTION("zero lattice") {
    LatticeBasis l(2);
    CHECK(l.elementary_divisors().empty());
    CHECK(l.rank() == 0);
    CHECK(elementary_divisors(l, 2).empty());
  }
  SECTION("ambient rank below lattice rank is an error") {
    LatticeBasis l = LatticeBasis::from_generators(2, IntMatrix::identity(2));
    CHECK_THROWS_AS(elementary_divisors(l, 1), std::invalid_argument);
  }
  SECTION("formatting") {
    CHECK(format_divisors({Int(1), Int(1), Int(2)}) == "(1,1,2)");
    CHECK(format_divisors({}) == "()");
  }
}

TEST_CASE("normal form property suite") {
  Rng rng(20260802);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t rows = static_cast<std::size_t>(toric_test::rand_range(rng, 0, 6));
    std::size_t cols = static_cast<std::size_t>(toric_test::rand_range(rng, 0, 6));
    IntMatrix a = toric_test::random_matrix(rng, rows, cols, 9);

    auto hd = hnf(a);
    CHECK(hd.U * a == hd.H);
    Int du = toric_test::minor_determinant(hd.U);
    CHECK((du == 1 || du == -1));
    CHECK(toric_test::is_canonical_hnf(hd.H));

    auto sd = snf(a);
    CHECK(sd.U * a * sd.V == sd.D);
    Int su = toric_test::minor_determinant(sd.U);
    Int sv = toric_test::minor_determinant(sd.V);
    CHECK((su == 1 || su == -1));
    CHECK((sv == 1 || sv == -1));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j) CHECK(sd.D(i, j) == 0);
    std::size_t limit = std::min(rows, cols);
    for (std::size_t i = 0; i < limit; ++i) {
      CHECK(sd.D(i, i) >= 0);
      if (i + 1 < limit && sd.D(i + 1, i + 1) != 0) {
        CHECK(sd.D(i, i) != 0);
        CHECK(sd.D(i + 1, i + 1) % sd.D(i, i) == 0);
      }
    }

    LatticeBasis ker = kernel_basis(a);
    CHECK(ker.rank() + rank(a) == cols);
    for (std::size_t i = 0; i < ker.rank(); ++i) {
      IntVec u = ker.basis().row(i);
      CHECK(is_zero(a * u));
    }
    for (const Int& d : ker.elementary_divisors()) CHECK(d == 1);
  }
}

TEST_CASE("hnf determinism and canonical lattice storage") {
  Rng rng(20260803);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix a = toric_test::random_matrix(rng, 4, 4, 9);
    auto h1 = hnf(a);
    auto h2 = hnf(a);
    CHECK(h1.H == h2.H);
    CHECK(h1.U == h2.U);
    // a lattice equals itself after an extra unimodular shuffle of generators
    LatticeBasis l1 = LatticeBasis::from_generators(4, a);
    toric::AffineMap shuffle = toric_test::random_unimodular_map(rng, 4, 2, 0);
    LatticeBasis l2 = LatticeBasis::from_generators(4, shuffle.A * a);
    CHECK(lattice_equal(l1, l2));
  }
}
