#include <random>

#include "doctest.h"

#include "diffcoh/cohomology.hpp"
#include "diffcoh/linalg.hpp"

using namespace diffcoh;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  IntMatrix A(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) A.set(i, j, Integer(rows[i][j]));
  return A;
}

void check_smith(const IntMatrix& A) {
  SmithForm sf = smith_normal_form(A);
  IntDense Ad = A.to_dense();
  IntDense prod = multiply(multiply(sf.U, Ad), sf.V);
  CHECK(prod.data == sf.D.data);
  CHECK(abs(determinant(sf.U)) == 1);
  CHECK(abs(determinant(sf.V)) == 1);
  CHECK(multiply(sf.U, sf.U_inverse).data == IntDense::identity(A.rows()).data);
  CHECK(multiply(sf.V, sf.V_inverse).data == IntDense::identity(A.cols()).data);
  for (std::size_t i = 0; i < sf.D.rows; ++i)
    for (std::size_t j = 0; j < sf.D.cols; ++j)
      if (i != j) CHECK(sf.D(i, j) == 0);
  for (std::size_t i = 0; i + 1 < sf.rank; ++i) CHECK(sf.diagonal[i + 1] % sf.diagonal[i] == 0);
  for (std::size_t i = 0; i < sf.rank; ++i) CHECK(sf.diagonal[i] > 0);
  for (std::size_t i = sf.rank; i < sf.diagonal.size(); ++i) CHECK(sf.diagonal[i] == 0);
  std::vector<Integer> inv = smith_invariants(A);
  CHECK(inv == std::vector<Integer>(sf.diagonal.begin(), sf.diagonal.begin() + sf.rank));
}

RatMatrix random_matrix(std::mt19937& rng, std::size_t m, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  RatMatrix A(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) A.set(i, j, Rational(dist(rng)));
  return A;
}

// Searches the box [-r, r]^n for an integral solution.
bool brute_force_solvable(const RatMatrix& A, const RatVector& b, int r) {
  const std::size_t n = A.cols();
  std::vector<int> x(n, -r);
  for (;;) {
    RatVector xv(n);
    for (std::size_t i = 0; i < n; ++i) xv[i] = x[i];
    if (A.multiply(xv) == b) return true;
    std::size_t k = 0;
    while (k < n && x[k] == r) x[k++] = -r;
    if (k == n) return false;
    ++x[k];
  }
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("smith form of diag(2,3) is diag(1,6)") {
    IntMatrix A = from_rows({{2, 0}, {0, 3}}, 2);
    SmithForm sf = smith_normal_form(A);
    CHECK(sf.rank == 2);
    CHECK(sf.diagonal[0] == 1);
    CHECK(sf.diagonal[1] == 6);
    check_smith(A);
  }

  TEST_CASE("smith form of the zero matrix") {
    IntMatrix A(3, 2);
    SmithForm sf = smith_normal_form(A);
    CHECK(sf.rank == 0);
    CHECK(sf.U.data == IntDense::identity(3).data);
    CHECK(sf.V.data == IntDense::identity(2).data);
  }

  TEST_CASE("smith form on random integer matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
      check_smith(to_integer(random_matrix(rng, m, n, -6, 6)));
    }
    check_smith(from_rows({{4, 6, 0}, {6, 9, 0}, {0, 0, 12}}, 3));
    check_smith(from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, 3));
  }

  TEST_CASE("solve (2)x = 4 and (2)x = 3") {
    RatMatrix A(1, 1);
    A.set(0, 0, Rational(2));
    auto s = solve_affine(A, {Rational(4)}, Ring::Integer);
    REQUIRE(s.feasible);
    CHECK(s.x[0] == 2);
    CHECK(s.kernel.empty());

    auto t = solve_affine(A, {Rational(3)}, Ring::Integer);
    CHECK_FALSE(t.feasible);
    REQUIRE(t.certificate);
    CHECK(verify_certificate(A, {Rational(3)}, Ring::Integer, *t.certificate));

    auto q = solve_affine(A, {Rational(3)}, Ring::Rational);
    REQUIRE(q.feasible);
    CHECK(q.x[0] == Rational(3, 2));
  }

  TEST_CASE("integral solving agrees with bounded brute force") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> small(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t m = 1 + rng() % 3, n = 1 + rng() % 4;
      RatMatrix A = random_matrix(rng, m, n, -3, 3);
      RatVector b(m);
      bool planted = trial % 2 == 0;
      if (planted) {
        RatVector x0(n);
        for (auto& v : x0) v = small(rng) % 2;
        b = A.multiply(x0);
      } else {
        for (auto& v : b) v = small(rng);
      }
      auto s = solve_affine(A, b, Ring::Integer);
      bool brute = brute_force_solvable(A, b, 3);
      if (brute) CHECK(s.feasible);
      if (s.feasible) {
        CHECK(A.multiply(s.x) == b);
        for (const auto& v : s.x) CHECK(is_integral(v));
        CHECK(s.kernel.size() == n - rational_rank(A));
        for (const auto& k : s.kernel) CHECK(A.multiply(k) == RatVector(m));
      } else {
        REQUIRE(s.certificate);
        CHECK(verify_certificate(A, b, Ring::Integer, *s.certificate));
        CHECK_FALSE(brute);
      }
    }
  }

  TEST_CASE("rational solving and left null spaces") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
      RatMatrix A = random_matrix(rng, m, n, -2, 2);
      RatVector b(m);
      for (auto& v : b) v = make_rational(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3));
      auto s = solve_affine(A, b, Ring::Rational);
      if (s.feasible) {
        CHECK(A.multiply(s.x) == b);
        CHECK(s.kernel.size() == n - rational_rank(A));
      } else {
        REQUIRE(s.certificate);
        CHECK(verify_certificate(A, b, Ring::Rational, *s.certificate));
      }
      auto null = left_null_space(A);
      CHECK(null.size() == m - rational_rank(A));
      for (const auto& y : null) {
        RatVector yA(n);
        for (const auto& [rc, v] : A.entries()) yA[rc.second] += y[rc.first] * v;
        CHECK(yA == RatVector(n));
      }
    }
  }

  TEST_CASE("cohomology from hand-written coboundaries") {
    // minimal circle: one vertex, one loop, delta^0 = 0
    IntMatrix d0(1, 1), d1(0, 1);
    CHECK(cohomology_from_coboundaries(d0, d1, 1).to_string() == "Z");
    // two-triangle projective plane: T1 = c - b + a, T2 = c - a + b
    IntMatrix delta1 = from_rows({{1, -1, 1}, {-1, 1, 1}}, 3);
    IntMatrix delta0 = from_rows({{-1, 1}, {-1, 1}, {0, 0}}, 2);
    IntMatrix delta2(0, 2);
    auto h2 = cohomology_from_coboundaries(delta1, delta2, 2);
    CHECK(h2.rank == 0);
    CHECK(h2.torsion == std::vector<Integer>{2});
    CHECK(cohomology_from_coboundaries(delta0, delta1, 3).to_string() == "0");
    CHECK(cohomology_from_coboundaries(IntMatrix(2, 0), delta0, 2).to_string() == "Z");
  }

  TEST_CASE("sparse matrix bookkeeping") {
    IntMatrix A(2, 2);
    A.add(0, 1, 3);
    A.add(0, 1, -3);
    CHECK(A.nonzeros() == 0);
    CHECK_THROWS_AS(A.set(2, 0, 1), LinalgError);
    CHECK(AbelianGroupPresentation{2, {2, 4}}.to_string() == "Z^2 + Z/2 + Z/4");
  }
}
