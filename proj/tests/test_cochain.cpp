#include "doctest.h"

#include "diffcoh/cochain.hpp"

using namespace diffcoh;
namespace bi = diffcoh::builtins;

namespace {

CoeffPtr Z() { return GradedCoefficients::integers(); }
CoeffPtr Zu() { return GradedCoefficients::truncated_polynomial(2, -2); }

std::vector<PairPtr> suite_pairs() {
  return {bi::pair_by_name("point"),  bi::pair_by_name("simplex1"),          bi::pair_by_name("circle"),
          bi::pair_by_name("torus"),  bi::pair_by_name("rp2"),               bi::pair_by_name("klein"),
          bi::pair_by_name("simplex2/boundary2"), bi::pair_by_name("torus/circle")};
}

PairPtr cylinder_pair(const Cylinder& c, const PairPtr& XA) {
  return product_pair(c.product, Pair::absolute(c.product->left()), XA);
}

Cochain dual_edge(const PairPtr& P, int edge) {
  RatVector v(P->ambient()->count(1));
  v[edge] = 1;
  return Cochain::scalar(P, Z(), 1, 0, v);
}

}  // namespace

TEST_SUITE("cochain") {
  TEST_CASE("coefficient rings are validated") {
    CHECK(Z()->rank() == 1);
    auto L = GradedCoefficients::truncated_polynomial(3, -2);
    CHECK(L->rank() == 3);
    CHECK(L->degree(2) == -4);
    CHECK(L->product(1, 1).at(0).basis == 2);
    CHECK(L->product(1, 2).empty());
    CHECK_THROWS_AS(GradedCoefficients::truncated_polynomial(2, 1), CochainError);
    auto parsed = GradedCoefficients::from_json(L->to_json());
    CHECK(parsed->to_json() == L->to_json());
    CHECK(GradedCoefficients::from_json(Json("Z[u]/(u^2),|u|=-2"))->degree(1) == -2);
    Json bad = Json::parse(R"({"basis":[{"name":"1","degree":0},{"name":"x","degree":2},{"name":"y","degree":4}],
                              "products":[["x","x",[["y",1]]],["x","y",[["x",1]]]]})");
    CHECK_THROWS_AS(GradedCoefficients::from_json(bad), CochainError);
  }

  TEST_CASE("coboundary of the endpoint indicator on the interval") {
    auto P = bi::pair_by_name("simplex1");
    RatVector f = {0, 1};
    auto u = Cochain::scalar(P, Z(), 0, 0, f);
    auto du = coboundary(u);
    CHECK(du.value(0, 0) == 1);
    CHECK(coboundary(du).is_zero());
  }

  TEST_CASE("delta squared vanishes and cup is an associative unital dga") {
    std::mt19937_64 rng(3);
    for (const auto& P : suite_pairs())
      for (const auto& L : {Z(), Zu()})
        for (int trial = 0; trial < 5; ++trial) {
          for (int n = -1; n <= 3; ++n) CHECK(coboundary(coboundary(random_cochain(P, L, n, rng))).is_zero());
          auto absP = Pair::absolute(P->ambient());
          auto u = random_cochain(P, L, 1, rng), v = random_cochain(absP, L, 0, rng), w = random_cochain(absP, L, 1, rng);
          auto one = Cochain::unit(absP, L);
          CHECK(cup(one, u) == u);
          CHECK(cup(u, one) == u);
          CHECK(cup(cup(u, v), w) == cup(u, cup(v, w)));
          auto lhs = coboundary(cup(u, w));
          auto rhs = cup(coboundary(u), w) - cup(u, coboundary(w));
          CHECK(lhs == rhs);
          CHECK(coboundary(cup(v, w)) == cup(coboundary(v), w) + cup(v, coboundary(w)));
        }
  }

  TEST_CASE("cup1 satisfies the Steenrod coboundary formula") {
    std::mt19937_64 rng(5);
    for (const auto& P : suite_pairs())
      for (const auto& L : {Z(), Zu()})
        for (int p = 0; p <= 2; ++p)
          for (int q = 0; q <= 2; ++q) {
            auto u = random_cochain(P, L, p, rng), v = random_cochain(P, L, q, rng);
            auto lhs = coboundary(cup1(u, v));
            Rational sgn_pq = (p * q) % 2 == 0 ? 1 : -1, sgn_p = p % 2 == 0 ? 1 : -1;
            auto rhs = -(cup(u, v) - sgn_pq * cup(v, u)) - cup1(coboundary(u), v) - sgn_p * cup1(u, coboundary(v));
            CHECK(lhs == rhs);
          }
    auto S = bi::pair_by_name("circle");
    auto z = dual_edge(S, 0);
    CHECK(cup1(z, Cochain::zero(S, Z(), 1)).is_zero());
    CHECK(coboundary(cup1(z, z)) == -(cup(z, z) + cup(z, z)));
  }

  TEST_CASE("torus cup products against the fundamental cycle") {
    auto cp = bi::circle_pair(bi::circle());
    auto T = Pair::absolute(bi::torus());
    auto S = Pair::absolute(bi::circle());
    auto z = dual_edge(S, 0);
    auto alpha = pullback(cp.product->pr1(), z, T), beta = pullback(cp.product->pr2(), z, T);
    Chain fundamental = ez_shuffle(cp.product, cell_chain(bi::circle(), 1, 0), cell_chain(bi::circle(), 1, 0));
    CHECK(boundary(fundamental).terms.empty());
    CHECK(evaluate(cup(alpha, beta), 0, fundamental) == 1);
    CHECK(evaluate(cup(beta, alpha), 0, fundamental) == -1);
    const IntMatrix& d1 = coboundary_matrix(T, 1);
    auto sum = cup(alpha, beta) + cup(beta, alpha), diff = cup(alpha, beta) - cup(beta, alpha);
    CHECK(solve_affine(to_rational(d1), relative_values(sum, 0), Ring::Rational).feasible);
    CHECK_FALSE(solve_affine(to_rational(d1), relative_values(diff, 0), Ring::Rational).feasible);
    CHECK(coboundary(cup1(alpha, beta)) == -sum);
  }

  TEST_CASE("shuffle map is a chain map and a section of Alexander-Whitney") {
    std::vector<SSetPtr> spaces = {bi::point(), bi::simplex(1), bi::circle(), bi::simplex(2), bi::rp2(), bi::torus()};
    for (const auto& X : spaces)
      for (const auto& Y : spaces) {
        auto P = product(X, Y);
        for (int p = 0; p <= X->dimension(); ++p)
          for (int q = 0; q <= Y->dimension() && p + q <= 3; ++q)
            for (std::size_t x = 0; x < X->count(p); ++x)
              for (std::size_t y = 0; y < Y->count(q); ++y) {
                Chain a = cell_chain(X, p, static_cast<int>(x)), b = cell_chain(Y, q, static_cast<int>(y));
                Chain B = ez_shuffle(P, a, b);
                auto aw = alexander_whitney(P, B);
                REQUIRE(aw.size() == 1);
                CHECK(aw.begin()->first == std::make_pair(std::make_pair(p, static_cast<int>(x)), std::make_pair(q, static_cast<int>(y))));
                CHECK(aw.begin()->second == 1);
                if (p + q == 0) continue;
                Chain lhs = boundary(B);
                Chain rhs{P->set(), p + q - 1, {}};
                if (p > 0)
                  for (const auto& [c, k] : ez_shuffle(P, boundary(a), b).terms) rhs.add(nondegenerate(p + q - 1, c), k);
                if (q > 0)
                  for (const auto& [c, k] : ez_shuffle(P, a, boundary(b)).terms)
                    rhs.add(nondegenerate(p + q - 1, c), p % 2 == 0 ? k : Rational(-k));
                CHECK(lhs == rhs);
              }
      }
    auto I = bi::simplex(1);
    auto IP = product(I, bi::point());
    Chain B = ez_shuffle(IP, cell_chain(I, 1, 0), cell_chain(bi::point(), 0, 0));
    CHECK(B.terms.size() == 1);
    Chain sq = ez_shuffle(product(I, I), cell_chain(I, 1, 0), cell_chain(I, 1, 0));
    CHECK(sq.terms.size() == 2);
    Rational total = 0;
    for (const auto& [c, k] : sq.terms) total += k;
    CHECK(total == 0);
  }

  TEST_CASE("interval integration") {
    std::mt19937_64 rng(17);
    // over a point, the integral is the value on the edge
    auto cp = cylinder(bi::point());
    auto cpair = Pair::absolute(cp.product->set());
    auto u = random_cochain(cpair, Z(), 1, rng);
    auto iu = integrate_interval(cp.product, 0, u, Pair::absolute(bi::point()));
    CHECK(iu.value(0, 0) == u.value(0, 0));
    for (const auto& XA : {bi::pair_by_name("circle"), bi::pair_by_name("rp2"), bi::pair_by_name("simplex2/boundary2")}) {
      auto cyl = cylinder(XA->ambient());
      auto CP = cylinder_pair(cyl, XA);
      for (const auto& L : {Z(), Zu()})
        for (int n = 1; n <= 3; ++n) {
          auto v = random_cochain(XA, L, n, rng);
          CHECK(integrate_interval(cyl.product, 0, pullback(cyl.pr, v, CP), XA).is_zero());
          auto w = random_cochain(CP, L, n, rng);
          auto lhs = integrate_interval(cyl.product, 0, coboundary(w), XA) + coboundary(integrate_interval(cyl.product, 0, w, XA));
          auto rhs = pullback(cyl.i1, w, XA) - pullback(cyl.i0, w, XA);
          CHECK(lhs == rhs);
        }
    }
  }

  TEST_CASE("cob_witness contract") {
    std::mt19937_64 rng(19);
    for (const auto& XA : suite_pairs()) {
      auto cyl = cylinder(XA->ambient());
      auto CP = cylinder_pair(cyl, XA);
      CHECK(cob_witness(cyl, CP, Cochain::zero(XA, Z(), 1)).is_zero());
      for (const auto& L : {Z(), Zu()})
        for (int n = 0; n <= 2; ++n) {
          auto v = random_cochain(XA, L, n, rng);
          auto E = cob_witness(cyl, CP, v);
          CHECK(E.vanishes_on_sub());
          CHECK(coboundary(E).is_zero());
          CHECK(pullback(cyl.i0, E, XA).is_zero());
          CHECK(pullback(cyl.i1, E, XA) == coboundary(v));
        }
    }
  }

  TEST_CASE("cohomology groups of the suite") {
    CHECK(cohomology(bi::pair_by_name("point"), 0, 0).to_string() == "Z");
    CHECK(cohomology(bi::pair_by_name("circle"), 0, 1).to_string() == "Z");
    CHECK(cohomology(bi::pair_by_name("circle2"), 0, 1).to_string() == "Z");
    CHECK(cohomology(bi::pair_by_name("rp2"), 0, 1).to_string() == "0");
    CHECK(cohomology(bi::pair_by_name("rp2"), 0, 2).to_string() == "Z/2");
    CHECK(cohomology(bi::pair_by_name("klein"), 0, 1).to_string() == "Z");
    CHECK(cohomology(bi::pair_by_name("klein"), 0, 2).to_string() == "Z/2");
    CHECK(cohomology(bi::pair_by_name("torus"), 0, 1).to_string() == "Z^2");
    CHECK(cohomology(bi::pair_by_name("torus"), 0, 2).to_string() == "Z");
    CHECK(cohomology(bi::pair_by_name("simplex2/boundary2"), 0, 2).to_string() == "Z");
    CHECK(cohomology(bi::pair_by_name("simplex2/boundary2"), 0, 1).to_string() == "0");
    CHECK(cohomology(bi::pair_by_name("torus/circle"), 0, 1).to_string() == "Z");
    CHECK(cohomology(bi::pair_by_name("torus/circle"), 0, 0).to_string() == "0");
    CHECK(cohomology(bi::pair_by_name("rp2"), -2, 0).to_string() == "Z/2");
  }

  TEST_CASE("Kunneth rank formula") {
    std::vector<SSetPtr> spaces = {bi::circle(), bi::rp2(), bi::klein(), bi::simplex_boundary(2)};
    for (const auto& X : spaces)
      for (const auto& Y : spaces) {
        auto XY = Pair::absolute(product(X, Y)->set());
        for (int n = 0; n <= 4; ++n) {
          std::size_t expected = 0;
          for (int p = 0; p <= n; ++p)
            expected += cohomology(Pair::absolute(X), 0, p).rank * cohomology(Pair::absolute(Y), 0, n - p).rank;
          CHECK(cohomology(XY, 0, n).rank == expected);
        }
      }
  }

  TEST_CASE("pullback naturality of interval integration") {
    std::mt19937_64 rng(23);
    auto T = bi::torus();
    auto cpT = bi::circle_pair(bi::circle());
    auto f = cpT.product->pr1();  // torus -> circle
    auto cylT = cylinder(T), cylS = cylinder(bi::circle());
    auto idI = SimplicialMap::identity(bi::simplex(1));
    auto F = product_map(cylT.product, cylS.product, idI, f);
    auto absT = Pair::absolute(T), absS = Pair::absolute(bi::circle());
    for (int n = 1; n <= 2; ++n) {
      auto u = random_cochain(Pair::absolute(cylS.product->set()), Z(), n, rng);
      auto lhs = integrate_interval(cylT.product, 0, pullback(F, u, Pair::absolute(cylT.product->set())), absT);
      auto rhs = pullback(f, integrate_interval(cylS.product, 0, u, absS), absT);
      CHECK(lhs == rhs);
    }
  }
}
