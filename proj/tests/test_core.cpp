#include "doctest.h"

#include "diffcoh/core.hpp"
#include "diffcoh/serialize.hpp"

using namespace diffcoh;
namespace bi = diffcoh::builtins;

namespace {

CoeffPtr Z() { return GradedCoefficients::integers(); }
CoeffPtr Zu() { return GradedCoefficients::truncated_polynomial(2, -2); }

std::vector<PairPtr> suite_pairs() {
  return {bi::pair_by_name("point"), bi::pair_by_name("circle"), bi::pair_by_name("torus"),
          bi::pair_by_name("rp2"),   bi::pair_by_name("simplex2/boundary2"), bi::pair_by_name("torus/circle")};
}

PairPtr circle() { return Pair::absolute(bi::circle()); }

// τ on the minimal circle, scaled
PLForm edge_form(const Rational& k) {
  const Cochain z = Cochain::scalar(circle(), Z(), 1, 0, RatVector{1});
  return k * whitney(z);
}

bool equiv(const Triple& a, const Triple& b) {
  auto r = equivalent(a, b);
  if (r.equivalent) return check_witness(a, b, *r.witness);
  CHECK(check_certificate(a, b, *r.certificate));
  return false;
}

// A triple equivalent to t with random witness data.
Triple perturb(const Triple& t, std::mt19937_64& rng) {
  const Cochain b = random_cochain(t.base(), t.coeffs(), t.degree() - 1, rng);
  const Cochain k = make_rational(1, 2) * random_cochain(t.base(), t.coeffs(), t.degree() - 2, rng);
  return make_triple(t.c + coboundary(b), t.omega, t.h - b + coboundary(k));
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("triple validation") {
    auto P = circle();
    CHECK(triple_violation(zero_triple(P, Z(), 1)) == "");
    const Cochain z = Cochain::scalar(P, Z(), 1, 0, RatVector{1});
    auto t = make_triple(z, whitney(z), Cochain::zero(P, Z(), 0));
    CHECK(deRham(t.omega) == z);
    const Cochain bad = Cochain::scalar(P, Z(), 0, 0, RatVector{1});
    try {
      make_triple(Cochain::zero(P, Z(), 1), PLForm::zero(P, Z(), 1), Cochain::zero(P, Z(), 0) + bad + bad);
      auto T = Pair::absolute(bi::simplex(1));
      make_triple(Cochain::zero(T, Z(), 1), PLForm::zero(T, Z(), 1), Cochain::scalar(T, Z(), 0, 0, RatVector{0, 1}));
      FAIL("expected a violation");
    } catch (const TripleError& e) {
      CHECK(e.kind() == "structure-equation-violated");
    }
    auto half = Cochain::scalar(P, Z(), 1, 0, RatVector{make_rational(1, 2)});
    CHECK_THROWS_AS(make_triple(half, whitney(half), Cochain::zero(P, Z(), 0)), TripleError);
  }

  TEST_CASE("a(1/2) on the circle has order two") {
    auto P = circle();
    auto x = a_map(edge_form(make_rational(1, 2)));
    auto zero = zero_triple(P, Z(), 2);
    auto r = equivalent(x, zero);
    REQUIRE(!r.equivalent);
    CHECK(r.certificate->kind == "period");
    CHECK(r.certificate->pairing == make_rational(-1, 2));
    CHECK(check_certificate(x, zero, *r.certificate));
    auto twice = add(x, x);
    auto r2 = equivalent(twice, zero);
    REQUIRE(r2.equivalent);
    CHECK(check_witness(twice, zero, *r2.witness));
    CHECK(r2.witness->b.value(0, 0) == 1);
  }

  TEST_CASE("equivalence is reflexive and witnesses compose") {
    std::mt19937_64 rng(41);
    for (const auto& P : suite_pairs())
      for (const auto& L : {Z(), Zu()})
        for (int n = 0; n <= 3; ++n) {
          auto t0 = random_triple(P, L, n, rng);
          CHECK(equiv(t0, t0));
          auto t1 = perturb(t0, rng), t2 = perturb(t1, rng);
          auto w01 = equivalent(t0, t1), w12 = equivalent(t1, t2);
          REQUIRE(w01.equivalent);
          REQUIRE(w12.equivalent);
          CHECK(check_witness(t0, t2, compose(*w01.witness, *w12.witness)));
        }
  }

  TEST_CASE("maps I, R, a") {
    std::mt19937_64 rng(43);
    for (const auto& P : suite_pairs())
      for (int n = 1; n <= 3; ++n) {
        auto theta = random_form(P, Zu(), n - 1, rng);
        auto t = a_map(theta);
        CHECK(t.omega == exterior_d(theta));
        CHECK(t.c.is_zero());
        auto kappa = random_form(P, Zu(), n - 2, rng);
        CHECK(equiv(a_map(exterior_d(kappa)), zero_triple(P, Zu(), n)));
        // ker I = im a
        auto x = perturb(add(t, zero_triple(P, Zu(), n)), rng);
        auto back = a_map(a_preimage(x));
        CHECK(equiv(back, x));
      }
  }
}

namespace {

constexpr int kU = 1;  // basis index of u in Z[u]/(u²)

// u·(x ∪₁ y)
ExprPtr u_cup1(ExprPtr x, ExprPtr y) { return Expr::scalar(1, kU, Expr::cup1(std::move(x), std::move(y))); }

PairPtr cylinder_pair(const Cylinder& c, const PairPtr& XA) {
  return product_pair(c.product, Pair::absolute(c.product->left()), XA);
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("group laws") {
    std::mt19937_64 rng(47);
    for (const auto& P : suite_pairs())
      for (const auto& L : {Z(), Zu()})
        for (int n = 0; n <= 3; ++n) {
          auto t0 = random_triple(P, L, n, rng), t1 = random_triple(P, L, n, rng), t2 = random_triple(P, L, n, rng);
          auto zero = zero_triple(P, L, n);
          CHECK(equiv(add(t0, zero), t0));
          CHECK(equiv(add(t0, neg(t0)), zero));
          CHECK(equiv(add(t0, t1), add(t1, t0)));
          CHECK(equiv(add(add(t0, t1), t2), add(t0, add(t1, t2))));
          CHECK(equiv(add(perturb(t0, rng), t1), add(t0, t1)));
          CHECK(equiv(sub(t0, t1), add(t0, neg(t1))));
          CHECK(equiv(scale(3, t0), add(t0, add(t0, t0))));
        }
  }

  TEST_CASE("corrections changed by a coboundary give the same class") {
    std::mt19937_64 rng(53);
    Corrections corr;
    corr.A = Expr::delta(u_cup1(Expr::arg(0), Expr::arg(1)));
    corr.N = Expr::delta(u_cup1(Expr::arg(0), Expr::arg(0)));
    int nonzero = 0;
    for (const auto& P : suite_pairs()) {
      auto t0 = random_triple(P, Zu(), 1, rng), t1 = random_triple(P, Zu(), 1, rng);
      auto s = add(t0, t1, corr);
      if (!(s.h == add(t0, t1).h)) ++nonzero;
      CHECK(equiv(s, add(t0, t1)));
      CHECK(equiv(neg(t0, corr), neg(t0)));
      CHECK(equiv(add(t0, neg(t0, corr), corr), zero_triple(P, Zu(), 1)));
    }
    CHECK(nonzero > 0);
    CHECK_THROWS_AS(add(random_triple(Pair::absolute(bi::torus()), Zu(), 1, rng),
                        random_triple(Pair::absolute(bi::torus()), Zu(), 1, rng),
                        Corrections{u_cup1(Expr::arg(0), Expr::arg(1)), Expr::zero(), Expr::zero()}),
                    TripleError);
  }

  TEST_CASE("change of cocycle") {
    std::mt19937_64 rng(59);
    int nonzero = 0;
    for (const auto& P : suite_pairs()) {
      auto t = random_triple(P, Zu(), 1, rng);
      CHECK(triple_violation(change_of_cocycle(t, Expr::zero())) == "");
      CHECK(change_of_cocycle(t, Expr::zero()).h == t.h);
      auto shifted = change_of_cocycle(t, Expr::delta(u_cup1(Expr::arg(0), Expr::arg(0))));
      CHECK(equiv(shifted, t));

      // Θ ∘ κ = κ + Θ with cocycle-valued u·(c ∪ c) terms
      auto s = random_triple(P, Zu(), 1, rng);
      auto kappa = Expr::scalar(1, kU, Expr::cup(Expr::arg(0), Expr::arg(0)));
      auto theta = Expr::scalar(-3, kU, Expr::cup(Expr::arg(0), Expr::arg(0)));
      auto lhs = change_of_cocycle(change_of_cocycle(s, kappa), theta);
      auto rhs = change_of_cocycle(s, Expr::sum(kappa, theta));
      CHECK(lhs.c == s.c);
      CHECK(lhs.h == rhs.h);
      if (!(lhs.h == s.h)) ++nonzero;
      CHECK_THROWS_AS(change_of_cocycle(s, u_cup1(Expr::arg(0), Expr::arg(0))), TripleError);
    }
    CHECK(nonzero > 0);
  }

  TEST_CASE("homotopy shift") {
    std::mt19937_64 rng(61);
    for (const auto& P : suite_pairs())
      for (const auto& L : {Z(), Zu()})
        for (int n = 1; n <= 2; ++n) {
          auto t = random_triple(P, L, n, rng);
          auto cyl = cylinder(P->ambient());
          auto CP = cylinder_pair(cyl, P);
          auto C0 = pullback(cyl.pr, t.c, CP);
          auto same = homotopy_shift(t, cyl, CP, C0);
          CHECK(same.c == t.c);
          CHECK(same.h == t.h);
          auto v = random_cochain(P, L, n - 1, rng), w = random_cochain(P, L, n - 1, rng);
          auto C = C0 + cob_witness(cyl, CP, v) + coboundary(interval_cup(cyl, CP, w));
          auto moved = homotopy_shift(t, cyl, CP, C);
          CHECK(moved.c == t.c + coboundary(v) + coboundary(w));
          CHECK(equiv(moved, t));
        }
  }

  TEST_CASE("homotopy shift with random cylinder cocycles") {
    std::mt19937_64 rng(67);
    auto P = circle();
    auto cyl = cylinder(P->ambient());
    auto CP = cylinder_pair(cyl, P);
    for (int trial = 0; trial < 10; ++trial)
      for (int n = 1; n <= 2; ++n) {
        auto C = random_cocycle(CP, Z(), n, rng);
        auto c = pullback(cyl.i0, C, P);
        auto t = add(character_lift(c), a_map(random_form(P, Z(), n - 1, rng)));
        CHECK(equiv(homotopy_shift(t, cyl, CP, C), t));
      }
  }
}

namespace {

std::vector<PairPtr> bundle_bases() {
  return {bi::pair_by_name("point"), bi::pair_by_name("circle"), bi::pair_by_name("simplex2/boundary2"),
          bi::pair_by_name("rp2")};
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("integration over the circle") {
    std::mt19937_64 rng(71);
    int nontrivial = 0;
    for (const auto& M : bundle_bases()) {
      const auto& cb = circle_bundle(M);
      for (const auto& L : {Z(), Zu()})
        for (int n = 1; n <= 2; ++n) {
          auto zero = zero_triple(M, L, n - 1);
          auto s = random_triple(M, L, n, rng);
          auto pulled = integrate_abs(pullback(cb.pr2, s, cb.abs), cb);
          CHECK(equiv(pulled, zero));

          auto y0 = random_triple(cb.rel, L, n, rng), y1 = random_triple(cb.rel, L, n, rng);
          CHECK(equiv(integrate_abs(rebase(y0, cb.abs), cb), integrate_rel(y0, cb)));
          CHECK(equiv(integrate_rel(add(y0, y1), cb), add(integrate_rel(y0, cb), integrate_rel(y1, cb))));
          CHECK(equiv(integrate_rel(perturb(y0, rng), cb), integrate_rel(y0, cb)));

          auto yi = integrate_rel(y0, cb);
          CHECK(yi.omega == fiber_integrate(cb.product, 0, y0.omega, M));
          CHECK(yi.c == integrate_interval(cb.product, 0, y0.c, M));

          auto theta = random_form(cb.rel, L, n - 1, rng);
          auto lhs = integrate_rel(a_map(theta), cb);
          CHECK(equiv(lhs, neg(a_map(fiber_integrate(cb.product, 0, theta, M)))));

          auto t0 = random_triple(cb.abs, L, n, rng), t1 = random_triple(cb.abs, L, n, rng);
          CHECK(equiv(integrate_abs(add(t0, t1), cb), add(integrate_abs(t0, cb), integrate_abs(t1, cb))));
          if (!equivalent(integrate_abs(t0, cb), zero_triple(M, L, n - 1)).equivalent) ++nontrivial;
        }
    }
    CHECK(nontrivial > 4);
  }

  TEST_CASE("integration is natural in the base") {
    std::mt19937_64 rng(73);
    auto M = Pair::absolute(bi::circle());
    auto M0 = Pair::absolute(bi::torus());
    const auto& cb = circle_bundle(M);
    const auto& cb0 = circle_bundle(M0);
    auto T = product(bi::circle(), bi::circle());
    const SimplicialMap& f = T->pr1();
    auto F = product_map(cb0.product, cb.product, SimplicialMap::identity(bi::circle()), f);
    for (int n = 1; n <= 2; ++n)
      for (int trial = 0; trial < 2; ++trial) {
        auto t = random_triple(cb.abs, Zu(), n, rng);
        CHECK(equiv(pullback(f, integrate_abs(t, cb), M0), integrate_abs(pullback(F, t, cb0.abs), cb0)));
      }
  }

  TEST_CASE("suspension integrates back") {
    std::mt19937_64 rng(79);
    for (const auto& M : bundle_bases()) {
      if (!M->is_absolute()) continue;
      const auto& cb = circle_bundle(M);
      for (const auto& L : {Z(), Zu()})
        for (int n = 0; n <= 2; ++n) {
          auto x = random_triple(M, L, n, rng);
          auto X = suspend(x, cb);
          CHECK(same_pair(X.base(), cb.rel));
          CHECK(X.degree() == n + 1);
          CHECK(equiv(integrate_rel(X, cb), x));
        }
    }
  }

  TEST_CASE("double integration anticommutes") {
    std::mt19937_64 rng(83);
    for (const auto& M : {bi::pair_by_name("point"), bi::pair_by_name("circle")}) {
      auto dc = double_circle(M);
      for (int n = 2; n <= 3; ++n) {
        auto t = random_triple(dc.outer->abs, Z(), n, rng);
        auto report = double_integral_anticommute_check(t, dc);
        CHECK(report.ok);
      }
    }
  }
}

namespace {

int sign(int e) { return e % 2 ? -1 : 1; }

Triple signed_triple(int s, const Triple& t) { return s < 0 ? neg(t) : t; }

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("products: unit, commutativity, bilinearity") {
    std::mt19937_64 rng(89);
    for (const auto& name : {"point", "circle", "torus", "simplex2/boundary2"}) {
      auto P = bi::pair_by_name(name);
      auto A = Pair::absolute(P->ambient());
      const int top = P->ambient()->dimension();
      for (int n = 0; n <= std::min(top, 2); ++n)
        for (int m = 0; n + m <= top && m <= 2; ++m) {
          auto x = random_triple(P, Z(), n, rng), x2 = random_triple(P, Z(), n, rng);
          auto y = random_triple(A, Z(), m, rng);
          auto xy = product_full(x, y);
          CHECK(xy.degree() == n + m);
          CHECK(equiv(product_full(unit_triple(A, Z()), x), x));
          CHECK(equiv(product_full(x, unit_triple(A, Z())), x));
          CHECK(equiv(rebase(xy, P), signed_triple(sign(n * m), rebase(product_full(y, x), P))));
          CHECK(equiv(product_full(add(x, x2), y), add(xy, product_full(x2, y))));
        }
    }
  }
}

namespace {

// ⟨u ∪ v, σ⟩ = u(front edge) · v(back edge), straight from the faces.
Rational aw_cup_on_triangle(const Cochain& u, const Cochain& v, int triangle) {
  const auto& X = u.base()->ambient();
  const Simplex front = X->cell_face(2, triangle, 2), back = X->cell_face(2, triangle, 0);
  return u.value(0, front.cell) * v.value(0, back.cell);
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("odd times odd on the torus matches the cup pairing") {
    auto T = product(bi::circle(), bi::circle());
    auto P = Pair::absolute(T->set());
    auto S = Pair::absolute(bi::circle());
    const Cochain z = Cochain::scalar(S, Z(), 1, 0, RatVector{1});
    const Cochain z1 = pullback(T->pr1(), z, P), z2 = pullback(T->pr2(), z, P);
    auto x = character_lift(z1), y = character_lift(z2);
    auto xy = product_full(x, y), yx = product_full(y, x);
    CHECK(xy.degree() == 2);

    const Chain edge = cell_chain(bi::circle(), 1, 0);
    const Chain fundamental = ez_shuffle(T, edge, edge);
    REQUIRE(boundary(fundamental).terms.empty());
    Rational oracle = 0;
    for (const auto& [cell, k] : fundamental.terms) oracle += k * aw_cup_on_triangle(z1, z2, cell);
    CHECK(abs(oracle) == 1);
    CHECK(evaluate(xy.c, 0, fundamental) == oracle);
    CHECK(cohomologous(xy.c, cup(z1, z2)));
    CHECK(equiv(xy, neg(yx)));
    CHECK(equiv(scale(2, product_full(x, x)), zero_triple(P, Z(), 2)));

    // the twist exchanges the factors
    auto tw = twist(T, T);
    CHECK(equiv(pullback(tw, yx, P), xy) != equiv(pullback(tw, yx, P), neg(xy)));
  }
}

namespace {

// An alternative suspension: X + a(dκ + τ ∧ pr2*W(w)), which integrates to a class in im(a∘ch) = 0.
Triple alternative_suspension(const Triple& X, const CircleBundle& cb, std::mt19937_64& rng) {
  const int n = X.degree();
  const auto& M = cb.base;
  auto kappa = random_form(cb.rel, X.coeffs(), n - 2, rng);
  auto w = random_cocycle(M, X.coeffs(), n - 2, rng);
  const PLForm tau = pullback(cb.product->pr1(), circle_class(X.coeffs()).omega, cb.left);
  const PLForm theta = exterior_d(kappa) + wedge(tau, pullback(cb.pr2, whitney(w), cb.abs)).rebase(cb.rel);
  return perturb(add(X, a_map(theta)), rng);
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("products: associativity and the a-formula") {
    std::mt19937_64 rng(97);
    for (const auto& name : {"circle", "torus", "rp2"}) {
      auto P = bi::pair_by_name(name);
      const int top = P->ambient()->dimension();
      for (int n = 0; n <= 1; ++n)
        for (int m = 0; m <= 1; ++m)
          for (int k = 0; n + m + k <= top && k <= 1; ++k) {
            auto x = random_triple(P, Zu(), n, rng), y = random_triple(P, Zu(), m, rng),
                 z = random_triple(P, Zu(), k, rng);
            CHECK(equiv(product_full(product_full(x, y), z), product_full(x, product_full(y, z))));
          }
      for (int n = 1; n <= top; ++n)
        for (int m = 0; n + m <= top; ++m) {
          auto theta = random_form(P, Zu(), n - 1, rng);
          auto y = random_triple(P, Zu(), m, rng);
          CHECK(equiv(product_full(a_map(theta), y), a_map(wedge(theta, y.omega))));
        }
    }
  }

  TEST_CASE("pullback is a unital ring map") {
    std::mt19937_64 rng(101);
    auto T = product(bi::circle(), bi::circle());
    auto PT = Pair::absolute(T->set());
    auto S = Pair::absolute(bi::circle());
    const std::vector<SimplicialMap> maps = {T->pr1(), T->pr2(), diagonal(T)};
    const std::vector<std::pair<PairPtr, PairPtr>> ends = {{PT, S}, {PT, S}, {S, PT}};
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const auto& f = maps[i];
      const auto& [src, dst] = ends[i];
      CHECK(equiv(pullback(f, unit_triple(dst, Zu()), src), unit_triple(src, Zu())));
      const int top = std::min(src->ambient()->dimension(), dst->ambient()->dimension());
      for (int n = 0; n <= top; ++n)
        for (int m = 0; n + m <= top; ++m) {
          auto x = random_triple(dst, Zu(), n, rng), y = random_triple(dst, Zu(), m, rng);
          CHECK(equiv(pullback(f, product_full(x, y), src), product_full(pullback(f, x, src), pullback(f, y, src))));
        }
    }
  }

  TEST_CASE("integration is compatible with products") {
    std::mt19937_64 rng(103);
    for (const auto& name : {"point", "circle"}) {
      auto M = bi::pair_by_name(name);
      const auto& cb = circle_bundle(M);
      const int top = M->ambient()->dimension() + 1;
      for (int n = 1; n <= top; ++n)
        for (int m = 0; n + m <= top; ++m) {
          auto x = random_triple(cb.abs, Z(), n, rng);
          auto y = random_triple(M, Z(), m, rng);
          auto lhs = integrate_abs(product_full(x, pullback(cb.pr2, y, cb.abs)), cb);
          CHECK(equiv(lhs, product_full(integrate_abs(x, cb), y)));
          auto lhs2 = integrate_abs(product_full(pullback(cb.pr2, y, cb.abs), x), cb);
          CHECK(equiv(signed_triple(sign(m), lhs2), product_full(y, integrate_abs(x, cb))));
        }
    }
  }

  TEST_CASE("products and integrals do not depend on choices") {
    std::mt19937_64 rng(107);
    for (const auto& name : {"circle", "torus"}) {
      auto M = bi::pair_by_name(name);
      const auto& cb = circle_bundle(M);
      const int top = M->ambient()->dimension();
      for (int n = 1; n <= top; n += 2)
        for (int m = 0; n + m <= top; ++m) {
          auto x = random_triple(M, Z(), n, rng), y = random_triple(M, Z(), m, rng);
          const Triple X = suspend(x, cb);
          const Triple ref = product_full(x, y);
          for (int alt = 0; alt < 10; ++alt) {
            auto X2 = alternative_suspension(X, cb, rng);
            CHECK(equiv(integrate_rel(X2, cb), x));
            CHECK(equiv(product_with_suspensions(x, y, X2, std::nullopt), ref));
          }
        }
      auto t = random_triple(cb.abs, Z(), 2, rng);
      const Triple ref = integrate_abs(t, cb);
      for (int alt = 0; alt < 10; ++alt) CHECK(equiv(integrate_abs(perturb(t, rng), cb), ref));
    }
  }
}

namespace {

std::string report_failures(const SequenceReport& r) {
  std::string out;
  for (const auto& node : r.nodes)
    for (const auto& f : node.failures) out += node.node + " " + f + "\n";
  return out;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("pair sequence is exact") {
    std::mt19937_64 rng(109);
    for (const auto& name : {"simplex2/boundary2", "torus/circle"})
      for (const auto& L : {Z(), Zu()})
        for (int n = 1; n <= 3; ++n) {
          auto rep = pair_sequence(bi::pair_by_name(name), L, n, rng, 2);
          INFO(name << " n=" << n << "\n" << report_failures(rep));
          CHECK(rep.ok());
          CHECK(rep.nodes.size() == 6);
          for (const auto& node : rep.nodes) CHECK(node.kernel_samples == 2);
        }
  }

  TEST_CASE("pair sequence of an absolute pair") {
    std::mt19937_64 rng(113);
    auto rep = pair_sequence(bi::pair_by_name("circle"), Z(), 1, rng, 2);
    INFO(report_failures(rep));
    CHECK(rep.ok());
  }

  TEST_CASE("connecting maps") {
    auto P = bi::pair_by_name("simplex2/boundary2");
    auto N = sub_pair(P);
    // constants on the boundary extend, so they die
    auto constant = make_triple(Cochain::zero(N, Z(), 1), PLForm::zero(N, Z(), 1),
                                make_rational(1, 3) * Cochain::unit(N, Z()));
    auto d0 = delta1(constant, P);
    CHECK(equivalent(d0, zero_triple(P, Z(), 2)).equivalent);
    // 1/3 on one boundary edge is a 3-torsion class of the disk rel boundary
    RatVector edge(N->ambient()->count(1), 0);
    edge[0] = make_rational(1, 3);
    auto loop = make_triple(Cochain::zero(N, Z(), 2), PLForm::zero(N, Z(), 2), Cochain::scalar(N, Z(), 1, 0, edge));
    auto d = delta1(loop, P);
    CHECK(d.c.is_zero());
    auto r = equivalent(d, zero_triple(P, Z(), 3));
    REQUIRE(!r.equivalent);
    CHECK(r.certificate->kind == "period");
    CHECK(abs(r.certificate->pairing) == make_rational(1, 3));
    CHECK(equivalent(scale(3, d), zero_triple(P, Z(), 3)).equivalent);
    CHECK(equivalent(forget_sub(d), zero_triple(ambient_pair(P), Z(), 3)).equivalent);
    CHECK(integral_primitive(delta2(restrict_to_sub(unit_triple(ambient_pair(P), Z()), P), P)).has_value());
  }
}

TEST_SUITE("core") {
  TEST_CASE("axiom sequence is exact") {
    std::mt19937_64 rng(127);
    for (const auto& P : suite_pairs())
      for (const auto& L : {Z(), Zu()})
        for (int n = 1; n <= 3; ++n) {
          auto rep = axiom_sequence(P, L, n, rng, 2);
          INFO(P->ambient()->name() << " n=" << n << "\n" << report_failures(rep));
          CHECK(rep.ok());
          CHECK(rep.nodes.size() == 3);
        }
  }
}


TEST_SUITE("core") {
  TEST_CASE("serialization round trips") {
    std::mt19937_64 rng(131);
    for (const auto& P : suite_pairs())
      for (const auto& L : {Z(), Zu()})
        for (int n = 0; n <= 2; ++n) {
          auto t = random_triple(P, L, n, rng);
          const Json j = triple_to_json(t);
          auto back = triple_from_json(Json::parse(j.dump()), P);
          CHECK(back.c == t.c);
          CHECK(back.h == t.h);
          CHECK(back.omega == t.omega);
          auto standalone = triple_from_json(j);
          CHECK(triple_to_json(standalone).dump() == j.dump());

          auto u = random_equivalent(t, rng);
          auto r = equivalent(t, u);
          REQUIRE(r.equivalent);
          auto w = witness_from_json(Json::parse(witness_to_json(*r.witness).dump()), P, L, n);
          CHECK(check_witness(t, u, w));
        }
    auto x = a_map(edge_form(make_rational(1, 2)));
    auto zero = zero_triple(circle(), Z(), 2);
    auto r = equivalent(x, zero);
    REQUIRE(r.certificate);
    const Json cj = certificate_to_json(*r.certificate, circle(), Z());
    CHECK(check_certificate(x, zero, certificate_from_json(Json::parse(cj.dump()), circle(), Z())));
    CHECK_THROWS_AS(triple_from_json(triple_to_json(x), Pair::absolute(bi::torus())), TripleError);
  }
}
