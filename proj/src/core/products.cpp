#include "diffcoh/core.hpp"

namespace diffcoh {

namespace {

// S¹ × (M, B)
PairPtr lifted(const CircleBundle& cb, const PairPtr& B) {
  return product_pair(cb.product, Pair::absolute(builtins::circle()), B);
}

}  // namespace

Triple product_formula(const Triple& t0, const Triple& t1, const Corrections& corr) {
  if (t0.base()->ambient() != t1.base()->ambient() || t0.coeffs() != t1.coeffs())
    throw TripleError("mismatch", "product: triples live on different sets or coefficient rings");
  const int n = t0.degree(), m = t1.degree();
  const PairPtr U = pair_union(t0.base(), t1.base());
  const Cochain c = cup(t0.c, t1.c).rebase(U);
  const PLForm omega = wedge(t0.omega, t1.omega).rebase(U);
  const Cochain R0 = deRham(t0.omega), R1 = deRham(t1.omega);
  Cochain h = b_homotopy(t0.omega, t1.omega).rebase(U);
  h += cup(t0.h, R1).rebase(U);
  h += Rational(n % 2 ? -1 : 1) * cup(R0, t1.h).rebase(U);
  h -= cup(t0.h, coboundary(t1.h)).rebase(U);
  const Cochain M = corr.M->evaluate({t0.c, t1.c}, n + m - 1);
  if (!coboundary(M).is_zero()) throw TripleError("precondition", "product correction is not a cocycle");
  h += M.rebase(U);
  return make_triple(c, omega, h);
}

Triple product_even(const Triple& t0, const Triple& t1, const Corrections& corr) {
  if (t0.degree() % 2 || t1.degree() % 2)
    throw TripleError("precondition", "product_even: odd degree input, use product_full");
  return product_formula(t0, t1, corr);
}

Triple product_full(const Triple& t0, const Triple& t1) { return product_with_suspensions(t0, t1, std::nullopt, std::nullopt); }

Triple product_with_suspensions(const Triple& t0, const Triple& t1, const std::optional<Triple>& X0,
                                const std::optional<Triple>& X1) {
  if (t0.base()->ambient() != t1.base()->ambient())
    throw TripleError("mismatch", "product: triples live on different sets");
  const bool odd0 = t0.degree() % 2 != 0, odd1 = t1.degree() % 2 != 0;
  if (!odd0 && !odd1) return product_even(t0, t1);
  const PairPtr U = pair_union(t0.base(), t1.base());
  const CircleBundle& target = circle_bundle(U);
  if (odd0) {
    const CircleBundle& cb = circle_bundle(t0.base());
    const Triple X = X0 ? *X0 : suspend(t0, cb);
    const Triple y = pullback(cb.pr2, t1, lifted(cb, t1.base()));
    const Triple W = odd1 ? product_full(X, y) : product_even(X, y);
    return integrate_rel(rebase(W, target.rel), target);
  }
  const CircleBundle& cb = circle_bundle(t1.base());
  const Triple Y = X1 ? *X1 : suspend(t1, cb);
  const Triple x = pullback(cb.pr2, t0, lifted(cb, t0.base()));
  return integrate_rel(rebase(product_even(x, Y), target.rel), target);
}

}  // namespace diffcoh
