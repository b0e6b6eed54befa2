#include <map>
#include <mutex>

#include "diffcoh/core.hpp"

namespace diffcoh {

const PairPtr& circle_vertex_pair() {
  static const PairPtr P = intern_pair(builtins::circle(), {{true}, {false}});
  return P;
}

const CircleBundle& circle_bundle(const PairPtr& MN) {
  static std::mutex mu;
  static std::map<const Pair*, std::unique_ptr<CircleBundle>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(MN.get());
  if (it != memo.end()) return *it->second;
  const SSetPtr S = builtins::circle();
  const SSetPtr& M = MN->ambient();
  auto cb = std::make_unique<CircleBundle>(CircleBundle{
      MN, product(S, M), nullptr, nullptr, nullptr, SimplicialMap::identity(M), SimplicialMap::identity(M)});
  cb->rel = product_pair(cb->product, circle_vertex_pair(), MN);
  cb->abs = product_pair(cb->product, Pair::absolute(S), MN);
  cb->left = MN->is_absolute() ? cb->rel : product_pair(cb->product, circle_vertex_pair(), Pair::absolute(M));
  cb->pr2 = cb->product->pr2();
  cb->i = pairing(cb->product, constant_map(M, S, 0), SimplicialMap::identity(M));
  return *memo.emplace(MN.get(), std::move(cb)).first->second;
}

Triple integrate_rel(const Triple& t, const CircleBundle& cb) {
  if (!same_pair(t.base(), cb.rel)) throw TripleError("mismatch", "integrate_rel: triple is not on the relative bundle");
  const auto& P = cb.product;
  return make_triple(integrate_interval(P, 0, t.c, cb.base), fiber_integrate(P, 0, t.omega, cb.base),
                     -integrate_interval(P, 0, t.h, cb.base));
}

Triple integrate_abs(const Triple& t, const CircleBundle& cb) {
  if (!same_pair(t.base(), cb.abs)) throw TripleError("mismatch", "integrate_abs: triple is not on the bundle");
  const Triple restricted = pullback(cb.i, t, cb.base);
  const Triple y = sub(t, pullback(cb.pr2, restricted, cb.abs));
  return integrate_rel(rebase(y, cb.rel), cb);
}

Triple circle_class(const CoeffPtr& coeffs) {
  const PairPtr& P = circle_vertex_pair();
  const Cochain z = Cochain::scalar(P, coeffs, 1, coeffs->unit(), RatVector{1});
  return character_lift(z);
}

Triple suspend(const Triple& x, const CircleBundle& cb) {
  if (!same_pair(x.base(), cb.base)) throw TripleError("mismatch", "suspend: triple is not on the bundle base");
  const auto& P = cb.product;
  const Triple zhat = circle_class(x.coeffs());
  const Triple zt = pullback(P->pr1(), zhat, cb.left);
  const Triple xt = pullback(cb.pr2, x, cb.abs);
  Triple X0 = rebase(product_formula(zt, xt), cb.rel);
  const Cochain ic = integrate_interval(P, 0, X0.c, cb.base);
  if (!cohomologous(ic, x.c)) {
    if (!cohomologous(ic, -x.c)) throw TripleError("postcondition", "suspend: the class of ∫χ is not ±I(x)");
    X0 = neg(X0);
  }
  const Triple d = sub(x, integrate_rel(X0, cb));
  const PLForm theta = a_preimage(d);
  const PLForm tau = pullback(P->pr1(), zhat.omega, cb.left);
  const PLForm lift = Rational(-1) * wedge(tau, pullback(cb.pr2, theta, cb.abs));
  const Triple X = add(X0, a_map(lift.rebase(cb.rel)));
  if (!equivalent(integrate_rel(X, cb), x).equivalent)
    throw TripleError("postcondition", "suspend: ∫X is not equivalent to the input");
  return X;
}

DoubleCircle double_circle(const PairPtr& M) {
  if (!M->is_absolute()) throw TripleError("precondition", "double_circle: base must be absolute");
  const CircleBundle& inner = circle_bundle(M);
  const CircleBundle& outer = circle_bundle(inner.abs);
  const auto& Q = outer.product;
  const auto& R = inner.product;
  SimplicialMap tau = pairing(Q, compose(R->pr1(), Q->pr2()), pairing(R, Q->pr1(), compose(R->pr2(), Q->pr2())));
  return DoubleCircle{&outer, &inner, std::move(tau)};
}

AnticommuteReport double_integral_anticommute_check(const Triple& t, const DoubleCircle& dc) {
  const Triple lhs = integrate_abs(integrate_abs(pullback(dc.tau, t, dc.outer->abs), *dc.outer), *dc.inner);
  const Triple rhs = neg(integrate_abs(integrate_abs(t, *dc.outer), *dc.inner));
  AnticommuteReport r;
  r.result = equivalent(lhs, rhs);
  r.ok = r.result.equivalent;
  return r;
}

}  // namespace diffcoh
