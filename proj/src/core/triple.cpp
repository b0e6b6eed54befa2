#include <functional>

#include "diffcoh/core.hpp"

namespace diffcoh {

namespace {

std::string first_nonzero(const PLForm& f) {
  const auto& X = f.base()->ambient();
  for (int b = 0; b < f.coeffs()->rank(); ++b)
    for (int d = 0; d <= X->dimension(); ++d)
      for (std::size_t c = 0; c < X->count(d); ++c)
        if (!f.local(b, d, static_cast<int>(c)).is_zero())
          return f.coeffs()->basis_name(b) + ":" + X->cell_name(d, static_cast<int>(c));
  return "";
}

Triple checked(Triple t) {
  const std::string v = triple_violation(t);
  if (!v.empty()) {
    const auto colon = v.find(':');
    throw TripleError(v.substr(0, colon), v.substr(colon + 2));
  }
  return t;
}

// e_b · u in the coefficient ring
Cochain coefficient_multiply(int basis, const Cochain& u) {
  const auto& L = u.coeffs();
  Cochain r(u.base(), L, u.degree() + L->degree(basis));
  for (int b = 0; b < L->rank(); ++b)
    for (const auto& term : L->product(basis, b)) {
      auto& dst = r.part(term.basis);
      const auto& src = u.part(b);
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] += Rational(term.coefficient) * src[i];
    }
  return r;
}

}  // namespace

bool same_pair(const PairPtr& a, const PairPtr& b) {
  if (a == b) return true;
  if (a->ambient() != b->ambient()) return false;
  const auto& X = a->ambient();
  for (int d = 0; d <= X->dimension(); ++d)
    for (std::size_t i = 0; i < X->count(d); ++i)
      if (a->in_sub(d, static_cast<int>(i)) != b->in_sub(d, static_cast<int>(i))) return false;
  return true;
}

std::string triple_violation(const Triple& t) {
  if (!t.c.base() || !t.omega.base() || !t.h.base()) return "mismatch: uninitialized component";
  if (!same_pair(t.c.base(), t.omega.base()) || !same_pair(t.c.base(), t.h.base()))
    return "mismatch: components live on different pairs";
  if (t.c.coeffs() != t.omega.coeffs() || t.c.coeffs() != t.h.coeffs())
    return "mismatch: components use different coefficient rings";
  if (t.omega.degree() != t.degree() || t.h.degree() != t.degree() - 1)
    return "mismatch: component degrees are inconsistent";
  if (!t.c.is_integral()) return "not-integral: c has a non-integral value";
  if (!t.c.vanishes_on_sub() || !t.h.vanishes_on_sub()) return "mismatch: cochain does not vanish on the subcomplex";
  const Cochain dc = coboundary(t.c);
  if (!dc.is_zero())
    return "not-a-cocycle: δc is nonzero at " + dc.first_difference(Cochain::zero(dc.base(), dc.coeffs(), dc.degree()));
  const std::string compat = t.omega.compatibility_error();
  if (!compat.empty()) return "incompatible-form: " + compat;
  const PLForm dw = exterior_d(t.omega);
  if (!dw.is_zero()) return "not-closed: dω is nonzero at " + first_nonzero(dw);
  const Cochain lhs = coboundary(t.h);
  const Cochain rhs = (deRham(t.omega) - t.c).rebase(lhs.base());
  if (!(lhs == rhs)) return "structure-equation-violated: δh ≠ R(ω) − c at " + lhs.first_difference(rhs);
  return "";
}

Triple make_triple(Cochain c, PLForm omega, Cochain h) {
  return checked(Triple{std::move(c), std::move(omega), std::move(h)});
}

Triple zero_triple(PairPtr base, CoeffPtr coeffs, int degree) {
  return Triple{Cochain::zero(base, coeffs, degree), PLForm::zero(base, coeffs, degree),
                Cochain::zero(base, coeffs, degree - 1)};
}

Triple unit_triple(PairPtr base, CoeffPtr coeffs) {
  return make_triple(Cochain::unit(base, coeffs), PLForm::unit(base, coeffs), Cochain::zero(base, coeffs, -1));
}

Triple a_map(const PLForm& theta) {
  return make_triple(Cochain::zero(theta.base(), theta.coeffs(), theta.degree() + 1), exterior_d(theta),
                     deRham(theta));
}

Triple character_lift(const Cochain& c) {
  return make_triple(c, whitney(c), Cochain::zero(c.base(), c.coeffs(), c.degree() - 1));
}

Triple random_triple(PairPtr base, CoeffPtr coeffs, int degree, std::mt19937_64& rng) {
  const Cochain c = random_cocycle(base, coeffs, degree, rng);
  const Cochain r = make_rational(1, 2) * random_cochain(base, coeffs, degree - 1, rng);
  const PLForm kappa = random_form(base, coeffs, degree - 1, rng);
  const Cochain z = make_rational(1, 3) * random_cocycle(base, coeffs, degree - 1, rng);
  PLForm omega = whitney(c) + whitney(coboundary(r)) + exterior_d(kappa);
  Cochain h = r + deRham(kappa) + z;
  return make_triple(c, std::move(omega), std::move(h));
}

Triple random_equivalent(const Triple& t, std::mt19937_64& rng) {
  const Cochain b = random_cochain(t.base(), t.coeffs(), t.degree() - 1, rng);
  const Cochain k = make_rational(1, 2) * random_cochain(t.base(), t.coeffs(), t.degree() - 2, rng);
  return make_triple(t.c + coboundary(b), t.omega, t.h + Rational(EquivalenceWitness::epsilon) * b + coboundary(k));
}

Triple rebase(const Triple& t, PairPtr other) {
  return make_triple(t.c.rebase(other), t.omega.rebase(other), t.h.rebase(other));
}

Triple pullback(const SimplicialMap& f, const Triple& t, PairPtr source) {
  return make_triple(pullback(f, t.c, source), pullback(f, t.omega, source), pullback(f, t.h, source));
}

ExprPtr Expr::zero() { return std::make_shared<Expr>(); }

ExprPtr Expr::arg(int index) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::Arg;
  e->index_ = index;
  return e;
}

ExprPtr Expr::cup(ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::Cup;
  e->children_ = {std::move(l), std::move(r)};
  return e;
}

ExprPtr Expr::cup1(ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::Cup1;
  e->children_ = {std::move(l), std::move(r)};
  return e;
}

ExprPtr Expr::rho(ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::Rho;
  e->children_ = {std::move(x)};
  return e;
}

ExprPtr Expr::scalar(const Rational& k, int basis, ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::Scalar;
  e->k_ = k;
  e->index_ = basis;
  e->children_ = {std::move(x)};
  return e;
}

ExprPtr Expr::delta(ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::Delta;
  e->children_ = {std::move(x)};
  return e;
}

ExprPtr Expr::sum(ExprPtr l, ExprPtr r) {
  if (l->kind_ == Kind::Zero) return r;
  if (r->kind_ == Kind::Zero) return l;
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::Sum;
  e->children_ = {std::move(l), std::move(r)};
  return e;
}

Cochain Expr::evaluate(const std::vector<Cochain>& args, int degree) const {
  if (args.empty()) throw TripleError("precondition", "expression evaluated without arguments");
  PairPtr base = args[0].base();
  for (const auto& a : args) base = pair_union(base, a.base());
  std::function<Cochain(const Expr&)> eval = [&](const Expr& e) -> Cochain {
    switch (e.kind_) {
      case Kind::Zero:
        return Cochain::zero(base, args[0].coeffs(), degree);
      case Kind::Arg:
        if (e.index_ < 0 || e.index_ >= static_cast<int>(args.size()))
          throw TripleError("precondition", "expression argument out of range");
        return args[e.index_];
      case Kind::Cup:
        return diffcoh::cup(eval(*e.children_[0]), eval(*e.children_[1]));
      case Kind::Cup1:
        return diffcoh::cup1(eval(*e.children_[0]), eval(*e.children_[1]));
      case Kind::Rho:
        return eval(*e.children_[0]);
      case Kind::Scalar: {
        Cochain x = eval(*e.children_[0]);
        if (e.index_ >= 0) x = coefficient_multiply(e.index_, x);
        return e.k_ * x;
      }
      case Kind::Delta:
        return coboundary(eval(*e.children_[0]));
      case Kind::Sum: {
        Cochain l = eval(*e.children_[0]), r = eval(*e.children_[1]);
        const PairPtr u = pair_union(l.base(), r.base());
        return l.rebase(u) + r.rebase(u);
      }
    }
    throw TripleError("precondition", "unknown expression");
  };
  Cochain r = eval(*this);
  if (r.degree() != degree)
    throw TripleError("precondition", "expression " + to_string() + " has degree " + std::to_string(r.degree()) +
                                          ", expected " + std::to_string(degree));
  return r.rebase(base);
}

std::string Expr::to_string() const {
  switch (kind_) {
    case Kind::Zero:
      return "0";
    case Kind::Arg:
      return "x" + std::to_string(index_);
    case Kind::Cup:
      return "(" + children_[0]->to_string() + " cup " + children_[1]->to_string() + ")";
    case Kind::Cup1:
      return "(" + children_[0]->to_string() + " cup1 " + children_[1]->to_string() + ")";
    case Kind::Rho:
      return "rho(" + children_[0]->to_string() + ")";
    case Kind::Scalar:
      return diffcoh::to_string(k_) + (index_ >= 0 ? "*e" + std::to_string(index_) : "") + "*" +
             children_[0]->to_string();
    case Kind::Delta:
      return "delta(" + children_[0]->to_string() + ")";
    case Kind::Sum:
      return "(" + children_[0]->to_string() + " + " + children_[1]->to_string() + ")";
  }
  return "?";
}

std::optional<Corrections> coboundary_perturbation(const CoeffPtr& coeffs, int n) {
  for (int b = 0; b < coeffs->rank(); ++b) {
    std::function<ExprPtr(ExprPtr, ExprPtr)> K;
    if (n % 2 != 0 && coeffs->degree(b) == -(n + 1))
      K = [b](ExprPtr x, ExprPtr y) { return Expr::scalar(1, b, Expr::cup1(std::move(x), std::move(y))); };
    else if (n % 2 == 0 && coeffs->degree(b) == -(n + 2))
      K = [b](ExprPtr x, ExprPtr y) { return Expr::scalar(1, b, Expr::cup(std::move(x), std::move(y))); };
    if (!K) continue;
    Corrections corr;
    corr.A = Expr::delta(K(Expr::arg(0), Expr::arg(1)));
    corr.N = Expr::delta(K(Expr::arg(0), Expr::arg(0)));
    return corr;
  }
  return std::nullopt;
}

Triple add(const Triple& t0, const Triple& t1, const Corrections& corr) {
  if (!same_pair(t0.base(), t1.base()) || t0.degree() != t1.degree() || t0.coeffs() != t1.coeffs())
    throw TripleError("mismatch", "add: triples live on different bases or degrees");
  const Cochain A = corr.A->evaluate({t0.c, t1.c}, t0.degree() - 1);
  if (!coboundary(A).is_zero()) throw TripleError("precondition", "addition correction is not a cocycle");
  return make_triple(t0.c + t1.c.rebase(t0.base()), t0.omega + t1.omega.rebase(t0.base()),
                     t0.h + t1.h.rebase(t0.base()) + A);
}

Triple neg(const Triple& t, const Corrections& corr) {
  const Cochain N = corr.N->evaluate({t.c}, t.degree() - 1);
  if (!coboundary(N).is_zero()) throw TripleError("precondition", "negation correction is not a cocycle");
  return make_triple(-t.c, -t.omega, -t.h + N);
}

Triple sub(const Triple& t0, const Triple& t1) { return add(t0, neg(t1)); }

Triple scale(long k, const Triple& t) {
  const Rational q(k);
  return make_triple(q * t.c, q * t.omega, q * t.h);
}

Triple change_of_cocycle(const Triple& t, const ExprPtr& theta) {
  const Cochain v = theta->evaluate({t.c}, t.degree() - 1).rebase(t.base());
  if (!coboundary(v).is_zero()) throw TripleError("precondition", "change of cocycle: the expression is not a cocycle");
  return make_triple(t.c, t.omega, t.h + v);
}

Triple homotopy_shift(const Triple& t, const Cylinder& cyl, const PairPtr& cylinder_pair, const Cochain& C) {
  if (!C.is_integral() || !coboundary(C).is_zero())
    throw TripleError("precondition", "homotopy must be an integral cocycle");
  if (!(pullback(cyl.i0, C, t.base()) == t.c)) throw TripleError("precondition", "homotopy does not start at c");
  (void)cylinder_pair;
  const Cochain c1 = pullback(cyl.i1, C, t.base());
  return make_triple(c1, t.omega, t.h - integrate_interval(cyl.product, 0, C, t.base()));
}

}  // namespace diffcoh
