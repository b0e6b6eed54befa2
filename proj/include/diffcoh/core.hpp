#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "diffcoh/forms.hpp"

namespace diffcoh {

/// kind is one of: not-a-cocycle, not-integral, not-closed, incompatible-form,
/// structure-equation-violated, mismatch, precondition, postcondition.
class TripleError : public std::runtime_error {
 public:
  TripleError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

/// Same ambient set and the same subcomplex.
bool same_pair(const PairPtr& a, const PairPtr& b);

/// (c, ω, h): c an integral cocycle, ω a closed form, δh = R(ω) − c.
struct Triple {
  Cochain c;
  PLForm omega;
  Cochain h;

  const PairPtr& base() const { return c.base(); }
  const CoeffPtr& coeffs() const { return c.coeffs(); }
  int degree() const { return c.degree(); }
};

/// Empty when valid, else "kind: description" naming the offending cell.
std::string triple_violation(const Triple& t);
Triple make_triple(Cochain c, PLForm omega, Cochain h);
Triple zero_triple(PairPtr base, CoeffPtr coeffs, int degree);
/// (unit cocycle, unit form, 0) on an absolute base.
Triple unit_triple(PairPtr base, CoeffPtr coeffs);
/// a(Θ) = (0, dΘ, R(Θ)).
Triple a_map(const PLForm& theta);
/// (c, W(c), 0): a lift of the class of c.
Triple character_lift(const Cochain& c);
/// Random valid triple: c random cocycle, ω = W(c) + W(δr) + dκ, h = r + R(κ) + z.
Triple random_triple(PairPtr base, CoeffPtr coeffs, int degree, std::mt19937_64& rng);
/// t moved by a random equivalence (b, k) on its base.
Triple random_equivalent(const Triple& t, std::mt19937_64& rng);

Triple rebase(const Triple& t, PairPtr other);
Triple pullback(const SimplicialMap& f, const Triple& t, PairPtr source);

/// Natural cochain expression in the argument cocycles.
class Expr;
using ExprPtr = std::shared_ptr<const Expr>;
class Expr {
 public:
  enum class Kind { Zero, Arg, Cup, Cup1, Rho, Scalar, Delta, Sum };
  static ExprPtr zero();
  static ExprPtr arg(int index);
  static ExprPtr cup(ExprPtr l, ExprPtr r);
  static ExprPtr cup1(ExprPtr l, ExprPtr r);
  static ExprPtr rho(ExprPtr x);
  /// k · e_b · x for a coefficient basis element b (b = -1 means the unit).
  static ExprPtr scalar(const Rational& k, int basis, ExprPtr x);
  static ExprPtr delta(ExprPtr x);
  static ExprPtr sum(ExprPtr l, ExprPtr r);

  /// Evaluates on the given arguments; a Zero expression yields the zero cochain of `degree`.
  Cochain evaluate(const std::vector<Cochain>& args, int degree) const;
  std::string to_string() const;
  Kind kind() const { return kind_; }

 private:
  Kind kind_ = Kind::Zero;
  int index_ = 0;
  Rational k_ = 1;
  std::vector<ExprPtr> children_;
};

/// Correction expressions: A(c0, c1) for addition, N(c) for negation, M(c0, c1) for products.
/// The unit correction is zero in this model.
struct Corrections {
  ExprPtr A = Expr::zero();
  ExprPtr N = Expr::zero();
  ExprPtr M = Expr::zero();
};

/// A = δK(c0, c1), N = δK(c, c) for a natural K of degree n − 2: e_b·(x ∪₁ y) when |b| = −(n + 1),
/// e_b·(x ∪ y) when |b| = −(n + 2). Empty when Λ has no such basis element.
std::optional<Corrections> coboundary_perturbation(const CoeffPtr& coeffs, int n);

/// (c0 + c1, ω0 + ω1, h0 + h1 + A(c0, c1)); A(c0, c1) must be a cocycle.
Triple add(const Triple& t0, const Triple& t1, const Corrections& corr = {});
/// (−c, −ω, −h + N(c)); N(c) must be a cocycle.
Triple neg(const Triple& t, const Corrections& corr = {});
Triple sub(const Triple& t0, const Triple& t1);
Triple scale(long k, const Triple& t);

/// (c, ω, h + Θ(c)) for an expression Θ whose value on c is a cocycle.
Triple change_of_cocycle(const Triple& t, const ExprPtr& theta);
/// (i1*C, ω, h − ∫_I C) for a cocycle C on the cylinder with i0*C = c.
Triple homotopy_shift(const Triple& t, const Cylinder& cyl, const PairPtr& cylinder_pair, const Cochain& C);

struct EquivalenceWitness {
  static constexpr int epsilon = -1;  // h1 − h0 = ε·b + δk
  Cochain b;
  Cochain k;
};

/// Either the curvatures differ on `cell`, or an integral relative cycle pairs
/// non-integrally with h1 − h0.
struct DistinctCertificate {
  std::string kind;  // "curvature" or "period"
  std::string cell;
  int basis = 0;
  int dim = 0;
  RatVector cycle;  // over relative cells of dimension `dim`
  Rational pairing;
};

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<EquivalenceWitness> witness;
  std::optional<DistinctCertificate> certificate;
};

EquivalenceResult equivalent(const Triple& t0, const Triple& t1);
bool check_witness(const Triple& t0, const Triple& t1, const EquivalenceWitness& w);
bool check_certificate(const Triple& t0, const Triple& t1, const DistinctCertificate& cert);
EquivalenceWitness compose(const EquivalenceWitness& w01, const EquivalenceWitness& w12);

/// Integral b with δb = u (u an integral cocycle on the pair), or nullopt.
std::optional<Cochain> integral_primitive(const Cochain& u);
/// Rational b with δb = u, or nullopt.
std::optional<Cochain> rational_primitive(const Cochain& u);
bool cohomologous(const Cochain& u, const Cochain& v);
/// Θ with t ~ a(Θ) exactly in the h-component, for t with I(t) = 0; throws otherwise.
PLForm a_preimage(const Triple& t, const FormDegreeBudget& budget = default_form_budget());
/// For closed Θ with a(Θ) ~ 0: an integral cocycle z with W(z) − Θ exact.
std::optional<Cochain> ch_preimage(const PLForm& theta);

/// S¹×(M, N) with the circle's edge first: rel = (S¹×M, 1×M ∪ S¹×N), abs = (S¹×M, S¹×N).
struct CircleBundle {
  PairPtr base;
  ProductPtr product;
  PairPtr rel;
  PairPtr abs;
  PairPtr left;       // (S¹×M, 1×M)
  SimplicialMap pr2;  // S¹×M -> M
  SimplicialMap i;    // M -> 1×M
};
const CircleBundle& circle_bundle(const PairPtr& MN);

/// (∫c, ∫ω, −∫h) for t on the relative bundle.
Triple integrate_rel(const Triple& t, const CircleBundle& cb);
/// ∫(t − pr2*i*t).
Triple integrate_abs(const Triple& t, const CircleBundle& cb);
/// (minimal circle, its vertex).
const PairPtr& circle_vertex_pair();
/// The degree-1 circle class (z, τ, 0) on the minimal circle relative to its vertex.
Triple circle_class(const CoeffPtr& coeffs);
/// χ(ẑ, x̂) corrected by a(−pr1*τ ∧ pr2*Θ) so that ∫X̂ ~ x̂; checked.
Triple suspend(const Triple& x, const CircleBundle& cb);

/// (c0∪c1, ω0∧ω1, B(ω0⊗ω1) + h0∪R(ω1) + (−1)^n R(ω0)∪h1 − h0∪δh1 + M(c0, c1)) in any degrees.
Triple product_formula(const Triple& t0, const Triple& t1, const Corrections& corr = {});
/// The product above, restricted to even degrees.
Triple product_even(const Triple& t0, const Triple& t1, const Corrections& corr = {});
/// Internal product in all degrees: odd factors are suspended, multiplied and integrated.
Triple product_full(const Triple& t0, const Triple& t1);
/// Variant taking explicit suspensions (used for well-definedness checks).
Triple product_with_suspensions(const Triple& t0, const Triple& t1, const std::optional<Triple>& X0,
                                const std::optional<Triple>& X1);

/// S¹×S¹×M as circle × (circle × M) with the twist of the two circles.
struct DoubleCircle {
  const CircleBundle* outer;  // over S¹×M
  const CircleBundle* inner;  // over M
  SimplicialMap tau;
};
DoubleCircle double_circle(const PairPtr& M);
struct AnticommuteReport {
  bool ok = false;
  EquivalenceResult result;
};
/// ∫∫τ*t ~ −∫∫t.
AnticommuteReport double_integral_anticommute_check(const Triple& t, const DoubleCircle& dc);

/// Flat triple (ω = 0): a torsion cocycle with its rational primitive plus a(closed Whitney form).
Triple random_flat_triple(PairPtr base, CoeffPtr coeffs, int degree, std::mt19937_64& rng);

/// Maps of the sequence of a pair P = (M, N); N is taken as an absolute pair on the sub set.
PairPtr sub_pair(const PairPtr& P);
PairPtr ambient_pair(const PairPtr& P);
/// A cochain on N extended by zero to M.
Cochain extend_by_zero(const Cochain& u, const PairPtr& P);
/// j*: Ê(M) → Ê(N).
Triple restrict_to_sub(const Triple& t, const PairPtr& P);
/// i*: Ê(M, N) → Ê(M).
Triple forget_sub(const Triple& t);
/// δ1(c, 0, h) = (δc̄, 0, −c̄ − δh̄) for flat (c, 0, h) on N.
Triple delta1(const Triple& s, const PairPtr& P);
/// δ2(s) = δ(c̄), a cocycle on (M, N) representing δ I(s).
Cochain delta2(const Triple& s, const PairPtr& P);

struct SequenceNode {
  std::string node;
  int composites = 0;
  int kernel_samples = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
struct SequenceReport {
  std::string pair;
  int degree = 0;
  std::vector<SequenceNode> nodes;
  bool ok() const;
};
/// Exactness of Ê_flat^{n−1}(M,N) → Ê_flat^{n−1}(M) → Ê_flat^{n−1}(N) → Ê^n(M,N) → Ê^n(M) → Ê^n(N)
/// → E^{n+1}(M,N) → E^{n+1}(M): composites vanish on random samples and kernel elements get explicit preimages.
SequenceReport pair_sequence(const PairPtr& P, const CoeffPtr& coeffs, int n, std::mt19937_64& rng, int samples = 3);
/// Exactness of E^{n−1} → Ω^{n−1}/im d → Ê^n → E^n → 0 on P, using the integral cocycle basis as
/// generators plus random samples.
SequenceReport axiom_sequence(const PairPtr& P, const CoeffPtr& coeffs, int n, std::mt19937_64& rng, int samples = 3);

}  // namespace diffcoh
