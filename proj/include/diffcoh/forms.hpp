#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "diffcoh/cochain.hpp"

namespace diffcoh {

class FormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent vector packed 8 bits per variable, at most 8 variables.
using Monomial = std::uint64_t;

inline int exponent(Monomial m, int var) { return static_cast<int>((m >> (8 * var)) & 0xff); }
inline Monomial with_exponent(Monomial m, int var, int e) {
  return (m & ~(Monomial(0xff) << (8 * var))) | (Monomial(e) << (8 * var));
}
int total_degree(Monomial m);

/// Polynomial with rational coefficients in local coordinates t_1..t_k (variable i is t_{i+1}).
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rational& c) {
    if (c != 0) terms_[0] = c;
  }
  static Poly variable(int var);
  static Poly monomial(Monomial m, const Rational& c);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Rational constant() const;

  void add_term(Monomial m, const Rational& c);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& k) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  Poly derivative(int var) const;
  /// Antiderivative in `var` with zero constant of integration.
  Poly antiderivative(int var) const;
  /// Substitutes polynomial images for each variable; variables beyond the list stay fixed.
  Poly substitute(const std::vector<Poly>& images) const;

 private:
  std::map<Monomial, Rational> terms_;
};

/// A polynomial differential form on Δ^k in local coordinates: mask I (bit i = dt_{i+1}) -> coefficient.
struct LocalForm {
  int dim = 0;
  std::map<std::uint32_t, Poly> comps;

  static LocalForm constant(int dim, const Rational& c);
  bool is_zero() const { return comps.empty(); }
  int poly_degree() const;
  void add(std::uint32_t mask, const Poly& p);
  LocalForm& operator+=(const LocalForm& o);
  LocalForm operator+(const LocalForm& o) const;
  LocalForm operator-(const LocalForm& o) const;
  LocalForm scaled(const Rational& k) const;
  bool operator==(const LocalForm& o) const { return dim == o.dim && comps == o.comps; }
  /// Homogeneous part of form degree r.
  LocalForm part(int r) const;
};

LocalForm wedge(const LocalForm& a, const LocalForm& b);
LocalForm exterior_d(const LocalForm& a);
/// Affine substitution: old local variable i ↦ images[i], a polynomial of degree ≤ 1 in new_dim variables.
LocalForm substitute(const LocalForm& a, const std::vector<Poly>& images, int new_dim);
/// Pullback along the affine map Δ^m -> Δ^k induced by a monotone theta: [m] -> [k].
LocalForm pullback(const LocalForm& a, const Monotone& theta);
/// ∫ over Δ^k of the top-degree part with the orientation dt_1∧…∧dt_k.
Rational integrate_simplex(const LocalForm& a);
/// Radial (Poincaré) homotopy about vertex 0: dh + hd = 1 − (value at vertex 0).
LocalForm cone_homotopy(const LocalForm& a);

std::string to_string(const LocalForm& a);
/// Parses sums of terms like "3/2*t1^2*t2*dt1*dt2"; t0 and dt0 are expanded in local coordinates.
LocalForm parse_local_form(const std::string& text, int dim);

/// Polynomial degree policy for constructions that must choose a finite ansatz.
struct FormDegreeBudget {
  int cap = 3;
  int limit = 12;
};
/// Budget used when none is passed explicitly; process-wide.
FormDegreeBudget default_form_budget();
void set_default_form_budget(const FormDegreeBudget& budget);

/// A compatible family of polynomial forms on the cells of a pair, one family per
/// coefficient basis element b with form degree n − |b|, vanishing on the subcomplex.
class PLForm {
 public:
  PLForm() = default;
  PLForm(PairPtr base, CoeffPtr coeffs, int degree);

  static PLForm zero(PairPtr base, CoeffPtr coeffs, int degree) { return PLForm(base, coeffs, degree); }
  static PLForm unit(PairPtr base, CoeffPtr coeffs);

  const PairPtr& base() const { return base_; }
  const CoeffPtr& coeffs() const { return coeffs_; }
  int degree() const { return degree_; }
  int form_degree(int b) const { return degree_ - coeffs_->degree(b); }

  const LocalForm& local(int b, int dim, int cell) const { return parts_[b][dim][cell]; }
  LocalForm& local(int b, int dim, int cell) { return parts_[b][dim][cell]; }
  /// The component on an arbitrary simplex (pullback along its degeneracy).
  LocalForm on_simplex(int b, const Simplex& s) const;

  bool is_zero() const;
  int poly_degree() const;
  /// Empty string when all face restrictions agree and the form vanishes on the subcomplex,
  /// else a description of the first failure.
  std::string compatibility_error() const;
  bool is_closed() const;

  PLForm operator+(const PLForm& o) const;
  PLForm operator-(const PLForm& o) const;
  PLForm operator-() const;
  PLForm& operator+=(const PLForm& o);
  friend PLForm operator*(const Rational& k, const PLForm& a);
  bool operator==(const PLForm& o) const;

  PLForm rebase(PairPtr other) const;

 private:
  void check_compatible(const PLForm& o) const;
  PairPtr base_;
  CoeffPtr coeffs_;
  int degree_ = 0;
  std::vector<std::vector<std::vector<LocalForm>>> parts_;  // [basis][dim][cell]
};

PLForm wedge(const PLForm& a, const PLForm& b);
PLForm exterior_d(const PLForm& a);
PLForm pullback(const SimplicialMap& f, const PLForm& a, PairPtr source);
/// R(a)(σ) = ∫_{Δ^k} a_σ.
Cochain deRham(const PLForm& a);
/// Fiber integration over the first factor of P = A×X (A = Δ¹ or circle, edge e), contracting ds from the left.
PLForm fiber_integrate(const ProductPtr& P, int edge, const PLForm& a, PairPtr target);
/// Whitney forms: R∘W = id, dW = Wδ.
PLForm whitney(const Cochain& u);
/// An extension of Θ (on the subcomplex of `pair`, pulled back through the sub set) to the ambient set.
PLForm extend_form(const PLForm& theta_on_sub, const PairPtr& pair, PairPtr result_base,
                   const FormDegreeBudget& budget = default_form_budget());
/// η with dη = a, compatible and vanishing on the subcomplex, if one exists at polynomial degree ≤ cap.
std::optional<PLForm> solve_exact(const PLForm& a, int cap);
/// The natural chain homotopy between wedge and cup: δB(a⊗b) + B(d(a⊗b)) = R(a∧b) − R(a)∪R(b).
Cochain b_homotopy(const PLForm& a, const PLForm& b);
/// Scalar version on the standard simplex.
Rational b_homotopy_local(const LocalForm& a, const LocalForm& b);

/// Random compatible form: Whitney forms of random cochains wedged with Whitney 0-forms.
PLForm random_form(PairPtr base, CoeffPtr coeffs, int degree, std::mt19937_64& rng, int range = 2);

}  // namespace diffcoh
