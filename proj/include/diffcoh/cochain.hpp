#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "diffcoh/linalg.hpp"
#include "diffcoh/presentation.hpp"
#include "diffcoh/simplicial.hpp"

namespace diffcoh {

class CochainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A free graded ring Λ with basis in even degrees, integral structure constants and a unit.
/// V = Λ⊗Q shares the basis, so realification is the identity on coordinates.
class GradedCoefficients {
 public:
  struct Term {
    int basis;
    Integer coefficient;
  };

  GradedCoefficients(std::string name, std::vector<std::string> basis, std::vector<int> degrees, int unit,
                     std::vector<std::vector<std::vector<Term>>> products);

  static std::shared_ptr<const GradedCoefficients> integers();
  /// Z[u]/(u^k) with |u| = degree (even).
  static std::shared_ptr<const GradedCoefficients> truncated_polynomial(int k, int degree);
  /// {"name":..., "basis":[{"name":"1","degree":0},...], "unit":"1", "products":[["u","u",[["u2",1]]],...]}
  /// or the shorthands "Z" and "Z[u]/(u^k),|u|=d".
  static std::shared_ptr<const GradedCoefficients> from_json(const Json& j);
  Json to_json() const;

  const std::string& name() const { return name_; }
  int rank() const { return static_cast<int>(names_.size()); }
  int degree(int b) const { return degrees_[b]; }
  const std::string& basis_name(int b) const { return names_[b]; }
  int unit() const { return unit_; }
  const std::vector<Term>& product(int a, int b) const { return products_[a][b]; }
  int find(const std::string& basis) const;

 private:
  void validate() const;
  std::string name_;
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  int unit_;
  std::vector<std::vector<std::vector<Term>>> products_;
};

using CoeffPtr = std::shared_ptr<const GradedCoefficients>;

/// A normalized cochain of total degree n on a pair. For each coefficient basis
/// element b the component parts[b] is a scalar simplicial cochain of degree
/// n - |b|, indexed by all nondegenerate cells of that dimension and zero on the subcomplex.
class Cochain {
 public:
  Cochain() = default;
  Cochain(PairPtr base, CoeffPtr coeffs, int degree);

  static Cochain zero(PairPtr base, CoeffPtr coeffs, int degree) { return Cochain(base, coeffs, degree); }
  /// The unit 0-cochain (value 1 on every vertex outside the subcomplex).
  static Cochain unit(PairPtr base, CoeffPtr coeffs);
  /// Scalar cochain supported on coefficient basis b.
  static Cochain scalar(PairPtr base, CoeffPtr coeffs, int degree, int b, const RatVector& values);

  const PairPtr& base() const { return base_; }
  const CoeffPtr& coeffs() const { return coeffs_; }
  int degree() const { return degree_; }
  /// Simplicial degree of component b.
  int cell_degree(int b) const { return degree_ - coeffs_->degree(b); }
  bool has_component(int b) const;

  const RatVector& part(int b) const { return parts_[b]; }
  RatVector& part(int b) { return parts_[b]; }
  Rational value(int b, int cell) const { return parts_[b][cell]; }
  void set(int b, int cell, const Rational& v) { parts_[b][cell] = v; }
  /// Value on an arbitrary simplex; zero on degenerate ones.
  Rational evaluate(int b, const Simplex& s) const;

  bool is_zero() const;
  bool is_integral() const;
  bool vanishes_on_sub() const;
  /// First cell where this and other differ, as "basis:cell", or empty.
  std::string first_difference(const Cochain& other) const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  friend Cochain operator*(const Rational& k, const Cochain& u);
  bool operator==(const Cochain& o) const;

  /// Restriction to the same ambient set with a different (larger or smaller) subcomplex, checked.
  Cochain rebase(PairPtr other) const;

 private:
  void check_compatible(const Cochain& o) const;
  PairPtr base_;
  CoeffPtr coeffs_;
  int degree_ = 0;
  std::vector<RatVector> parts_;
};

/// Normalized chain: formal rational sum of nondegenerate cells of one dimension.
struct Chain {
  SSetPtr base;
  int dim = 0;
  std::map<int, Rational> terms;

  void add(const Simplex& s, const Rational& k);  // degenerate simplices are dropped
  bool operator==(const Chain& o) const { return base == o.base && dim == o.dim && terms == o.terms; }
};

Chain boundary(const Chain& c);
Chain cell_chain(SSetPtr X, int dim, int cell);
/// Pairing of component b of u with a chain of dimension u.cell_degree(b).
Rational evaluate(const Cochain& u, int b, const Chain& c);

/// Eilenberg–Zilber shuffle map B(x⊗y) on cells, into P = X×Y.
Chain ez_shuffle(const ProductPtr& P, const Chain& a, const Chain& b);
/// Alexander–Whitney map on a product chain: sum of front(pr1)⊗back(pr2), keyed by ((dim, cell), (dim, cell)).
std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Rational> alexander_whitney(const ProductPtr& P,
                                                                                        const Chain& c);

Cochain coboundary(const Cochain& u);
Cochain cup(const Cochain& u, const Cochain& v);
/// Steenrod cup-1 with δ(u∪₁v) = −(u∪v − (−1)^{pq} v∪u) − δu∪₁v − (−1)^p u∪₁δv.
Cochain cup1(const Cochain& u, const Cochain& v);
/// f*u, landing on `source` (whose ambient is the source of f and whose subcomplex f carries into u's).
Cochain pullback(const SimplicialMap& f, const Cochain& u, PairPtr source);
/// (∫u)(x) = u(B(e⊗x)) for u on A×X, e the edge of A; result on `target` with ambient X.
Cochain integrate_interval(const ProductPtr& P, int edge, const Cochain& u, PairPtr target);
/// The cocycle E on Δ¹×(X,A) with i0*E = 0, i1*E = δv.
Cochain cob_witness(const Cylinder& cyl, PairPtr cylinder_pair, const Cochain& v);
/// Indicator of vertex 1 on Δ¹ pulled back to the cylinder, times v pulled back from X.
Cochain interval_cup(const Cylinder& cyl, PairPtr cylinder_pair, const Cochain& v);

/// Integer coboundary matrix C^k -> C^{k+1} on cells outside the subcomplex
/// (rows: relative (k+1)-cells, columns: relative k-cells). Cached per pair.
const IntMatrix& coboundary_matrix(const PairPtr& P, int k);
/// Scalar values of component b restricted to relative cells, and the inverse.
RatVector relative_values(const Cochain& u, int b);
void set_relative_values(Cochain& u, int b, const RatVector& values);

/// H^n(X, A; Λ^j) via the summand of coefficient degree j.
AbelianGroupPresentation cohomology(const PairPtr& P, int coeff_degree, int n);

/// Random cochain with entries in [-range, range]; integral by construction.
Cochain random_cochain(PairPtr base, CoeffPtr coeffs, int degree, std::mt19937_64& rng, int range = 3);
/// Random integral cocycle: δ of a random cochain plus a random combination of the cohomology lattice.
Cochain random_cocycle(PairPtr base, CoeffPtr coeffs, int degree, std::mt19937_64& rng, int range = 2);
/// Basis over Z of integral cocycles of component b in simplicial degree k (relative cells).
std::vector<RatVector> integral_cocycle_basis(const PairPtr& P, int k);

}  // namespace diffcoh
