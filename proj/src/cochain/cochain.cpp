#include "diffcoh/cochain.hpp"

namespace diffcoh {

namespace {

bool same_pair(const PairPtr& a, const PairPtr& b) {
  if (a == b) return true;
  if (a->ambient() != b->ambient()) return false;
  const auto& X = a->ambient();
  for (int d = 0; d <= X->dimension(); ++d)
    for (std::size_t i = 0; i < X->count(d); ++i)
      if (a->in_sub(d, static_cast<int>(i)) != b->in_sub(d, static_cast<int>(i))) return false;
  return true;
}

}  // namespace

Cochain::Cochain(PairPtr base, CoeffPtr coeffs, int degree)
    : base_(std::move(base)), coeffs_(std::move(coeffs)), degree_(degree) {
  parts_.resize(coeffs_->rank());
  for (int b = 0; b < coeffs_->rank(); ++b) {
    const int k = cell_degree(b);
    parts_[b].assign(base_->ambient()->count(k), Rational(0));
  }
}

Cochain Cochain::unit(PairPtr base, CoeffPtr coeffs) {
  Cochain u(base, coeffs, 0);
  const int e = u.coeffs_->unit();
  for (std::size_t v = 0; v < u.parts_[e].size(); ++v)
    if (!u.base_->in_sub(0, static_cast<int>(v))) u.parts_[e][v] = 1;
  return u;
}

Cochain Cochain::scalar(PairPtr base, CoeffPtr coeffs, int degree, int b, const RatVector& values) {
  Cochain u(base, coeffs, degree);
  if (values.size() != u.parts_[b].size()) throw CochainError("scalar cochain: wrong number of values");
  u.parts_[b] = values;
  if (!u.vanishes_on_sub()) throw CochainError("scalar cochain: nonzero on the subcomplex");
  return u;
}

bool Cochain::has_component(int b) const { return !parts_[b].empty(); }

Rational Cochain::evaluate(int b, const Simplex& s) const {
  if (s.degenerate()) return 0;
  if (s.dim() != cell_degree(b)) throw CochainError("evaluate: simplex has the wrong dimension");
  return parts_[b][s.cell];
}

bool Cochain::is_zero() const {
  for (const auto& p : parts_)
    for (const auto& v : p)
      if (v != 0) return false;
  return true;
}

bool Cochain::is_integral() const {
  for (const auto& p : parts_)
    for (const auto& v : p)
      if (!diffcoh::is_integral(v)) return false;
  return true;
}

bool Cochain::vanishes_on_sub() const {
  for (int b = 0; b < coeffs_->rank(); ++b) {
    const int k = cell_degree(b);
    for (std::size_t i = 0; i < parts_[b].size(); ++i)
      if (parts_[b][i] != 0 && base_->in_sub(k, static_cast<int>(i))) return false;
  }
  return true;
}

std::string Cochain::first_difference(const Cochain& o) const {
  check_compatible(o);
  for (int b = 0; b < coeffs_->rank(); ++b)
    for (std::size_t i = 0; i < parts_[b].size(); ++i)
      if (parts_[b][i] != o.parts_[b][i])
        return coeffs_->basis_name(b) + ":" + base_->ambient()->cell_name(cell_degree(b), static_cast<int>(i));
  return "";
}

void Cochain::check_compatible(const Cochain& o) const {
  if (!base_ || !o.base_) throw CochainError("cochain: uninitialized operand");
  if (coeffs_ != o.coeffs_) throw CochainError("cochain: coefficient rings differ");
  if (degree_ != o.degree_) throw CochainError("cochain: degrees differ");
  if (!same_pair(base_, o.base_)) throw CochainError("cochain: bases differ");
}

Cochain Cochain::operator+(const Cochain& o) const {
  Cochain r = *this;
  r += o;
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
  Cochain r = *this;
  r -= o;
  return r;
}

Cochain Cochain::operator-() const {
  Cochain r = *this;
  for (auto& p : r.parts_)
    for (auto& v : p) v = -v;
  return r;
}

Cochain& Cochain::operator+=(const Cochain& o) {
  check_compatible(o);
  for (std::size_t b = 0; b < parts_.size(); ++b)
    for (std::size_t i = 0; i < parts_[b].size(); ++i) parts_[b][i] += o.parts_[b][i];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  check_compatible(o);
  for (std::size_t b = 0; b < parts_.size(); ++b)
    for (std::size_t i = 0; i < parts_[b].size(); ++i) parts_[b][i] -= o.parts_[b][i];
  return *this;
}

Cochain operator*(const Rational& k, const Cochain& u) {
  Cochain r = u;
  for (auto& p : r.parts_)
    for (auto& v : p) v *= k;
  return r;
}

bool Cochain::operator==(const Cochain& o) const {
  if (coeffs_ != o.coeffs_ || degree_ != o.degree_ || !same_pair(base_, o.base_)) return false;
  return parts_ == o.parts_;
}

Cochain Cochain::rebase(PairPtr other) const {
  if (other->ambient() != base_->ambient()) throw CochainError("rebase: ambient sets differ");
  Cochain r = *this;
  r.base_ = std::move(other);
  if (!r.vanishes_on_sub()) throw CochainError("rebase: cochain does not vanish on the new subcomplex");
  return r;
}

}  // namespace diffcoh
