#include "diffcoh/forms.hpp"

namespace diffcoh {

int total_degree(Monomial m) {
  int d = 0;
  for (int v = 0; v < 8; ++v) d += exponent(m, v);
  return d;
}

namespace {

Monomial multiply(Monomial a, Monomial b) {
  Monomial r = 0;
  for (int v = 0; v < 8; ++v) {
    const int e = exponent(a, v) + exponent(b, v);
    if (e > 255) throw FormError("polynomial exponent overflow");
    r = with_exponent(r, v, e);
  }
  return r;
}

}  // namespace

Poly Poly::variable(int var) {
  Poly p;
  p.terms_[with_exponent(0, var, 1)] = 1;
  return p;
}

Poly Poly::monomial(Monomial m, const Rational& c) {
  Poly p;
  p.add_term(m, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

Rational Poly::constant() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) r.add_term(multiply(a, b), ca * cb);
  return r;
}

Poly Poly::scaled(const Rational& k) const {
  Poly r;
  if (k == 0) return r;
  for (const auto& [m, c] : terms_) r.terms_[m] = c * k;
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    const int e = exponent(m, var);
    if (e > 0) r.add_term(with_exponent(m, var, e - 1), c * e);
  }
  return r;
}

Poly Poly::antiderivative(int var) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    const int e = exponent(m, var);
    r.add_term(with_exponent(m, var, e + 1), c / Rational(e + 1));
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  const int n = static_cast<int>(images.size());
  std::vector<std::vector<Poly>> powers(n);
  Poly r;
  for (const auto& [m, c] : terms_) {
    Poly term(c);
    Monomial rest = m;
    for (int v = 0; v < n; ++v) {
      const int e = exponent(m, v);
      if (e == 0) continue;
      rest = with_exponent(rest, v, 0);
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Poly(1));
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[v]);
      term = term * pw[e];
    }
    if (rest != 0) term = term * Poly::monomial(rest, 1);
    r += term;
  }
  return r;
}

}  // namespace diffcoh
