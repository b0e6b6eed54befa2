#include <bit>
#include <map>
#include <mutex>
#include <tuple>

#include "diffcoh/forms.hpp"

namespace diffcoh {

namespace {

Rational b_local(int n, const LocalForm& a, const LocalForm& b);

Monotone interval(int from, int to) {
  Monotone m;
  for (int i = from; i <= to; ++i) m.push_back(i);
  return m;
}

int form_degree_of(const LocalForm& a) {
  return a.is_zero() ? -1 : std::popcount(a.comps.begin()->first);
}

// φ_n(x⊗y) = ∫x∧y − ∫_front x · ∫_back y − Σ_i (−1)^i B_{n−1}(δ_i*x, δ_i*y), |x| + |y| = n
Rational phi(int n, const LocalForm& x, const LocalForm& y) {
  if (x.is_zero() || y.is_zero()) return 0;
  const int p = form_degree_of(x);
  Rational v = integrate_simplex(wedge(x, y));
  v -= integrate_simplex(pullback(x, interval(0, p))) * integrate_simplex(pullback(y, interval(p, n)));
  for (int i = 0; n > 0 && i <= n; ++i) {
    const Rational t = b_local(n - 1, pullback(x, coface(n, i)), pullback(y, coface(n, i)));
    v += i % 2 ? t : -t;
  }
  return v;
}

using Key = std::tuple<int, std::uint32_t, Monomial, std::uint32_t, Monomial>;

std::mutex& memo_mutex() {
  static std::mutex mu;
  return mu;
}
std::map<Key, Rational>& memo() {
  static std::map<Key, Rational> m;
  return m;
}

// B_n on a pair of monomial forms: φ_n∘(h⊗1 + ε⊗h)
Rational b_monomial(int n, std::uint32_t I, Monomial a, std::uint32_t J, Monomial b) {
  const Key key{n, I, a, J, b};
  {
    std::lock_guard<std::mutex> lock(memo_mutex());
    auto it = memo().find(key);
    if (it != memo().end()) return it->second;
  }
  LocalForm x, y;
  x.dim = y.dim = n;
  x.add(I, Poly::monomial(a, 1));
  y.add(J, Poly::monomial(b, 1));
  Rational v = phi(n, cone_homotopy(x), y);
  if (I == 0 && a == 0) v += phi(n, LocalForm::constant(n, 1), cone_homotopy(y));
  std::lock_guard<std::mutex> lock(memo_mutex());
  memo().emplace(key, v);
  return v;
}

Rational b_local(int n, const LocalForm& a, const LocalForm& b) {
  if (n <= 0) return 0;
  Rational v = 0;
  for (const auto& [I, p] : a.comps)
    for (const auto& [J, q] : b.comps) {
      if (std::popcount(I) + std::popcount(J) != n + 1) continue;
      for (const auto& [ma, ca] : p.terms())
        for (const auto& [mb, cb] : q.terms()) v += ca * cb * b_monomial(n, I, ma, J, mb);
    }
  return v;
}

}  // namespace

Rational b_homotopy_local(const LocalForm& a, const LocalForm& b) {
  if (a.dim != b.dim) throw FormError("b_homotopy_local: forms live on different simplices");
  return b_local(a.dim, a, b);
}

Cochain b_homotopy(const PLForm& a, const PLForm& b) {
  if (a.coeffs() != b.coeffs()) throw FormError("b_homotopy: coefficient rings differ");
  if (a.base()->ambient() != b.base()->ambient()) throw FormError("b_homotopy: forms live on different sets");
  const auto& L = a.coeffs();
  const PLForm w = wedge(a, b);  // only for the result base
  Cochain r(w.base(), L, a.degree() + b.degree() - 1);
  const auto& X = a.base()->ambient();
  for (int x = 0; x < L->rank(); ++x)
    for (int y = 0; y < L->rank(); ++y) {
      const int k = a.form_degree(x) + b.form_degree(y) - 1;
      if (k < 0 || k > X->dimension()) continue;
      for (const auto& term : L->product(x, y))
        for (std::size_t c = 0; c < X->count(k); ++c) {
          const int ci = static_cast<int>(c);
          if (r.base()->in_sub(k, ci)) continue;
          const Rational v = b_homotopy_local(a.local(x, k, ci), b.local(y, k, ci));
          if (v != 0) r.set(term.basis, ci, r.value(term.basis, ci) + Rational(term.coefficient) * v);
        }
    }
  return r;
}

}  // namespace diffcoh
