#include "diffcoh/cochain.hpp"

namespace diffcoh {

void Chain::add(const Simplex& s, const Rational& k) {
  if (s.dim() != dim) throw CochainError("chain: simplex has the wrong dimension");
  if (s.degenerate() || k == 0) return;
  auto [it, inserted] = terms.try_emplace(s.cell, k);
  if (!inserted) {
    it->second += k;
    if (it->second == 0) terms.erase(it);
  }
}

Chain cell_chain(SSetPtr X, int dim, int cell) {
  Chain c{std::move(X), dim, {}};
  c.terms[cell] = 1;
  return c;
}

Chain boundary(const Chain& c) {
  Chain out{c.base, c.dim - 1, {}};
  if (c.dim == 0) return out;
  for (const auto& [cell, k] : c.terms)
    for (int i = 0; i <= c.dim; ++i) out.add(c.base->cell_face(c.dim, cell, i), i % 2 == 0 ? k : Rational(-k));
  return out;
}

Rational evaluate(const Cochain& u, int b, const Chain& c) {
  if (c.base != u.base()->ambient()) throw CochainError("evaluate: chain lives on a different set");
  if (c.dim != u.cell_degree(b)) throw CochainError("evaluate: chain has the wrong dimension");
  Rational s = 0;
  for (const auto& [cell, k] : c.terms) s += k * u.value(b, cell);
  return s;
}

Chain ez_shuffle(const ProductPtr& P, const Chain& a, const Chain& b) {
  if (a.base != P->left() || b.base != P->right()) throw CochainError("ez_shuffle: chains do not match the product");
  const int p = a.dim, q = b.dim, k = p + q;
  Chain out{P->set(), k, {}};
  // Steps t with ystep[t] move the second factor, the others the first.
  std::vector<bool> ystep(k, false);
  std::fill(ystep.begin(), ystep.begin() + q, true);
  std::sort(ystep.begin(), ystep.end());
  do {
    Monotone e1(k + 1), e2(k + 1);
    int x = 0, y = 0, inversions = 0, ys = 0;
    for (int t = 0; t < k; ++t) {
      e1[t] = x;
      e2[t] = y;
      if (ystep[t]) {
        ++y;
        ++ys;
      } else {
        ++x;
        inversions += ys;
      }
    }
    e1[k] = x;
    e2[k] = y;
    const Rational sign = inversions % 2 == 0 ? 1 : -1;
    for (const auto& [xc, xk] : a.terms)
      for (const auto& [yc, yk] : b.terms) out.add(P->pair(Simplex{e1, xc}, Simplex{e2, yc}), sign * xk * yk);
  } while (std::next_permutation(ystep.begin(), ystep.end()));
  return out;
}

std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Rational> alexander_whitney(const ProductPtr& P,
                                                                                        const Chain& c) {
  std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Rational> out;
  const int n = c.dim;
  for (const auto& [cell, k] : c.terms) {
    const auto& [x, y] = P->components(n, cell);
    for (int p = 0; p <= n; ++p) {
      Monotone fr(p + 1), bk(n - p + 1);
      for (int t = 0; t <= p; ++t) fr[t] = t;
      for (int t = 0; t <= n - p; ++t) bk[t] = p + t;
      Simplex a = P->left()->apply(x, fr), b = P->right()->apply(y, bk);
      if (a.degenerate() || b.degenerate()) continue;
      auto& slot = out[{{p, a.cell}, {n - p, b.cell}}];
      slot += k;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace diffcoh
