#include <map>
#include <mutex>

#include "diffcoh/forms.hpp"

namespace diffcoh {

namespace {

// t_i and dt_i in local coordinates of Δ^m (t_0 = 1 − Σ t_i).
LocalForm coordinate(int m, int i) {
  LocalForm f;
  f.dim = m;
  if (i > 0) {
    f.add(0, Poly::variable(i - 1));
    return f;
  }
  Poly p(1);
  for (int v = 0; v < m; ++v) p -= Poly::variable(v);
  f.add(0, p);
  return f;
}

LocalForm coordinate_d(int m, int i) {
  LocalForm f;
  f.dim = m;
  if (i > 0) {
    f.add(1u << (i - 1), Poly(1));
    return f;
  }
  for (int v = 0; v < m; ++v) f.add(1u << v, Poly(-1));
  return f;
}

// ω_F = r! Σ_j (−1)^j t_{F_j} dt_{F∖F_j}
const LocalForm& elementary(int m, const std::vector<int>& F) {
  static std::mutex mu;
  static std::map<std::pair<int, std::vector<int>>, LocalForm> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, F);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  const int r = static_cast<int>(F.size()) - 1;
  LocalForm sum;
  sum.dim = m;
  for (int j = 0; j <= r; ++j) {
    LocalForm term = coordinate(m, F[j]);
    for (int l = 0; l <= r; ++l)
      if (l != j) term = wedge(term, coordinate_d(m, F[l]));
    sum += term.scaled(Rational(j % 2 ? -1 : 1));
  }
  Integer fact = 1;
  for (int i = 2; i <= r; ++i) fact *= i;
  return memo.emplace(key, sum.scaled(Rational(fact))).first->second;
}

void subsets(int m, int size, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == size) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= m; ++i) {
    cur.push_back(i);
    subsets(m, size, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

PLForm whitney(const Cochain& u) {
  PLForm r(u.base(), u.coeffs(), u.degree());
  const auto& X = u.base()->ambient();
  for (int b = 0; b < u.coeffs()->rank(); ++b) {
    const int deg = u.cell_degree(b);
    if (deg < 0 || deg > X->dimension()) continue;
    for (int m = deg; m <= X->dimension(); ++m) {
      std::vector<std::vector<int>> faces;
      std::vector<int> cur;
      subsets(m, deg + 1, 0, cur, faces);
      for (std::size_t c = 0; c < X->count(m); ++c) {
        LocalForm f;
        f.dim = m;
        const Simplex sigma{identity_map(m), static_cast<int>(c)};
        for (const auto& F : faces) {
          Monotone theta(F.begin(), F.end());
          const Rational v = u.evaluate(b, X->apply(sigma, theta));
          if (v != 0) f += elementary(m, F).scaled(v);
        }
        r.local(b, m, static_cast<int>(c)) = f;
      }
    }
  }
  return r;
}

PLForm random_form(PairPtr base, CoeffPtr coeffs, int degree, std::mt19937_64& rng, int range) {
  PLForm w = whitney(random_cochain(base, coeffs, degree, rng, range));
  const PairPtr abs = Pair::absolute(base->ambient());
  const CoeffPtr Z = GradedCoefficients::integers();
  const PLForm f = whitney(random_cochain(abs, Z, 0, rng, range));
  const PLForm g = whitney(random_cochain(base, coeffs, degree, rng, range));
  // scalar 0-forms act componentwise
  const auto& X = base->ambient();
  for (int b = 0; b < coeffs->rank(); ++b)
    for (int d = 0; d <= X->dimension(); ++d)
      for (std::size_t c = 0; c < X->count(d); ++c) {
        const int ci = static_cast<int>(c);
        const auto& gb = g.local(b, d, ci);
        if (gb.is_zero()) continue;
        w.local(b, d, ci) += wedge(f.local(0, d, ci), gb);
      }
  return w;
}

}  // namespace diffcoh
