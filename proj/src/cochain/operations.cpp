#include <mutex>

#include "diffcoh/cochain.hpp"
#include "diffcoh/cohomology.hpp"

namespace diffcoh {

namespace {

bool same_mask(const PairPtr& a, const PairPtr& b) {
  if (a == b) return true;
  if (a->ambient() != b->ambient()) return false;
  const auto& X = a->ambient();
  for (int d = 0; d <= X->dimension(); ++d)
    for (std::size_t i = 0; i < X->count(d); ++i)
      if (a->in_sub(d, static_cast<int>(i)) != b->in_sub(d, static_cast<int>(i))) return false;
  return true;
}

PairPtr union_base(const PairPtr& a, const PairPtr& b) { return pair_union(a, b); }

Monotone range_map(int from, int to) {
  Monotone m;
  for (int t = from; t <= to; ++t) m.push_back(t);
  return m;
}

}  // namespace

Cochain coboundary(const Cochain& u) {
  Cochain r(u.base(), u.coeffs(), u.degree() + 1);
  const auto& X = u.base()->ambient();
  for (int b = 0; b < u.coeffs()->rank(); ++b) {
    const int k = r.cell_degree(b);
    if (k < 1) continue;
    for (std::size_t s = 0; s < X->count(k); ++s) {
      Rational acc = 0;
      for (int i = 0; i <= k; ++i) {
        const Rational v = u.evaluate(b, X->cell_face(k, static_cast<int>(s), i));
        if (i % 2 == 0)
          acc += v;
        else
          acc -= v;
      }
      r.set(b, static_cast<int>(s), acc);
    }
  }
  return r;
}

Cochain cup(const Cochain& u, const Cochain& v) {
  if (u.coeffs() != v.coeffs()) throw CochainError("cup: coefficient rings differ");
  const auto& L = u.coeffs();
  Cochain r(union_base(u.base(), v.base()), L, u.degree() + v.degree());
  const auto& X = u.base()->ambient();
  for (int a = 0; a < L->rank(); ++a) {
    const int p = u.cell_degree(a);
    if (!u.has_component(a)) continue;
    for (int b = 0; b < L->rank(); ++b) {
      const int q = v.cell_degree(b);
      if (!v.has_component(b)) continue;
      const int n = p + q;
      for (const auto& term : L->product(a, b)) {
        for (std::size_t s = 0; s < X->count(n); ++s) {
          const int si = static_cast<int>(s);
          const Rational x = u.evaluate(a, X->front(n, si, p));
          if (x == 0) continue;
          const Rational y = v.evaluate(b, X->back(n, si, q));
          if (y == 0) continue;
          r.part(term.basis)[s] += Rational(term.coefficient) * x * y;
        }
      }
    }
  }
  return r;
}

Cochain cup1(const Cochain& u, const Cochain& v) {
  if (u.coeffs() != v.coeffs()) throw CochainError("cup1: coefficient rings differ");
  const auto& L = u.coeffs();
  Cochain r(union_base(u.base(), v.base()), L, u.degree() + v.degree() - 1);
  const auto& X = u.base()->ambient();
  for (int a = 0; a < L->rank(); ++a) {
    const int p = u.cell_degree(a);
    if (!u.has_component(a) || p < 1) continue;
    for (int b = 0; b < L->rank(); ++b) {
      const int q = v.cell_degree(b);
      if (!v.has_component(b) || q < 1) continue;
      const int n = p + q - 1;
      for (const auto& term : L->product(a, b)) {
        for (std::size_t s = 0; s < X->count(n); ++s) {
          const Simplex sigma = nondegenerate(n, static_cast<int>(s));
          Rational acc = 0;
          for (int i = 0; i + q <= n; ++i) {
            const int j = i + q;
            Monotone outer = range_map(0, i);
            for (int t = j; t <= n; ++t) outer.push_back(t);
            const Rational x = u.evaluate(a, X->apply(sigma, outer));
            if (x == 0) continue;
            const Rational y = v.evaluate(b, X->apply(sigma, range_map(i, j)));
            if (y == 0) continue;
            const bool odd = (i + q * (n - j)) % 2 != 0;
            acc += odd ? Rational(-x * y) : Rational(x * y);
          }
          r.part(term.basis)[s] += Rational(term.coefficient) * acc;
        }
      }
    }
  }
  return r;
}

Cochain pullback(const SimplicialMap& f, const Cochain& u, PairPtr source) {
  if (f.target() != u.base()->ambient() || f.source() != source->ambient())
    throw CochainError("pullback: map does not match the cochain or the source pair");
  if (!maps_pair(f, source, u.base())) throw CochainError("pullback: map does not carry the subcomplex into the target subcomplex");
  Cochain r(source, u.coeffs(), u.degree());
  const auto& X = source->ambient();
  for (int b = 0; b < u.coeffs()->rank(); ++b) {
    const int k = u.cell_degree(b);
    for (std::size_t s = 0; s < X->count(k); ++s) r.set(b, static_cast<int>(s), u.evaluate(b, f.image(k, static_cast<int>(s))));
  }
  return r;
}

Cochain integrate_interval(const ProductPtr& P, int edge, const Cochain& u, PairPtr target) {
  if (u.base()->ambient() != P->set() || target->ambient() != P->right())
    throw CochainError("integrate_interval: cochain or target does not match the product");
  Cochain r(target, u.coeffs(), u.degree() - 1);
  const auto& X = P->right();
  const Chain e = cell_chain(P->left(), 1, edge);
  for (int b = 0; b < u.coeffs()->rank(); ++b) {
    const int k = r.cell_degree(b);
    if (k < 0) continue;
    for (std::size_t s = 0; s < X->count(k); ++s) {
      const Chain B = ez_shuffle(P, e, cell_chain(X, k, static_cast<int>(s)));
      r.set(b, static_cast<int>(s), evaluate(u, b, B));
    }
  }
  if (!r.vanishes_on_sub()) throw CochainError("integrate_interval: result does not vanish on the target subcomplex");
  return r;
}

Cochain interval_cup(const Cylinder& cyl, PairPtr cylinder_pair, const Cochain& v) {
  const auto I = cyl.product->left();
  auto chi = Cochain(Pair::absolute(I), v.coeffs(), 0);
  chi.set(v.coeffs()->unit(), 1, 1);
  auto abs = Pair::absolute(cyl.product->set());
  return cup(pullback(cyl.product->pr1(), chi, abs), pullback(cyl.pr, v, cylinder_pair));
}

Cochain cob_witness(const Cylinder& cyl, PairPtr cylinder_pair, const Cochain& v) {
  return coboundary(interval_cup(cyl, std::move(cylinder_pair), v));
}

const IntMatrix& coboundary_matrix(const PairPtr& P, int k) {
  static std::mutex mu;
  static std::map<std::pair<const Pair*, int>, std::pair<PairPtr, IntMatrix>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({P.get(), k});
    if (it != cache.end()) return it->second.second;
  }
  const auto& X = P->ambient();
  const std::size_t rows = P->relative_count(k + 1), cols = k >= 0 ? P->relative_count(k) : 0;
  IntMatrix D(rows, cols);
  if (k >= 0) {
    std::vector<int> col_of(X->count(k), -1);
    for (std::size_t c = 0; c < cols; ++c) col_of[P->relative_cells(k)[c]] = static_cast<int>(c);
    for (std::size_t r = 0; r < rows; ++r) {
      const int s = P->relative_cells(k + 1)[r];
      for (int i = 0; i <= k + 1; ++i) {
        const Simplex& f = X->cell_face(k + 1, s, i);
        if (f.degenerate() || col_of[f.cell] < 0) continue;
        D.add(r, col_of[f.cell], Integer(i % 2 == 0 ? 1 : -1));
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(P.get(), k), std::make_pair(P, std::move(D))).first->second.second;
}

RatVector relative_values(const Cochain& u, int b) {
  const int k = u.cell_degree(b);
  RatVector out;
  if (!u.has_component(b)) return out;
  for (int c : u.base()->relative_cells(k)) out.push_back(u.value(b, c));
  return out;
}

void set_relative_values(Cochain& u, int b, const RatVector& values) {
  const int k = u.cell_degree(b);
  if (!u.has_component(b)) {
    if (!values.empty()) throw CochainError("set_relative_values: component is empty");
    return;
  }
  const auto& cells = u.base()->relative_cells(k);
  if (values.size() != cells.size()) throw CochainError("set_relative_values: wrong number of values");
  for (std::size_t i = 0; i < cells.size(); ++i) u.set(b, cells[i], values[i]);
}

AbelianGroupPresentation cohomology(const PairPtr& P, int coeff_degree, int n) {
  const int k = n - coeff_degree;
  if (k < 0 || k > P->ambient()->dimension()) return {};
  const IntMatrix incoming = k > 0 ? coboundary_matrix(P, k - 1) : IntMatrix(P->relative_count(k), 0);
  return cohomology_from_coboundaries(incoming, coboundary_matrix(P, k), P->relative_count(k));
}

std::vector<RatVector> integral_cocycle_basis(const PairPtr& P, int k) {
  if (k < 0 || k > P->ambient()->dimension()) return {};
  const IntMatrix& D = coboundary_matrix(P, k);
  auto sol = solve_affine(to_rational(D), RatVector(D.rows()), Ring::Integer);
  return sol.kernel;
}

Cochain random_cochain(PairPtr base, CoeffPtr coeffs, int degree, std::mt19937_64& rng, int range) {
  Cochain u(base, coeffs, degree);
  std::uniform_int_distribution<int> dist(-range, range);
  for (int b = 0; b < coeffs->rank(); ++b) {
    if (!u.has_component(b)) continue;
    for (int c : base->relative_cells(u.cell_degree(b))) u.set(b, c, dist(rng));
  }
  return u;
}

Cochain random_cocycle(PairPtr base, CoeffPtr coeffs, int degree, std::mt19937_64& rng, int range) {
  Cochain u = coboundary(random_cochain(base, coeffs, degree - 1, rng, range));
  std::uniform_int_distribution<int> dist(-range, range);
  for (int b = 0; b < coeffs->rank(); ++b) {
    const int k = u.cell_degree(b);
    for (const auto& z : integral_cocycle_basis(base, k)) {
      const int m = dist(rng);
      if (m == 0) continue;
      RatVector vals = relative_values(u, b);
      for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += m * z[i];
      set_relative_values(u, b, vals);
    }
  }
  return u;
}

}  // namespace diffcoh
