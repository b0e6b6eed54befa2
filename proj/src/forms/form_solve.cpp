#include <bit>
#include <map>
#include <mutex>
#include <tuple>

#include "diffcoh/forms.hpp"

namespace diffcoh {

namespace {

// Monomials of total degree ≤ cap in k variables.
void monomials(int k, int cap, int var, Monomial cur, std::vector<Monomial>& out) {
  if (var == k) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; total_degree(cur) + e <= cap; ++e) monomials(k, cap, var + 1, with_exponent(cur, var, e), out);
}

struct BasisElement {
  std::uint32_t mask;
  Monomial mono;
  LocalForm form;
  LocalForm d;
  std::vector<LocalForm> faces;
};

// Form ansatz on Δ^k of form degree r and polynomial degree ≤ cap.
const std::vector<BasisElement>& ansatz(int k, int r, int cap) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::vector<BasisElement>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(k, r, cap);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<Monomial> monos;
  if (k > 8) throw FormError("forms are limited to simplices of dimension 8");
  monomials(k, cap, 0, 0, monos);
  std::vector<BasisElement> basis;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (std::popcount(mask) != r) continue;
    for (Monomial m : monos) {
      BasisElement e{mask, m, {}, {}, {}};
      e.form.dim = k;
      e.form.add(mask, Poly::monomial(m, 1));
      e.d = exterior_d(e.form);
      for (int i = 0; k > 0 && i <= k; ++i) e.faces.push_back(pullback(e.form, coface(k, i)));
      basis.push_back(std::move(e));
    }
  }
  return memo.emplace(key, std::move(basis)).first->second;
}

// Sparse system keyed by (constraint, mask, monomial) rows.
struct System {
  using Key = std::tuple<std::size_t, std::uint32_t, Monomial>;
  std::map<Key, RowEchelon::Row> rows;
  std::map<Key, Rational> rhs;

  void add_form(std::size_t constraint, const LocalForm& f, std::size_t col, const Rational& k) {
    for (const auto& [mask, p] : f.comps)
      for (const auto& [m, c] : p.terms()) {
        auto& row = rows[{constraint, mask, m}];
        Rational& v = row[col];
        v += k * c;
        if (v == 0) row.erase(col);
      }
  }
  void add_rhs(std::size_t constraint, const LocalForm& f, const Rational& k) {
    for (const auto& [mask, p] : f.comps)
      for (const auto& [m, c] : p.terms()) {
        rows[{constraint, mask, m}];
        rhs[{constraint, mask, m}] += k * c;
      }
  }
  std::optional<RatVector> solve(std::size_t unknowns) const {
    RowEchelon ech(unknowns + 1);
    for (const auto& [key, row] : rows) {
      RowEchelon::Row r = row;
      auto it = rhs.find(key);
      if (it != rhs.end() && it->second != 0) r[unknowns] = it->second;
      if (r.empty()) continue;
      auto lead = ech.insert(r);
      if (lead && *lead == unknowns) return std::nullopt;
    }
    return ech.back_substitute(unknowns);
  }
};

}  // namespace

namespace {

std::mutex budget_mu;
FormDegreeBudget budget_default;

}  // namespace

FormDegreeBudget default_form_budget() {
  std::lock_guard<std::mutex> lock(budget_mu);
  return budget_default;
}

void set_default_form_budget(const FormDegreeBudget& budget) {
  std::lock_guard<std::mutex> lock(budget_mu);
  budget_default = budget;
}

PLForm extend_form(const PLForm& theta_on_sub, const PairPtr& pair, PairPtr result_base,
                   const FormDegreeBudget& budget) {
  if (theta_on_sub.base()->ambient() != pair->sub() || result_base->ambient() != pair->ambient())
    throw FormError("extend_form: sets do not match");
  const auto& X = pair->ambient();
  PLForm r(result_base, theta_on_sub.coeffs(), theta_on_sub.degree());
  for (int b = 0; b < r.coeffs()->rank(); ++b) {
    const int deg = r.form_degree(b);
    for (int k = 0; k <= X->dimension(); ++k)
      for (std::size_t c = 0; c < X->count(k); ++c) {
        const int ci = static_cast<int>(c);
        const int s = pair->sub_index(k, ci);
        if (s >= 0) {
          r.local(b, k, ci) = theta_on_sub.local(b, k, s);
          continue;
        }
        if (deg < 0 || deg > k || k == 0 || result_base->in_sub(k, ci)) continue;
        std::vector<LocalForm> boundary;
        int needed = 0;
        bool all_zero = true;
        for (int i = 0; i <= k; ++i) {
          boundary.push_back(r.on_simplex(b, X->cell_face(k, ci, i)));
          needed = std::max(needed, boundary.back().poly_degree());
          all_zero = all_zero && boundary.back().is_zero();
        }
        if (all_zero) continue;
        bool done = false;
        for (int cap = std::max({1, budget.cap, needed}); cap <= budget.limit && !done; cap *= 2) {
          const auto& basis = ansatz(k, deg, cap);
          System sys;
          for (std::size_t col = 0; col < basis.size(); ++col)
            for (int i = 0; i <= k; ++i) sys.add_form(i, basis[col].faces[i], col, 1);
          for (int i = 0; i <= k; ++i) sys.add_rhs(i, boundary[i], 1);
          auto x = sys.solve(basis.size());
          if (!x) continue;
          LocalForm f;
          f.dim = k;
          for (std::size_t col = 0; col < basis.size(); ++col)
            if ((*x)[col] != 0) f.add(basis[col].mask, Poly::monomial(basis[col].mono, (*x)[col]));
          r.local(b, k, ci) = f;
          done = true;
        }
        if (!done) throw FormError("extend_form: no extension of " + X->cell_name(k, ci) + " within the degree limit");
      }
  }
  const std::string err = r.compatibility_error();
  if (!err.empty()) throw FormError("extend_form: " + err);
  return r;
}

std::optional<PLForm> solve_exact(const PLForm& a, int cap) {
  const auto& base = a.base();
  const auto& X = base->ambient();
  PLForm eta(base, a.coeffs(), a.degree() - 1);
  // columns: (b, k, c) -> first column of that cell's ansatz
  std::map<std::tuple<int, int, int>, std::size_t> offset;
  std::size_t unknowns = 0;
  for (int b = 0; b < a.coeffs()->rank(); ++b) {
    const int r = a.form_degree(b) - 1;
    if (r < 0) continue;
    for (int k = r; k <= X->dimension(); ++k)
      for (int c : base->relative_cells(k)) {
        offset[{b, k, c}] = unknowns;
        unknowns += ansatz(k, r, cap).size();
      }
  }
  System sys;
  std::size_t constraint = 0;
  for (int b = 0; b < a.coeffs()->rank(); ++b) {
    const int r = a.form_degree(b) - 1;
    for (int k = 0; k <= X->dimension(); ++k)
      for (int c : base->relative_cells(k)) {
        const LocalForm& target = a.local(b, k, c);
        if (r < 0) {
          if (!target.is_zero()) return std::nullopt;
          continue;
        }
        auto own = offset.find({b, k, c});
        const std::size_t dc = constraint++;
        sys.add_rhs(dc, target, 1);
        if (own == offset.end()) continue;
        const auto& basis = ansatz(k, r, cap);
        for (std::size_t j = 0; j < basis.size(); ++j) sys.add_form(dc, basis[j].d, own->second + j, 1);
        for (int i = 0; k > 0 && i <= k; ++i) {
          const std::size_t fc = constraint++;
          for (std::size_t j = 0; j < basis.size(); ++j) sys.add_form(fc, basis[j].faces[i], own->second + j, 1);
          const Simplex face = X->cell_face(k, c, i);
          auto other = offset.find({b, face.cell_dim(), face.cell});
          if (other == offset.end()) continue;
          const auto& fbasis = ansatz(face.cell_dim(), r, cap);
          for (std::size_t j = 0; j < fbasis.size(); ++j)
            sys.add_form(fc, pullback(fbasis[j].form, face.eta), other->second + j, -1);
        }
      }
  }
  auto x = sys.solve(unknowns);
  if (!x) return std::nullopt;
  for (const auto& [key, off] : offset) {
    const auto [b, k, c] = key;
    const auto& basis = ansatz(k, a.form_degree(b) - 1, cap);
    LocalForm f;
    f.dim = k;
    for (std::size_t j = 0; j < basis.size(); ++j)
      if ((*x)[off + j] != 0) f.add(basis[j].mask, Poly::monomial(basis[j].mono, (*x)[off + j]));
    eta.local(b, k, c) = f;
  }
  return eta;
}

}  // namespace diffcoh
