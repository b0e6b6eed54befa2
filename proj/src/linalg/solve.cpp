#include <algorithm>

#include "diffcoh/linalg.hpp"

namespace diffcoh {

namespace {

void axpy(RowEchelon::Row& y, const Rational& k, const RowEchelon::Row& x) {
  for (const auto& [c, v] : x) {
    auto [it, inserted] = y.try_emplace(c, k * v);
    if (!inserted) {
      it->second += k * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

RowEchelon::Row row_of(const RatMatrix& A, std::size_t r,
                       const std::vector<std::vector<std::pair<std::size_t, Rational>>>& by_row) {
  (void)A;
  RowEchelon::Row row;
  for (const auto& [c, v] : by_row[r]) row.emplace(c, v);
  return row;
}

std::vector<std::vector<std::pair<std::size_t, Rational>>> split_rows(const RatMatrix& A) {
  std::vector<std::vector<std::pair<std::size_t, Rational>>> by_row(A.rows());
  for (const auto& [rc, v] : A.entries()) by_row[rc.first].emplace_back(rc.second, v);
  return by_row;
}

}  // namespace

RowEchelon::Row RowEchelon::reduce(Row row, Row* history) const {
  auto it = row.begin();
  while (it != row.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    const Rational k = -it->second;
    axpy(row, k, p->second.row);
    if (history && track_) axpy(*history, k, p->second.history);
    it = row.upper_bound(col);
  }
  return row;
}

std::optional<std::size_t> RowEchelon::insert(const Row& row, Row* dependency) {
  Row history;
  if (track_) history[inserted_] = 1;
  ++inserted_;
  Row r = reduce(row, &history);
  if (r.empty()) {
    if (dependency) *dependency = std::move(history);
    return std::nullopt;
  }
  const std::size_t lead = r.begin()->first;
  const Rational inv = 1 / r.begin()->second;
  for (auto& [c, v] : r) v *= inv;
  for (auto& [c, v] : history) v *= inv;
  pivots_.emplace(lead, Pivot{std::move(r), std::move(history)});
  return lead;
}

RatVector RowEchelon::back_substitute(std::size_t unknowns) const {
  RatVector x(unknowns);
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    const std::size_t c = it->first;
    if (c >= unknowns) throw LinalgError("back_substitute: inconsistent system");
    Rational acc = 0;
    for (const auto& [j, v] : it->second.row) {
      if (j == c) continue;
      if (j == unknowns)
        acc += v;
      else if (j < unknowns)
        acc -= v * x[j];
    }
    x[c] = acc;
  }
  return x;
}

std::vector<RatVector> RowEchelon::kernel(std::size_t unknowns) const {
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < unknowns; ++f) {
    if (pivots_.count(f)) continue;
    RatVector x(unknowns);
    x[f] = 1;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const std::size_t c = it->first;
      if (c >= unknowns) continue;
      if (c > f) continue;  // depends only on columns > c, all zero except possibly f
      Rational acc = 0;
      for (const auto& [j, v] : it->second.row)
        if (j != c && j < unknowns) acc -= v * x[j];
      x[c] = acc;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

RatMatrix to_rational(const IntMatrix& A) {
  RatMatrix R(A.rows(), A.cols());
  for (const auto& [rc, v] : A.entries()) R.set(rc.first, rc.second, Rational(v));
  return R;
}

IntMatrix to_integer(const RatMatrix& A) {
  IntMatrix Z(A.rows(), A.cols());
  for (const auto& [rc, v] : A.entries()) {
    if (!is_integral(v)) throw LinalgError("to_integer: entry is not integral");
    Z.set(rc.first, rc.second, v.get_num());
  }
  return Z;
}

std::size_t rational_rank(const RatMatrix& A) {
  RowEchelon ech(A.cols());
  auto by_row = split_rows(A);
  for (std::size_t r = 0; r < A.rows(); ++r) ech.insert(row_of(A, r, by_row));
  return ech.rank();
}

std::vector<RatVector> left_null_space(const RatMatrix& A) {
  RowEchelon ech(A.cols(), true);
  auto by_row = split_rows(A);
  std::vector<RatVector> out;
  for (std::size_t r = 0; r < A.rows(); ++r) {
    RowEchelon::Row dep;
    if (!ech.insert(row_of(A, r, by_row), &dep)) {
      RatVector y(A.rows());
      for (const auto& [i, v] : dep) y[i] = v;
      out.push_back(std::move(y));
    }
  }
  return out;
}

namespace {

AffineSolution solve_rational(const RatMatrix& A, const RatVector& b) {
  const std::size_t n = A.cols();
  RowEchelon ech(n + 1, true);
  auto by_row = split_rows(A);
  AffineSolution sol;
  for (std::size_t r = 0; r < A.rows(); ++r) {
    RowEchelon::Row row = row_of(A, r, by_row);
    if (b[r] != 0) row[n] = b[r];
    auto lead = ech.insert(row);
    if (lead && *lead == n) {
      InfeasibilityCertificate cert;
      cert.y.assign(A.rows(), Rational(0));
      for (const auto& [i, v] : ech.pivot_history(n)) cert.y[i] = v;
      sol.certificate = std::move(cert);
      return sol;
    }
  }
  sol.feasible = true;
  sol.x = ech.back_substitute(n);
  sol.kernel = ech.kernel(n);
  return sol;
}

AffineSolution solve_integer(const RatMatrix& A, const RatVector& b) {
  const IntMatrix Z = to_integer(A);
  const SmithForm sf = smith_normal_form(Z);
  const std::size_t m = A.rows(), n = A.cols();
  RatVector Ub(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (sf.U(i, j) != 0 && b[j] != 0) Ub[i] += Rational(sf.U(i, j)) * b[j];

  AffineSolution sol;
  auto fail = [&](std::size_t i, const Rational& scale) {
    InfeasibilityCertificate cert;
    cert.y.resize(m);
    for (std::size_t j = 0; j < m; ++j) cert.y[j] = Rational(sf.U(i, j)) / scale;
    sol.certificate = std::move(cert);
    return sol;
  };
  RatVector y(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < sf.rank) {
      Rational q = Ub[i] / Rational(sf.diagonal[i]);
      if (!is_integral(q)) return fail(i, Rational(sf.diagonal[i]));
      y[i] = q;
    } else if (Ub[i] != 0) {
      return fail(i, 2 * Ub[i]);
    }
  }
  sol.feasible = true;
  sol.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < sf.rank; ++i)
      if (sf.V(r, i) != 0) sol.x[r] += Rational(sf.V(r, i)) * y[i];
  for (std::size_t i = sf.rank; i < n; ++i) {
    RatVector k(n);
    for (std::size_t r = 0; r < n; ++r) k[r] = Rational(sf.V(r, i));
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

}  // namespace

AffineSolution solve_affine(const RatMatrix& A, const RatVector& b, Ring ring) {
  if (b.size() != A.rows()) throw LinalgError("solve_affine: right-hand side has wrong length");
  return ring == Ring::Integer ? solve_integer(A, b) : solve_rational(A, b);
}

bool verify_certificate(const RatMatrix& A, const RatVector& b, Ring ring,
                        const InfeasibilityCertificate& cert) {
  if (cert.y.size() != A.rows()) return false;
  RatVector yA(A.cols());
  for (const auto& [rc, v] : A.entries()) yA[rc.second] += cert.y[rc.first] * v;
  for (const auto& v : yA)
    if (ring == Ring::Integer ? !is_integral(v) : v != 0) return false;
  Rational yb = 0;
  for (std::size_t i = 0; i < b.size(); ++i) yb += cert.y[i] * b[i];
  return ring == Ring::Integer ? !is_integral(yb) : yb != 0;
}

}  // namespace diffcoh
