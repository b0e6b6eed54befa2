#include <map>
#include <mutex>

#include "diffcoh/core.hpp"

namespace diffcoh {

namespace {

// δ from relative (k−1)-cells to relative k-cells; k = 0 gives an empty column set.
RatMatrix incoming(const PairPtr& P, int k) {
  if (k <= 0) return RatMatrix(P->relative_count(k), 0);
  return to_rational(coboundary_matrix(P, k - 1));
}

Integer lcm_denominator(const RatVector& v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, Integer(q.get_den()));
  return l;
}

// Integral basis of the relative k-cycles (left kernel of the incoming coboundary), cached per pair.
const std::vector<RatVector>& cycle_basis(const PairPtr& P, int k) {
  static std::mutex mu;
  static std::map<std::pair<const Pair*, int>, std::pair<PairPtr, std::vector<RatVector>>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(P.get(), k);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second.second;
  std::vector<RatVector> Y = left_null_space(incoming(P, k));
  for (auto& y : Y) {
    const Integer l = lcm_denominator(y);
    for (auto& q : y) q *= Rational(l);
  }
  return memo.emplace(key, std::make_pair(P, std::move(Y))).first->second.second;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string form_difference(const PLForm& a, const PLForm& b) {
  const auto& X = a.base()->ambient();
  for (int bb = 0; bb < a.coeffs()->rank(); ++bb)
    for (int d = 0; d <= X->dimension(); ++d)
      for (std::size_t c = 0; c < X->count(d); ++c)
        if (!(a.local(bb, d, static_cast<int>(c)) == b.local(bb, d, static_cast<int>(c))))
          return a.coeffs()->basis_name(bb) + ":" + X->cell_name(d, static_cast<int>(c));
  return "";
}

}  // namespace

EquivalenceResult equivalent(const Triple& t0, const Triple& t1) {
  if (!same_pair(t0.base(), t1.base()) || t0.degree() != t1.degree() || t0.coeffs() != t1.coeffs())
    throw TripleError("mismatch", "equivalent: triples live on different bases or degrees");
  const PairPtr& P = t0.base();
  EquivalenceResult res;
  const PLForm w1 = t1.omega.rebase(P);
  const std::string cell = form_difference(t0.omega, w1);
  if (!cell.empty()) {
    res.certificate = DistinctCertificate{"curvature", cell, 0, 0, {}, 0};
    return res;
  }
  const Cochain dh = t1.h.rebase(P) - t0.h;
  const int n = t0.degree();
  EquivalenceWitness w{Cochain::zero(P, t0.coeffs(), n - 1), Cochain::zero(P, t0.coeffs(), n - 2)};
  for (int b = 0; b < t0.coeffs()->rank(); ++b) {
    const int k = dh.cell_degree(b);
    if (k < 0 || k > P->ambient()->dimension()) continue;
    const RatVector x = relative_values(dh, b);
    const auto& Y = cycle_basis(P, k);
    RatVector bvec(x.size(), 0);
    if (!Y.empty()) {
      RatMatrix A(Y.size(), x.size());
      RatVector rhs(Y.size());
      for (std::size_t i = 0; i < Y.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) A.set(i, j, Y[i][j]);
        rhs[i] = -dot(Y[i], x);
      }
      const AffineSolution sol = solve_affine(A, rhs, Ring::Integer);
      if (!sol.feasible) {
        const RatVector& y = sol.certificate->y;
        RatVector z(x.size(), 0);
        for (std::size_t i = 0; i < Y.size(); ++i)
          for (std::size_t j = 0; j < x.size(); ++j) z[j] += y[i] * Y[i][j];
        res.certificate = DistinctCertificate{"period", "", b, k, z, dot(z, x)};
        return res;
      }
      bvec = sol.x;
    }
    RatVector target(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) target[j] = bvec[j] + x[j];
    set_relative_values(w.b, b, bvec);
    if (k > 0) {
      const AffineSolution ks = solve_affine(incoming(P, k), target, Ring::Rational);
      if (!ks.feasible) throw TripleError("postcondition", "equivalent: rational primitive not found");
      set_relative_values(w.k, b, ks.x);
    }
  }
  if (!check_witness(t0, t1, w)) throw TripleError("postcondition", "equivalent: constructed witness does not verify");
  res.equivalent = true;
  res.witness = std::move(w);
  return res;
}

bool check_witness(const Triple& t0, const Triple& t1, const EquivalenceWitness& w) {
  const PairPtr& P = t0.base();
  if (!same_pair(P, t1.base()) || !same_pair(P, w.b.base()) || !same_pair(P, w.k.base())) return false;
  if (w.b.degree() != t0.degree() - 1 || w.k.degree() != t0.degree() - 2) return false;
  if (!w.b.is_integral() || !w.b.vanishes_on_sub() || !w.k.vanishes_on_sub()) return false;
  if (!(t0.omega == t1.omega.rebase(P))) return false;
  if (!(t1.c.rebase(P) - t0.c == coboundary(w.b).rebase(P))) return false;
  const Cochain rhs = Rational(EquivalenceWitness::epsilon) * w.b + coboundary(w.k).rebase(P);
  return t1.h.rebase(P) - t0.h == rhs;
}

bool check_certificate(const Triple& t0, const Triple& t1, const DistinctCertificate& cert) {
  const PairPtr& P = t0.base();
  if (cert.kind == "curvature") return !(t0.omega == t1.omega.rebase(P));
  if (cert.kind != "period") return false;
  const Cochain dh = t1.h.rebase(P) - t0.h;
  if (cert.basis < 0 || cert.basis >= t0.coeffs()->rank() || dh.cell_degree(cert.basis) != cert.dim) return false;
  const RatVector x = relative_values(dh, cert.basis);
  if (cert.cycle.size() != x.size()) return false;
  for (const auto& q : cert.cycle)
    if (!is_integral(q)) return false;
  const RatMatrix D = incoming(P, cert.dim);
  for (std::size_t col = 0; col < D.cols(); ++col) {
    Rational s = 0;
    for (std::size_t row = 0; row < D.rows(); ++row) s += cert.cycle[row] * D.get(row, col);
    if (s != 0) return false;
  }
  return cert.pairing == dot(cert.cycle, x) && !is_integral(cert.pairing);
}

EquivalenceWitness compose(const EquivalenceWitness& w01, const EquivalenceWitness& w12) {
  return EquivalenceWitness{w01.b + w12.b.rebase(w01.b.base()), w01.k + w12.k.rebase(w01.k.base())};
}

std::optional<Cochain> integral_primitive(const Cochain& u) {
  const PairPtr& P = u.base();
  Cochain beta = Cochain::zero(P, u.coeffs(), u.degree() - 1);
  for (int b = 0; b < u.coeffs()->rank(); ++b) {
    const int k = u.cell_degree(b);
    if (k < 0 || k > P->ambient()->dimension()) continue;
    const RatVector x = relative_values(u, b);
    if (k == 0) {
      for (const auto& q : x)
        if (q != 0) return std::nullopt;
      continue;
    }
    const AffineSolution sol = solve_affine(incoming(P, k), x, Ring::Integer);
    if (!sol.feasible) return std::nullopt;
    set_relative_values(beta, b, sol.x);
  }
  return beta;
}

std::optional<Cochain> rational_primitive(const Cochain& u) {
  const PairPtr& P = u.base();
  Cochain beta = Cochain::zero(P, u.coeffs(), u.degree() - 1);
  for (int b = 0; b < u.coeffs()->rank(); ++b) {
    const int k = u.cell_degree(b);
    if (k < 0 || k > P->ambient()->dimension()) continue;
    const RatVector x = relative_values(u, b);
    if (k == 0) {
      for (const auto& q : x)
        if (q != 0) return std::nullopt;
      continue;
    }
    const AffineSolution sol = solve_affine(incoming(P, k), x, Ring::Rational);
    if (!sol.feasible) return std::nullopt;
    set_relative_values(beta, b, sol.x);
  }
  return beta;
}

bool cohomologous(const Cochain& u, const Cochain& v) {
  return integral_primitive(u - v.rebase(u.base())).has_value();
}

PLForm a_preimage(const Triple& t, const FormDegreeBudget& budget) {
  const auto beta = integral_primitive(t.c);
  if (!beta) throw TripleError("precondition", "a_preimage: the class I(t) is nonzero");
  const Cochain h = t.h + beta->rebase(t.base());
  PLForm theta0 = PLForm::zero(t.base(), t.coeffs(), t.degree() - 1);
  if (!t.omega.is_zero()) {
    std::optional<PLForm> eta;
    for (int cap = std::max({1, budget.cap, t.omega.poly_degree() + 1}); cap <= budget.limit && !eta; cap *= 2)
      eta = solve_exact(t.omega, cap);
    if (!eta) throw TripleError("postcondition", "a_preimage: no primitive of ω within the degree limit");
    theta0 = *eta;
  }
  const Cochain u = h - deRham(theta0);
  if (!coboundary(u).is_zero()) throw TripleError("postcondition", "a_preimage: h − R(Θ) is not a cocycle");
  PLForm theta = theta0 + whitney(u);
  if (!(deRham(theta) == h) || !(exterior_d(theta) == t.omega))
    throw TripleError("postcondition", "a_preimage: constructed form does not match");
  return theta;
}

std::optional<Cochain> ch_preimage(const PLForm& theta) {
  const Triple t = a_map(theta);
  const EquivalenceResult r = equivalent(t, zero_triple(t.base(), t.coeffs(), t.degree()));
  if (!r.equivalent) return std::nullopt;
  return r.witness->b;
}

}  // namespace diffcoh
