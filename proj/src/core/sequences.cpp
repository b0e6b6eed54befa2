#include <functional>

#include "diffcoh/core.hpp"

namespace diffcoh {

namespace {

Triple zero_like(const PairPtr& P, const Triple& t) { return zero_triple(P, t.coeffs(), t.degree()); }

bool equiv(const Triple& a, const Triple& b) { return equivalent(a, b).equivalent; }

// (−δb̄, 0, b̄ − δk̄) on M: equivalent to zero through the witness (b̄, k̄).
Triple null_from_sub(const PairPtr& P, const CoeffPtr& L, int degree, std::mt19937_64& rng) {
  const PairPtr N = sub_pair(P), M = ambient_pair(P);
  const Cochain b = extend_by_zero(random_cochain(N, L, degree - 1, rng), P);
  const Cochain k = make_rational(1, 3) * extend_by_zero(random_cochain(N, L, degree - 2, rng), P);
  return make_triple(-coboundary(b), PLForm::zero(M, L, degree), b - coboundary(k));
}

// t + (δb̄, 0, −b̄ + δk̄) for the witness (b, k) of j*t ~ 0; vanishes on N.
std::optional<Triple> relative_lift(const Triple& t, const PairPtr& P) {
  const Triple r = restrict_to_sub(t, P);
  const EquivalenceResult w = equivalent(r, zero_like(r.base(), r));
  if (!w.equivalent) return std::nullopt;
  const Cochain b = extend_by_zero(w.witness->b, P), k = extend_by_zero(w.witness->k, P);
  const Triple x = make_triple(t.c + coboundary(b), t.omega, t.h - b + coboundary(k));
  return rebase(x, P);
}

class NodeCheck {
 public:
  explicit NodeCheck(std::string name) { node_.node = std::move(name); }

  void composite(const std::string& what, const std::function<bool()>& f) {
    ++node_.composites;
    run("composite " + what, f);
  }
  void kernel(const std::string& what, const std::function<bool()>& f) {
    ++node_.kernel_samples;
    run("preimage " + what, f);
  }
  SequenceNode take() { return std::move(node_); }

 private:
  void run(const std::string& what, const std::function<bool()>& f) {
    try {
      if (!f()) node_.failures.push_back(what + ": check failed");
    } catch (const std::exception& e) {
      node_.failures.push_back(what + ": " + e.what());
    }
  }
  SequenceNode node_;
};

}  // namespace

Triple random_flat_triple(PairPtr base, CoeffPtr coeffs, int degree, std::mt19937_64& rng) {
  Cochain c = random_cocycle(base, coeffs, degree, rng);
  auto prim = rational_primitive(c);
  if (!prim) {
    const Cochain v = random_cochain(base, coeffs, degree - 1, rng);
    c = coboundary(v);
    prim = v;
  }
  const Cochain q = make_rational(1, 3) * random_cocycle(base, coeffs, degree - 1, rng);
  return make_triple(c, PLForm::zero(base, coeffs, degree), q - *prim);
}

PairPtr sub_pair(const PairPtr& P) { return Pair::absolute(P->sub()); }

PairPtr ambient_pair(const PairPtr& P) { return Pair::absolute(P->ambient()); }

Cochain extend_by_zero(const Cochain& u, const PairPtr& P) {
  if (u.base()->ambient() != P->sub()) throw TripleError("mismatch", "extend_by_zero: cochain is not on the subcomplex");
  Cochain out = Cochain::zero(ambient_pair(P), u.coeffs(), u.degree());
  const auto& A = P->sub();
  const SimplicialMap& inc = P->inclusion();
  for (int b = 0; b < u.coeffs()->rank(); ++b) {
    const int d = u.cell_degree(b);
    if (d < 0 || d > A->dimension()) continue;
    for (std::size_t i = 0; i < A->count(d); ++i) out.set(b, inc.image(d, static_cast<int>(i)).cell, u.value(b, static_cast<int>(i)));
  }
  return out;
}

Triple restrict_to_sub(const Triple& t, const PairPtr& P) {
  if (t.base()->ambient() != P->ambient()) throw TripleError("mismatch", "restrict_to_sub: triple is not on the ambient set");
  return pullback(P->inclusion(), t, sub_pair(P));
}

Triple forget_sub(const Triple& t) { return rebase(t, Pair::absolute(t.base()->ambient())); }

Triple delta1(const Triple& s, const PairPtr& P) {
  if (!s.omega.is_zero()) throw TripleError("precondition", "delta1: the triple is not flat");
  const Cochain c = extend_by_zero(s.c, P), h = extend_by_zero(s.h, P);
  return rebase(make_triple(coboundary(c), PLForm::zero(c.base(), s.coeffs(), s.degree() + 1), -c - coboundary(h)), P);
}

Cochain delta2(const Triple& s, const PairPtr& P) { return coboundary(extend_by_zero(s.c, P)).rebase(P); }

bool SequenceReport::ok() const {
  for (const auto& n : nodes)
    if (!n.ok()) return false;
  return true;
}

SequenceReport pair_sequence(const PairPtr& P, const CoeffPtr& L, int n, std::mt19937_64& rng, int samples) {
  SequenceReport rep;
  rep.pair = P->ambient()->name();
  rep.degree = n;
  const PairPtr M = ambient_pair(P), N = sub_pair(P);

  NodeCheck flatM("flat^{n-1}(M)");
  NodeCheck flatN("flat^{n-1}(N)");
  NodeCheck relMN("hat^n(M,N)");
  NodeCheck absM("hat^n(M)");
  NodeCheck absN("hat^n(N)");
  NodeCheck topMN("E^{n+1}(M,N)");

  for (int i = 0; i < samples; ++i) {
    flatM.composite("j* i*", [&] {
      const Triple t = forget_sub(random_flat_triple(P, L, n - 1, rng));
      const Triple r = restrict_to_sub(t, P);
      return r.c.is_zero() && r.h.is_zero() && r.omega.is_zero();
    });
    flatM.kernel("of i* for ker j*", [&] {
      const Triple t =
          random_equivalent(add(forget_sub(random_flat_triple(P, L, n - 1, rng)), null_from_sub(P, L, n - 1, rng)), rng);
      const auto x = relative_lift(t, P);
      return x && x->omega.is_zero() && equiv(forget_sub(*x), t);
    });

    flatN.composite("delta1 j*", [&] {
      const Triple s = restrict_to_sub(random_flat_triple(M, L, n - 1, rng), P);
      const Triple d = delta1(s, P);
      return equiv(d, zero_like(P, d));
    });
    flatN.kernel("of j* for ker delta1", [&] {
      const Triple s = random_equivalent(restrict_to_sub(random_flat_triple(M, L, n - 1, rng), P), rng);
      const Triple d = delta1(s, P);
      const EquivalenceResult w = equivalent(d, zero_like(P, d));
      if (!w.equivalent) return false;
      const Cochain b = w.witness->b.rebase(M), k = w.witness->k.rebase(M);
      const Triple x = make_triple(extend_by_zero(s.c, P) + b, PLForm::zero(M, L, n - 1), extend_by_zero(s.h, P) - k);
      return equiv(restrict_to_sub(x, P), s);
    });

    relMN.composite("i* delta1", [&] {
      const Triple d = forget_sub(delta1(random_flat_triple(N, L, n - 1, rng), P));
      return equiv(d, zero_like(M, d));
    });
    relMN.kernel("of delta1 for ker i*", [&] {
      const Triple t = random_equivalent(delta1(random_flat_triple(N, L, n - 1, rng), P), rng);
      const Triple f = forget_sub(t);
      const EquivalenceResult w = equivalent(f, zero_like(M, f));
      if (!w.equivalent) return false;
      const Cochain b = pullback(P->inclusion(), w.witness->b, N), k = pullback(P->inclusion(), w.witness->k, N);
      const Triple y = make_triple(-b, PLForm::zero(N, L, n - 1), k);
      return equiv(delta1(y, P), t);
    });

    absM.composite("j* i*", [&] {
      const Triple r = restrict_to_sub(forget_sub(random_triple(P, L, n, rng)), P);
      return equiv(r, zero_like(N, r));
    });
    absM.kernel("of i* for ker j*", [&] {
      const Triple t = random_equivalent(add(forget_sub(random_triple(P, L, n, rng)), null_from_sub(P, L, n, rng)), rng);
      const auto x = relative_lift(t, P);
      return x && equiv(forget_sub(*x), t);
    });

    absN.composite("delta2 j*", [&] {
      const Triple s = restrict_to_sub(random_triple(M, L, n, rng), P);
      return integral_primitive(delta2(s, P)).has_value();
    });
    absN.kernel("of j* for ker delta2", [&] {
      const Triple s0 = restrict_to_sub(random_triple(M, L, n, rng), P);
      const Triple s = random_equivalent(add(s0, a_map(random_form(N, L, n - 1, rng))), rng);
      const auto beta = integral_primitive(delta2(s, P));
      if (!beta) return false;
      const Triple y = character_lift(extend_by_zero(s.c, P) - beta->rebase(M));
      const PLForm theta = a_preimage(sub(restrict_to_sub(y, P), s));
      const PLForm ext = extend_form(theta, P, M);
      const Triple x = sub(y, a_map(ext));
      return equiv(restrict_to_sub(x, P), s);
    });

    topMN.composite("i* delta2", [&] {
      const Cochain u = delta2(random_triple(N, L, n, rng), P).rebase(M);
      return integral_primitive(u).has_value();
    });
    topMN.kernel("of delta2 for ker i*", [&] {
      const Cochain v = extend_by_zero(random_cocycle(N, L, n, rng), P) + random_cochain(P, L, n, rng).rebase(M);
      const Cochain u = coboundary(v).rebase(P);
      const auto beta = integral_primitive(u.rebase(M));
      if (!beta) return false;
      const Triple s = character_lift(pullback(P->inclusion(), *beta, N));
      return integral_primitive(delta2(s, P) - u).has_value();
    });
  }
  for (NodeCheck* c : {&flatM, &flatN, &relMN, &absM, &absN, &topMN}) rep.nodes.push_back(c->take());
  return rep;
}

SequenceReport axiom_sequence(const PairPtr& P, const CoeffPtr& L, int n, std::mt19937_64& rng, int samples) {
  SequenceReport rep;
  rep.pair = P->ambient()->name();
  rep.degree = n;
  NodeCheck forms("Omega^{n-1}/im d");
  NodeCheck hat("hat^n");
  NodeCheck top("E^n");

  // generators: integral cocycles of each component, in degree n (for I) and n − 1 (for ch)
  auto generators = [&](int degree) {
    std::vector<Cochain> out;
    for (int b = 0; b < L->rank(); ++b) {
      const int k = degree - L->degree(b);
      if (k < 0 || k > P->ambient()->dimension()) continue;
      for (const auto& v : integral_cocycle_basis(P, k)) {
        Cochain u = Cochain::zero(P, L, degree);
        set_relative_values(u, b, v);
        out.push_back(std::move(u));
      }
    }
    for (int i = 0; i < samples; ++i) out.push_back(random_cocycle(P, L, degree, rng));
    return out;
  };

  for (const Cochain& c : generators(n))
    top.kernel("of I", [&] {
      const Triple t = character_lift(c);
      return t.c == c;
    });
  for (const Cochain& z : generators(n - 1))
    forms.composite("a ch", [&] {
      const Triple t = a_map(whitney(z));
      return equiv(t, zero_like(P, t));
    });
  for (int i = 0; i < samples; ++i) {
    hat.composite("I a", [&] { return a_map(random_form(P, L, n - 1, rng)).c.is_zero(); });
    hat.kernel("of a for ker I", [&] {
      const Triple t = random_equivalent(
          add(a_map(random_form(P, L, n - 1, rng)), character_lift(coboundary(random_cochain(P, L, n - 1, rng)))), rng);
      const PLForm theta = a_preimage(t);
      return equiv(a_map(theta), t);
    });
    forms.kernel("of ch for ker a", [&] {
      const Cochain z = random_cocycle(P, L, n - 1, rng);
      const PLForm theta = whitney(z) + exterior_d(random_form(P, L, n - 2, rng));
      const Triple t = a_map(theta);
      if (!equiv(t, zero_like(P, t))) return false;
      const auto w = ch_preimage(theta);
      if (!w) return false;
      const PLForm diff = whitney(*w) - theta;
      if (diff.is_zero()) return true;
      for (int cap = std::max(1, diff.poly_degree() + 1); cap <= 16; cap *= 2)
        if (solve_exact(diff, cap)) return true;
      return false;
    });
  }
  for (NodeCheck* c : {&forms, &hat, &top}) rep.nodes.push_back(c->take());
  return rep;
}

}  // namespace diffcoh
