#include "diffcoh/serialize.hpp"

namespace diffcoh {

namespace {

std::pair<int, int> locate(const PairPtr& P, const std::string& cell) {
  const auto found = P->ambient()->find(cell);
  if (!found) throw TripleError("mismatch", "unknown cell " + cell);
  return *found;
}

int basis_index(const CoeffPtr& L, const std::string& name) {
  const int b = L->find(name);
  if (b < 0) throw TripleError("mismatch", "unknown coefficient basis element " + name);
  return b;
}

}  // namespace

Json cochain_to_json(const Cochain& u) {
  Json out = Json::object();
  const auto& X = u.base()->ambient();
  for (int b = 0; b < u.coeffs()->rank(); ++b) {
    const int d = u.cell_degree(b);
    if (d < 0 || d > X->dimension()) continue;
    Json values = Json::object();
    for (std::size_t i = 0; i < X->count(d); ++i)
      if (u.value(b, static_cast<int>(i)) != 0)
        values[X->cell_name(d, static_cast<int>(i))] = to_string(u.value(b, static_cast<int>(i)));
    if (!values.empty()) out[u.coeffs()->basis_name(b)] = values;
  }
  return out;
}

Cochain cochain_from_json(const Json& j, PairPtr base, CoeffPtr coeffs, int degree) {
  Cochain u(base, coeffs, degree);
  for (const auto& [name, values] : j.items()) {
    const int b = basis_index(coeffs, name);
    for (const auto& [cell, q] : values.items()) {
      const auto [d, i] = locate(base, cell);
      if (d != u.cell_degree(b)) throw TripleError("mismatch", "cell " + cell + " has the wrong dimension");
      u.set(b, i, parse_rational(q.get<std::string>()));
    }
  }
  if (!u.vanishes_on_sub()) throw TripleError("mismatch", "cochain does not vanish on the subcomplex");
  return u;
}

Json form_to_json(const PLForm& a) {
  Json out = Json::object();
  const auto& X = a.base()->ambient();
  for (int b = 0; b < a.coeffs()->rank(); ++b) {
    Json values = Json::object();
    for (int d = 0; d <= X->dimension(); ++d)
      for (std::size_t i = 0; i < X->count(d); ++i) {
        const LocalForm& f = a.local(b, d, static_cast<int>(i));
        if (!f.is_zero()) values[X->cell_name(d, static_cast<int>(i))] = to_string(f);
      }
    if (!values.empty()) out[a.coeffs()->basis_name(b)] = values;
  }
  return out;
}

PLForm form_from_json(const Json& j, PairPtr base, CoeffPtr coeffs, int degree) {
  PLForm a(base, coeffs, degree);
  for (const auto& [name, values] : j.items()) {
    const int b = basis_index(coeffs, name);
    for (const auto& [cell, text] : values.items()) {
      const auto [d, i] = locate(base, cell);
      a.local(b, d, i) = parse_local_form(text.get<std::string>(), d);
    }
  }
  const std::string err = a.compatibility_error();
  if (!err.empty()) throw TripleError("incompatible-form", err);
  return a;
}

Json triple_to_json(const Triple& t) {
  Json out = Json::object();
  out["pair"] = to_pair_presentation(*t.base());
  out["coefficients"] = t.coeffs()->to_json();
  out["degree"] = t.degree();
  out["c"] = cochain_to_json(t.c);
  out["omega"] = form_to_json(t.omega);
  out["h"] = cochain_to_json(t.h);
  return out;
}

Triple triple_from_json(const Json& j, PairPtr base) {
  if (base) {
    if (to_pair_presentation(*base).dump() != j.at("pair").dump())
      throw TripleError("mismatch", "triple_from_json: embedded pair differs from the given base");
  } else {
    base = from_pair_presentation(j.at("pair"));
  }
  const CoeffPtr L = GradedCoefficients::from_json(j.at("coefficients"));
  const int n = j.at("degree").get<int>();
  return make_triple(cochain_from_json(j.at("c"), base, L, n), form_from_json(j.at("omega"), base, L, n),
                     cochain_from_json(j.at("h"), base, L, n - 1));
}

Json witness_to_json(const EquivalenceWitness& w) {
  Json out = Json::object();
  out["epsilon"] = EquivalenceWitness::epsilon;
  out["b"] = cochain_to_json(w.b);
  out["k"] = cochain_to_json(w.k);
  return out;
}

EquivalenceWitness witness_from_json(const Json& j, PairPtr base, CoeffPtr coeffs, int degree) {
  if (j.at("epsilon").get<int>() != EquivalenceWitness::epsilon)
    throw TripleError("mismatch", "witness uses a different sign convention");
  return EquivalenceWitness{cochain_from_json(j.at("b"), base, coeffs, degree - 1),
                            cochain_from_json(j.at("k"), base, coeffs, degree - 2)};
}

Json certificate_to_json(const DistinctCertificate& c, const PairPtr& base, const CoeffPtr& coeffs) {
  Json out = Json::object();
  out["kind"] = c.kind;
  if (c.kind == "curvature") {
    out["cell"] = c.cell;
    return out;
  }
  out["basis"] = coeffs->basis_name(c.basis);
  out["dim"] = c.dim;
  Json cycle = Json::object();
  const auto& cells = base->relative_cells(c.dim);
  for (std::size_t i = 0; i < c.cycle.size(); ++i)
    if (c.cycle[i] != 0) cycle[base->ambient()->cell_name(c.dim, cells[i])] = to_string(c.cycle[i]);
  out["cycle"] = cycle;
  out["pairing"] = to_string(c.pairing);
  return out;
}

DistinctCertificate certificate_from_json(const Json& j, const PairPtr& base, const CoeffPtr& coeffs) {
  DistinctCertificate c;
  c.kind = j.at("kind").get<std::string>();
  if (c.kind == "curvature") {
    c.cell = j.at("cell").get<std::string>();
    return c;
  }
  c.basis = basis_index(coeffs, j.at("basis").get<std::string>());
  c.dim = j.at("dim").get<int>();
  const auto& cells = base->relative_cells(c.dim);
  c.cycle.assign(cells.size(), 0);
  for (const auto& [cell, q] : j.at("cycle").items()) {
    const auto [d, i] = locate(base, cell);
    const auto it = std::find(cells.begin(), cells.end(), i);
    if (d != c.dim || it == cells.end()) throw TripleError("mismatch", "cycle cell " + cell + " is not a relative cell");
    c.cycle[it - cells.begin()] = parse_rational(q.get<std::string>());
  }
  c.pairing = parse_rational(j.at("pairing").get<std::string>());
  return c;
}

}  // namespace diffcoh
