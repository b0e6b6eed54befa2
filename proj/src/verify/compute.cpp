#include "diffcoh/verify.hpp"

namespace diffcoh::verify {

namespace {

Json group_json(const AbelianGroupPresentation& g) {
  Json torsion = Json::array();
  for (const auto& t : g.torsion) torsion.push_back(t.get_str());
  return {{"group", g.to_string()}, {"rank", g.rank}, {"torsion", torsion}};
}

}  // namespace

Json compute(const PairPtr& P, const CoeffPtr& L, int n, const std::string& what) {
  if (what != "cohomology" && what != "diffcoh-invariants") throw JobError("compute: unknown report \"" + what + "\"");
  Json out = Json::object();
  out["complex"] = P->ambient()->name();
  out["coefficients"] = L->name();
  out["n"] = n;
  out["what"] = what;
  const int top = P->ambient()->dimension();
  Json parts = Json::array();
  for (int b = 0; b < L->rank(); ++b) {
    const int k = n - L->degree(b);
    Json part = Json::object();
    part["basis"] = L->basis_name(b);
    part["cell_degree"] = k;
    const AbelianGroupPresentation Hk = k >= 0 && k <= top ? cohomology(P, 0, k) : AbelianGroupPresentation{};
    if (what == "cohomology") {
      part["H"] = group_json(Hk);
    } else {
      const AbelianGroupPresentation Hk1 = k >= 1 && k - 1 <= top ? cohomology(P, 0, k - 1) : AbelianGroupPresentation{};
      Json torsion = Json::array();
      for (const auto& t : Hk.torsion) torsion.push_back(t.get_str());
      part["I_image"] = group_json(Hk);
      part["flat"] = {{"circle_rank", Hk1.rank}, {"torsion", torsion}};
      part["curvature_period_rank"] = Hk.rank;
    }
    parts.push_back(std::move(part));
  }
  out["components"] = parts;
  return out;
}

}  // namespace diffcoh::verify
