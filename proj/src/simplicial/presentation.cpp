#include "diffcoh/presentation.hpp"

namespace diffcoh {

Json to_presentation(const SimplicialSet& X) {
  Json cells = Json::object();
  Json faces = Json::object();
  for (int d = 0; d <= X.dimension(); ++d) {
    Json names = Json::array();
    for (std::size_t i = 0; i < X.count(d); ++i) {
      const int ii = static_cast<int>(i);
      names.push_back(X.cell_name(d, ii));
      if (d == 0) continue;
      Json fs = Json::array();
      for (int k = 0; k <= d; ++k) {
        const Simplex& f = X.cell_face(d, ii, k);
        fs.push_back(Json::array({degeneracy_word(f.eta), X.cell_name(f.cell_dim(), f.cell)}));
      }
      faces[X.cell_name(d, ii)] = std::move(fs);
    }
    cells[std::to_string(d)] = std::move(names);
  }
  Json out = Json::object();
  out["cells"] = std::move(cells);
  out["faces"] = std::move(faces);
  if (auto bp = X.basepoint()) out["basepoint"] = X.cell_name(0, *bp);
  return out;
}

SSetPtr from_presentation(const Json& j, const std::string& name) {
  if (!j.is_object() || !j.contains("cells") || !j["cells"].is_object())
    throw SimplicialError("presentation: missing \"cells\" object");
  for (const auto& [key, unused] : j.items())
    if (key != "cells" && key != "faces" && key != "basepoint")
      throw SimplicialError("presentation: unexpected key \"" + key + "\"");
  const Json empty = Json::object();
  const Json& faces = j.contains("faces") ? j["faces"] : empty;
  auto X = std::make_shared<SimplicialSet>(name);
  const auto& cells = j["cells"];
  for (int d = 0; d < static_cast<int>(cells.size()); ++d) {
    const std::string key = std::to_string(d);
    if (!cells.contains(key)) throw SimplicialError("presentation: cells for dimension " + key + " are missing");
    for (const auto& nm : cells[key]) {
      const std::string cell = nm.get<std::string>();
      std::vector<Simplex> fs;
      if (d > 0) {
        if (!faces.contains(cell)) throw SimplicialError("presentation: cell '" + cell + "' has no faces");
        const auto& list = faces[cell];
        if (!list.is_array() || static_cast<int>(list.size()) != d + 1)
          throw SimplicialError("presentation: cell '" + cell + "': dimension mismatch, expected " +
                                std::to_string(d + 1) + " faces");
        for (const auto& entry : list) {
          if (!entry.is_array() || entry.size() != 2)
            throw SimplicialError("presentation: cell '" + cell + "': face entries are [word, name]");
          const std::string word = entry[0].get<std::string>();
          const std::string target = entry[1].get<std::string>();
          auto ref = X->find(target);
          if (!ref) throw SimplicialError("presentation: cell '" + cell + "': dangling face reference '" + target + "'");
          if (ref->first + static_cast<int>(word.size()) != d - 1)
            throw SimplicialError("presentation: cell '" + cell + "': dimension mismatch in face '" + target + "'");
          fs.push_back(Simplex{surjection_from_word(word, ref->first), ref->second});
        }
      } else if (faces.contains(cell) && !faces[cell].empty()) {
        throw SimplicialError("presentation: vertex '" + cell + "' cannot have faces");
      }
      X->add_cell(d, cell, std::move(fs));
    }
  }
  for (const auto& [cell, unused] : faces.items())
    if (!X->find(cell)) throw SimplicialError("presentation: faces given for unknown cell '" + cell + "'");
  if (j.contains("basepoint")) {
    auto ref = X->find(j["basepoint"].get<std::string>());
    if (!ref || ref->first != 0) throw SimplicialError("presentation: basepoint is not a vertex");
    X->set_basepoint(ref->second);
  }
  return X;
}

std::string dump_presentation(const SimplicialSet& X) { return to_presentation(X).dump(); }

SSetPtr parse_presentation(const std::string& text, const std::string& name) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SimplicialError(std::string("presentation: invalid JSON: ") + e.what());
  }
  return from_presentation(j, name);
}

Json to_pair_presentation(const Pair& P) {
  Json out = Json::object();
  out["ambient"] = to_presentation(*P.ambient());
  out["subcomplex"] = P.sub_names();
  return out;
}

PairPtr from_pair_presentation(const Json& j, const std::string& name) {
  if (!j.contains("ambient")) return Pair::absolute(from_presentation(j, name));
  auto X = from_presentation(j["ambient"], name);
  std::vector<std::string> names;
  if (j.contains("subcomplex"))
    for (const auto& n : j["subcomplex"]) names.push_back(n.get<std::string>());
  return Pair::from_names(X, names);
}

}  // namespace diffcoh
