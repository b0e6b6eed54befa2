#include <algorithm>

#include "diffcoh/simplicial.hpp"

namespace diffcoh {

Monotone identity_map(int n) {
  Monotone m(n + 1);
  for (int i = 0; i <= n; ++i) m[i] = i;
  return m;
}

Simplex nondegenerate(int dim, int cell) { return Simplex{identity_map(dim), cell}; }

Monotone compose(const Monotone& outer, const Monotone& inner) {
  Monotone r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer.at(inner[i]);
  return r;
}

Monotone coface(int n, int i) {
  Monotone m(n);
  for (int t = 0; t < n; ++t) m[t] = t < i ? t : t + 1;
  return m;
}

Monotone codegeneracy(int n, int i) {
  Monotone m(n + 2);
  for (int t = 0; t <= n + 1; ++t) m[t] = t <= i ? t : t - 1;
  return m;
}

namespace {

bool is_surjection(const Monotone& eta) {
  if (eta.empty() || eta[0] != 0) return false;
  for (std::size_t t = 1; t < eta.size(); ++t) {
    int step = eta[t] - eta[t - 1];
    if (step != 0 && step != 1) return false;
  }
  return true;
}

}  // namespace

std::string degeneracy_word(const Monotone& eta) {
  std::string w;
  for (int j = static_cast<int>(eta.size()) - 2; j >= 0; --j)
    if (eta[j] == eta[j + 1]) {
      if (j > 9) throw SimplicialError("degeneracy index above 9 cannot be written as a word");
      w.push_back(static_cast<char>('0' + j));
    }
  return w;
}

Monotone surjection_from_word(const std::string& word, int cell_dim) {
  Monotone eta = identity_map(cell_dim);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < '0' || *it > '9') throw SimplicialError("invalid character in degeneracy word \"" + word + "\"");
    int i = *it - '0';
    int n = static_cast<int>(eta.size()) - 1;
    if (i > n) throw SimplicialError("degeneracy s" + std::to_string(i) + " out of range in word \"" + word + "\"");
    eta = compose(eta, codegeneracy(n, i));
  }
  return eta;
}

std::size_t SimplicialSet::total_cells() const {
  std::size_t n = 0;
  for (const auto& c : cells_) n += c.size();
  return n;
}

std::vector<int> SimplicialSet::euler_counts() const {
  std::vector<int> out;
  for (const auto& c : cells_) out.push_back(static_cast<int>(c.size()));
  return out;
}

std::optional<std::pair<int, int>> SimplicialSet::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void SimplicialSet::set_basepoint(int vertex) {
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= count(0))
    throw SimplicialError("basepoint is not a vertex");
  basepoint_ = vertex;
}

Simplex SimplicialSet::apply_to_cell(int cell_dim, int cell, const Monotone& phi) const {
  if (is_surjection(phi) && phi.back() == cell_dim) return Simplex{phi, cell};
  std::vector<bool> hit(cell_dim + 1, false);
  for (int v : phi) hit[v] = true;
  int s = cell_dim;
  while (hit[s]) --s;
  Monotone reduced(phi.size());
  for (std::size_t t = 0; t < phi.size(); ++t) reduced[t] = phi[t] > s ? phi[t] - 1 : phi[t];
  const Simplex& f = cells_[cell_dim][cell].faces[s];
  return apply_to_cell(f.cell_dim(), f.cell, compose(f.eta, reduced));
}

Simplex SimplicialSet::apply(const Simplex& x, const Monotone& theta) const {
  for (int v : theta)
    if (v < 0 || v > x.dim()) throw SimplicialError("apply: operator does not match simplex dimension");
  for (std::size_t t = 1; t < theta.size(); ++t)
    if (theta[t] < theta[t - 1]) throw SimplicialError("apply: operator is not monotone");
  return apply_to_cell(x.cell_dim(), x.cell, compose(x.eta, theta));
}

Simplex SimplicialSet::face(const Simplex& x, int i) const {
  if (x.dim() == 0) throw SimplicialError("face of a vertex");
  return apply(x, coface(x.dim(), i));
}

Simplex SimplicialSet::degeneracy(const Simplex& x, int i) const {
  return apply(x, codegeneracy(x.dim(), i));
}

int SimplicialSet::add_cell(int dim, const std::string& name, std::vector<Simplex> faces) {
  if (dim < 0) throw SimplicialError("cell '" + name + "': negative dimension");
  if (by_name_.count(name)) throw SimplicialError("cell '" + name + "': duplicate name");
  if (dim > dimension() + 1) throw SimplicialError("cell '" + name + "': no cells of dimension " + std::to_string(dim - 1));
  const std::size_t expected = dim == 0 ? 0 : static_cast<std::size_t>(dim + 1);
  if (faces.size() != expected)
    throw SimplicialError("cell '" + name + "': dimension mismatch, expected " + std::to_string(expected) + " faces");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Simplex& f = faces[i];
    if (f.dim() != dim - 1 || !is_surjection(f.eta))
      throw SimplicialError("cell '" + name + "': dimension mismatch in face " + std::to_string(i));
    if (f.cell < 0 || static_cast<std::size_t>(f.cell) >= count(f.cell_dim()))
      throw SimplicialError("cell '" + name + "': dangling face reference in face " + std::to_string(i));
  }
  for (int j = 1; j <= dim; ++j)
    for (int i = 0; i < j; ++i) {
      if (dim < 2) continue;
      if (face(faces[j], i) != face(faces[i], j - 1))
        throw SimplicialError("cell '" + name + "': identity violation d" + std::to_string(i) + "d" +
                              std::to_string(j) + " != d" + std::to_string(j - 1) + "d" + std::to_string(i));
    }
  if (dim > dimension()) cells_.emplace_back();
  const int index = static_cast<int>(cells_[dim].size());
  cells_[dim].push_back(Cell{name, std::move(faces), {}, {}, {}});
  by_name_[name] = {dim, index};

  Cell& c = cells_[dim][index];
  for (int p = 0; p <= dim; ++p) {
    Monotone fr(p + 1), bk(p + 1);
    for (int t = 0; t <= p; ++t) {
      fr[t] = t;
      bk[t] = dim - p + t;
    }
    c.front.push_back(apply_to_cell(dim, index, fr));
    c.back.push_back(apply_to_cell(dim, index, bk));
  }
  for (int j = 0; j <= dim; ++j) c.vertices.push_back(apply_to_cell(dim, index, Monotone{j}).cell);
  return index;
}

}  // namespace diffcoh
