#include <mutex>

#include "diffcoh/simplicial.hpp"

namespace diffcoh::builtins {

namespace {

std::string subset_name(unsigned mask, int n) {
  std::string s;
  for (int i = 0; i <= n; ++i)
    if (mask & (1u << i)) s.push_back(static_cast<char>('0' + i));
  return s;
}

// Δⁿ or its boundary, cells named by their vertex lists.
SSetPtr simplex_like(int n, bool boundary) {
  if (n < 0 || n > 9) throw SimplicialError("simplex dimension must be between 0 and 9");
  auto S = std::make_shared<SimplicialSet>(boundary ? "boundary" + std::to_string(n) : "simplex" + std::to_string(n));
  std::map<unsigned, int> index;
  const int top = boundary ? n - 1 : n;
  for (int k = 0; k <= top; ++k)
    for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
      if (__builtin_popcount(mask) != k + 1) continue;
      std::vector<Simplex> faces;
      if (k > 0) {
        std::vector<int> verts;
        for (int i = 0; i <= n; ++i)
          if (mask & (1u << i)) verts.push_back(i);
        for (int j = 0; j <= k; ++j) faces.push_back(nondegenerate(k - 1, index.at(mask & ~(1u << verts[j]))));
      }
      index[mask] = S->add_cell(k, subset_name(mask, n), std::move(faces));
    }
  if (S->count(0) > 0) S->set_basepoint(0);
  return S;
}

Simplex v(int cell) { return nondegenerate(0, cell); }
Simplex e(int cell) { return nondegenerate(1, cell); }

}  // namespace

SSetPtr point() {
  static const SSetPtr P = simplex_like(0, false);
  return P;
}

SSetPtr simplex(int n) {
  static std::mutex mu;
  static std::map<int, SSetPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& s = cache[n];
  if (!s) s = n == 0 ? point() : simplex_like(n, false);
  return s;
}

SSetPtr simplex_boundary(int n) {
  static std::mutex mu;
  static std::map<int, SSetPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& s = cache[n];
  if (!s) s = simplex_like(n, true);
  return s;
}

SSetPtr circle() {
  static const SSetPtr C = [] {
    auto S = std::make_shared<SimplicialSet>("circle");
    S->add_cell(0, "v", {});
    S->add_cell(1, "e", {v(0), v(0)});
    S->set_basepoint(0);
    return S;
  }();
  return C;
}

SSetPtr circle_subdivided() {
  static const SSetPtr C = [] {
    auto S = std::make_shared<SimplicialSet>("circle2");
    S->add_cell(0, "v0", {});
    S->add_cell(0, "v1", {});
    S->add_cell(1, "a", {v(1), v(0)});
    S->add_cell(1, "b", {v(0), v(1)});
    S->set_basepoint(0);
    return S;
  }();
  return C;
}

SSetPtr torus() {
  static const SSetPtr T = product(circle(), circle())->set();
  return T;
}

SSetPtr rp2() {
  static const SSetPtr R = [] {
    auto S = std::make_shared<SimplicialSet>("rp2");
    S->add_cell(0, "v", {});
    S->add_cell(0, "w", {});
    S->add_cell(1, "a", {v(1), v(0)});
    S->add_cell(1, "b", {v(1), v(0)});
    S->add_cell(1, "c", {v(1), v(1)});
    S->add_cell(2, "T1", {e(2), e(1), e(0)});
    S->add_cell(2, "T2", {e(2), e(0), e(1)});
    S->set_basepoint(0);
    return S;
  }();
  return R;
}

SSetPtr klein() {
  static const SSetPtr K = [] {
    auto S = std::make_shared<SimplicialSet>("klein");
    S->add_cell(0, "v", {});
    S->add_cell(1, "a", {v(0), v(0)});
    S->add_cell(1, "b", {v(0), v(0)});
    S->add_cell(1, "c", {v(0), v(0)});
    S->add_cell(2, "T1", {e(2), e(0), e(1)});
    S->add_cell(2, "T2", {e(1), e(2), e(0)});
    S->set_basepoint(0);
    return S;
  }();
  return K;
}

SimplicialMap interval_to_circle() {
  return SimplicialMap(simplex(1), circle(), {{v(0), v(0)}, {e(0)}});
}

CirclePair circle_pair(SSetPtr M) {
  static std::mutex mu;
  static std::map<const SimplicialSet*, CirclePair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M.get());
  if (it != cache.end()) return it->second;
  CirclePair cp;
  cp.product = product(circle(), M);
  const auto& S = cp.product->set();
  std::vector<std::vector<bool>> mask(S->dimension() + 1);
  for (int d = 0; d <= S->dimension(); ++d)
    for (std::size_t i = 0; i < S->count(d); ++i)
      mask[d].push_back(cp.product->components(d, static_cast<int>(i)).first.cell_dim() == 0);
  cp.pair = intern_pair(S, std::move(mask));
  cache.emplace(M.get(), cp);
  return cp;
}

SSetPtr by_name(const std::string& name) {
  auto numbered = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
    const std::string rest = name.substr(prefix.size());
    if (rest.size() > 1 || rest[0] < '0' || rest[0] > '9') return std::nullopt;
    return rest[0] - '0';
  };
  if (name == "point") return point();
  if (name == "circle") return circle();
  if (name == "circle2") return circle_subdivided();
  if (name == "torus") return torus();
  if (name == "rp2") return rp2();
  if (name == "klein") return klein();
  if (auto n = numbered("simplex")) return simplex(*n);
  if (auto n = numbered("boundary")) return simplex_boundary(*n);
  throw SimplicialError("unknown built-in complex '" + name + "'");
}

PairPtr pair_by_name(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, PairPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
  }
  PairPtr P;
  const auto slash = name.find('/');
  if (slash == std::string::npos) {
    P = Pair::absolute(by_name(name));
  } else if (name == "torus/circle") {
    P = circle_pair(circle()).pair;
  } else {
    const std::string amb = name.substr(0, slash), sub = name.substr(slash + 1);
    if (amb.rfind("simplex", 0) != 0 || sub != "boundary" + amb.substr(7))
      throw SimplicialError("unknown built-in pair '" + name + "'");
    auto X = by_name(amb);
    std::vector<std::string> names;
    auto B = by_name(sub);
    for (int d = 0; d <= B->dimension(); ++d)
      for (std::size_t i = 0; i < B->count(d); ++i) names.push_back(B->cell_name(d, static_cast<int>(i)));
    P = Pair::from_names(X, names);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(name, P).first->second;
}

}  // namespace diffcoh::builtins
