#include <algorithm>
#include <mutex>

#include "diffcoh/simplicial.hpp"

namespace diffcoh {

namespace {

Monotone surjection_from_set(int k, const std::vector<bool>& J) {
  Monotone eta(k + 1);
  int drop = 0;
  for (int t = 0; t <= k; ++t) {
    eta[t] = t - drop;
    if (t < k && J[t]) ++drop;
  }
  return eta;
}

std::vector<bool> degeneracy_set(const Monotone& eta) {
  std::vector<bool> J(eta.size() - 1);
  for (std::size_t j = 0; j + 1 < eta.size(); ++j) J[j] = eta[j] == eta[j + 1];
  return J;
}

// All subsets of size r of the positions where `allowed` is true, as bool masks.
void subsets(const std::vector<bool>& allowed, int r, std::vector<std::vector<bool>>& out) {
  std::vector<int> pos;
  for (std::size_t i = 0; i < allowed.size(); ++i)
    if (allowed[i]) pos.push_back(static_cast<int>(i));
  if (r < 0 || r > static_cast<int>(pos.size())) return;
  std::vector<bool> pick(pos.size(), false);
  std::fill(pick.begin(), pick.begin() + r, true);
  do {
    std::vector<bool> mask(allowed.size(), false);
    for (std::size_t i = 0; i < pos.size(); ++i)
      if (pick[i]) mask[pos[i]] = true;
    out.push_back(std::move(mask));
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

std::string label(const SimplicialSet& X, const Simplex& s) {
  std::string w = degeneracy_word(s.eta);
  const std::string& n = X.cell_name(s.cell_dim(), s.cell);
  return w.empty() ? n : "s" + w + " " + n;
}

}  // namespace

Product::Product(SSetPtr left, SSetPtr right) : left_(std::move(left)), right_(std::move(right)) {
  auto S = std::make_shared<SimplicialSet>("(" + left_->name() + ")x(" + right_->name() + ")");
  const int P = left_->dimension(), Q = right_->dimension();
  const int top = (P < 0 || Q < 0) ? -1 : P + Q;
  components_.resize(top + 1);
  lookup_.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    for (int p = 0; p <= std::min(k, P); ++p)
      for (int q = std::max(0, k - p); q <= std::min(k, Q); ++q) {
        std::vector<std::vector<bool>> J1s;
        subsets(std::vector<bool>(k, true), k - p, J1s);
        for (std::size_t x = 0; x < left_->count(p); ++x)
          for (std::size_t y = 0; y < right_->count(q); ++y)
            for (const auto& J1 : J1s) {
              std::vector<bool> free(k);
              for (int j = 0; j < k; ++j) free[j] = !J1[j];
              std::vector<std::vector<bool>> J2s;
              subsets(free, k - q, J2s);
              for (const auto& J2 : J2s) {
                Simplex a{surjection_from_set(k, J1), static_cast<int>(x)};
                Simplex b{surjection_from_set(k, J2), static_cast<int>(y)};
                std::vector<Simplex> faces;
                for (int i = 0; k > 0 && i <= k; ++i) {
                  Simplex fa = left_->face(a, i), fb = right_->face(b, i);
                  // lower-dimensional cells are already registered
                  std::vector<bool> Ja = degeneracy_set(fa.eta), Jb = degeneracy_set(fb.eta), J(k - 1);
                  for (int j = 0; j + 1 < k; ++j) J[j] = Ja[j] && Jb[j];
                  Monotone rho = surjection_from_set(k - 1, J);
                  const int r = rho.back();
                  Monotone ea(r + 1), eb(r + 1);
                  for (int t = 0; t < k; ++t) {
                    ea[rho[t]] = fa.eta[t];
                    eb[rho[t]] = fb.eta[t];
                  }
                  auto it = lookup_[r].find({Simplex{ea, fa.cell}, Simplex{eb, fb.cell}});
                  if (it == lookup_[r].end()) throw SimplicialError("product: face lookup failed");
                  faces.push_back(Simplex{rho, it->second});
                }
                const std::string name = "(" + label(*left_, a) + "," + label(*right_, b) + ")";
                int idx = S->add_cell(k, name, std::move(faces));
                lookup_[k][{a, b}] = idx;
                components_[k].push_back({a, b});
              }
            }
      }
  }
  if (left_->basepoint() && right_->basepoint())
    S->set_basepoint(lookup_[0].at({nondegenerate(0, *left_->basepoint()), nondegenerate(0, *right_->basepoint())}));
  set_ = S;

  std::vector<std::vector<Simplex>> im1(top + 1), im2(top + 1);
  for (int k = 0; k <= top; ++k)
    for (const auto& [a, b] : components_[k]) {
      im1[k].push_back(a);
      im2[k].push_back(b);
    }
  pr1_ = SimplicialMap(set_, left_, std::move(im1));
  pr2_ = SimplicialMap(set_, right_, std::move(im2));
}

Simplex Product::pair(const Simplex& a, const Simplex& b) const {
  if (a.dim() != b.dim()) throw SimplicialError("product pair: dimension mismatch");
  const int k = a.dim();
  std::vector<bool> Ja = degeneracy_set(a.eta), Jb = degeneracy_set(b.eta), J(k);
  for (int j = 0; j < k; ++j) J[j] = Ja[j] && Jb[j];
  Monotone rho = surjection_from_set(k, J);
  const int r = rho.back();
  Monotone ea(r + 1), eb(r + 1);
  for (int t = 0; t <= k; ++t) {
    ea[rho[t]] = a.eta[t];
    eb[rho[t]] = b.eta[t];
  }
  auto it = lookup_.at(r).find({Simplex{ea, a.cell}, Simplex{eb, b.cell}});
  if (it == lookup_[r].end()) throw SimplicialError("product pair: no such cell");
  return Simplex{rho, it->second};
}

ProductPtr product(SSetPtr X, SSetPtr Y) {
  // Memoized so that repeated products share cells and maps compose by identity.
  static std::mutex mu;
  static std::map<std::pair<const SimplicialSet*, const SimplicialSet*>, ProductPtr> cache;
  const auto key = std::make_pair(X.get(), Y.get());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto P = std::make_shared<const Product>(std::move(X), std::move(Y));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, P).first->second;
}

SimplicialMap pairing(const ProductPtr& P, const SimplicialMap& f, const SimplicialMap& g) {
  if (f.source() != g.source() || f.target() != P->left() || g.target() != P->right())
    throw SimplicialError("pairing: maps do not match the product");
  const auto& Z = f.source();
  std::vector<std::vector<Simplex>> images(Z->dimension() + 1);
  for (int d = 0; d <= Z->dimension(); ++d)
    for (std::size_t i = 0; i < Z->count(d); ++i)
      images[d].push_back(P->pair(f.image(d, static_cast<int>(i)), g.image(d, static_cast<int>(i))));
  return SimplicialMap(Z, P->set(), std::move(images));
}

SimplicialMap product_map(const ProductPtr& src, const ProductPtr& dst, const SimplicialMap& f,
                          const SimplicialMap& g) {
  return pairing(dst, compose(f, src->pr1()), compose(g, src->pr2()));
}

SimplicialMap diagonal(const ProductPtr& XX) {
  if (XX->left() != XX->right()) throw SimplicialError("diagonal: factors differ");
  auto id = SimplicialMap::identity(XX->left());
  return pairing(XX, id, id);
}

SimplicialMap twist(const ProductPtr& P, const ProductPtr& Q) {
  return pairing(Q, P->pr2(), P->pr1());
}

SimplicialMap associator(const ProductPtr& AB, const ProductPtr& AB_C, const ProductPtr& BC,
                         const ProductPtr& A_BC) {
  if (AB_C->left() != AB->set() || A_BC->right() != BC->set())
    throw SimplicialError("associator: products do not match");
  auto a = compose(AB->pr1(), AB_C->pr1());
  auto b = compose(AB->pr2(), AB_C->pr1());
  auto bc = pairing(BC, b, AB_C->pr2());
  return pairing(A_BC, a, bc);
}

SimplicialMap constant_map(SSetPtr X, SSetPtr Y, int vertex) {
  std::vector<std::vector<Simplex>> images(X->dimension() + 1);
  for (int d = 0; d <= X->dimension(); ++d)
    images[d].assign(X->count(d), Simplex{Monotone(d + 1, 0), vertex});
  return SimplicialMap(X, Y, std::move(images));
}

Cylinder cylinder_over(SSetPtr A, SSetPtr X, int vertex0, int vertex1) {
  Cylinder c;
  c.product = product(A, X);
  auto id = SimplicialMap::identity(X);
  c.i0 = pairing(c.product, constant_map(X, A, vertex0), id);
  c.i1 = pairing(c.product, constant_map(X, A, vertex1), id);
  c.pr = c.product->pr2();
  return c;
}

Cylinder cylinder(SSetPtr X) { return cylinder_over(builtins::simplex(1), std::move(X), 0, 1); }

}  // namespace diffcoh
