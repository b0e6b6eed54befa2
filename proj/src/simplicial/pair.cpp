#include <map>
#include <mutex>

#include "diffcoh/simplicial.hpp"

namespace diffcoh {

Pair::Pair(SSetPtr ambient, std::vector<std::vector<bool>> in_sub)
    : ambient_(std::move(ambient)), in_sub_(std::move(in_sub)) {
  const int top = ambient_->dimension();
  in_sub_.resize(top + 1);
  relative_.resize(top + 1);
  sub_index_.resize(top + 1);
  auto S = std::make_shared<SimplicialSet>(ambient_->name() + "|sub");
  std::vector<std::vector<Simplex>> images(top + 1);
  for (int d = 0; d <= top; ++d) {
    in_sub_[d].resize(ambient_->count(d), false);
    sub_index_[d].assign(ambient_->count(d), -1);
    for (std::size_t i = 0; i < ambient_->count(d); ++i) {
      const int ii = static_cast<int>(i);
      if (!in_sub_[d][i]) {
        relative_[d].push_back(ii);
        continue;
      }
      std::vector<Simplex> faces;
      for (int k = 0; d > 0 && k <= d; ++k) {
        const Simplex& f = ambient_->cell_face(d, ii, k);
        if (!in_sub_[f.cell_dim()][f.cell])
          throw SimplicialError("pair: subcomplex is not closed under faces at cell '" + ambient_->cell_name(d, ii) +
                                "'");
        faces.push_back(Simplex{f.eta, sub_index_[f.cell_dim()][f.cell]});
      }
      sub_index_[d][i] = S->add_cell(d, ambient_->cell_name(d, ii), std::move(faces));
      images[d].push_back(nondegenerate(d, ii));
    }
  }
  if (auto bp = ambient_->basepoint(); bp && in_sub_[0][*bp]) S->set_basepoint(sub_index_[0][*bp]);
  images.resize(S->dimension() + 1);
  sub_ = S;
  inclusion_ = SimplicialMap(sub_, ambient_, std::move(images));
}

PairPtr intern_pair(SSetPtr X, std::vector<std::vector<bool>> mask) {
  static std::mutex mu;
  static std::map<std::pair<const SimplicialSet*, std::vector<std::vector<bool>>>, PairPtr> memo;
  mask.resize(X->dimension() + 1);
  for (int d = 0; d <= X->dimension(); ++d) mask[d].resize(X->count(d), false);
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(X.get(), mask);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  auto P = std::make_shared<const Pair>(X, std::move(mask));
  memo.emplace(std::move(key), P);
  return P;
}

PairPtr pair_union(const PairPtr& a, const PairPtr& b) {
  if (a->ambient() != b->ambient()) throw SimplicialError("pair_union: pairs live on different sets");
  if (a == b || b->is_absolute()) return a;
  if (a->is_absolute()) return b;
  const auto& X = a->ambient();
  std::vector<std::vector<bool>> mask(X->dimension() + 1);
  for (int d = 0; d <= X->dimension(); ++d)
    for (std::size_t i = 0; i < X->count(d); ++i)
      mask[d].push_back(a->in_sub(d, static_cast<int>(i)) || b->in_sub(d, static_cast<int>(i)));
  return intern_pair(X, std::move(mask));
}

std::shared_ptr<const Pair> Pair::absolute(SSetPtr X) {
  std::vector<std::vector<bool>> none(X->dimension() + 1);
  for (int d = 0; d <= X->dimension(); ++d) none[d].assign(X->count(d), false);
  return intern_pair(std::move(X), std::move(none));
}

std::shared_ptr<const Pair> Pair::from_names(SSetPtr X, const std::vector<std::string>& names) {
  std::vector<std::vector<bool>> mask(X->dimension() + 1);
  for (int d = 0; d <= X->dimension(); ++d) mask[d].assign(X->count(d), false);
  for (const auto& n : names) {
    auto ref = X->find(n);
    if (!ref) throw SimplicialError("pair: unknown cell '" + n + "'");
    mask[ref->first][ref->second] = true;
  }
  return intern_pair(std::move(X), std::move(mask));
}

bool Pair::is_absolute() const { return sub_->dimension() < 0; }

std::vector<std::string> Pair::sub_names() const {
  std::vector<std::string> out;
  for (int d = 0; d <= sub_->dimension(); ++d)
    for (std::size_t i = 0; i < sub_->count(d); ++i) out.push_back(sub_->cell_name(d, static_cast<int>(i)));
  return out;
}

PairPtr product_pair(const ProductPtr& P, const PairPtr& XA, const PairPtr& YB) {
  if (XA->ambient() != P->left() || YB->ambient() != P->right())
    throw SimplicialError("product_pair: pairs do not match the product factors");
  const auto& S = P->set();
  std::vector<std::vector<bool>> mask(S->dimension() + 1);
  for (int d = 0; d <= S->dimension(); ++d)
    for (std::size_t i = 0; i < S->count(d); ++i) {
      const auto& [a, b] = P->components(d, static_cast<int>(i));
      mask[d].push_back(XA->in_sub(a.cell_dim(), a.cell) || YB->in_sub(b.cell_dim(), b.cell));
    }
  return intern_pair(S, std::move(mask));
}

bool maps_pair(const SimplicialMap& f, const PairPtr& XA, const PairPtr& YB) {
  if (f.source() != XA->ambient() || f.target() != YB->ambient()) return false;
  const auto& X = XA->ambient();
  for (int d = 0; d <= X->dimension(); ++d)
    for (std::size_t i = 0; i < X->count(d); ++i) {
      if (!XA->in_sub(d, static_cast<int>(i))) continue;
      const Simplex& y = f.image(d, static_cast<int>(i));
      if (!YB->in_sub(y.cell_dim(), y.cell)) return false;
    }
  return true;
}

}  // namespace diffcoh
