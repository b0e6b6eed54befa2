#include "diffcoh/simplicial.hpp"

namespace diffcoh {

SimplicialMap::SimplicialMap(SSetPtr source, SSetPtr target, std::vector<std::vector<Simplex>> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  images_.resize(source_->dimension() + 1);
  for (int d = 0; d <= source_->dimension(); ++d) {
    if (images_[d].size() != source_->count(d))
      throw SimplicialError("simplicial map: wrong number of images in dimension " + std::to_string(d));
    for (std::size_t i = 0; i < images_[d].size(); ++i) {
      const Simplex& y = images_[d][i];
      if (y.dim() != d || y.cell < 0 || static_cast<std::size_t>(y.cell) >= target_->count(y.cell_dim()))
        throw SimplicialError("simplicial map: invalid image for cell '" + source_->cell_name(d, i) + "'");
      for (int k = 0; d > 0 && k <= d; ++k) {
        if (apply(source_->cell_face(d, i, k)) != target_->face(y, k))
          throw SimplicialError("simplicial map: does not commute with d" + std::to_string(k) + " on cell '" +
                                source_->cell_name(d, i) + "'");
      }
    }
  }
}

SimplicialMap SimplicialMap::identity(SSetPtr X) {
  std::vector<std::vector<Simplex>> images(X->dimension() + 1);
  for (int d = 0; d <= X->dimension(); ++d)
    for (std::size_t i = 0; i < X->count(d); ++i) images[d].push_back(nondegenerate(d, static_cast<int>(i)));
  return SimplicialMap(X, X, std::move(images));
}

Simplex SimplicialMap::apply(const Simplex& x) const {
  return target_->apply(images_[x.cell_dim()][x.cell], x.eta);
}

bool SimplicialMap::preserves_basepoint() const {
  auto a = source_->basepoint();
  auto b = target_->basepoint();
  if (!a || !b) return true;
  return images_[0][*a].cell == *b;
}

bool SimplicialMap::operator==(const SimplicialMap& other) const {
  return source_ == other.source_ && target_ == other.target_ && images_ == other.images_;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (f.target() != g.source()) throw SimplicialError("compose: maps are not composable");
  const auto& X = f.source();
  std::vector<std::vector<Simplex>> images(X->dimension() + 1);
  for (int d = 0; d <= X->dimension(); ++d)
    for (std::size_t i = 0; i < X->count(d); ++i) images[d].push_back(g.apply(f.image(d, static_cast<int>(i))));
  return SimplicialMap(X, g.target(), std::move(images));
}

}  // namespace diffcoh
