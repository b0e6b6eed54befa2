#include "diffcoh/cohomology.hpp"

namespace diffcoh {

AbelianGroupPresentation cohomology_from_coboundaries(const IntMatrix& incoming, const IntMatrix& outgoing,
                                                      std::size_t dimension) {
  if (incoming.rows() != dimension || outgoing.cols() != dimension)
    throw LinalgError("cohomology_from_coboundaries: shapes do not match the cochain dimension");
  AbelianGroupPresentation g;
  const auto inv_in = smith_invariants(incoming);
  const std::size_t rank_out = rational_rank(to_rational(outgoing));
  for (const auto& d : inv_in)
    if (d > 1) g.torsion.push_back(d);
  g.rank = dimension - rank_out - inv_in.size();
  return g;
}

}  // namespace diffcoh
