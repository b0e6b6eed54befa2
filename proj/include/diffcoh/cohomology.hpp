#pragma once

#include "diffcoh/linalg.hpp"

namespace diffcoh {

/// H^d of an integral cochain complex given the coboundary into degree d
/// (dimension x dim C^{d-1}) and out of degree d (dim C^{d+1} x dimension).
AbelianGroupPresentation cohomology_from_coboundaries(const IntMatrix& incoming, const IntMatrix& outgoing,
                                                      std::size_t dimension);

}  // namespace diffcoh
