#pragma once

#include "diffcoh/core.hpp"
#include "diffcoh/presentation.hpp"

namespace diffcoh {

/// {"<basis>": {"<cell>": "p/q", ...}, ...}, nonzero values only.
Json cochain_to_json(const Cochain& u);
Cochain cochain_from_json(const Json& j, PairPtr base, CoeffPtr coeffs, int degree);

/// {"<basis>": {"<cell>": "<local form>", ...}, ...}, nonzero components only.
Json form_to_json(const PLForm& a);
PLForm form_from_json(const Json& j, PairPtr base, CoeffPtr coeffs, int degree);

/// {"pair", "coefficients", "degree", "c", "omega", "h"}.
Json triple_to_json(const Triple& t);
/// Reads onto `base` when given (the embedded pair must match it cell for cell), else onto the embedded pair.
Triple triple_from_json(const Json& j, PairPtr base = nullptr);

/// {"epsilon", "b", "k"}.
Json witness_to_json(const EquivalenceWitness& w);
EquivalenceWitness witness_from_json(const Json& j, PairPtr base, CoeffPtr coeffs, int degree);

/// {"kind", "cell", "basis", "dim", "cycle", "pairing"}.
Json certificate_to_json(const DistinctCertificate& c, const PairPtr& base, const CoeffPtr& coeffs);
DistinctCertificate certificate_from_json(const Json& j, const PairPtr& base, const CoeffPtr& coeffs);

}  // namespace diffcoh
