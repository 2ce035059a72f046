#pragma once

#include <string>
#include <vector>

#include "bajra/mean.hpp"

namespace bajra {

// Stock means for diagonal verification, addressable by name:
//   "arithmetic"    identity generator, unit weights, on (-1, 1)
//   "tan-cos"       f = tan, p = (cos, cos), on (-1.2, 1.2)
//   "exp-weight"    f = identity, p = (e^x, 1), on (-1, 1)
//   "mobius-quad"   f = (2x+1)/(x+3), p = (1 + x^2/4, 1), on (-1, 1)
//   "tanh-cosh"     f = tanh, p = (cosh, cosh), on (-1.5, 1.5)
//   "gamma-quarter" f-side mean of a random gamma = 0.25 family
//                   (seeded; BAJRA_SEED overrides)
// SpecRejected for unknown names.
BajraktarevicMean builtin_mean(const std::string& name);

const std::vector<std::string>& builtin_mean_names();

}  // namespace bajra
