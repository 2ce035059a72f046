#pragma once

#include <span>
#include <string>

#include "bajra/c4function.hpp"

namespace bajra::builtins {

// Generators and weights with hand-written closed-form derivatives.  These
// are deliberately independent of the GammaSolution machinery so the two
// paths can cross-check each other in tests.

C4Function identity(const Interval& domain);
C4Function tangent(const Interval& domain);
C4Function hyperbolic_tangent(const Interval& domain);
C4Function exponential(const Interval& domain);
C4Function cubic(const Interval& domain);  // x + x^3, the stock non-example

// (a x + b) / (c x + d).  Rejects ad = bc (DegeneratePair) and a pole
// inside the domain (NotPositive on the denominator sign change).
C4Function mobius(double a, double b, double c, double d, const Interval& domain);

C4Function cosine(const Interval& domain);
C4Function hyperbolic_cosine(const Interval& domain);

// Weight factories for the split-function kinds the CLI accepts.
C4Function constant_weight(double c, const Interval& domain);
C4Function exp_weight(double lambda, const Interval& domain);
C4Function quadratic_weight(double mu, const Interval& domain);  // 1 + mu x^2

// Name registry: "identity" | "tan" | "tanh" | "exp" | "cubic"
// | "mobius" (params a b c d).  SpecRejected for anything else.
C4Function by_name(const std::string& name, const Interval& domain,
                   std::span<const double> params = {});

}  // namespace bajra::builtins
