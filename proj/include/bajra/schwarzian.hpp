#pragma once

#include "bajra/c4function.hpp"

namespace bajra {

// S(f) = f'''/f' - (3/2) (f''/f')^2.  VanishingDerivative where |f'| is too
// small to divide by.
double schwarzian(const C4Function& f, double x);

// d/dx S(f) = f''''/f' - 4 f''' f'' / f'^2 + 3 (f''/f')^3.
// Written out so only exact derivatives of f enter (no differencing of S).
double schwarzian_derivative(const C4Function& f, double x);

}  // namespace bajra
