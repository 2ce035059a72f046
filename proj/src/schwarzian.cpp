#include "bajra/schwarzian.hpp"

#include <cmath>
#include <string>

#include "bajra/errors.hpp"

namespace bajra {
namespace {

double checked_f1(const C4Function& f, double x) {
    const double f1 = f.eval(1, x);
    if (std::fabs(f1) < 1e-14)
        throw VanishingDerivative("schwarzian: |f'(x)| < 1e-14 at x = " + std::to_string(x));
    return f1;
}

}  // namespace

double schwarzian(const C4Function& f, double x) {
    const double f1 = checked_f1(f, x);
    const double f2 = f.eval(2, x);
    const double f3 = f.eval(3, x);
    const double r = f2 / f1;
    return f3 / f1 - 1.5 * r * r;
}

double schwarzian_derivative(const C4Function& f, double x) {
    const double f1 = checked_f1(f, x);
    const double f2 = f.eval(2, x);
    const double f3 = f.eval(3, x);
    const double f4 = f.eval(4, x);
    const double r = f2 / f1;
    return f4 / f1 - 4.0 * f3 * f2 / (f1 * f1) + 3.0 * r * r * r;
}

}  // namespace bajra
