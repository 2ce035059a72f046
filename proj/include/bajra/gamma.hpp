#pragma once

#include "bajra/c4function.hpp"
#include "bajra/interval.hpp"

namespace bajra {

// Fundamental solutions of F'' = gamma * F normalized by
//   S(0) = 0, S'(0) = 1   and   C(0) = 1, C'(0) = 0.
// Closed forms (sin/linear/sinh branches) away from gamma*x^2 = 0, a short
// power series across the switchover so the gamma -> 0 seam is smooth.
double eval_sgamma(double gamma, double x);
double eval_cgamma(double gamma, double x);

// F = a*S_gamma + b*C_gamma, the general solution of F'' = gamma*F, carried
// around with the interval on which a family wants to use it.  Derivatives of
// any order come from the coefficient recurrence (a, b) -> (gamma*b, a).
class GammaSolution {
public:
    GammaSolution(double gamma, double a, double b, Interval domain);

    double gamma() const noexcept { return gamma_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    const Interval& domain() const noexcept { return domain_; }

    double value(double x) const;
    double derivative(int order, double x) const;  // order >= 0

    GammaSolution restricted(const Interval& sub) const;

    // View as a C4Function (domain-checked evaluation).
    C4Function as_function() const;

private:
    double gamma_;
    double a_;
    double b_;
    Interval domain_;
};

// W(u, v) = u'v - uv'.  Constant in x for two solutions of the same
// equation; equals a_u * b_v - b_u * a_v in coefficients.
double wronskian(const GammaSolution& u, const GammaSolution& v);

// Independence test with the scale of the coefficients factored in.
bool independent(const GammaSolution& u, const GammaSolution& v);

// Pair of solutions of the same equation with the Wronskian cached.
// make() rejects mismatched gamma or domains and dependent pairs.
struct WronskianPair {
    GammaSolution numerator;
    GammaSolution denominator;
    double wronskian_value;

    static WronskianPair make(const GammaSolution& u, const GammaSolution& v);
};

// u/v as a C4Function on v's domain.  Derivatives through the quotient
// recursion; exactness of d(u/v) = W/v^2 etc. is covered by tests.
C4Function ratio_function(const GammaSolution& u, const GammaSolution& v);

// Maximal subinterval of v.domain() containing anchor on which v > 0.
// Closed-form zero bracketing for the oscillatory branch, scan + bisection
// otherwise.  AnchorNotPositive if v(anchor) <= 0.
Interval positive_subinterval(const GammaSolution& v, double anchor);

}  // namespace bajra
