#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "bajra/c4function.hpp"

namespace bajra {

// Strictly positive weight pair (p1, p2) on a common domain.  Construction
// samples both weights on a 257-point Chebyshev grid and rejects any
// nonpositive value (NotPositive).
class WeightPair {
public:
    WeightPair(C4Function p1, C4Function p2);

    const C4Function& p1() const noexcept { return p1_; }
    const C4Function& p2() const noexcept { return p2_; }
    const Interval& domain() const noexcept { return domain_; }

    double total(double x) const { return p1_(x) + p2_(x); }  // p0 = p1 + p2

private:
    C4Function p1_;
    C4Function p2_;
    Interval domain_;
};

// Two-variable weighted quasiarithmetic mean
//   A(x, y) = f^{-1}( (p1(x) f(x) + p2(y) f(y)) / (p1(x) + p2(y)) ).
// The generator must be strictly monotone; construction samples f' on a
// 257-point Chebyshev grid and rejects a sign change or a zero
// (VanishingDerivative).
class BajraktarevicMean {
public:
    BajraktarevicMean(C4Function generator, WeightPair weights);

    double operator()(double x, double y) const;

    const C4Function& generator() const noexcept { return f_; }
    const WeightPair& weights() const noexcept { return p_; }
    const Interval& domain() const noexcept { return domain_; }

private:
    C4Function f_;
    WeightPair p_;
    Interval domain_;
};

inline double evaluate(const BajraktarevicMean& m, double x, double y) {
    return m(x, y);
}

// Solve f(t) = target for t in [lo, hi] by Newton iteration safeguarded
// with bisection: any step leaving the bracket, or |f'| < 1e-14, falls back
// to the midpoint.  Iterates until the residual reaches round-off, then
// enforces |f(t) - target| <= 1e-13 * (1 + |target|) (InversionFailure).
double invert_monotone(const C4Function& f, double target, double lo, double hi);

struct StrictMeanReport {
    double min_margin = 0;           // min over x != y of min(A - min, max - A)
    double max_diagonal_defect = 0;  // max |A(x, x) - x|
    int violations = 0;              // pairs with margin <= 0
    int pairs_checked = 0;
    int diagonal_checked = 0;

    bool pass(double diag_tol = 1e-12) const {
        return violations == 0 && max_diagonal_defect <= diag_tol;
    }
};

// Internality scan over all ordered pairs from `points`.  Takes a plain
// evaluator so that corrupted or foreign means can be probed too.
StrictMeanReport strict_mean_check(const std::function<double(double, double)>& mean,
                                   std::span<const double> points);

StrictMeanReport strict_mean_check(const BajraktarevicMean& m,
                                   std::span<const double> points);

// Recover p2(y) from mean values along one row:
//   p2(y) = p1(x) * (f(M) - f(x)) / (f(y) - f(M)),  M = mean(x, y).
// DegeneratePair when |x - y| < 1e-7 * (1 + |x|); DenominatorUnderflow when
// |f(y) - f(M)| < 1e-13.
double recover_weight(const std::function<double(double, double)>& mean,
                      const C4Function& f, double p1_at_x, double x, double y);

}  // namespace bajra
