#include "bajra/gamma.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "bajra/errors.hpp"

namespace bajra {
namespace {

// Below this size of gamma*x^2 the closed forms lose digits to cancellation
// (and branch on the sign of gamma for no analytic reason), so both
// evaluations switch to the power series.  Eight terms leave a truncation
// error around (1e-4)^8 / 17!, far below one ulp.
constexpr double kSeriesThreshold = 1e-4;
constexpr int kSeriesTerms = 8;

double sgamma_series(double gamma, double x) {
    // sum_k gamma^k x^(2k+1) / (2k+1)!
    double term = x;
    double acc = x;
    for (int k = 1; k < kSeriesTerms; ++k) {
        term *= gamma * x * x / ((2.0 * k) * (2.0 * k + 1.0));
        acc += term;
    }
    return acc;
}

double cgamma_series(double gamma, double x) {
    // sum_k gamma^k x^(2k) / (2k)!
    double term = 1;
    double acc = 1;
    for (int k = 1; k < kSeriesTerms; ++k) {
        term *= gamma * x * x / ((2.0 * k - 1.0) * (2.0 * k));
        acc += term;
    }
    return acc;
}

}  // namespace

double eval_sgamma(double gamma, double x) {
    const double gx2 = gamma * x * x;
    if (std::fabs(gx2) < kSeriesThreshold) return sgamma_series(gamma, x);
    if (gamma < 0) {
        const double r = std::sqrt(-gamma);
        return std::sin(r * x) / r;
    }
    const double r = std::sqrt(gamma);
    return std::sinh(r * x) / r;
}

double eval_cgamma(double gamma, double x) {
    const double gx2 = gamma * x * x;
    if (std::fabs(gx2) < kSeriesThreshold) return cgamma_series(gamma, x);
    if (gamma < 0) return std::cos(std::sqrt(-gamma) * x);
    return std::cosh(std::sqrt(gamma) * x);
}

GammaSolution::GammaSolution(double gamma, double a, double b, Interval domain)
    : gamma_(gamma), a_(a), b_(b), domain_(domain) {
    if (!std::isfinite(gamma) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("GammaSolution: non-finite parameter");
}

double GammaSolution::value(double x) const {
    return a_ * eval_sgamma(gamma_, x) + b_ * eval_cgamma(gamma_, x);
}

double GammaSolution::derivative(int order, double x) const {
    if (order < 0)
        throw std::invalid_argument("GammaSolution: negative derivative order");
    // S' = C and C' = gamma * S, so differentiation maps coefficients
    // (a, b) -> (gamma * b, a).
    double a = a_, b = b_;
    for (int k = 0; k < order; ++k) {
        const double na = gamma_ * b;
        const double nb = a;
        a = na;
        b = nb;
    }
    return a * eval_sgamma(gamma_, x) + b * eval_cgamma(gamma_, x);
}

GammaSolution GammaSolution::restricted(const Interval& sub) const {
    if (sub.lo < domain_.lo || sub.hi > domain_.hi)
        throw std::invalid_argument("GammaSolution::restricted: not a subinterval");
    return GammaSolution(gamma_, a_, b_, sub);
}

C4Function GammaSolution::as_function() const {
    GammaSolution self = *this;
    return C4Function(domain_,
                      [self](int order, double x) { return self.derivative(order, x); });
}

double wronskian(const GammaSolution& u, const GammaSolution& v) {
    if (u.gamma() != v.gamma())
        throw std::invalid_argument("wronskian: mixed gamma");
    // u'v - uv' is constant; in coefficients it collapses to a_u b_v - b_u a_v
    // via the Pythagorean identity C^2 - gamma S^2 = 1.
    return u.a() * v.b() - u.b() * v.a();
}

bool independent(const GammaSolution& u, const GammaSolution& v) {
    const double scale =
        (std::fabs(u.a()) + std::fabs(u.b())) * (std::fabs(v.a()) + std::fabs(v.b()));
    return std::fabs(wronskian(u, v)) > 1e-12 * scale;
}

WronskianPair WronskianPair::make(const GammaSolution& u, const GammaSolution& v) {
    if (u.gamma() != v.gamma())
        throw std::invalid_argument("WronskianPair: mixed gamma");
    if (u.domain().lo != v.domain().lo || u.domain().hi != v.domain().hi)
        throw std::invalid_argument("WronskianPair: mismatched domains");
    if (!independent(u, v))
        throw NotIndependent("WronskianPair: Wronskian too small relative to coefficients");
    return WronskianPair{u, v, wronskian(u, v)};
}

C4Function ratio_function(const GammaSolution& u, const GammaSolution& v) {
    if (u.gamma() != v.gamma())
        throw std::invalid_argument("ratio_function: mixed gamma");
    return quotient(u.as_function(), v.as_function());
}

Interval positive_subinterval(const GammaSolution& v, double anchor) {
    const Interval dom = v.domain();
    if (!dom.contains(anchor))
        throw OutOfDomain("positive_subinterval: anchor outside domain");
    if (!(v.value(anchor) > 0))
        throw AnchorNotPositive("positive_subinterval: v(anchor) = " +
                                std::to_string(v.value(anchor)));

    const double gamma = v.gamma();
    if (gamma < 0) {
        // v = a sin(rx) + b cos(rx) = R sin(rx + phi): consecutive zeros
        // bracket the anchor at (k pi - phi) / r.
        const double r = std::sqrt(-gamma);
        const double phi = std::atan2(v.b(), v.a() / r);
        const double theta = r * anchor + phi;
        const double k0 = std::floor(theta / M_PI);
        const double lo = (k0 * M_PI - phi) / r;
        const double hi = ((k0 + 1.0) * M_PI - phi) / r;
        return Interval(std::fmax(lo, dom.lo), std::fmin(hi, dom.hi));
    }

    // For gamma >= 0 the solution has at most one zero on each side of the
    // anchor; walk outward on a fixed grid and bisect the first sign change.
    const int kScanSteps = 1024;
    const int kBisectSteps = 128;
    auto refine = [&](double pos, double nonpos) {
        // keep `pos` on the positive side so the result stays inside {v > 0}
        for (int i = 0; i < kBisectSteps; ++i) {
            const double mid = 0.5 * (pos + nonpos);
            (v.value(mid) > 0 ? pos : nonpos) = mid;
        }
        return pos;
    };

    double lo = dom.lo;
    double prev = anchor;
    const double step_lo = (anchor - dom.lo) / kScanSteps;
    for (int i = 1; i <= kScanSteps; ++i) {
        const double x = anchor - i * step_lo;
        if (!(v.value(x) > 0)) {
            lo = refine(prev, x);
            break;
        }
        prev = x;
    }

    double hi = dom.hi;
    prev = anchor;
    const double step_hi = (dom.hi - anchor) / kScanSteps;
    for (int i = 1; i <= kScanSteps; ++i) {
        const double x = anchor + i * step_hi;
        if (!(v.value(x) > 0)) {
            hi = refine(prev, x);
            break;
        }
        prev = x;
    }

    return Interval(lo, hi);
}

}  // namespace bajra
