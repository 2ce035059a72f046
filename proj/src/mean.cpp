#include "bajra/mean.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bajra/errors.hpp"

namespace bajra {
namespace {

constexpr int kValidationPoints = 257;
constexpr int kNewtonBudget = 80;

// Chebyshev-Gauss abscissae mapped to (lo, hi); clusters near the ends
// without ever touching them, which suits open domains.
std::vector<double> chebyshev_points(const Interval& dom, int n) {
    std::vector<double> pts(n);
    const double mid = dom.midpoint();
    const double half = 0.5 * dom.width();
    for (int j = 0; j < n; ++j)
        pts[j] = mid + half * std::cos(M_PI * (2.0 * j + 1.0) / (2.0 * n));
    return pts;
}

Interval common_domain(const Interval& a, const Interval& b) {
    auto dom = intersect(a, b);
    if (!dom)
        throw DomainEmpty("mean: component domains do not overlap");
    return *dom;
}

}  // namespace

WeightPair::WeightPair(C4Function p1, C4Function p2)
    : p1_(std::move(p1)),
      p2_(std::move(p2)),
      domain_(common_domain(p1_.domain(), p2_.domain())) {
    for (double x : chebyshev_points(domain_, kValidationPoints)) {
        if (!(p1_(x) > 0))
            throw NotPositive("weight p1 is nonpositive at x = " + std::to_string(x));
        if (!(p2_(x) > 0))
            throw NotPositive("weight p2 is nonpositive at x = " + std::to_string(x));
    }
}

BajraktarevicMean::BajraktarevicMean(C4Function generator, WeightPair weights)
    : f_(std::move(generator)),
      p_(std::move(weights)),
      domain_(common_domain(f_.domain(), p_.domain())) {
    double sign = 0;
    for (double x : chebyshev_points(domain_, kValidationPoints)) {
        const double d = f_.eval(1, x);
        if (d == 0 || !std::isfinite(d))
            throw VanishingDerivative("generator derivative vanishes at x = " +
                                      std::to_string(x));
        const double s = d > 0 ? 1.0 : -1.0;
        if (sign == 0) sign = s;
        if (s != sign)
            throw VanishingDerivative("generator is not monotone: f' changes sign near x = " +
                                      std::to_string(x));
    }
}

double invert_monotone(const C4Function& f, double target, double lo, double hi) {
    if (!(lo <= hi)) std::swap(lo, hi);
    const double accept = 1e-13 * (1 + std::fabs(target));

    double a = lo, b = hi;
    double fa = f(a) - target;
    double fb = f(b) - target;
    if (fa == 0) return a;
    if (fb == 0) return b;

    // Degenerate bracket (target at or beyond an endpoint value, up to
    // round-off): fall through with the better endpoint and let the final
    // residual check decide.
    double x = std::fabs(fa) <= std::fabs(fb) ? a : b;
    if (std::signbit(fa) != std::signbit(fb)) {
        x = 0.5 * (a + b);
        for (int it = 0; it < kNewtonBudget; ++it) {
            const double fx = f(x) - target;
            if (std::fabs(fx) <= 1e-15 * (1 + std::fabs(target))) break;
            // shrink the bracket around the sign change
            if (std::signbit(fx) == std::signbit(fa)) {
                a = x;
                fa = fx;
            } else {
                b = x;
                fb = fx;
            }
            double next;
            const double d = f.eval(1, x);
            if (std::fabs(d) < 1e-14) {
                next = 0.5 * (a + b);
            } else {
                next = x - fx / d;
                if (!(next > a && next < b))  // Newton left the bracket
                    next = 0.5 * (a + b);
            }
            if (std::fabs(next - x) <= 4 * DBL_EPSILON * (1 + std::fabs(x))) {
                x = next;
                break;
            }
            x = next;
        }
    }

    const double residual = std::fabs(f(x) - target);
    if (residual > accept)
        throw InversionFailure("inversion residual " + std::to_string(residual) +
                               " above tolerance at target " + std::to_string(target));
    return x;
}

double BajraktarevicMean::operator()(double x, double y) const {
    if (!domain_.contains(x) || !domain_.contains(y))
        throw OutOfDomain("mean arguments outside the domain");
    if (x == y) return x;
    const double w1 = p_.p1()(x);
    const double w2 = p_.p2()(y);
    const double target = (w1 * f_(x) + w2 * f_(y)) / (w1 + w2);
    return invert_monotone(f_, target, std::fmin(x, y), std::fmax(x, y));
}

StrictMeanReport strict_mean_check(const std::function<double(double, double)>& mean,
                                   std::span<const double> points) {
    StrictMeanReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (double x : points) {
        rep.max_diagonal_defect =
            std::fmax(rep.max_diagonal_defect, std::fabs(mean(x, x) - x));
        ++rep.diagonal_checked;
        for (double y : points) {
            if (x == y) continue;
            const double m = mean(x, y);
            const double margin = std::fmin(m - std::fmin(x, y), std::fmax(x, y) - m);
            rep.min_margin = std::fmin(rep.min_margin, margin);
            if (!(margin > 0)) ++rep.violations;
            ++rep.pairs_checked;
        }
    }
    if (rep.pairs_checked == 0) rep.min_margin = 0;
    return rep;
}

StrictMeanReport strict_mean_check(const BajraktarevicMean& m,
                                   std::span<const double> points) {
    return strict_mean_check([&m](double x, double y) { return m(x, y); }, points);
}

double recover_weight(const std::function<double(double, double)>& mean,
                      const C4Function& f, double p1_at_x, double x, double y) {
    if (std::fabs(x - y) < 1e-7 * (1 + std::fabs(x)))
        throw DegeneratePair("recover_weight: x and y too close");
    const double fm = f(mean(x, y));
    const double denom = f(y) - fm;
    if (std::fabs(denom) < 1e-13)
        throw DenominatorUnderflow("recover_weight: f(y) - f(M) below 1e-13");
    return p1_at_x * (fm - f(x)) / denom;
}

}  // namespace bajra
