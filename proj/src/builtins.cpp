#include "bajra/builtins.hpp"

#include <cmath>
#include <string>

#include "bajra/errors.hpp"

namespace bajra::builtins {
namespace {

[[noreturn]] void bad_order() {
    throw std::invalid_argument("builtin evaluator: order out of range");
}

}  // namespace

C4Function identity(const Interval& domain) {
    return C4Function(domain, [](int order, double x) {
        switch (order) {
            case 0: return x;
            case 1: return 1.0;
            default: return 0.0;
        }
    });
}

C4Function tangent(const Interval& domain) {
    return C4Function(domain, [](int order, double x) {
        const double t = std::tan(x);
        const double s = 1 + t * t;  // sec^2
        switch (order) {
            case 0: return t;
            case 1: return s;
            case 2: return 2 * t * s;
            case 3: return s * (2 + 6 * t * t);
            case 4: return s * (16 * t + 24 * t * t * t);
            default: bad_order();
        }
    });
}

C4Function hyperbolic_tangent(const Interval& domain) {
    return C4Function(domain, [](int order, double x) {
        const double t = std::tanh(x);
        const double s = 1 - t * t;  // sech^2
        switch (order) {
            case 0: return t;
            case 1: return s;
            case 2: return -2 * t * s;
            case 3: return s * (6 * t * t - 2);
            case 4: return s * (16 * t - 24 * t * t * t);
            default: bad_order();
        }
    });
}

C4Function exponential(const Interval& domain) {
    return C4Function(domain, [](int order, double x) {
        if (order < 0 || order > 4) bad_order();
        return std::exp(x);
    });
}

C4Function cubic(const Interval& domain) {
    return C4Function(domain, [](int order, double x) {
        switch (order) {
            case 0: return x + x * x * x;
            case 1: return 1 + 3 * x * x;
            case 2: return 6 * x;
            case 3: return 6.0;
            default: return 0.0;
        }
    });
}

C4Function mobius(double a, double b, double c, double d, const Interval& domain) {
    const double det = a * d - b * c;
    if (det == 0)
        throw DegeneratePair("mobius: ad - bc = 0");
    // c x + d must keep one sign across the domain (closure, since the pole
    // would sit arbitrarily close to an endpoint otherwise).
    const double w_lo = c * domain.lo + d;
    const double w_hi = c * domain.hi + d;
    if (w_lo == 0 || w_hi == 0 || std::signbit(w_lo) != std::signbit(w_hi))
        throw NotPositive("mobius: pole of (ax+b)/(cx+d) inside the domain");
    return C4Function(domain, [a, b, c, d, det](int order, double x) {
        const double w = c * x + d;
        switch (order) {
            case 0: return (a * x + b) / w;
            case 1: return det / (w * w);
            case 2: return -2 * c * det / (w * w * w);
            case 3: return 6 * c * c * det / (w * w * w * w);
            case 4: return -24 * c * c * c * det / (w * w * w * w * w);
            default: bad_order();
        }
    });
}

C4Function cosine(const Interval& domain) {
    return C4Function(domain, [](int order, double x) {
        switch (order) {
            case 0: return std::cos(x);
            case 1: return -std::sin(x);
            case 2: return -std::cos(x);
            case 3: return std::sin(x);
            case 4: return std::cos(x);
            default: bad_order();
        }
    });
}

C4Function hyperbolic_cosine(const Interval& domain) {
    return C4Function(domain, [](int order, double x) {
        if (order < 0 || order > 4) bad_order();
        return (order % 2 == 0) ? std::cosh(x) : std::sinh(x);
    });
}

C4Function constant_weight(double c, const Interval& domain) {
    if (!(c > 0))
        throw NotPositive("constant weight must be positive");
    return constant(c, domain);
}

C4Function exp_weight(double lambda, const Interval& domain) {
    return C4Function(domain, [lambda](int order, double x) {
        if (order < 0 || order > 4) bad_order();
        double scale = 1;
        for (int k = 0; k < order; ++k) scale *= lambda;
        return scale * std::exp(lambda * x);
    });
}

C4Function quadratic_weight(double mu, const Interval& domain) {
    return C4Function(domain, [mu](int order, double x) {
        switch (order) {
            case 0: return 1 + mu * x * x;
            case 1: return 2 * mu * x;
            case 2: return 2 * mu;
            default: return 0.0;
        }
    });
}

C4Function by_name(const std::string& name, const Interval& domain,
                   std::span<const double> params) {
    auto want = [&](std::size_t n) {
        if (params.size() != n)
            throw SpecRejected("builtin '" + name + "' expects " + std::to_string(n) +
                               " parameter(s), got " + std::to_string(params.size()));
    };
    if (name == "identity") { want(0); return identity(domain); }
    if (name == "tan")      { want(0); return tangent(domain); }
    if (name == "tanh")     { want(0); return hyperbolic_tangent(domain); }
    if (name == "exp")      { want(0); return exponential(domain); }
    if (name == "cubic")    { want(0); return cubic(domain); }
    if (name == "mobius") {
        want(4);
        return mobius(params[0], params[1], params[2], params[3], domain);
    }
    throw SpecRejected("unknown builtin function '" + name + "'");
}

}  // namespace bajra::builtins
