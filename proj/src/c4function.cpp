#include "bajra/c4function.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "bajra/errors.hpp"

namespace bajra {
namespace {

// Binomial coefficients up to the order-4 row, all Leibniz expansions need.
constexpr int kBinom[5][5] = {
    {1, 0, 0, 0, 0},
    {1, 1, 0, 0, 0},
    {1, 2, 1, 0, 0},
    {1, 3, 3, 1, 0},
    {1, 4, 6, 4, 1},
};

Interval common_domain(const C4Function& f, const C4Function& g) {
    auto dom = intersect(f.domain(), g.domain());
    if (!dom)
        throw DomainEmpty("combinator: domains do not overlap");
    return *dom;
}

std::array<double, 5> derivs_through(const C4Function& f, int order, double x) {
    std::array<double, 5> d{};
    for (int k = 0; k <= order; ++k) d[k] = f.eval(k, x);
    return d;
}

}  // namespace

C4Function::C4Function(Interval domain, Evaluator ev)
    : domain_(domain), ev_(std::move(ev)) {
    if (!ev_)
        throw std::invalid_argument("C4Function: empty evaluator");
}

double C4Function::eval(int order, double x) const {
    if (order < 0 || order > 4)
        throw std::invalid_argument("C4Function: derivative order must be 0..4, got " +
                                    std::to_string(order));
    if (!domain_.contains(x))
        throw OutOfDomain("C4Function: x = " + std::to_string(x) + " outside (" +
                          std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) + ")");
    return ev_(order, x);
}

C4Function C4Function::restricted(const Interval& sub) const {
    if (sub.lo < domain_.lo || sub.hi > domain_.hi)
        throw std::invalid_argument("C4Function::restricted: not a subinterval");
    return C4Function(sub, ev_);
}

C4Function constant(double c, const Interval& domain) {
    return C4Function(domain, [c](int order, double) { return order == 0 ? c : 0.0; });
}

C4Function affine(double alpha, double beta, const C4Function& f) {
    return C4Function(f.domain(), [alpha, beta, f](int order, double x) {
        const double v = alpha * f.eval(order, x);
        return order == 0 ? v + beta : v;
    });
}

C4Function sum(const C4Function& f, const C4Function& g) {
    return C4Function(common_domain(f, g), [f, g](int order, double x) {
        return f.eval(order, x) + g.eval(order, x);
    });
}

C4Function product(const C4Function& f, const C4Function& g) {
    return C4Function(common_domain(f, g), [f, g](int order, double x) {
        const auto df = derivs_through(f, order, x);
        const auto dg = derivs_through(g, order, x);
        double acc = 0;
        for (int j = 0; j <= order; ++j)
            acc += kBinom[order][j] * df[j] * dg[order - j];
        return acc;
    });
}

C4Function quotient(const C4Function& f, const C4Function& g) {
    // h = f/g, so f = h*g; solve Leibniz for the top derivative:
    //   h[k] = (f[k] - sum_{j<k} C(k,j) h[j] g[k-j]) / g[0].
    return C4Function(common_domain(f, g), [f, g](int order, double x) {
        const auto df = derivs_through(f, order, x);
        const auto dg = derivs_through(g, order, x);
        std::array<double, 5> h{};
        for (int k = 0; k <= order; ++k) {
            double acc = df[k];
            for (int j = 0; j < k; ++j)
                acc -= kBinom[k][j] * h[j] * dg[k - j];
            h[k] = acc / dg[0];
        }
        return h[order];
    });
}

C4Function compose(const C4Function& outer, const C4Function& inner) {
    // Chain rule through order 4 (Faa di Bruno with the small partitions
    // written out).
    return C4Function(inner.domain(), [outer, inner](int order, double x) {
        const auto fi = derivs_through(inner, order, x);
        const double y = fi[0];
        if (order == 0) return outer.eval(0, y);
        std::array<double, 5> fo{};
        for (int k = 1; k <= order; ++k) fo[k] = outer.eval(k, y);
        const double f1 = fi[1], f2 = fi[2], f3 = fi[3], f4 = fi[4];
        switch (order) {
            case 1:
                return fo[1] * f1;
            case 2:
                return fo[2] * f1 * f1 + fo[1] * f2;
            case 3:
                return fo[3] * f1 * f1 * f1 + 3 * fo[2] * f1 * f2 + fo[1] * f3;
            default:
                return fo[4] * f1 * f1 * f1 * f1 + 6 * fo[3] * f1 * f1 * f2 +
                       fo[2] * (4 * f1 * f3 + 3 * f2 * f2) + fo[1] * f4;
        }
    });
}

}  // namespace bajra
