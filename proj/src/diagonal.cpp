#include "bajra/diagonal.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "bajra/errors.hpp"

namespace bajra {
namespace {

// Shared diagonal quantities.  Notation, with p0 = p1 + p2:
//   N = p1 - p2,  D = N / p0,  m = p1 p2,  G = m / p0^2,
//   L = m'/m + f''/f',  K = 6 - p0^2 / m,  S = Schwarzian of f.
// Everything is exact: primes come from the generator and weight evaluators,
// never from differencing.
struct DiagTerms {
    double f1, f2, f3, f4;
    double p10, p20;
    double p0, p0p, p0pp;
    double N, Np, Npp;
    double m, mp, mpp;
    double D, Dp, Dpp;
    double L, Lp;
    double G, Gp, Gpp;
    double S, Sp;
};

DiagTerms diag_terms(const BajraktarevicMean& mean, double x) {
    const C4Function& f = mean.generator();
    const C4Function& p1 = mean.weights().p1();
    const C4Function& p2 = mean.weights().p2();

    DiagTerms t{};
    t.f1 = f.eval(1, x);
    t.f2 = f.eval(2, x);
    t.f3 = f.eval(3, x);
    t.f4 = f.eval(4, x);

    t.p10 = p1.eval(0, x);
    t.p20 = p2.eval(0, x);
    const double p11 = p1.eval(1, x), p21 = p2.eval(1, x);
    const double p12 = p1.eval(2, x), p22 = p2.eval(2, x);

    t.p0 = t.p10 + t.p20;
    t.p0p = p11 + p21;
    t.p0pp = p12 + p22;

    t.N = t.p10 - t.p20;
    t.Np = p11 - p21;
    t.Npp = p12 - p22;

    t.m = t.p10 * t.p20;
    t.mp = p11 * t.p20 + t.p10 * p21;
    t.mpp = p12 * t.p20 + 2 * p11 * p21 + t.p10 * p22;

    const double p0_2 = t.p0 * t.p0;
    t.D = t.N / t.p0;
    t.Dp = (t.Np * t.p0 - t.N * t.p0p) / p0_2;
    t.Dpp = (t.Npp * t.p0 - t.N * t.p0pp) / p0_2 -
            2 * t.p0p * (t.Np * t.p0 - t.N * t.p0p) / (p0_2 * t.p0);

    t.L = t.mp / t.m + t.f2 / t.f1;
    t.Lp = (t.mpp * t.m - t.mp * t.mp) / (t.m * t.m) +
           (t.f3 * t.f1 - t.f2 * t.f2) / (t.f1 * t.f1);

    t.G = t.m / p0_2;
    t.Gp = t.mp / p0_2 - 2 * t.m * t.p0p / (p0_2 * t.p0);
    t.Gpp = t.mpp / p0_2 - 4 * t.mp * t.p0p / (p0_2 * t.p0) -
            2 * t.m * t.p0pp / (p0_2 * t.p0) + 6 * t.m * t.p0p * t.p0p / (p0_2 * p0_2);

    const double r = t.f2 / t.f1;
    t.S = t.f3 / t.f1 - 1.5 * r * r;
    t.Sp = t.f4 / t.f1 - 4 * t.f3 * t.f2 / (t.f1 * t.f1) + 3 * r * r * r;
    return t;
}

void check_on_diagonal(const BajraktarevicMean& m, double x) {
    if (!m.domain().contains(x))
        throw OutOfDomain("diagonal formulas: x = " + std::to_string(x) +
                          " outside the mean's domain");
}

}  // namespace

double formula_first(const BajraktarevicMean& m, int i, double x) {
    if (i != 1 && i != 2)
        throw std::invalid_argument("formula_first: i must be 1 or 2");
    check_on_diagonal(m, x);
    const double p1 = m.weights().p1()(x);
    const double p2 = m.weights().p2()(x);
    return (i == 1 ? p1 : p2) / (p1 + p2);
}

double formula_mixed2(const BajraktarevicMean& m, double x) {
    check_on_diagonal(m, x);
    const DiagTerms t = diag_terms(m, x);
    return -t.G * t.L;
}

double formula_mixed3(const BajraktarevicMean& m, double x) {
    check_on_diagonal(m, x);
    const DiagTerms t = diag_terms(m, x);
    return -0.25 * t.Dpp - (3 * t.p0 * t.N / (16 * t.m)) * t.Dp * t.Dp -
           0.5 * (t.Gp * t.L + t.G * t.Lp) +
           (3 * t.m / (4 * t.p0 * t.p0)) * t.D * t.L * t.L -
           (t.m / (2 * t.p0 * t.p0)) * t.D * t.S;
}

double formula_mixed4(const BajraktarevicMean& m, double x) {
    check_on_diagonal(m, x);
    const DiagTerms t = diag_terms(m, x);
    const double K = 6 - t.p0 * t.p0 / t.m;
    return (t.Gpp + 0.375 * K * t.Dp * t.Dp) * t.L - t.Gp * t.Lp -
           0.5 * t.G * t.G * K * t.L * t.L * t.L + t.G * t.G * K * t.L * t.S -
           t.G * t.G * t.Sp;
}

DiagonalDerivatives diagonal_derivatives(const BajraktarevicMean& m, double x) {
    return DiagonalDerivatives{formula_first(m, 1, x), formula_first(m, 2, x),
                               formula_mixed2(m, x),   formula_mixed3(m, x),
                               formula_mixed4(m, x),   x};
}

double fd_partial(const std::function<double(double, double)>& mean,
                  const Interval& domain, int alpha, int beta, double x, double h) {
    if (alpha < 0 || alpha > 2 || beta < 0 || beta > 2)
        throw std::invalid_argument("fd_partial: orders must lie in 0..2");
    if (!(h > 0))
        throw std::invalid_argument("fd_partial: step must be positive");

    struct Tap {
        int offset;
        double weight;
    };
    static const std::vector<Tap> stencils[3] = {
        {{0, 1.0}},
        {{-1, -0.5}, {1, 0.5}},
        {{-1, 1.0}, {0, -2.0}, {1, 1.0}},
    };

    const int reach_x = alpha > 0 ? 1 : 0;
    const int reach_y = beta > 0 ? 1 : 0;
    if (!domain.contains(x - reach_x * h) || !domain.contains(x + reach_x * h) ||
        !domain.contains(x - reach_y * h) || !domain.contains(x + reach_y * h))
        throw StencilOutOfDomain("fd_partial: stencil of half-width " + std::to_string(h) +
                                 " at x = " + std::to_string(x) + " leaves the domain");

    double acc = 0;
    for (const Tap& tx : stencils[alpha])
        for (const Tap& ty : stencils[beta])
            acc += tx.weight * ty.weight * mean(x + tx.offset * h, x + ty.offset * h);

    double scale = 1;
    for (int k = 0; k < alpha + beta; ++k) scale *= h;
    return acc / scale;
}

FormulaComparison compare_formulas(const BajraktarevicMean& m, double x,
                                   const FdSteps& steps) {
    check_on_diagonal(m, x);
    FormulaComparison out;
    out.at = x;
    out.tolerance = kDiagonalTolerances;

    const Interval& dom = m.domain();
    const double margin = 6 * steps.largest();
    if (x - dom.lo < margin || dom.hi - x < margin) {
        out.tested = false;
        return out;
    }
    out.tested = true;

    auto eval = [&m](double a, double b) { return m(a, b); };

    out.closed[0] = formula_first(m, 1, x);
    out.closed[1] = formula_mixed2(m, x);
    out.closed[2] = formula_mixed3(m, x);
    out.closed[3] = formula_mixed4(m, x);

    out.fd[0] = fd_partial(eval, dom, 1, 0, x, steps.first);
    out.fd[1] = fd_partial(eval, dom, 1, 1, x, steps.mixed2);
    out.fd[2] = fd_partial(eval, dom, 2, 1, x, steps.mixed3);
    out.fd[3] = fd_partial(eval, dom, 2, 2, x, steps.mixed4);

    for (int k = 0; k < 4; ++k) {
        out.discrepancy[k] = std::fabs(out.closed[k] - out.fd[k]);
        out.pass[k] = out.discrepancy[k] <= out.tolerance[k];
    }
    return out;
}

}  // namespace bajra
