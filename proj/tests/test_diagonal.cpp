#include <cmath>

#include <doctest.h>

#include "bajra/builtins.hpp"
#include "bajra/diagonal.hpp"
#include "bajra/errors.hpp"
#include "bajra/mean_registry.hpp"
#include "helpers.hpp"

using namespace bajra;

namespace {

BajraktarevicMean exp_weight_mean() {
    const Interval dom(-1, 1);
    return BajraktarevicMean(builtins::identity(dom),
                             WeightPair(builtins::exp_weight(1, dom),
                                        builtins::constant_weight(1, dom)));
}

}  // namespace

TEST_CASE("first-order formulas reduce to weight ratios") {
    const BajraktarevicMean arit = builtin_mean("arithmetic");
    CHECK(formula_first(arit, 1, 0.3) == doctest::Approx(0.5));
    CHECK(formula_first(arit, 2, 0.3) == doctest::Approx(0.5));

    const Interval dom(-1, 1);
    const BajraktarevicMean two_one(builtins::identity(dom),
                                    WeightPair(builtins::constant_weight(2, dom),
                                               builtins::constant_weight(1, dom)));
    CHECK(formula_first(two_one, 1, 0.2) == doctest::Approx(2.0 / 3));
    CHECK(formula_first(two_one, 2, 0.2) == doctest::Approx(1.0 / 3));

    const BajraktarevicMean ew = exp_weight_mean();
    CHECK(formula_first(ew, 1, 0.0) == doctest::Approx(0.5));

    CHECK_THROWS_AS(formula_first(arit, 3, 0.3), std::invalid_argument);
}

TEST_CASE("first-order formulas always sum to one") {
    for (const std::string& name : builtin_mean_names()) {
        const BajraktarevicMean m = builtin_mean(name);
        for (double x : oracle::grid(m.domain(), 17)) {
            const double s = formula_first(m, 1, x) + formula_first(m, 2, x);
            CHECK(std::fabs(s - 1.0) <= 1e-15);
        }
    }
}

TEST_CASE("second mixed formula hits the pinned value") {
    CHECK(formula_mixed2(exp_weight_mean(), 0.0) == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("mixed formulas vanish for the arithmetic mean") {
    const BajraktarevicMean m = builtin_mean("arithmetic");
    for (double x : oracle::grid(m.domain(), 9)) {
        CHECK(formula_mixed2(m, x) == doctest::Approx(0.0));
        CHECK(formula_mixed3(m, x) == doctest::Approx(0.0));
        CHECK(formula_mixed4(m, x) == doctest::Approx(0.0));
    }
}

TEST_CASE("weight swap mirrors the diagonal derivatives") {
    const Interval dom(-1.1, 1.1);
    const C4Function f = builtins::tangent(dom);
    const C4Function w1 = builtins::exp_weight(0.7, dom);
    const C4Function w2 = builtins::quadratic_weight(0.3, dom);
    const BajraktarevicMean m(f, WeightPair(w1, w2));
    const BajraktarevicMean swapped(f, WeightPair(w2, w1));
    for (double x : oracle::grid(Interval(-0.9, 0.9), 7)) {
        CHECK(formula_first(m, 1, x) == doctest::Approx(formula_first(swapped, 2, x)));
        CHECK(formula_mixed2(m, x) == doctest::Approx(formula_mixed2(swapped, x)));
        CHECK(formula_mixed4(m, x) == doctest::Approx(formula_mixed4(swapped, x)));
        // swapped mixed3 is d^3 A / dx dy^2 of the original
        auto eval = [&m](double a, double b) { return m(a, b); };
        const double fd = fd_partial(eval, m.domain(), 1, 2, x, 1e-3);
        CHECK(formula_mixed3(swapped, x) == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("generator reparametrization leaves the formulas alone") {
    const Interval dom(-1.1, 1.1);
    const C4Function f = builtins::tangent(dom);
    const WeightPair w(builtins::exp_weight(0.7, dom), builtins::quadratic_weight(0.3, dom));
    const BajraktarevicMean m(f, w);
    const BajraktarevicMean re(affine(-2.5, 0.4, f), w);
    for (double x : oracle::grid(Interval(-0.9, 0.9), 9)) {
        CHECK(std::fabs(formula_first(re, 1, x) - formula_first(m, 1, x)) <= 1e-9);
        CHECK(std::fabs(formula_mixed2(re, x) - formula_mixed2(m, x)) <= 1e-9);
        CHECK(std::fabs(formula_mixed3(re, x) - formula_mixed3(m, x)) <= 1e-9);
        CHECK(std::fabs(formula_mixed4(re, x) - formula_mixed4(m, x)) <= 1e-9);
    }
}

TEST_CASE("fd_partial reproduces known diagonal stencil values") {
    const BajraktarevicMean arit = builtin_mean("arithmetic");
    auto eval = [&arit](double x, double y) { return arit(x, y); };
    const double d1 = fd_partial(eval, arit.domain(), 1, 0, 0.2, 1e-4);
    CHECK(std::fabs(d1 - 0.5) <= 1e-9);
    const double d22 = fd_partial(eval, arit.domain(), 2, 2, 0.2, 4e-3);
    CHECK(std::fabs(d22) <= 1e-6);

    CHECK_THROWS_AS(fd_partial(eval, arit.domain(), 3, 0, 0.2, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(fd_partial(eval, arit.domain(), 1, 1, 0.2, -1e-4), std::invalid_argument);
    CHECK_THROWS_AS(fd_partial(eval, arit.domain(), 1, 1, 0.999, 1e-2), StencilOutOfDomain);
}

TEST_CASE("fd_partial halves its step consistently with second-order decay") {
    // Richardson-style consistency: with central stencils the defect drops
    // like h^2, so fd(h) - fd(h/2) should be about three times the
    // extrapolated error (4/3)|fd(h/2) - fd(h/4)| of the h/2 value.  Steps
    // are larger than the defaults so truncation dominates round-off.
    const BajraktarevicMean m = exp_weight_mean();
    auto eval = [&m](double x, double y) { return m(x, y); };
    const double x = 0.1;
    const int alphas[] = {1, 1, 2, 2};
    const int betas[] = {0, 1, 1, 2};
    const double hs[] = {1e-2, 1e-2, 3e-2, 3e-2};
    const double floors[] = {1e-11, 1e-10, 1e-8, 1e-6};
    for (int k = 0; k < 4; ++k) {
        const double fh = fd_partial(eval, m.domain(), alphas[k], betas[k], x, hs[k]);
        const double fh2 = fd_partial(eval, m.domain(), alphas[k], betas[k], x, hs[k] / 2);
        const double fh4 = fd_partial(eval, m.domain(), alphas[k], betas[k], x, hs[k] / 4);
        const double est_half = (4.0 / 3.0) * std::fabs(fh2 - fh4);
        CHECK(std::fabs(fh - fh2) <= 4 * est_half + floors[k]);
    }
}

TEST_CASE("closed forms match finite differences on the stock means") {
    for (const std::string& name : builtin_mean_names()) {
        const BajraktarevicMean m = builtin_mean(name);
        const FdSteps steps;
        const double margin = 6.5 * steps.largest();
        const Interval inner(m.domain().lo + margin, m.domain().hi - margin);
        for (double x : oracle::grid(inner, 9)) {
            const FormulaComparison c = compare_formulas(m, x);
            CHECK(c.tested);
            CHECK(c.all_pass());
        }
    }
}

TEST_CASE("compare_formulas declines points too close to the edge") {
    const BajraktarevicMean m = builtin_mean("tan-cos");
    const FormulaComparison c = compare_formulas(m, m.domain().hi - 0.01);
    CHECK(!c.tested);
    CHECK(!c.all_pass());
}

TEST_CASE("a sign error in the fourth-order formula would be caught") {
    // Guard against silent formula corruption: at a point where the true
    // mixed4 value is well above the pass band, its negation must miss the
    // finite difference by more than the band.  (The exp-weight mean is no
    // use here: an identity generator makes A affine in y, so its mixed4
    // vanishes identically.)
    const BajraktarevicMean m = builtin_mean("mobius-quad");
    auto eval = [&m](double x, double y) { return m(x, y); };
    const double x = -0.5;
    const double closed = formula_mixed4(m, x);
    REQUIRE(std::fabs(closed) > 10 * kDiagonalTolerances[3]);
    const double fd = fd_partial(eval, m.domain(), 2, 2, x, FdSteps{}.mixed4);
    CHECK(std::fabs(closed - fd) <= kDiagonalTolerances[3]);
    CHECK(std::fabs(-closed - fd) > kDiagonalTolerances[3]);
}

TEST_CASE("diagonal_derivatives bundles the closed forms") {
    const BajraktarevicMean m = builtin_mean("mobius-quad");
    const double x = 0.25;
    const DiagonalDerivatives d = diagonal_derivatives(m, x);
    CHECK(d.at == x);
    CHECK(d.d1 == doctest::Approx(formula_first(m, 1, x)));
    CHECK(d.d2 == doctest::Approx(formula_first(m, 2, x)));
    CHECK(d.d1 + d.d2 == doctest::Approx(1.0));
    CHECK(d.d12 == doctest::Approx(formula_mixed2(m, x)));
    CHECK(d.d112 == doctest::Approx(formula_mixed3(m, x)));
    CHECK(d.d1122 == doctest::Approx(formula_mixed4(m, x)));
}
