#include "bajra/mean_registry.hpp"

#include <cmath>

#include "bajra/builtins.hpp"
#include "bajra/diagonal.hpp"
#include "bajra/errors.hpp"
#include "bajra/invariance.hpp"
#include "bajra/sampling.hpp"

namespace bajra {

namespace {

// The fixed-step finite-difference oracle behind the diagonal checks
// certifies means whose derivatives are of order one; a random family member
// whose denominator nearly vanishes at the domain edge can carry sixth
// derivatives in the 1e5 range and no fixed step resolves those.  Screen on
// two affine-invariant closed-form quantities: the spread of f' across the
// domain and the size of the fourth-order diagonal derivative.
bool tame_for_differencing(const BajraktarevicMean& m) {
    const Interval& dom = m.domain();
    double f1_min = 1e300, f1_max = 0, worst_m4 = 0;
    for (int i = 0; i < 33; ++i) {
        const double x = dom.lo + dom.width() * (i + 1.0) / 34.0;
        const double f1 = std::fabs(m.generator().eval(1, x));
        f1_min = std::fmin(f1_min, f1);
        f1_max = std::fmax(f1_max, f1);
        worst_m4 = std::fmax(worst_m4, std::fabs(formula_mixed4(m, x)));
    }
    return f1_max <= 10 * f1_min && worst_m4 <= 1.0;
}

}  // namespace

BajraktarevicMean builtin_mean(const std::string& name) {
    using namespace builtins;
    if (name == "arithmetic") {
        const Interval dom(-1, 1);
        return BajraktarevicMean(identity(dom),
                                 WeightPair(constant_weight(1, dom), constant_weight(1, dom)));
    }
    if (name == "tan-cos") {
        const Interval dom(-1.2, 1.2);
        return BajraktarevicMean(tangent(dom), WeightPair(cosine(dom), cosine(dom)));
    }
    if (name == "exp-weight") {
        const Interval dom(-1, 1);
        return BajraktarevicMean(identity(dom),
                                 WeightPair(exp_weight(1, dom), constant_weight(1, dom)));
    }
    if (name == "mobius-quad") {
        const Interval dom(-1, 1);
        return BajraktarevicMean(
            mobius(2, 1, 1, 3, dom),
            WeightPair(quadratic_weight(0.25, dom), constant_weight(1, dom)));
    }
    if (name == "tanh-cosh") {
        const Interval dom(-1.5, 1.5);
        return BajraktarevicMean(hyperbolic_tangent(dom),
                                 WeightPair(hyperbolic_cosine(dom), hyperbolic_cosine(dom)));
    }
    if (name == "gamma-quarter") {
        std::mt19937_64 rng(seed_from_env());
        for (int attempt = 0; attempt < 256; ++attempt) {
            ConstructedFamily fam = construct_family(to_recipe(draw_family(rng, 0.25)));
            if (tame_for_differencing(fam.mean_f)) return fam.mean_f;
        }
        throw SpecRejected("no differencing-friendly gamma = 0.25 family member found");
    }
    throw SpecRejected("unknown builtin mean '" + name + "'");
}

const std::vector<std::string>& builtin_mean_names() {
    static const std::vector<std::string> names{
        "arithmetic", "tan-cos", "exp-weight", "mobius-quad", "tanh-cosh", "gamma-quarter"};
    return names;
}

}  // namespace bajra
