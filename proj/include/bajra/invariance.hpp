#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "bajra/gamma.hpp"
#include "bajra/mean.hpp"

namespace bajra {

// Recipe for one invariant pair of means: generators f = u/v and g = w/z
// built from solutions of F'' = gamma * F, weights p = (s1, s2) and
// q = (vz/s1, vz/s2) for positive split functions s1, s2, so that
// p1 q1 = p2 q2 = vz.  The pair then satisfies
// A_{f,p}(x, y) + A_{g,q}(x, y) = x + y on the common domain.
struct FamilyRecipe {
    double gamma;
    std::array<double, 4> f_coeffs;  // a1, b1 (u) and c1, d1 (v)
    std::array<double, 4> g_coeffs;  // a2, b2 (w) and c2, d2 (z)
    C4Function split1;
    C4Function split2;
    Interval domain;  // requested; construction may narrow it
};

struct ConstructedFamily {
    double gamma;
    Interval domain;  // validated subinterval where v > 0 and z > 0
    GammaSolution u, v, w, z;
    BajraktarevicMean mean_f;
    BajraktarevicMean mean_g;
};

// Build both means from a recipe.  Checks independence of (u, v) and (w, z)
// (NotIndependent), hunts for an anchor where v and z are both positive
// (NotPositive / DomainEmpty when there is none), intersects the positive
// subintervals with the request and validates the means on the result.
ConstructedFamily construct_family(const FamilyRecipe& recipe);

struct GridPointResidual {
    double x, y, residual;
};

struct ResidualReport {
    double max_invariance = 0;  // sup |A_f + A_g - x - y| over the grid
    double cond1 = 0;           // max relative |p1 q1 - p2 q2|
    double cond2 = 0;           // max relative deviation of (p1 q1)^2 f' g' from its median
    double cond3 = 0;           // max |(p1 - p2)(S(f) - S(g))|
    double cond4 = 0;           // max |(p1 - p2)(S(f)' + S(g)')|
    double delta_fit = 0;       // median of (p1 q1)^2 f' g'
    int grid_size = 0;
};

// sup-norm of the invariance defect on an n x n interior grid of the common
// domain, reported in max_invariance.  Optionally records every grid point
// for CSV export.
ResidualReport invariance_residual(const BajraktarevicMean& mf, const BajraktarevicMean& mg,
                                   int n, std::vector<GridPointResidual>* points = nullptr);

// Pointwise necessary conditions for invariance, evaluated on an n-point
// interior grid of the common domain (no mean inversions involved).
ResidualReport necessary_residuals(const BajraktarevicMean& mf,
                                   const BajraktarevicMean& mg, int n);

struct DiagonalSystemReport {
    double sum_first = 0;   // sup |d1 A_f + d1 A_g - 1|
    double sum_mixed2 = 0;  // sup |mixed2_f + mixed2_g|
    double sum_mixed3 = 0;  // sup |mixed3_f + mixed3_g|
    double sum_mixed4 = 0;  // sup |mixed4_f + mixed4_g|
    int grid_size = 0;

    double worst() const;
};

// The four diagonal identities that invariance forces: first derivatives sum
// to 1, each mixed sum vanishes.  Closed-form only, no differencing.
DiagonalSystemReport diagonal_system_check(const BajraktarevicMean& mf,
                                           const BajraktarevicMean& mg, int n);

struct UvwzSample {
    double x, y, t, s;
};

// Direct check of the two-parameter identity
//   (u/v)^{-1}( (t u(x) + s u(y)) / (t v(x) + s v(y)) )
// + (w/z)^{-1}( (s w(x) + t w(y)) / (s z(x) + t z(y)) ) = x + y
// (weights swap sides).  Returns the sup-norm of the defect over the samples.
double identity_uvwz_check(const ConstructedFamily& fam,
                           std::span<const UvwzSample> samples);

struct RecoveredRatio {
    double gamma;
    GammaSolution u;
    GammaSolution v;
    Interval valid;  // positive subinterval of v around the expansion point
};

// Invert f = u/v: gamma = -S(f)(x0)/2 (NonConstantSchwarzian when S(f) is
// not constant over the domain), then an explicit initial-value construction
// of u and v at x0 with W(u, v) = f'(x0).
RecoveredRatio recover_uv(const C4Function& f, double x0);

struct ClassifyOptions {
    int grid = 33;
    double cond_tol = 1e-8;            // necessary residuals
    double system_tol = 1e-8;          // diagonal system sums
    double reconstruction_tol = 1e-9;  // sup |f - u/v| after recovery
    double gamma_tol = 1e-8;           // gamma agreement between the two generators
    double product_tol = 1e-8;         // relative |p1 q1 - eta * v z|
};

enum class Verdict {
    ConfirmedFamily,
    NecessaryFail,
    ReconstructionFail,
};

struct ClassifyResult {
    Verdict verdict;
    std::string detail;  // which condition failed, or a summary on success

    double gamma = 0;
    std::array<double, 4> f_coeffs{};
    std::array<double, 4> g_coeffs{};
    double eta = 0;               // constant p1 q1 / (v z), folded into u, v
    double p_equal_fraction = 0;  // fraction of grid with |p1 - p2| < 1e-9

    ResidualReport residuals;
    DiagonalSystemReport system;
};

// Decide whether a pair of means sits in the solution family: necessary
// residuals and the diagonal system first (NecessaryFail), then generator
// recovery through recover_uv on both sides (ReconstructionFail), then the
// weight-product identity p1 q1 = eta * v z with constant eta > 0.
ClassifyResult classify_solution(const BajraktarevicMean& mf,
                                 const BajraktarevicMean& mg,
                                 const ClassifyOptions& opts = {});

}  // namespace bajra
