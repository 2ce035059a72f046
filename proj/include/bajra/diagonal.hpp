#pragma once

#include <array>
#include <functional>

#include "bajra/mean.hpp"

namespace bajra {

// Closed-form partial derivatives of A(x, y) on the diagonal y = x, written
// in terms of f, p1, p2 and their exact derivatives.  Conventions:
//   first(i):  dA/dx_i                (i = 1 or 2)
//   mixed2:    d^2 A / dx dy
//   mixed3:    d^3 A / dx^2 dy
//   mixed4:    d^4 A / dx^2 dy^2
double formula_first(const BajraktarevicMean& m, int i, double x);
double formula_mixed2(const BajraktarevicMean& m, double x);
double formula_mixed3(const BajraktarevicMean& m, double x);
double formula_mixed4(const BajraktarevicMean& m, double x);

struct DiagonalDerivatives {
    double d1, d2;    // dA/dx, dA/dy
    double d12;       // d^2 A / dx dy
    double d112;      // d^3 A / dx^2 dy
    double d1122;     // d^4 A / dx^2 dy^2
    double at;
};

DiagonalDerivatives diagonal_derivatives(const BajraktarevicMean& m, double x);

// (d^alpha/dx^alpha d^beta/dy^beta A)(x, x) by central tensor-product
// stencils, orders alpha, beta in 0..2, evaluated at the diagonal point.
// The full stencil must fit inside domain^2 or StencilOutOfDomain is thrown.
double fd_partial(const std::function<double(double, double)>& mean,
                  const Interval& domain, int alpha, int beta, double x, double h);

struct FdSteps {
    double first = 1e-4;   // order-1 stencils
    double mixed2 = 1e-4;  // (1,1)
    double mixed3 = 1e-3;  // (2,1)
    double mixed4 = 4e-3;  // (2,2)

    double largest() const { return mixed4; }
};

// Pass bands for |closed - fd| per order (first, mixed2, mixed3, mixed4);
// they reflect the O(h^2) truncation of the stencils at the default steps
// plus the round-off amplification of the high-order ones.
inline constexpr std::array<double, 4> kDiagonalTolerances{1e-7, 1e-6, 1e-5, 5e-4};

struct FormulaComparison {
    double at = 0;
    bool tested = false;  // false: point too close to the boundary to difference
    std::array<double, 4> closed{};
    std::array<double, 4> fd{};
    std::array<double, 4> discrepancy{};
    std::array<double, 4> tolerance{};
    std::array<bool, 4> pass{};

    bool all_pass() const {
        return tested && pass[0] && pass[1] && pass[2] && pass[3];
    }
};

// Closed forms vs finite differences at one diagonal point.  Slot 0 holds
// first(1) against the (1, 0) stencil; slots 1..3 hold the mixed formulas.
// A point closer than 6 * steps.largest() to either end is reported with
// tested = false instead of risking a truncated stencil.
FormulaComparison compare_formulas(const BajraktarevicMean& m, double x,
                                   const FdSteps& steps = {});

}  // namespace bajra
