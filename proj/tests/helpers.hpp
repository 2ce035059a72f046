#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "bajra/c4function.hpp"
#include "bajra/interval.hpp"

// Test-side oracles, deliberately implemented differently from the library:
// long power series where the library switches branches, plain central
// differences where the library uses exact recurrences.
namespace oracle {

// 16-term series for sum_k g^k x^(2k+1)/(2k+1)!; converges to full double
// precision for |g x^2| up to ~30.
inline double sgamma_series(double g, double x) {
    double term = x, acc = x;
    for (int k = 1; k < 16; ++k) {
        term *= g * x * x / ((2.0 * k) * (2.0 * k + 1.0));
        acc += term;
    }
    return acc;
}

inline double cgamma_series(double g, double x) {
    double term = 1, acc = 1;
    for (int k = 1; k < 16; ++k) {
        term *= g * x * x / ((2.0 * k - 1.0) * (2.0 * k));
        acc += term;
    }
    return acc;
}

// Central difference of f's order-(k-1) derivative, for cross-checking the
// library's exact order-k values.
inline double fd_next_order(const bajra::C4Function& f, int k, double x, double h = 1e-5) {
    return (f.eval(k - 1, x + h) - f.eval(k - 1, x - h)) / (2 * h);
}

inline std::vector<double> grid(const bajra::Interval& dom, int n) {
    std::vector<double> pts(n);
    for (int i = 0; i < n; ++i)
        pts[i] = dom.lo + dom.width() * (i + 1.0) / (n + 1.0);
    return pts;
}

inline std::mt19937_64 test_rng(std::uint64_t salt = 0) {
    return std::mt19937_64(0xc0ffee + salt);
}

}  // namespace oracle
