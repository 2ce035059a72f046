#pragma once

#include <optional>
#include <stdexcept>

namespace bajra {

// Open interval (lo, hi).  Membership is strict on both sides; everything in
// this library lives on open domains so that derivatives exist up to the edge
// of wherever we evaluate.
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi))
            throw std::invalid_argument("Interval: need lo < hi");
    }

    bool contains(double x) const noexcept { return lo < x && x < hi; }
    double width() const noexcept { return hi - lo; }
    double midpoint() const noexcept { return 0.5 * (lo + hi); }

    // Symmetric shrink, e.g. shrunk(0.15) trims 15% of the width off each end.
    Interval shrunk(double fraction) const {
        const double pad = fraction * width();
        return Interval(lo + pad, hi - pad);
    }
};

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    const double lo = a.lo > b.lo ? a.lo : b.lo;
    const double hi = a.hi < b.hi ? a.hi : b.hi;
    if (!(lo < hi)) return std::nullopt;
    return Interval(lo, hi);
}

}  // namespace bajra
