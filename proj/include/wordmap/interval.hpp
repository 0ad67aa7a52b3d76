#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "wordmap/common.hpp"

namespace wordmap {

/// Closed interval [lo, hi] with outward nextafter-widening after every
/// operation.  Widening by one ulp in each direction dominates the rounding
/// error of the preceding double operation whatever the active rounding mode,
/// so containment is preserved without touching the FPU environment.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double exact) : lo(exact), hi(exact) {}
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(lo <= hi)) throw invariant_error("interval: lo > hi");
    }

    static Interval widen(double l, double h) {
        return Interval(std::nextafter(l, -std::numeric_limits<double>::infinity()),
                        std::nextafter(h, std::numeric_limits<double>::infinity()));
    }

    bool contains(double x) const { return lo <= x && x <= hi; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }

    Interval operator+(const Interval& o) const { return widen(lo + o.lo, hi + o.hi); }
    Interval operator-(const Interval& o) const { return widen(lo - o.hi, hi - o.lo); }

    Interval operator*(const Interval& o) const {
        const double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return widen(std::min(std::min(a, b), std::min(c, d)),
                     std::max(std::max(a, b), std::max(c, d)));
    }

    Interval operator/(double positive) const {
        if (!(positive > 0.0)) throw invariant_error("interval: division by non-positive scalar");
        return widen(lo / positive, hi / positive);
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }

    static Interval max(const Interval& a, const Interval& b) {
        return Interval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
    }
};

}  // namespace wordmap
