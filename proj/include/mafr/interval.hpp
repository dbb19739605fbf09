#pragma once

#include <cmath>

#include "mafr/errors.hpp"

namespace mafr {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
            throw ParameterError("interval: endpoints must be finite with lo < hi");
        }
    }

    double length() const noexcept { return hi - lo; }

    // Membership with a small relative slack for grid round-off.
    bool contains(double t) const noexcept {
        const double eps = 1e-12 * length();
        return t >= lo - eps && t <= hi + eps;
    }

    double clamp(double t) const noexcept {
        if (t < lo) return lo;
        if (t > hi) return hi;
        return t;
    }
};

} // namespace mafr
