#pragma once

#include <cmath>
#include <stdexcept>

namespace specprop {

/// Closed real interval [lower, upper] with lower < upper, both finite.
struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    Interval() = default;
    Interval(double l, double u) : lower(l), upper(u) {
        if (!std::isfinite(l) || !std::isfinite(u) || !(l < u))
            throw std::invalid_argument("Interval: requires finite lower < upper");
    }

    [[nodiscard]] double width() const { return upper - lower; }
    [[nodiscard]] double center() const { return 0.5 * (upper + lower); }
    [[nodiscard]] bool contains(double x) const { return x >= lower && x <= upper; }

    /// Affine image of x in [-1, 1].
    [[nodiscard]] double from_unit(double x) const { return center() + 0.5 * width() * x; }

    /// The reflected interval [-upper, -lower].
    [[nodiscard]] Interval reflected() const { return Interval(-upper, -lower); }
};

}  // namespace specprop
