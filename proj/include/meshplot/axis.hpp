#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "meshplot/ticks.hpp"

namespace meshplot {

struct AxisConfig {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool grid_major = false;
    bool enlarge = false;
    bool axis_equal = false;
    bool tick_align_outside = false;
};

struct Limits {
    double x_min, x_max, y_min, y_max;
};

struct Margins {
    double left, right, top, bottom;
};

// Output canvas in px. The right margin leaves room for a colorbar.
struct CanvasSpec {
    double width = 640.0;
    double height = 480.0;
    Margins margins{70.0, 90.0, 40.0, 50.0};

    double inner_width() const { return width - margins.left - margins.right; }
    double inner_height() const { return height - margins.top - margins.bottom; }
};

// Data -> canvas mapping. Canvas y grows downward, data y upward, so the
// y map flips against canvas_height. With axis_equal the two scales are
// bitwise equal.
struct Transform {
    double x_scale, y_scale;    // canvas px per data unit
    double x_offset, y_offset;  // px
    double canvas_height;       // px, for the y flip

    double to_canvas_x(double x) const { return x_offset + x_scale * x; }
    double to_canvas_y(double y) const { return canvas_height - (y_offset + y_scale * y); }
    double to_data_x(double cx) const { return (cx - x_offset) / x_scale; }
    double to_data_y(double cy) const { return (canvas_height - cy - y_offset) / y_scale; }
};

// Widens each axis by 10% of its span per side when enlarging; zero-span
// axes widen by +-0.5 either way. Enlargement preserves the midpoint.
inline Limits compute_limits(Limits extents, bool enlarge) {
    auto widen = [enlarge](double& lo, double& hi) {
        if (lo == hi) {
            if (enlarge) { lo -= 0.5; hi += 0.5; }
            return;
        }
        if (!enlarge) return;
        double pad = 0.1 * (hi - lo);
        lo -= pad;
        hi += pad;
    };
    widen(extents.x_min, extents.x_max);
    widen(extents.y_min, extents.y_max);
    return extents;
}

// The limits actually mapped onto the inner box. Without axis_equal this
// is the input (zero spans normalized to +-0.5); with it, the axis that
// would get the larger scale is padded symmetrically about its midpoint
// until both axes share the smaller scale.
inline Limits fit_limits(Limits limits, const CanvasSpec& canvas, bool axis_equal) {
    auto normalize = [](double& lo, double& hi) {
        if (lo == hi) { lo -= 0.5; hi += 0.5; }
    };
    normalize(limits.x_min, limits.x_max);
    normalize(limits.y_min, limits.y_max);
    if (!axis_equal) return limits;

    double x_fit = canvas.inner_width() / (limits.x_max - limits.x_min);
    double y_fit = canvas.inner_height() / (limits.y_max - limits.y_min);
    double scale = std::min(x_fit, y_fit);
    auto pad_to = [scale](double& lo, double& hi, double inner) {
        double half = inner / scale / 2.0;
        double mid = (lo + hi) / 2.0;
        lo = mid - half;
        hi = mid + half;
    };
    if (x_fit > y_fit) pad_to(limits.x_min, limits.x_max, canvas.inner_width());
    else if (y_fit > x_fit) pad_to(limits.y_min, limits.y_max, canvas.inner_height());
    return limits;
}

inline Transform make_transform(const Limits& limits, const CanvasSpec& canvas,
                                bool axis_equal) {
    Limits fitted = fit_limits(limits, canvas, axis_equal);
    Transform t{};
    t.x_scale = canvas.inner_width() / (fitted.x_max - fitted.x_min);
    t.y_scale = canvas.inner_height() / (fitted.y_max - fitted.y_min);
    if (axis_equal) {
        double scale = std::min(t.x_scale, t.y_scale);
        t.x_scale = scale;
        t.y_scale = scale;
    }
    t.x_offset = canvas.margins.left - t.x_scale * fitted.x_min;
    t.y_offset = canvas.margins.bottom - t.y_scale * fitted.y_min;
    t.canvas_height = canvas.height;
    return t;
}

}  // namespace meshplot
