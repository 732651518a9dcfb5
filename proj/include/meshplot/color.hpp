#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "meshplot/errors.hpp"
#include "meshplot/points.hpp"
#include "meshplot/ticks.hpp"
#include "meshplot/viridis_data.hpp"

namespace meshplot {

struct Rgb {
    double r, g, b;  // channels in [0, 1]
};

// Piecewise-linear colormap: stop positions strictly increasing from 0 to 1.
struct ColorMap {
    std::string name;
    std::vector<std::pair<double, Rgb>> stops;
};

struct MetaRange {
    double lo, hi;
};

inline const ColorMap& viridis_colormap() {
    static const ColorMap cmap = [] {
        ColorMap m;
        m.name = "viridis";
        m.stops.reserve(256);
        for (std::size_t i = 0; i < 256; ++i)
            m.stops.push_back({static_cast<double>(i) / 255.0,
                               Rgb{detail::kViridisTable[i][0], detail::kViridisTable[i][1],
                                   detail::kViridisTable[i][2]}});
        return m;
    }();
    return cmap;
}

namespace detail {

inline std::map<std::string, ColorMap>& colormap_registry() {
    static std::map<std::string, ColorMap> registry = {{"viridis", viridis_colormap()}};
    return registry;
}

}  // namespace detail

// Name-keyed registry; "viridis" is always present. Registration is a
// setup-time operation, not thread-safe against concurrent lookups.
inline void register_colormap(ColorMap cmap) {
    std::string name = cmap.name;
    detail::colormap_registry()[name] = std::move(cmap);
}

inline const ColorMap* find_colormap(const std::string& name) {
    const auto& registry = detail::colormap_registry();
    auto it = registry.find(name);
    return it == registry.end() ? nullptr : &it->second;
}

// min/max over the finite metas of undropped points; NaN metas ignored.
inline MetaRange compute_meta_range(const std::vector<PlotPoint>& points) {
    bool seen = false;
    MetaRange range{0.0, 0.0};
    for (const PlotPoint& p : points) {
        if (p.dropped || !std::isfinite(p.meta)) continue;
        if (!seen) {
            range = {p.meta, p.meta};
            seen = true;
        } else {
            range.lo = std::min(range.lo, p.meta);
            range.hi = std::max(range.hi, p.meta);
        }
    }
    if (!seen) throw Error(errc::no_meta, "no finite point meta to derive a range from");
    return range;
}

// Normalizes meta into [0, 1], clamping out-of-range values. A degenerate
// range maps everything to mid-colormap.
inline double meta_to_unit(double meta, const MetaRange& range) {
    if (range.lo == range.hi) return 0.5;
    return std::clamp((meta - range.lo) / (range.hi - range.lo), 0.0, 1.0);
}

// Linear interpolation per channel between the bracketing stops; exact stop
// positions return the stop color untouched.
inline Rgb sample_colormap(const ColorMap& cmap, double t) {
    const auto& stops = cmap.stops;
    if (t <= stops.front().first) return stops.front().second;
    if (t >= stops.back().first) return stops.back().second;
    std::size_t hi = 1;
    while (stops[hi].first < t) ++hi;
    if (stops[hi].first == t) return stops[hi].second;
    const auto& [p0, c0] = stops[hi - 1];
    const auto& [p1, c1] = stops[hi];
    double u = (t - p0) / (p1 - p0);
    return {c0.r + u * (c1.r - c0.r), c0.g + u * (c1.g - c0.g), c0.b + u * (c1.b - c0.b)};
}

// Colorbar render model: a vertical gradient at the axis's right edge plus
// tick values over the meta range.
struct ColorbarModel {
    MetaRange range;
    std::vector<Rgb> samples;    // bottom (t=0) to top (t=1)
    std::vector<double> ticks;
};

inline ColorbarModel colorbar_model(const MetaRange& range, const ColorMap& cmap,
                                    std::size_t sample_count = 256) {
    ColorbarModel model;
    model.range = range;
    model.samples.reserve(sample_count);
    for (std::size_t i = 0; i < sample_count; ++i)
        model.samples.push_back(
            sample_colormap(cmap, static_cast<double>(i) / static_cast<double>(sample_count - 1)));
    model.ticks = range.lo == range.hi ? std::vector<double>{range.lo}
                                       : generate_ticks(range.lo, range.hi);
    return model;
}

}  // namespace meshplot
