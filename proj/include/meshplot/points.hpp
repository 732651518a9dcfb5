#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "meshplot/expr.hpp"
#include "meshplot/table.hpp"

namespace meshplot {

// One (x, y, meta) sample in data units. `dropped` is true exactly when
// x or y is NaN; dropped points stay in the list so grid shapes remain
// checkable, and renderers skip them.
struct PlotPoint {
    double x = 0.0;
    double y = 0.0;
    double meta = std::numeric_limits<double>::quiet_NaN();
    bool dropped = false;
    std::size_t source_row = 0;
};

namespace detail {

inline bool coords_nan(double x, double y) { return std::isnan(x) || std::isnan(y); }

}  // namespace detail

// Pulls one point per table row, in row order. Missing x/y refs default to
// columns 0 and 1; a missing meta ref leaves meta NaN.
inline std::vector<PlotPoint> extract_points(const DataTable& table,
                                             std::optional<ColumnRef> x_ref,
                                             std::optional<ColumnRef> y_ref,
                                             std::optional<ColumnRef> meta_ref) {
    std::size_t xc = resolve_column(table, x_ref.value_or(ColumnRef{"0"}));
    std::size_t yc = resolve_column(table, y_ref.value_or(ColumnRef{"1"}));
    std::optional<std::size_t> mc;
    if (meta_ref) mc = resolve_column(table, *meta_ref);

    std::vector<PlotPoint> points;
    points.reserve(table.row_count);
    for (std::size_t r = 0; r < table.row_count; ++r) {
        PlotPoint p;
        p.x = table.columns[xc][r];
        p.y = table.columns[yc][r];
        if (mc) p.meta = table.columns[*mc][r];
        p.dropped = detail::coords_nan(p.x, p.y);
        p.source_row = r;
        points.push_back(p);
    }
    return points;
}

// Applies per-coordinate filter expressions. Both filters see the point's
// original coordinates under the names x and y, so the pair is
// order-independent. A NaN result drops the point; list length and order
// are preserved.
inline std::vector<PlotPoint> apply_filters(std::vector<PlotPoint> points,
                                            const ExprPtr& x_filter,
                                            const ExprPtr& y_filter) {
    for (PlotPoint& p : points) {
        Env env{{"x", p.x}, {"y", p.y}};
        double nx = p.x;
        double ny = p.y;
        try {
            if (x_filter) nx = evaluate(x_filter, env);
            if (y_filter) ny = evaluate(y_filter, env);
        } catch (const Error& e) {
            if (e.code() != errc::unbound_variable) throw;
            throw Error(errc::unbound_variable,
                        std::string(e.what()) + " (row " + std::to_string(p.source_row) + ")");
        }
        p.x = nx;
        p.y = ny;
        p.dropped = detail::coords_nan(p.x, p.y);
    }
    return points;
}

// Threshold filter for matrix plots: the expression sees each point's meta
// bound as `col`, mirroring per-column filters like
// `if col > 50 then col else nan`. A NaN meta leaves the cell unfilled;
// coordinates and drop state are untouched.
inline std::vector<PlotPoint> apply_meta_filter(std::vector<PlotPoint> points,
                                                const ExprPtr& meta_filter) {
    if (!meta_filter) return points;
    for (PlotPoint& p : points)
        p.meta = evaluate(meta_filter, Env{{"col", p.meta}});
    return points;
}

}  // namespace meshplot
