#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "meshplot/errors.hpp"
#include "meshplot/numformat.hpp"
#include "meshplot/points.hpp"

namespace meshplot {

// Convention for mapping a linear point sequence onto the grid:
// colwise fills columns first (row index varies fastest), rowwise fills
// rows first (column index varies fastest).
enum class MeshOrdering { colwise, rowwise };

// rows x cols arrangement of points. Indexing follows the declared
// ordering; cell coordinates always come from the stored points, never
// from the (r, c) indices.
struct MatrixGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    MeshOrdering ordering = MeshOrdering::colwise;
    std::vector<PlotPoint> cells;  // row-major storage

    const PlotPoint& at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
    PlotPoint& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }
};

// Flat-shaded cell rectangle in data units.
struct CellRect {
    double x_min, x_max, y_min, y_max;
    double fill_meta;
};

namespace detail {

// Which coordinate changes fastest between consecutive points. Votes over
// all adjacent pairs where exactly one coordinate changes; pairs touching
// NaN coordinates are skipped.
enum class Fastest { x, y, indeterminate };

inline Fastest fastest_varying(const std::vector<PlotPoint>& points) {
    std::size_t votes_x = 0, votes_y = 0;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const PlotPoint& a = points[k];
        const PlotPoint& b = points[k + 1];
        if (coords_nan(a.x, a.y) || coords_nan(b.x, b.y)) continue;
        bool dx = a.x != b.x;
        bool dy = a.y != b.y;
        if (dx && !dy) ++votes_x;
        if (dy && !dx) ++votes_y;
    }
    if (votes_x > votes_y) return Fastest::x;
    if (votes_y > votes_x) return Fastest::y;
    return Fastest::indeterminate;
}

}  // namespace detail

// Arranges points into a grid. colwise maps linear index k to
// (r = k mod rows, c = k div rows); rowwise maps k to
// (r = k div cols, c = k mod cols). When the declared ordering disagrees
// with the coordinate that actually varies fastest in the data, one
// OrderingMismatch diagnostic is emitted and the declaration still wins
// for indexing.
inline MatrixGrid build_grid(const std::vector<PlotPoint>& points, std::size_t rows,
                             std::size_t cols, MeshOrdering ordering,
                             DiagnosticSink* diagnostics = nullptr) {
    if (rows * cols != points.size())
        throw Error(errc::shape_mismatch, "grid shape mismatch: expected " +
                                              std::to_string(rows * cols) + " points (" +
                                              std::to_string(rows) + "x" + std::to_string(cols) +
                                              "), got " + std::to_string(points.size()));

    MatrixGrid grid;
    grid.rows = rows;
    grid.cols = cols;
    grid.ordering = ordering;
    grid.cells.resize(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        std::size_t r = ordering == MeshOrdering::colwise ? k % rows : k / cols;
        std::size_t c = ordering == MeshOrdering::colwise ? k / rows : k % cols;
        grid.at(r, c) = points[k];
    }

    if (diagnostics) {
        auto fastest = detail::fastest_varying(points);
        auto expected = ordering == MeshOrdering::colwise ? detail::Fastest::y
                                                          : detail::Fastest::x;
        if (fastest != detail::Fastest::indeterminate && fastest != expected) {
            const char* declared = ordering == MeshOrdering::colwise ? "colwise" : "rowwise";
            const char* varies = fastest == detail::Fastest::x ? "x" : "y";
            diagnostics->push_back({std::string("mesh ordering declared ") + declared +
                                    " but " + varies + " varies fastest in the data"});
        }
    }
    return grid;
}

// Points in linear order under the grid's declared ordering; inverse of
// build_grid's arrangement.
inline std::vector<PlotPoint> flatten_grid(const MatrixGrid& grid) {
    std::vector<PlotPoint> points(grid.rows * grid.cols);
    for (std::size_t r = 0; r < grid.rows; ++r)
        for (std::size_t c = 0; c < grid.cols; ++c) {
            std::size_t k = grid.ordering == MeshOrdering::colwise ? c * grid.rows + r
                                                                   : r * grid.cols + c;
            points[k] = grid.at(r, c);
        }
    return points;
}

namespace detail {

// The axis-line positions of a rectilinear grid: xs[i] is the shared x of
// every cell whose varying index equals i (likewise ys). x_along_rows
// records whether x varies with the row index or the column index.
struct GridAxes {
    std::vector<double> xs, ys;
    bool x_along_rows = false;
    bool y_along_rows = false;
};

// Extracts the line positions for one coordinate. A coordinate "lies
// along" an index when it is constant while the other index varies;
// NaN cells do not participate. Returns false when neither index works.
template <typename Get>
bool lines_along(const MatrixGrid& grid, bool along_rows, Get get,
                 std::vector<double>* lines) {
    std::size_t n_lines = along_rows ? grid.rows : grid.cols;
    std::size_t n_span = along_rows ? grid.cols : grid.rows;
    lines->assign(n_lines, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < n_lines; ++i) {
        for (std::size_t j = 0; j < n_span; ++j) {
            const PlotPoint& p = along_rows ? grid.at(i, j) : grid.at(j, i);
            double v = get(p);
            if (std::isnan(v)) continue;
            if (std::isnan((*lines)[i])) (*lines)[i] = v;
            else if ((*lines)[i] != v) return false;
        }
    }
    return true;
}

inline void check_monotone(const std::vector<double>& lines, const char* axis) {
    int direction = 0;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (double v : lines) {
        if (std::isnan(v)) continue;
        if (!std::isnan(prev)) {
            if (v == prev)
                throw Error(errc::degenerate_spacing,
                            std::string("degenerate spacing: duplicate ") + axis +
                                " grid coordinate " + format_shortest(v));
            int d = v > prev ? 1 : -1;
            if (direction != 0 && d != direction)
                throw Error(errc::degenerate_spacing,
                            std::string("degenerate spacing: ") + axis +
                                " grid coordinates are not monotone");
            direction = d;
        }
        prev = v;
    }
}

inline GridAxes grid_axes(const MatrixGrid& grid) {
    GridAxes axes;
    auto get_x = [](const PlotPoint& p) { return p.x; };
    auto get_y = [](const PlotPoint& p) { return p.y; };

    // Prefer the conventional layout (x along columns, y along rows).
    if (lines_along(grid, false, get_x, &axes.xs)) axes.x_along_rows = false;
    else if (lines_along(grid, true, get_x, &axes.xs)) axes.x_along_rows = true;
    else throw Error(errc::degenerate_spacing, "grid is not rectilinear along x");

    if (lines_along(grid, true, get_y, &axes.ys)) axes.y_along_rows = true;
    else if (lines_along(grid, false, get_y, &axes.ys)) axes.y_along_rows = false;
    else throw Error(errc::degenerate_spacing, "grid is not rectilinear along y");

    check_monotone(axes.xs, "x");
    check_monotone(axes.ys, "y");
    return axes;
}

// Cell extent along one axis: boundaries at midpoints between neighboring
// line positions, with boundary lines extended outward by half the
// adjacent spacing. A single-line axis gets the +-0.5 convention.
inline std::pair<double, double> line_bounds(const std::vector<double>& lines, std::size_t i,
                                             const char* axis) {
    double v = lines[i];
    if (std::isnan(v))
        throw Error(errc::degenerate_spacing,
                    std::string("grid line undefined along ") + axis +
                        " (all cells on it are dropped)");
    if (lines.size() == 1) return {v - 0.5, v + 0.5};

    auto neighbor = [&](std::size_t j) {
        if (std::isnan(lines[j]))
            throw Error(errc::degenerate_spacing,
                        std::string("grid line undefined along ") + axis +
                            " (all cells on it are dropped)");
        return lines[j];
    };
    double lo = i == 0 ? v - (neighbor(1) - v) / 2.0 : (neighbor(i - 1) + v) / 2.0;
    double hi = i + 1 == lines.size() ? v + (v - neighbor(i - 1)) / 2.0
                                      : (v + neighbor(i + 1)) / 2.0;
    return {std::min(lo, hi), std::max(lo, hi)};
}

}  // namespace detail

// Flat-cell rectangle for cell (r, c): boundaries at midpoints between the
// cell's coordinate and its neighbors', half-spacing extension at the grid
// edge. Defined even for dropped cells as long as a sibling on the same
// line fixes the line position.
inline CellRect cell_bounds(const MatrixGrid& grid, std::size_t r, std::size_t c) {
    detail::GridAxes axes = detail::grid_axes(grid);
    auto [x_min, x_max] = detail::line_bounds(axes.xs, axes.x_along_rows ? r : c, "x");
    auto [y_min, y_max] = detail::line_bounds(axes.ys, axes.y_along_rows ? r : c, "y");
    return {x_min, x_max, y_min, y_max, grid.at(r, c).meta};
}

// Data-space rectangle covered by the whole grid (the union of its cells).
struct GridExtent {
    double x_min, x_max, y_min, y_max;
};

inline GridExtent grid_extent(const MatrixGrid& grid) {
    detail::GridAxes axes = detail::grid_axes(grid);
    auto span = [](const std::vector<double>& lines, const char* axis) {
        auto lo = detail::line_bounds(lines, 0, axis);
        auto hi = detail::line_bounds(lines, lines.size() - 1, axis);
        return std::pair<double, double>{std::min(lo.first, hi.first),
                                         std::max(lo.second, hi.second)};
    };
    auto [x_min, x_max] = span(axes.xs, "x");
    auto [y_min, y_max] = span(axes.ys, "y");
    return {x_min, x_max, y_min, y_max};
}

}  // namespace meshplot
