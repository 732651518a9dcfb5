#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "meshplot/axis.hpp"
#include "meshplot/color.hpp"
#include "meshplot/errors.hpp"
#include "meshplot/mesh.hpp"
#include "meshplot/points.hpp"
#include "meshplot/svg.hpp"
#include "meshplot/table.hpp"

namespace meshplot {

struct PlotDef {
    enum class Kind { matrix, scatter };

    Kind kind = Kind::matrix;
    std::string source = "data";
    std::optional<ColumnRef> x_ref, y_ref, meta_ref;
    std::size_t rows = 0, cols = 0;  // matrix only
    std::optional<MeshOrdering> ordering;
    std::string x_filter_src, y_filter_src, meta_filter_src;
    ExprPtr x_filter, y_filter, meta_filter;
    bool labels = false;  // nodes-near-coords
    double label_dx_pt = 0.0, label_dy_pt = 0.0;

    std::size_t spec_line = 0;  // line of the [plot] header, for messages
    bool kind_set = false;
};

struct PlotSpec {
    AxisConfig axis;
    std::string colormap = "viridis";
    bool colorbar = false;
    MeshOrdering ordering_default = MeshOrdering::rowwise;
    std::map<std::string, std::string> sources;  // logical name -> file path
    bool header = false;
    std::vector<PlotDef> plots;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline Error spec_error(errc code, std::size_t line, const std::string& message) {
    return Error(code, "line " + std::to_string(line) + ": " + message);
}

inline bool parse_spec_bool(std::string_view value, std::size_t line, std::string_view key) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw spec_error(errc::spec_syntax, line,
                     std::string(key) + " must be true or false, got '" + std::string(value) +
                         "'");
}

inline std::size_t parse_spec_uint(std::string_view value, std::size_t line,
                                   std::string_view key) {
    std::size_t out = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size() || out == 0)
        throw spec_error(errc::spec_syntax, line,
                         std::string(key) + " must be a positive integer, got '" +
                             std::string(value) + "'");
    return out;
}

inline double parse_spec_float(std::string_view value, std::size_t line, std::string_view key) {
    auto parsed = parse_number(value);
    if (!parsed)
        throw spec_error(errc::spec_syntax, line,
                         std::string(key) + " must be a number, got '" + std::string(value) +
                             "'");
    return *parsed;
}

inline MeshOrdering parse_spec_ordering(std::string_view value, std::size_t line) {
    if (value == "colwise") return MeshOrdering::colwise;
    if (value == "rowwise") return MeshOrdering::rowwise;
    throw spec_error(errc::spec_syntax, line,
                     "ordering must be colwise or rowwise, got '" + std::string(value) + "'");
}

inline ExprPtr parse_spec_filter(std::string_view value, std::size_t line,
                                 std::string_view key) {
    try {
        return parse_expression(value);
    } catch (const Error& e) {
        throw spec_error(errc::bad_expression, line,
                         std::string(key) + ": " + e.what());
    }
}

}  // namespace detail

// Parses the line-oriented plot-spec format: `[axis]` and `[plot]` section
// headers, `key = value` lines, `#` comments. The key set is closed and
// filter expressions are parsed eagerly so errors surface before any
// rendering starts.
inline PlotSpec parse_spec(std::string_view text) {
    using detail::spec_error;
    using detail::trim;

    PlotSpec spec;
    enum class Section { none, axis, plot };
    Section section = Section::none;
    bool seen_axis = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        std::string_view line = raw;
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line == "[axis]") {
                if (seen_axis)
                    throw spec_error(errc::spec_syntax, line_no, "duplicate [axis] section");
                seen_axis = true;
                section = Section::axis;
            } else if (line == "[plot]") {
                section = Section::plot;
                PlotDef plot;
                plot.spec_line = line_no;
                spec.plots.push_back(plot);
            } else {
                throw spec_error(errc::spec_syntax, line_no,
                                 "unknown section '" + std::string(line) + "'");
            }
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw spec_error(errc::spec_syntax, line_no, "expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw spec_error(errc::spec_syntax, line_no, "empty key");

        if (section == Section::none)
            throw spec_error(errc::spec_syntax, line_no,
                             "key '" + key + "' outside any section");

        if (section == Section::axis) {
            if (key == "title") spec.axis.title = value;
            else if (key == "xlabel") spec.axis.xlabel = value;
            else if (key == "ylabel") spec.axis.ylabel = value;
            else if (key == "grid") {
                if (value == "major") spec.axis.grid_major = true;
                else if (value == "none") spec.axis.grid_major = false;
                else throw spec_error(errc::spec_syntax, line_no,
                                      "grid must be major or none, got '" + value + "'");
            } else if (key == "enlarge-limits")
                spec.axis.enlarge = detail::parse_spec_bool(value, line_no, key);
            else if (key == "colormap") {
                if (!find_colormap(value))
                    throw spec_error(errc::spec_syntax, line_no,
                                     "unknown colormap '" + value + "'");
                spec.colormap = value;
            } else if (key == "colorbar")
                spec.colorbar = detail::parse_spec_bool(value, line_no, key);
            else if (key == "point-meta") {
                if (value != "explicit")
                    throw spec_error(errc::spec_syntax, line_no,
                                     "point-meta must be explicit, got '" + value + "'");
            } else if (key == "mesh-ordering")
                spec.ordering_default = detail::parse_spec_ordering(value, line_no);
            else if (key == "axis-equal")
                spec.axis.axis_equal = detail::parse_spec_bool(value, line_no, key);
            else if (key == "tick-align") {
                if (value == "outside") spec.axis.tick_align_outside = true;
                else if (value == "inside") spec.axis.tick_align_outside = false;
                else throw spec_error(errc::spec_syntax, line_no,
                                      "tick-align must be outside or inside, got '" + value +
                                          "'");
            } else if (key == "data")
                spec.sources["data"] = value;
            else if (key == "header")
                spec.header = detail::parse_spec_bool(value, line_no, key);
            else
                throw spec_error(errc::unknown_key, line_no,
                                 "unknown key '" + key + "' in [axis]");
            continue;
        }

        PlotDef& plot = spec.plots.back();
        if (key == "kind") {
            if (value == "matrix") plot.kind = PlotDef::Kind::matrix;
            else if (value == "scatter") plot.kind = PlotDef::Kind::scatter;
            else throw spec_error(errc::spec_syntax, line_no,
                                  "kind must be matrix or scatter, got '" + value + "'");
            plot.kind_set = true;
        } else if (key == "source") plot.source = value;
        else if (key == "x") plot.x_ref = ColumnRef{value};
        else if (key == "y") plot.y_ref = ColumnRef{value};
        else if (key == "meta") plot.meta_ref = ColumnRef{value};
        else if (key == "rows") plot.rows = detail::parse_spec_uint(value, line_no, key);
        else if (key == "cols") plot.cols = detail::parse_spec_uint(value, line_no, key);
        else if (key == "ordering") plot.ordering = detail::parse_spec_ordering(value, line_no);
        else if (key == "x-filter") {
            plot.x_filter_src = value;
            plot.x_filter = detail::parse_spec_filter(value, line_no, key);
        } else if (key == "y-filter") {
            plot.y_filter_src = value;
            plot.y_filter = detail::parse_spec_filter(value, line_no, key);
        } else if (key == "meta-filter") {
            plot.meta_filter_src = value;
            plot.meta_filter = detail::parse_spec_filter(value, line_no, key);
        } else if (key == "nodes-near-coords")
            plot.labels = detail::parse_spec_bool(value, line_no, key);
        else if (key == "label-xshift-pt")
            plot.label_dx_pt = detail::parse_spec_float(value, line_no, key);
        else if (key == "label-yshift-pt")
            plot.label_dy_pt = detail::parse_spec_float(value, line_no, key);
        else
            throw spec_error(errc::unknown_key, line_no,
                             "unknown key '" + key + "' in [plot]");
    }

    if (spec.plots.empty())
        throw Error(errc::missing_required, "spec declares no [plot] section");
    for (const PlotDef& plot : spec.plots) {
        if (!plot.kind_set)
            throw spec_error(errc::missing_required, plot.spec_line,
                             "plot is missing required key 'kind'");
        if (plot.kind == PlotDef::Kind::matrix) {
            if (plot.rows == 0)
                throw spec_error(errc::missing_required, plot.spec_line,
                                 "matrix plot is missing required key 'rows'");
            if (plot.cols == 0)
                throw spec_error(errc::missing_required, plot.spec_line,
                                 "matrix plot is missing required key 'cols'");
        } else if (!plot.meta_filter_src.empty()) {
            throw spec_error(errc::spec_syntax, plot.spec_line,
                             "meta-filter applies to matrix plots only");
        }
        if (spec.sources.find(plot.source) == spec.sources.end())
            throw spec_error(errc::missing_required, plot.spec_line,
                             "plot references undeclared data source '" + plot.source +
                                 "' (missing 'data' key in [axis])");
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Pipeline orchestration
// ---------------------------------------------------------------------------

namespace detail {

struct ResolvedPlot {
    const PlotDef* def;
    std::vector<PlotPoint> points;          // post-filter
    std::optional<MatrixGrid> grid;         // matrix plots
};

inline std::vector<ResolvedPlot> resolve_plots(const PlotSpec& spec,
                                               const std::map<std::string, DataTable>& tables,
                                               DiagnosticSink* diagnostics) {
    std::vector<ResolvedPlot> resolved;
    for (const PlotDef& plot : spec.plots) {
        ResolvedPlot rp;
        rp.def = &plot;
        auto it = tables.find(plot.source);
        if (it == tables.end())
            throw Error(errc::missing_required, "no data table named '" + plot.source + "'");
        const DataTable& table = it->second;
        rp.points = extract_points(table, plot.x_ref, plot.y_ref, plot.meta_ref);
        rp.points = apply_filters(std::move(rp.points), plot.x_filter, plot.y_filter);
        if (plot.kind == PlotDef::Kind::matrix) {
            rp.points = apply_meta_filter(std::move(rp.points), plot.meta_filter);
            rp.grid = build_grid(rp.points, plot.rows, plot.cols,
                                 plot.ordering.value_or(spec.ordering_default), diagnostics);
        }
        resolved.push_back(std::move(rp));
    }
    return resolved;
}

}  // namespace detail

// Runs the full pipeline over already-parsed inputs and assembles the
// render model. The meta range is shared across every plot on the axis.
inline Scene build_scene(const PlotSpec& spec, const std::map<std::string, DataTable>& tables,
                         const CanvasSpec& canvas, bool with_colorbar,
                         DiagnosticSink* diagnostics = nullptr) {
    auto resolved = detail::resolve_plots(spec, tables, diagnostics);

    // Combined data extents: matrix plots contribute their full cell
    // rectangle, scatter plots their undropped points.
    bool has_extent = false;
    Limits extents{0, 0, 0, 0};
    auto include = [&](double x_min, double x_max, double y_min, double y_max) {
        if (!has_extent) {
            extents = {x_min, x_max, y_min, y_max};
            has_extent = true;
        } else {
            extents.x_min = std::min(extents.x_min, x_min);
            extents.x_max = std::max(extents.x_max, x_max);
            extents.y_min = std::min(extents.y_min, y_min);
            extents.y_max = std::max(extents.y_max, y_max);
        }
    };
    for (const auto& rp : resolved) {
        if (rp.grid) {
            GridExtent ext = grid_extent(*rp.grid);
            include(ext.x_min, ext.x_max, ext.y_min, ext.y_max);
        } else {
            for (const PlotPoint& p : rp.points)
                if (!p.dropped) include(p.x, p.x, p.y, p.y);
        }
    }
    if (!has_extent)
        throw Error(errc::empty_scene, "nothing to render: every point is dropped");

    Scene scene;
    scene.axis_config = spec.axis;
    scene.canvas = canvas;
    Limits enlarged = compute_limits(extents, spec.axis.enlarge);
    scene.limits = fit_limits(enlarged, canvas, spec.axis.axis_equal);
    scene.transform = make_transform(enlarged, canvas, spec.axis.axis_equal);
    scene.x_ticks = generate_ticks(scene.limits.x_min, scene.limits.x_max);
    scene.y_ticks = generate_ticks(scene.limits.y_min, scene.limits.y_max);

    // One meta range across all plots; only needed when something is
    // actually colored by it.
    bool needs_meta = with_colorbar;
    for (const auto& rp : resolved)
        if (rp.grid) needs_meta = true;
    std::optional<MetaRange> range;
    if (needs_meta) {
        std::vector<PlotPoint> all_points;
        for (const auto& rp : resolved)
            all_points.insert(all_points.end(), rp.points.begin(), rp.points.end());
        range = compute_meta_range(all_points);
    }

    const ColorMap& cmap = *find_colormap(spec.colormap);
    for (const auto& rp : resolved) {
        if (rp.grid) {
            const MatrixGrid& grid = *rp.grid;
            for (std::size_t r = 0; r < grid.rows; ++r)
                for (std::size_t c = 0; c < grid.cols; ++c) {
                    const PlotPoint& p = grid.at(r, c);
                    if (p.dropped || std::isnan(p.meta)) continue;  // NaN = gap
                    CellRect rect = cell_bounds(grid, r, c);
                    Rgb fill = sample_colormap(cmap, meta_to_unit(p.meta, *range));
                    scene.cells.push_back({rect, fill});
                }
        } else {
            double dx = format_length(rp.def->label_dx_pt);
            double dy = -format_length(rp.def->label_dy_pt);  // data-up shift, canvas-down y
            for (const PlotPoint& p : rp.points) {
                if (p.dropped) continue;
                double cx = scene.transform.to_canvas_x(p.x);
                double cy = scene.transform.to_canvas_y(p.y);
                if (cx < 0.0 || cx > canvas.width || cy < 0.0 || cy > canvas.height)
                    continue;  // clipped before Scene construction
                scene.marks.push_back({cx, cy, p.meta});
                if (rp.def->labels && !std::isnan(p.meta))
                    scene.labels.push_back({cx, cy, format_tick_label(p.meta), dx, dy});
            }
        }
    }

    if (with_colorbar && range)
        scene.colorbar = colorbar_model(*range, cmap);
    return scene;
}

// ---------------------------------------------------------------------------
// File-level driver
// ---------------------------------------------------------------------------

struct RunOverrides {
    std::optional<double> width, height;
    bool no_colorbar = false;
    bool verbose = false;
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(errc::io_error, "read failed on '" + path.string() + "'");
    return std::move(buf).str();
}

inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(errc::io_error, "cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(errc::io_error, "write failed on '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw Error(errc::io_error,
                    "cannot rename '" + tmp.string() + "' to '" + path.string() + "'");
}

}  // namespace detail

// Loads every declared data source, relative paths resolving against the
// spec file's directory.
inline std::map<std::string, DataTable> load_tables(const PlotSpec& spec,
                                                    const std::filesystem::path& spec_path) {
    std::map<std::string, DataTable> tables;
    for (const auto& [name, file] : spec.sources) {
        std::filesystem::path data_path(file);
        if (data_path.is_relative()) data_path = spec_path.parent_path() / data_path;
        std::string text = detail::read_file(data_path);
        tables[name] = parse_table(text, Separator::whitespace, spec.header);
    }
    return tables;
}

// parse -> load -> pipeline -> render -> atomic write. Returns a process
// exit status: 0 success, 1 spec/data semantic error, 2 I/O failure.
// Diagnostics and errors go to `err` as single lines.
inline int run(const std::filesystem::path& spec_path, const std::filesystem::path& out_path,
               const RunOverrides& overrides = {}, std::ostream& err = std::cerr) {
    try {
        std::string spec_text = detail::read_file(spec_path);
        PlotSpec spec = parse_spec(spec_text);
        auto tables = load_tables(spec, spec_path);

        CanvasSpec canvas;
        if (overrides.width) canvas.width = *overrides.width;
        if (overrides.height) canvas.height = *overrides.height;

        DiagnosticSink diagnostics;
        Scene scene = build_scene(spec, tables, canvas, spec.colorbar && !overrides.no_colorbar,
                                  &diagnostics);
        for (const Diagnostic& d : diagnostics) err << "warning: " << d.message << "\n";
        if (overrides.verbose)
            err << "meshplot: " << spec.plots.size() << " plot(s), " << scene.cells.size()
                << " cell(s), " << scene.marks.size() << " mark(s)\n";

        detail::write_file_atomic(out_path, render_scene(scene));
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == errc::io_error ? 2 : 1;
    }
}

// Validates a spec and its data without rendering: parses everything,
// resolves references, checks grid shapes. Returns the same exit codes
// as run().
inline int check(const std::filesystem::path& spec_path, std::ostream& err = std::cerr) {
    try {
        PlotSpec spec = parse_spec(detail::read_file(spec_path));
        auto tables = load_tables(spec, spec_path);
        DiagnosticSink diagnostics;
        detail::resolve_plots(spec, tables, &diagnostics);
        for (const Diagnostic& d : diagnostics) err << "warning: " << d.message << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == errc::io_error ? 2 : 1;
    }
}

}  // namespace meshplot
