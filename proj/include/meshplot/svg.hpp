#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meshplot/axis.hpp"
#include "meshplot/color.hpp"
#include "meshplot/errors.hpp"
#include "meshplot/mesh.hpp"

namespace meshplot {

// 1 TeX pt = 4/3 CSS px. Rounding to 3 decimals happens at serialization,
// not here.
inline double format_length(double points_tex) { return points_tex * 4.0 / 3.0; }

struct SceneCell {
    CellRect rect;  // data units
    Rgb fill;
};

struct SceneMark {
    double cx, cy;  // canvas px
    double meta;
};

struct SceneLabel {
    double cx, cy;  // canvas px, anchor point (the mark position)
    std::string text;
    double dx, dy;  // canvas px offsets, already converted from pt
};

// Fully resolved render model. Geometry that would fall outside the canvas
// is excluded before construction; render_scene only serializes.
struct Scene {
    AxisConfig axis_config;
    CanvasSpec canvas;
    Transform transform;
    Limits limits;  // the limits actually mapped onto the inner box
    std::vector<double> x_ticks, y_ticks;
    std::vector<SceneCell> cells;    // row-major cell order
    std::vector<SceneMark> marks;    // source_row order
    std::vector<SceneLabel> labels;  // source_row order
    std::optional<ColorbarModel> colorbar;
};

namespace detail {

// Fixed notation, exactly 3 decimals, locale-independent. Negative zero
// serializes as "0.000".
inline std::string fmt3(double value) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 3);
    std::string out(buf, res.ptr);
    return out == "-0.000" ? "0.000" : out;
}

inline std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string rgb_hex(const Rgb& color) {
    auto channel = [](double v) {
        long byte = std::lround(std::clamp(v, 0.0, 1.0) * 255.0);
        return static_cast<unsigned>(byte);
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(color.r), channel(color.g),
                  channel(color.b));
    return buf;
}

struct SvgWriter {
    std::string out;

    void line(double x1, double y1, double x2, double y2, std::string_view stroke,
              double width) {
        out += "<line x1=\"" + fmt3(x1) + "\" y1=\"" + fmt3(y1) + "\" x2=\"" + fmt3(x2) +
               "\" y2=\"" + fmt3(y2) + "\" stroke=\"" + std::string(stroke) +
               "\" stroke-width=\"" + fmt3(width) + "\"/>\n";
    }

    void rect(double x, double y, double w, double h, std::string_view fill,
              std::string_view extra = {}) {
        out += "<rect x=\"" + fmt3(x) + "\" y=\"" + fmt3(y) + "\" width=\"" + fmt3(w) +
               "\" height=\"" + fmt3(h) + "\" fill=\"" + std::string(fill) + "\"";
        out += extra;
        out += "/>\n";
    }

    void text(double x, double y, std::string_view content, double size,
              std::string_view anchor, std::string_view extra = {}) {
        out += "<text x=\"" + fmt3(x) + "\" y=\"" + fmt3(y) + "\" font-family=\"sans-serif\"" +
               " font-size=\"" + fmt3(size) + "\" text-anchor=\"" + std::string(anchor) + "\"";
        out += extra;
        out += ">" + xml_escape(content) + "</text>\n";
    }

    void open_group(std::string_view cls) {
        out += "<g class=\"" + std::string(cls) + "\">\n";
    }
    void close_group() { out += "</g>\n"; }
};

inline constexpr double kTickLength = 4.0;
inline constexpr double kMarkRadius = 2.0;
inline constexpr double kFontSize = 12.0;
inline constexpr double kTickFontSize = 10.0;
inline constexpr double kColorbarGap = 14.0;
inline constexpr double kColorbarWidth = 14.0;

}  // namespace detail

// Serializes the scene as a standalone SVG 1.1 document. Layers back to
// front: background, grid, matrix cells, frame/ticks/tick labels, marks,
// point labels, colorbar, titles. Every numeric attribute is fixed
// 3-decimal notation and element order is deterministic, so output is
// byte-identical across runs and platforms.
inline std::string render_scene(const Scene& scene) {
    if (scene.cells.empty() && scene.marks.empty())
        throw Error(errc::empty_scene, "scene has no cells and no marks");

    using namespace detail;
    const CanvasSpec& canvas = scene.canvas;
    const Transform& tf = scene.transform;
    double fx0 = canvas.margins.left;
    double fy0 = canvas.margins.top;
    double fx1 = canvas.width - canvas.margins.right;
    double fy1 = canvas.height - canvas.margins.bottom;

    SvgWriter w;
    w.out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    w.out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt3(canvas.width) +
             "\" height=\"" + fmt3(canvas.height) + "\" viewBox=\"0 0 " + fmt3(canvas.width) +
             " " + fmt3(canvas.height) + "\">\n";

    w.rect(0.0, 0.0, canvas.width, canvas.height, "#ffffff", " class=\"background\"");

    if (scene.axis_config.grid_major && (!scene.x_ticks.empty() || !scene.y_ticks.empty())) {
        w.open_group("grid");
        for (double t : scene.x_ticks) {
            double cx = tf.to_canvas_x(t);
            w.line(cx, fy0, cx, fy1, "#d9d9d9", 1.0);
        }
        for (double t : scene.y_ticks) {
            double cy = tf.to_canvas_y(t);
            w.line(fx0, cy, fx1, cy, "#d9d9d9", 1.0);
        }
        w.close_group();
    }

    if (!scene.cells.empty()) {
        w.open_group("cells");
        for (const SceneCell& cell : scene.cells) {
            double x = tf.to_canvas_x(cell.rect.x_min);
            double y = tf.to_canvas_y(cell.rect.y_max);
            double cw = (cell.rect.x_max - cell.rect.x_min) * tf.x_scale;
            double ch = (cell.rect.y_max - cell.rect.y_min) * tf.y_scale;
            w.rect(x, y, cw, ch, rgb_hex(cell.fill));
        }
        w.close_group();
    }

    w.open_group("frame");
    w.rect(fx0, fy0, fx1 - fx0, fy1 - fy0, "none", " stroke=\"#000000\" stroke-width=\"1.000\"");
    // Outside ticks extend away from the plot box; inside ticks point in.
    double tick = scene.axis_config.tick_align_outside ? kTickLength : -kTickLength;
    if (!scene.x_ticks.empty() || !scene.y_ticks.empty()) {
        w.open_group("ticks");
        for (double t : scene.x_ticks) {
            double cx = tf.to_canvas_x(t);
            w.line(cx, fy1, cx, fy1 + tick, "#000000", 1.0);
        }
        for (double t : scene.y_ticks) {
            double cy = tf.to_canvas_y(t);
            w.line(fx0, cy, fx0 - tick, cy, "#000000", 1.0);
        }
        w.close_group();
        w.open_group("tick-labels");
        for (double t : scene.x_ticks)
            w.text(tf.to_canvas_x(t), fy1 + kTickLength + 11.0, format_tick_label(t),
                   kTickFontSize, "middle");
        for (double t : scene.y_ticks)
            w.text(fx0 - kTickLength - 4.0, tf.to_canvas_y(t) + 3.5, format_tick_label(t),
                   kTickFontSize, "end");
        w.close_group();
    }
    w.close_group();

    if (!scene.marks.empty()) {
        w.open_group("marks");
        for (const SceneMark& mark : scene.marks)
            w.out += "<circle cx=\"" + fmt3(mark.cx) + "\" cy=\"" + fmt3(mark.cy) + "\" r=\"" +
                     fmt3(kMarkRadius) + "\" fill=\"#000000\"/>\n";
        w.close_group();
    }

    if (!scene.labels.empty()) {
        w.open_group("point-labels");
        for (const SceneLabel& label : scene.labels)
            w.text(label.cx + label.dx, label.cy + label.dy, label.text, kFontSize, "middle");
        w.close_group();
    }

    if (scene.colorbar) {
        const ColorbarModel& bar = *scene.colorbar;
        double bx0 = fx1 + kColorbarGap;
        double bh = fy1 - fy0;
        w.open_group("colorbar");
        w.open_group("colorbar-gradient");
        double slice = bh / static_cast<double>(bar.samples.size());
        for (std::size_t i = 0; i < bar.samples.size(); ++i) {
            double y = fy1 - slice * static_cast<double>(i + 1);
            w.rect(bx0, y, kColorbarWidth, slice, rgb_hex(bar.samples[i]));
        }
        w.close_group();
        w.rect(bx0, fy0, kColorbarWidth, bh, "none",
               " stroke=\"#000000\" stroke-width=\"1.000\" class=\"colorbar-frame\"");
        auto bar_y = [&](double meta) {
            double t = bar.range.lo == bar.range.hi
                           ? 0.5
                           : (meta - bar.range.lo) / (bar.range.hi - bar.range.lo);
            return fy1 - t * bh;
        };
        w.open_group("colorbar-ticks");
        for (double t : bar.ticks)
            w.line(bx0 + kColorbarWidth, bar_y(t), bx0 + kColorbarWidth + kTickLength, bar_y(t),
                   "#000000", 1.0);
        w.close_group();
        w.open_group("colorbar-tick-labels");
        for (double t : bar.ticks)
            w.text(bx0 + kColorbarWidth + kTickLength + 3.0, bar_y(t) + 3.5,
                   format_tick_label(t), kTickFontSize, "start");
        w.close_group();
        w.close_group();
    }

    bool any_title = !scene.axis_config.title.empty() || !scene.axis_config.xlabel.empty() ||
                     !scene.axis_config.ylabel.empty();
    if (any_title) {
        w.open_group("titles");
        double mid_x = (fx0 + fx1) / 2.0;
        double mid_y = (fy0 + fy1) / 2.0;
        if (!scene.axis_config.title.empty())
            w.text(mid_x, fy0 - 16.0, scene.axis_config.title, kFontSize, "middle",
                   " class=\"title\"");
        if (!scene.axis_config.xlabel.empty())
            w.text(mid_x, canvas.height - 14.0, scene.axis_config.xlabel, kFontSize, "middle",
                   " class=\"xlabel\"");
        if (!scene.axis_config.ylabel.empty())
            w.text(18.0, mid_y, scene.axis_config.ylabel, kFontSize, "middle",
                   " class=\"ylabel\" transform=\"rotate(-90.000 18.000 " + fmt3(mid_y) + ")\"");
        w.close_group();
    }

    w.out += "</svg>\n";
    return w.out;
}

}  // namespace meshplot
