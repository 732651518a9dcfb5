#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "meshplot/axis.hpp"
#include "meshplot/ticks.hpp"

using namespace meshplot;

namespace {

// Canvas whose inner box is a round 200x200.
CanvasSpec square_canvas() {
    CanvasSpec canvas;
    canvas.width = 300;
    canvas.height = 300;
    canvas.margins = {50, 50, 50, 50};
    return canvas;
}

// Brute-force reimplementation of the pinned tick rule, kept independent
// of generate_ticks: enumerate candidate steps ascending, count the
// multiples falling in [lo, hi] by scanning, take the first step with a
// count in [4, 10]. Tick values are rebuilt from their decimal spelling
// via strtod rather than the library's scaled-integer arithmetic.
std::vector<double> oracle_ticks(double lo, double hi) {
    double span = hi - lo;
    int k0 = static_cast<int>(std::floor(std::log10(span)));
    const int mantissas_x10[] = {10, 20, 25, 50};

    auto decimal_value = [](long long mant_x10, int k) {
        char text[64];
        std::snprintf(text, sizeof text, "%llde%d", mant_x10, k - 1);
        return std::strtod(text, nullptr);
    };

    auto scan = [&](int m10, int k) {
        double step = decimal_value(m10, k);
        std::vector<double> ticks;
        double tol = 1e-9;
        long long i = static_cast<long long>(std::ceil(lo / step - tol));
        long long last = static_cast<long long>(std::floor(hi / step + tol));
        for (; i <= last; ++i) ticks.push_back(decimal_value(i * m10, k));
        return ticks;
    };

    for (int k = k0 - 2; k <= k0 + 1; ++k) {
        for (int m10 : mantissas_x10) {
            auto ticks = scan(m10, k);
            if (ticks.size() >= 4 && ticks.size() <= 10) return ticks;
        }
    }
    return {};
}

}  // namespace

TEST_CASE("enlarged limits widen 10% per side") {
    Limits limits = compute_limits({-0.5, 2.5, -0.5, 2.5}, true);
    CHECK(limits.x_min == Catch::Approx(-0.8).margin(1e-12));
    CHECK(limits.x_max == Catch::Approx(2.8).margin(1e-12));
    CHECK(limits.y_min == Catch::Approx(-0.8).margin(1e-12));
    CHECK(limits.y_max == Catch::Approx(2.8).margin(1e-12));
}

TEST_CASE("limits without enlargement are untouched") {
    Limits limits = compute_limits({0, 2, 1, 3}, false);
    CHECK(limits.x_min == 0.0);
    CHECK(limits.x_max == 2.0);
    CHECK(limits.y_min == 1.0);
    CHECK(limits.y_max == 3.0);
}

TEST_CASE("zero-span limits widen by half a unit") {
    Limits limits = compute_limits({1, 1, 2, 2}, true);
    CHECK(limits.x_min == 0.5);
    CHECK(limits.x_max == 1.5);
    CHECK(limits.y_min == 1.5);
    CHECK(limits.y_max == 2.5);
}

TEST_CASE("enlargement preserves the midpoint") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> value(-100, 100);
    std::uniform_real_distribution<double> span(0.001, 50);
    for (int trial = 0; trial < 100; ++trial) {
        double lo = value(rng);
        double hi = lo + span(rng);
        Limits in{lo, hi, lo, hi};
        Limits out = compute_limits(in, true);
        CHECK((out.x_min + out.x_max) / 2 == Catch::Approx((lo + hi) / 2).margin(1e-9));
    }
}

TEST_CASE("square limits fit a square box with or without axis equal") {
    Limits limits{0, 1, 0, 1};
    Transform plain = make_transform(limits, square_canvas(), false);
    Transform equal = make_transform(limits, square_canvas(), true);
    CHECK(plain.x_scale == 200.0);
    CHECK(plain.y_scale == 200.0);
    CHECK(equal.x_scale == 200.0);
    CHECK(equal.y_scale == 200.0);
}

TEST_CASE("axis equal pads the surplus axis symmetrically") {
    Limits limits{0, 2, 0, 1};
    CanvasSpec canvas = square_canvas();

    Transform equal = make_transform(limits, canvas, true);
    CHECK(equal.x_scale == 100.0);
    CHECK(equal.y_scale == 100.0);
    CHECK(equal.x_scale == equal.y_scale);  // bitwise

    Limits fitted = fit_limits(limits, canvas, true);
    CHECK(fitted.y_min == -0.5);
    CHECK(fitted.y_max == 1.5);
    CHECK(fitted.x_min == 0.0);
    CHECK(fitted.x_max == 2.0);

    Transform plain = make_transform(limits, canvas, false);
    CHECK(plain.x_scale == 100.0);
    CHECK(plain.y_scale == 200.0);
}

TEST_CASE("transform maps data up, canvas down") {
    Limits limits{0, 1, 0, 1};
    CanvasSpec canvas = square_canvas();
    Transform t = make_transform(limits, canvas, false);
    CHECK(t.to_canvas_x(0) == 50.0);
    CHECK(t.to_canvas_x(1) == 250.0);
    CHECK(t.to_canvas_y(0) == 250.0);  // y_min sits at the bottom
    CHECK(t.to_canvas_y(1) == 50.0);
}

TEST_CASE("transform round-trips within 1e-9") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> unit(0, 1);
    Limits limits{-3, 7, 2, 2.5};
    CanvasSpec canvas;  // default 640x480
    for (bool axis_equal : {false, true}) {
        Transform t = make_transform(limits, canvas, axis_equal);
        for (int trial = 0; trial < 200; ++trial) {
            double x = limits.x_min + unit(rng) * (limits.x_max - limits.x_min);
            double y = limits.y_min + unit(rng) * (limits.y_max - limits.y_min);
            CHECK(t.to_data_x(t.to_canvas_x(x)) == Catch::Approx(x).margin(1e-9));
            CHECK(t.to_data_y(t.to_canvas_y(y)) == Catch::Approx(y).margin(1e-9));
        }
    }
}

TEST_CASE("ticks for the reference enlarged limits") {
    auto ticks = generate_ticks(-0.8, 2.8);
    CHECK(ticks == std::vector<double>{-0.5, 0, 0.5, 1, 1.5, 2, 2.5});
}

TEST_CASE("ticks for the meta range use step 10") {
    auto ticks = generate_ticks(10, 90);
    CHECK(ticks == std::vector<double>{10, 20, 30, 40, 50, 60, 70, 80, 90});
}

TEST_CASE("ticks for the unit interval") {
    auto ticks = generate_ticks(0, 1);
    CHECK(ticks == std::vector<double>{0, 0.2, 0.4, 0.6, 0.8, 1});
}

TEST_CASE("tick values are clean decimals") {
    for (double t : generate_ticks(0, 1)) {
        std::string label = format_tick_label(t);
        CHECK(label.size() <= 3);  // "0", "0.2", ..., "1"
    }
}

TEST_CASE("ticks lie inside the interval with constant spacing") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> value(-1000, 1000);
    std::uniform_real_distribution<double> exponent(-3, 4);
    for (int trial = 0; trial < 200; ++trial) {
        double lo = value(rng);
        double hi = lo + std::pow(10.0, exponent(rng));
        auto ticks = generate_ticks(lo, hi);
        REQUIRE(ticks.size() >= 2);
        double tol = 1e-9 * std::max({std::abs(lo), std::abs(hi), 1.0});
        // differences of nearby doubles carry error ~ulp(tick), so the
        // spacing tolerance scales with the tick magnitude
        double spacing_tol = 1e-12 * std::max({std::abs(lo), std::abs(hi), 1.0});
        double spacing = ticks[1] - ticks[0];
        for (std::size_t i = 0; i < ticks.size(); ++i) {
            CHECK(ticks[i] >= lo - tol);
            CHECK(ticks[i] <= hi + tol);
            if (i > 0)
                CHECK(ticks[i] - ticks[i - 1] ==
                      Catch::Approx(spacing).margin(spacing_tol));
        }
    }
}

TEST_CASE("generate_ticks agrees with the brute-force oracle") {
    CHECK(generate_ticks(10, 90) == oracle_ticks(10, 90));
    CHECK(generate_ticks(-0.8, 2.8) == oracle_ticks(-0.8, 2.8));
    CHECK(generate_ticks(0, 1) == oracle_ticks(0, 1));

    std::mt19937 rng(20240101);
    std::uniform_real_distribution<double> value(-500, 500);
    std::uniform_real_distribution<double> exponent(-2, 3);
    for (int trial = 0; trial < 200; ++trial) {
        double lo = value(rng);
        double hi = lo + std::pow(10.0, exponent(rng));
        INFO("lo=" << lo << " hi=" << hi);
        CHECK(generate_ticks(lo, hi) == oracle_ticks(lo, hi));
    }
}

TEST_CASE("tick labels trim to the shortest round-trip form") {
    CHECK(format_tick_label(0.5) == "0.5");
    CHECK(format_tick_label(1.0) == "1");
    CHECK(format_tick_label(90.0) == "90");
    CHECK(format_tick_label(-0.5) == "-0.5");
    CHECK(format_tick_label(2.5) == "2.5");
    CHECK(format_tick_label(0.0) == "0");
}
