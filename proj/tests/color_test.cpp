#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "meshplot/color.hpp"
#include "viridis_reference.hpp"

using namespace meshplot;

namespace {

std::vector<PlotPoint> points_with_metas(std::initializer_list<double> metas) {
    std::vector<PlotPoint> points;
    double x = 0.0;
    for (double m : metas) {
        PlotPoint p;
        p.x = x++;
        p.y = 0.0;
        p.meta = m;
        points.push_back(p);
    }
    return points;
}

ColorMap black_to_white() {
    return ColorMap{"bw", {{0.0, {0, 0, 0}}, {1.0, {1, 1, 1}}}};
}

}  // namespace

TEST_CASE("meta range over the reference metas") {
    auto points = points_with_metas({10, 20, 30, 40, 50, 60, 70, 80, 90});
    MetaRange range = compute_meta_range(points);
    CHECK(range.lo == 10.0);
    CHECK(range.hi == 90.0);
}

TEST_CASE("meta range edge cases") {
    auto single = points_with_metas({5});
    MetaRange range = compute_meta_range(single);
    CHECK(range.lo == 5.0);
    CHECK(range.hi == 5.0);

    auto dropped = points_with_metas({1, 2});
    for (auto& p : dropped) p.dropped = true;
    CHECK_THROWS_AS(compute_meta_range(dropped), Error);

    auto nans = points_with_metas({std::nan(""), std::nan("")});
    try {
        compute_meta_range(nans);
        FAIL("expected no_meta");
    } catch (const Error& e) {
        CHECK(e.code() == errc::no_meta);
    }

    // NaN metas are ignored, not fatal, when finite ones exist
    auto mixed = points_with_metas({std::nan(""), 3, 8});
    MetaRange mixed_range = compute_meta_range(mixed);
    CHECK(mixed_range.lo == 3.0);
    CHECK(mixed_range.hi == 8.0);
}

TEST_CASE("meta_to_unit normalizes, clamps, and handles degenerate ranges") {
    MetaRange range{10, 90};
    CHECK(meta_to_unit(10, range) == 0.0);
    CHECK(meta_to_unit(90, range) == 1.0);
    CHECK(meta_to_unit(50, range) == 0.5);
    CHECK(meta_to_unit(-100, range) == 0.0);
    CHECK(meta_to_unit(1000, range) == 1.0);
    CHECK(meta_to_unit(7, MetaRange{5, 5}) == 0.5);
}

TEST_CASE("meta_to_unit is non-decreasing") {
    MetaRange range{-3, 12};
    double prev = meta_to_unit(-5, range);
    for (double m = -5; m <= 15; m += 0.25) {
        double t = meta_to_unit(m, range);
        CHECK(t >= prev);
        prev = t;
    }
}

TEST_CASE("two-stop map interpolates linearly") {
    ColorMap bw = black_to_white();
    Rgb mid = sample_colormap(bw, 0.5);
    CHECK(mid.r == 0.5);
    CHECK(mid.g == 0.5);
    CHECK(mid.b == 0.5);
    CHECK(sample_colormap(bw, 0.0).r == 0.0);
    CHECK(sample_colormap(bw, 1.0).b == 1.0);
}

TEST_CASE("viridis endpoints match the published table") {
    const ColorMap& viridis = viridis_colormap();
    Rgb lo = sample_colormap(viridis, 0.0);
    CHECK(lo.r == Catch::Approx(0.267004).margin(1e-12));
    CHECK(lo.g == Catch::Approx(0.004874).margin(1e-12));
    CHECK(lo.b == Catch::Approx(0.329415).margin(1e-12));
    Rgb hi = sample_colormap(viridis, 1.0);
    CHECK(hi.r == Catch::Approx(0.993248).margin(1e-12));
    CHECK(hi.g == Catch::Approx(0.906157).margin(1e-12));
    CHECK(hi.b == Catch::Approx(0.143936).margin(1e-12));
}

TEST_CASE("sampling at a stop position returns the stop color exactly") {
    const ColorMap& viridis = viridis_colormap();
    for (std::size_t i = 0; i < viridis.stops.size(); ++i) {
        Rgb c = sample_colormap(viridis, viridis.stops[i].first);
        CHECK(c.r == viridis.stops[i].second.r);
        CHECK(c.g == viridis.stops[i].second.g);
        CHECK(c.b == viridis.stops[i].second.b);
    }
}

TEST_CASE("viridis sampling matches the independent reference table") {
    const ColorMap& viridis = viridis_colormap();
    for (int k = 0; k < 256; ++k) {
        Rgb c = sample_colormap(viridis, static_cast<double>(k) / 255.0);
        CHECK(std::abs(c.r - kViridisReference[k][0]) <= 1.0 / 255.0);
        CHECK(std::abs(c.g - kViridisReference[k][1]) <= 1.0 / 255.0);
        CHECK(std::abs(c.b - kViridisReference[k][2]) <= 1.0 / 255.0);
    }
}

TEST_CASE("colormap sweep is continuous") {
    const ColorMap& viridis = viridis_colormap();
    Rgb prev = sample_colormap(viridis, 0.0);
    for (int i = 1; i < 1024; ++i) {
        Rgb c = sample_colormap(viridis, static_cast<double>(i) / 1023.0);
        CHECK(std::abs(c.r - prev.r) < 0.02);
        CHECK(std::abs(c.g - prev.g) < 0.02);
        CHECK(std::abs(c.b - prev.b) < 0.02);
        prev = c;
    }
}

TEST_CASE("colormap registry resolves viridis and rejects unknowns") {
    REQUIRE(find_colormap("viridis") != nullptr);
    CHECK(find_colormap("viridis")->stops.size() == 256);
    CHECK(find_colormap("plasma") == nullptr);
}

TEST_CASE("colormap registry accepts new maps") {
    register_colormap(black_to_white());
    const ColorMap* bw = find_colormap("bw");
    REQUIRE(bw != nullptr);
    CHECK(sample_colormap(*bw, 0.5).g == 0.5);
    CHECK(find_colormap("viridis") != nullptr);  // built-in still present
}

TEST_CASE("colorbar model over the reference range") {
    ColorbarModel model = colorbar_model(MetaRange{10, 90}, viridis_colormap());
    CHECK(model.samples.size() >= 64);
    CHECK(model.ticks == std::vector<double>{10, 20, 30, 40, 50, 60, 70, 80, 90});
    // bottom of the gradient is the colormap at t = 0
    CHECK(model.samples.front().r == sample_colormap(viridis_colormap(), 0.0).r);
    CHECK(model.samples.back().b == sample_colormap(viridis_colormap(), 1.0).b);
}

TEST_CASE("colorbar ticks for the unit range include both ends") {
    ColorbarModel model = colorbar_model(MetaRange{0, 1}, viridis_colormap());
    REQUIRE_FALSE(model.ticks.empty());
    CHECK(model.ticks.front() == 0.0);
    CHECK(model.ticks.back() == 1.0);
}

TEST_CASE("degenerate colorbar range yields a single tick") {
    ColorbarModel model = colorbar_model(MetaRange{5, 5}, viridis_colormap());
    CHECK(model.ticks == std::vector<double>{5.0});
}
