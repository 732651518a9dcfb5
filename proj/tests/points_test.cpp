#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "meshplot/points.hpp"
#include "reference_data.hpp"

using namespace meshplot;

namespace {

DataTable reference_table() {
    return parse_table(kReferenceTable, Separator::whitespace, false);
}

}  // namespace

TEST_CASE("extract_points binds columns by reference") {
    auto points = extract_points(reference_table(), ColumnRef{"0"}, ColumnRef{"1"},
                                 ColumnRef{"2"});
    REQUIRE(points.size() == 9);
    CHECK(points.front().x == 0.0);
    CHECK(points.front().y == 0.0);
    CHECK(points.front().meta == 10.0);
    CHECK(points.back().x == 2.0);
    CHECK(points.back().y == 2.0);
    CHECK(points.back().meta == 90.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(points[i].source_row == i);
        CHECK_FALSE(points[i].dropped);
    }
}

TEST_CASE("the default rule binds x to column 0 and y to column 1") {
    auto explicit_refs = extract_points(reference_table(), ColumnRef{"0"}, ColumnRef{"1"},
                                        ColumnRef{"2"});
    auto defaulted = extract_points(reference_table(), std::nullopt, std::nullopt,
                                    ColumnRef{"2"});
    REQUIRE(defaulted.size() == explicit_refs.size());
    for (std::size_t i = 0; i < defaulted.size(); ++i) {
        CHECK(defaulted[i].x == explicit_refs[i].x);
        CHECK(defaulted[i].y == explicit_refs[i].y);
        CHECK(defaulted[i].meta == explicit_refs[i].meta);
    }
}

TEST_CASE("extract_points from a single-row table") {
    DataTable table = parse_table("7 8 9\n", Separator::whitespace, false);
    auto points = extract_points(table, std::nullopt, std::nullopt, ColumnRef{"2"});
    REQUIRE(points.size() == 1);
    CHECK(points[0].x == 7.0);
    CHECK(points[0].y == 8.0);
    CHECK(points[0].meta == 9.0);
    CHECK(points[0].source_row == 0);
}

TEST_CASE("extract_points propagates NoSuchColumn") {
    CHECK_THROWS_AS(
        extract_points(reference_table(), ColumnRef{"q"}, std::nullopt, std::nullopt), Error);
}

TEST_CASE("the document filter pair keeps only the last row") {
    auto points = extract_points(reference_table(), ColumnRef{"0"}, ColumnRef{"1"},
                                 ColumnRef{"2"});
    auto filtered = apply_filters(points, parse_expression("x > 1 ? x : nan"),
                                  parse_expression("y > 1 ? y : nan"));
    REQUIRE(filtered.size() == 9);
    std::vector<std::size_t> surviving;
    for (const auto& p : filtered)
        if (!p.dropped) surviving.push_back(p.source_row);
    REQUIRE(surviving == std::vector<std::size_t>{8});
    CHECK(filtered[8].x == 2.0);
    CHECK(filtered[8].y == 2.0);
    CHECK(filtered[8].meta == 90.0);
}

TEST_CASE("no filters is the identity") {
    auto points = extract_points(reference_table(), std::nullopt, std::nullopt,
                                 ColumnRef{"2"});
    auto out = apply_filters(points, nullptr, nullptr);
    REQUIRE(out.size() == points.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(out[i].x == points[i].x);
        CHECK(out[i].y == points[i].y);
        CHECK(out[i].meta == points[i].meta);
        CHECK(out[i].dropped == points[i].dropped);
    }
}

TEST_CASE("a constant-NaN filter drops everything") {
    auto points = extract_points(reference_table(), std::nullopt, std::nullopt,
                                 ColumnRef{"2"});
    auto out = apply_filters(points, parse_expression("nan"), nullptr);
    for (const auto& p : out) CHECK(p.dropped);
}

TEST_CASE("dropped iff a coordinate is NaN, both directions") {
    auto points = extract_points(reference_table(), std::nullopt, std::nullopt,
                                 ColumnRef{"2"});
    auto out = apply_filters(points, parse_expression("x > 0 ? x : nan"),
                             parse_expression("y > 0 ? y : nan"));
    for (const auto& p : out) {
        bool has_nan = std::isnan(p.x) || std::isnan(p.y);
        CHECK(p.dropped == has_nan);
    }
}

TEST_CASE("y filter sees the pre-filter x") {
    // x filter wipes x out; if the y filter saw the filtered x it would
    // produce NaN, but it must see the original positive value.
    DataTable table = parse_table("3 4 0\n", Separator::whitespace, false);
    auto points = extract_points(table, std::nullopt, std::nullopt, std::nullopt);
    auto out = apply_filters(points, parse_expression("nan"),
                             parse_expression("x > 0 ? y : nan"));
    REQUIRE(out.size() == 1);
    CHECK(std::isnan(out[0].x));
    CHECK(out[0].y == 4.0);
    CHECK(out[0].dropped);  // x is NaN even though y survived
}

TEST_CASE("the document filters are idempotent") {
    auto points = extract_points(reference_table(), std::nullopt, std::nullopt,
                                 ColumnRef{"2"});
    ExprPtr fx = parse_expression("x > 1 ? x : nan");
    ExprPtr fy = parse_expression("y > 1 ? y : nan");
    auto once = apply_filters(points, fx, fy);
    auto twice = apply_filters(once, fx, fy);
    REQUIRE(twice.size() == once.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
        CHECK(std::isnan(once[i].x) == std::isnan(twice[i].x));
        if (!std::isnan(once[i].x)) CHECK(once[i].x == twice[i].x);
        CHECK(once[i].dropped == twice[i].dropped);
    }
}

TEST_CASE("filters never reorder, delete, or touch meta") {
    auto points = extract_points(reference_table(), std::nullopt, std::nullopt,
                                 ColumnRef{"2"});
    auto out = apply_filters(points, parse_expression("x > 1 ? x : nan"),
                             parse_expression("y > 1 ? y : nan"));
    REQUIRE(out.size() == points.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(out[i].source_row == points[i].source_row);
        CHECK(out[i].meta == points[i].meta);
    }
}

TEST_CASE("unbound variable in a filter names the source row") {
    auto points = extract_points(reference_table(), std::nullopt, std::nullopt,
                                 ColumnRef{"2"});
    try {
        apply_filters(points, parse_expression("z > 1 ? x : nan"), nullptr);
        FAIL("expected unbound_variable");
    } catch (const Error& e) {
        CHECK(e.code() == errc::unbound_variable);
        CHECK(std::string(e.what()).find("row 0") != std::string::npos);
    }
}

TEST_CASE("meta filter binds the meta value as col") {
    auto points = extract_points(reference_table(), std::nullopt, std::nullopt,
                                 ColumnRef{"2"});
    auto out = apply_meta_filter(points, parse_expression("if col>50 then col else NaN"));
    REQUIRE(out.size() == 9);
    int finite = 0;
    for (const auto& p : out) {
        CHECK_FALSE(p.dropped);  // meta filtering never drops coordinates
        if (!std::isnan(p.meta)) {
            CHECK(p.meta > 50.0);
            ++finite;
        }
    }
    CHECK(finite == 4);  // 60, 70, 80, 90
}
