#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "meshplot/numformat.hpp"

namespace meshplot {

namespace detail {

// Step mantissas, scaled by 10 so they stay integral: 1, 2, 2.5, 5.
inline constexpr int kStepMantissasX10[] = {10, 20, 25, 50};

// 10^n for integer n, computed by repeated multiplication so powers up to
// 10^22 stay exact.
inline double pow10(int n) {
    double p = 1.0;
    for (int i = 0; i < (n < 0 ? -n : n); ++i) p *= 10.0;
    return n < 0 ? 1.0 / p : p;
}

// i * m10 * 10^(k-1) evaluated so the result is the double nearest the
// exact decimal value; keeps tick labels free of float noise like
// 0.6000000000000001.
inline double decimal_step_multiple(std::int64_t i, int m10, int k) {
    double mantissa = static_cast<double>(i) * static_cast<double>(m10);
    int e = k - 1;
    return e >= 0 ? mantissa * pow10(e) : mantissa / pow10(-e);
}

struct TickStep {
    int m10;  // mantissa x 10
    int k;    // decimal exponent: step = m10/10 * 10^k
    double step() const { return decimal_step_multiple(1, m10, k); }
};

// Index range of the integer multiples of `step` inside [lo, hi], with a
// 1e-9 relative tolerance at the endpoints. Indices are clamped to the
// exactly-representable integer range.
inline std::pair<std::int64_t, std::int64_t> multiple_range(double lo, double hi, double step) {
    double tol = 1e-9;
    double lo_i = std::clamp(std::ceil(lo / step - tol), -9.0e15, 9.0e15);
    double hi_i = std::clamp(std::floor(hi / step + tol), -9.0e15, 9.0e15);
    return {static_cast<std::int64_t>(lo_i), static_cast<std::int64_t>(hi_i)};
}

}  // namespace detail

// Major tick positions for [lo, hi] (requires lo < hi). The step is the
// smallest value from {1, 2, 2.5, 5} x 10^k that puts between 4 and 10
// ticks in the interval; ticks are the integer multiples of that step
// inside [lo, hi]. If no step lands in [4, 10] (floating-point corner
// cases), the step whose count is nearest 7 wins, smaller step on ties.
inline std::vector<double> generate_ticks(double lo, double hi) {
    double span = hi - lo;
    int k0 = static_cast<int>(std::floor(std::log10(span)));

    detail::TickStep best{0, 0};
    std::int64_t best_count = -1;
    bool found = false;
    for (int k = k0 - 2; k <= k0 + 1 && !found; ++k) {
        for (int m10 : detail::kStepMantissasX10) {
            detail::TickStep candidate{m10, k};
            auto [i_min, i_max] = detail::multiple_range(lo, hi, candidate.step());
            std::int64_t count = i_max - i_min + 1;
            if (count >= 4 && count <= 10) {
                best = candidate;
                found = true;
                break;
            }
            if (best_count < 0 ||
                std::llabs(count - 7) < std::llabs(best_count - 7)) {
                best = candidate;
                best_count = count;
            }
        }
    }

    auto [i_min, i_max] = detail::multiple_range(lo, hi, best.step());
    std::vector<double> ticks;
    ticks.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, i_max - i_min + 1)));
    for (std::int64_t i = i_min; i <= i_max; ++i)
        ticks.push_back(detail::decimal_step_multiple(i, best.m10, best.k));
    return ticks;
}

// Tick labels use the shortest round-trip decimal with trailing zeros
// trimmed: "0.5", "1", "90".
inline std::string format_tick_label(double value) { return format_shortest(value); }

}  // namespace meshplot
