#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "meshplot/errors.hpp"
#include "meshplot/numformat.hpp"

namespace meshplot {

// Column-oriented numeric table. Immutable after parse_table; all columns
// have exactly row_count entries and every cell is finite or NaN. When the
// source has no header row, columns are named "0", "1", "2", ...
struct DataTable {
    std::vector<std::vector<double>> columns;
    std::vector<std::string> names;
    std::size_t row_count = 0;
    bool has_header = false;
};

// A column reference: either a decimal index or a header name. All-digit
// keys resolve by index first and fall back to name lookup.
struct ColumnRef {
    std::string key;
};

enum class Separator { whitespace };

namespace detail {

inline bool is_field_sep(char c) { return c == ' ' || c == '\t'; }

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_field_sep(line[i])) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !is_field_sep(line[i])) ++i;
        fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

}  // namespace detail

// Parses whitespace-separated text into a DataTable. Runs of spaces/tabs
// count as one delimiter and blank lines are skipped. Every non-blank line
// must have the same field count. The token "nan" (any case) is a valid
// cell; infinities and unparseable fields are rejected.
inline DataTable parse_table(std::string_view text, Separator /*sep*/, bool has_header) {
    DataTable table;
    table.has_header = has_header;

    std::size_t line_no = 0;
    std::size_t field_count = 0;
    bool header_pending = has_header;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        auto fields = detail::split_fields(line);
        if (fields.empty()) continue;

        if (field_count == 0) {
            field_count = fields.size();
            table.columns.resize(field_count);
            if (has_header) {
                for (auto f : fields) table.names.emplace_back(f);
            } else {
                for (std::size_t c = 0; c < field_count; ++c)
                    table.names.push_back(std::to_string(c));
            }
        } else if (fields.size() != field_count) {
            throw Error(errc::ragged_row,
                        "line " + std::to_string(line_no) + ": expected " +
                            std::to_string(field_count) + " fields, got " +
                            std::to_string(fields.size()));
        }

        if (header_pending) {
            header_pending = false;
            continue;
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            auto value = parse_number(fields[c]);
            if (!value) {
                std::size_t col = static_cast<std::size_t>(fields[c].data() - line.data()) + 1;
                throw Error(errc::bad_number,
                            "line " + std::to_string(line_no) + ", column " +
                                std::to_string(col) + ": bad number '" +
                                std::string(fields[c]) + "'");
            }
            table.columns[c].push_back(*value);
        }
        ++table.row_count;
    }

    if (table.row_count == 0) throw Error(errc::empty_input, "no data rows");
    return table;
}

// Inverse of parse_table: one line per row, single-space separated, values
// in shortest round-trip form so reparsing reproduces the table bitwise.
inline std::string serialize_table(const DataTable& table) {
    std::string out;
    auto emit_row = [&](auto&& cell_text) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c > 0) out += ' ';
            out += cell_text(c);
        }
        out += '\n';
    };
    if (table.has_header)
        emit_row([&](std::size_t c) { return table.names[c]; });
    for (std::size_t r = 0; r < table.row_count; ++r)
        emit_row([&](std::size_t c) { return format_shortest(table.columns[c][r]); });
    return out;
}

// Digit keys resolve as an index when in range, otherwise by name.
inline std::size_t resolve_column(const DataTable& table, const ColumnRef& ref) {
    const std::string& key = ref.key;
    std::size_t index = 0;
    auto res = std::from_chars(key.data(), key.data() + key.size(), index);
    if (res.ec == std::errc{} && res.ptr == key.data() + key.size() &&
        index < table.columns.size())
        return index;
    for (std::size_t i = 0; i < table.names.size(); ++i)
        if (table.names[i] == key) return i;
    throw Error(errc::no_such_column, "no such column '" + key + "'");
}

// Visits (name, index) for each column, left to right.
template <typename Visitor>
void for_each_column(const DataTable& table, Visitor&& visit) {
    for (std::size_t i = 0; i < table.names.size(); ++i)
        visit(table.names[i], i);
}

}  // namespace meshplot
