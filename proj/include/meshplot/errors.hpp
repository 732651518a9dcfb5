#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace meshplot {

// Every failure the engine can report. Parsing errors carry 1-based
// line/column positions in the message; expression errors carry a
// character offset.
enum class errc {
    // table_store
    ragged_row,
    bad_number,
    empty_input,
    no_such_column,
    // filter_expr
    bad_char,
    parse_error,
    chained_comparison,
    unbound_variable,
    // matrix_mesh
    shape_mismatch,
    degenerate_spacing,
    // color_engine
    no_meta,
    // svg_render
    empty_scene,
    // plotspec
    spec_syntax,
    unknown_key,
    missing_required,
    bad_expression,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Non-fatal findings (e.g. a declared mesh ordering that disagrees with
// the data layout). Collected by callers that care, ignored otherwise.
struct Diagnostic {
    std::string message;
};

using DiagnosticSink = std::vector<Diagnostic>;

}  // namespace meshplot
