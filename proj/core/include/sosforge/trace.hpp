#pragma once

#include <string>
#include <vector>

namespace sosforge {

/// One row of the claims-to-tests matrix: a mathematical claim implemented by
/// an operation and exercised by a named test.
struct TraceRow {
    std::string claim;
    std::string operation;
    std::string test_id;
};

const std::vector<TraceRow>& trace_rows();

/// Markdown document with the full matrix plus the deliberately
/// out-of-scope results and their rationales.
std::string emit_trace_matrix();

}  // namespace sosforge
