#pragma once

#include <stdexcept>
#include <string>

namespace qdg {

// Precondition violations: out-of-range vertices, malformed sequences,
// operations applied to graphs outside their stated domain.
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// A configured size cap was exceeded. The message names the cap and the
// offending size so callers can raise the limit deliberately.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

// Text input could not be parsed; carries a 1-based line number.
struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// A sub-solver failed on a subgraph it was contractually required to handle.
struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qdg
