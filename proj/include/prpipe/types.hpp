#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace prpipe {

// A directed edge with 1-based vertex labels, matching the on-disk format.
struct Edge {
    std::int64_t u = 0;  // start vertex
    std::int64_t v = 0;  // end vertex

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed edge-file contents; the message carries file and line number.
struct ParseError : Error {
    ParseError(const std::string& file, std::int64_t line, const std::string& detail)
        : Error(file + ":" + std::to_string(line) + ": " + detail), file(file), line(line) {}

    std::string file;
    std::int64_t line = 0;
};

}  // namespace prpipe
