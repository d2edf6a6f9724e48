#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prpipe/edge_io.hpp"

namespace prpipe {

// N x N sparse matrix of integer edge counts, CSR layout, pre-normalization.
// Duplicate (u, v) edges collapse into one stored entry with count > 1, so
// nnz is at most the edge count while the counts always sum to it.
struct CountMatrix {
    std::int64_t n = 0;
    std::vector<std::int64_t> row_offsets;  // n + 1 entries
    std::vector<std::int64_t> cols;         // 0-based column indices
    std::vector<std::int64_t> counts;

    std::int64_t nnz() const { return static_cast<std::int64_t>(cols.size()); }
    std::int64_t total() const;
    // Count stored at (row, col), 0-based; 0 when absent. For tests and tools.
    std::int64_t count_at(std::int64_t row, std::int64_t col) const;
};

// Row-normalized CSR matrix with values in (0, 1]. Rows with no entries are
// dangling vertices and deliberately stay empty.
struct StochasticMatrix {
    std::int64_t n = 0;
    std::vector<std::int64_t> row_offsets;
    std::vector<std::int64_t> cols;
    std::vector<double> values;

    std::int64_t nnz() const { return static_cast<std::int64_t>(cols.size()); }
    double value_at(std::int64_t row, std::int64_t col) const;
    // Sum of the stored values of one row: 1 within rounding, or 0 if empty.
    double row_sum(std::int64_t row) const;
};

// Single-pass CSR assembly from an edge stream sorted by start vertex.
// Throws when a label falls outside [1, n] or the stream is not sorted.
CountMatrix build_adjacency(EdgeReader& edges, std::int64_t n);
CountMatrix build_adjacency(std::span<const Edge> edges, std::int64_t n);

// Column sums of the counts; sums to total() over all columns.
std::vector<std::int64_t> in_degree(const CountMatrix& a);

// Zero every column whose in-degree ties the maximum (the super-nodes) and
// every column with in-degree exactly 1 (the leaves). Both masks are taken
// against the same, pre-zeroing in-degree vector.
CountMatrix zero_columns(const CountMatrix& a, const std::vector<std::int64_t>& d_in);

// Divide each row by its out-degree (the row's count sum); empty rows stay empty.
StochasticMatrix row_normalize(const CountMatrix& a);

struct Kernel2Result {
    StochasticMatrix matrix;
    std::int64_t edges = 0;  // M from the input manifest
    double elapsed_seconds = 0.0;
    double rate = 0.0;  // edges prepared per second
};

// Kernel 2, timed end to end: read -> build -> in-degree -> zero columns ->
// normalize. Requires a manifest with sorted_by_start set.
Kernel2Result run_kernel2(const EdgeManifest& input);

}  // namespace prpipe
