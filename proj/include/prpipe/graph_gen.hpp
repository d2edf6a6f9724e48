#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "prpipe/types.hpp"

namespace prpipe {

// Kernel 0 parameters. N = 2^scale vertices, M = edge_factor * N edges.
struct GenConfig {
    int scale = 10;
    std::int64_t edge_factor = 16;
    std::uint64_t seed = 0;
    // R-MAT initiator quadrant probabilities (a, b, c, d); the Graph500
    // reference values. Must sum to 1.
    std::array<double, 4> initiator{0.57, 0.19, 0.19, 0.05};
    // Relabel vertices through a seeded random permutation so the generated
    // files are not already sorted when kernel 1 sees them.
    bool permute_labels = true;

    std::int64_t vertex_count() const;
    std::int64_t edge_count() const;

    // Throws Error when an invariant is violated or the sizes overflow.
    void validate() const;
};

// (N, M) = (2^scale, edge_factor * 2^scale). Rejects sizes that overflow the
// 64-bit edge counter; no other validity checks.
std::pair<std::int64_t, std::int64_t> derived_sizes(int scale, std::int64_t edge_factor);

// Edge-data footprint: bytes_per_edge * M. bytes_per_edge must be positive.
std::int64_t estimate_memory_bytes(const GenConfig& config, std::int64_t bytes_per_edge);

// Streams the M-edge R-MAT edge list in fixed-size batches. Every batch is a
// pure function of (config, batch index), so generation never holds more than
// one batch in memory and batches may be produced in any order.
class EdgeGenerator {
public:
    static constexpr std::int64_t kBatchEdges = std::int64_t{1} << 16;

    explicit EdgeGenerator(const GenConfig& config);

    std::int64_t batch_count() const;
    // Replaces `out` with the edges of the given batch (the last one may be short).
    void fill_batch(std::int64_t index, std::vector<Edge>& out) const;

    const GenConfig& config() const { return config_; }

private:
    Edge make_edge(std::int64_t edge_index) const;

    GenConfig config_;
    std::int64_t n_ = 0;
    std::int64_t m_ = 0;
    std::vector<std::int64_t> labels_;  // permuted 1-based labels; empty when disabled
};

// Desk-scale convenience: the full edge list in one vector.
std::vector<Edge> generate_edges(const GenConfig& config);

}  // namespace prpipe
