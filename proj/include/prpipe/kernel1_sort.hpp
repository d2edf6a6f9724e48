#pragma once

#include <cstdint>
#include <filesystem>

#include "prpipe/edge_io.hpp"

namespace prpipe {

struct SortOptions {
    std::int64_t memory_budget_bytes = 0;  // 0 = default_memory_budget()
    int num_files = 0;                     // 0 = default_num_files(M)
    int merge_fan_in = 64;                 // max spill runs merged per pass
    std::filesystem::path spill_dir;       // empty = <output_dir>/spill
};

// 25% of detected physical RAM; 1 GiB when detection is unavailable.
std::int64_t default_memory_budget();

// Kernel 1: order the input edges by start vertex and rewrite them, sharded,
// in the same TSV format. Uses an in-memory sort when the edge data fits in
// the memory budget and an external merge sort with TSV spill runs otherwise.
// Ties in the start vertex keep no particular end-vertex order.
EdgeManifest sort_edges(const EdgeManifest& input, const std::filesystem::path& output_dir,
                        const SortOptions& options = {});

}  // namespace prpipe
