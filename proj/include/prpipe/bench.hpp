#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prpipe/graph_gen.hpp"
#include "prpipe/kernel1_sort.hpp"
#include "prpipe/kernel2_filter.hpp"
#include "prpipe/kernel3_pagerank.hpp"
#include "prpipe/validation.hpp"

namespace prpipe {

struct KernelRecord {
    std::string name;
    double elapsed_seconds = 0.0;
    double rate = 0.0;           // work_edges / elapsed
    std::int64_t work_edges = 0; // M, or iterations * M for kernel 3
    bool scoring = true;         // kernel 0 is reported but never scored
};

struct ValidationRecord {
    bool performed = false;
    double tol = 0.0;
    bool passed = false;
};

struct BenchReport {
    std::string timestamp;  // UTC, ISO 8601
    std::uint64_t seed = 0;
    int scale = 0;
    std::int64_t edge_factor = 16;
    std::int64_t vertices = 0;
    std::int64_t edges = 0;
    int iterations = 20;
    int num_files = 0;
    double damping = 0.85;
    std::string data_dir;
    std::vector<KernelRecord> kernels;
    ValidationRecord validation;
    bool failed = false;
    std::string error;
};

struct PipelineOptions {
    GenConfig gen;
    PageRankConfig pagerank;
    std::filesystem::path data_dir = "prpipe_data";
    int num_files = 0;                     // 0 = one shard per 2^20 edges
    std::int64_t memory_budget_bytes = 0;  // 0 = 25% of physical RAM
    bool validate = false;                 // dense-oracle check; needs N <= kDenseCap
    double validate_tol = 1e-8;
    int validate_max_iters = 10000;
    std::optional<std::filesystem::path> rank_dump;  // final r as "label TAB rank"
};

// Stage directories under the shared data dir: k0 holds generated edges,
// k1 the sorted ones. The adjacency matrix is an in-memory handoff only.
inline constexpr std::string_view kStageGenerated = "k0";
inline constexpr std::string_view kStageSorted = "k1";

std::filesystem::path stage_dir(const std::filesystem::path& data_dir, std::string_view stage);
// Loads a stage's manifest; the error names the missing manifest file.
EdgeManifest load_stage_manifest(const std::filesystem::path& data_dir, std::string_view stage);

// Full pipeline with strict barriers: K0 -> K1 -> K2 -> K3, plus the optional
// validation step. Kernel failures are captured in the report (failed flag and
// partial kernel list), not thrown.
BenchReport run_pipeline(const PipelineOptions& options);

// Staged entry points backing the per-kernel CLI subcommands. Each reads its
// prerequisite stage from disk, so kernels can run in separate invocations.
struct StageOutput {
    EdgeManifest manifest;
    KernelRecord record;
};
StageOutput generate_stage(const GenConfig& config, const std::filesystem::path& data_dir,
                           int num_files = 0);
StageOutput sort_stage(const std::filesystem::path& data_dir, const SortOptions& options = {});

struct FilterStageOutput {
    Kernel2Result result;
    KernelRecord record;
};
FilterStageOutput filter_stage(const std::filesystem::path& data_dir);

struct PageRankStageOutput {
    Kernel3Result result;
    KernelRecord record;
    std::int64_t edges = 0;
};
// Rebuilds the matrix from the sorted stage (untimed preparation), then runs
// and times kernel 3 alone.
PageRankStageOutput pagerank_stage(const std::filesystem::path& data_dir,
                                   const PageRankConfig& config);

ValidationOutcome validate_stage(const std::filesystem::path& data_dir, double damping, double tol,
                                 int max_iters, std::uint64_t seed);

// Machine-readable emission. JSON is key-addressable; the TSV holds one row
// per kernel for rate-vs-edges plots. Both are byte-deterministic for a given
// report.
std::string report_to_json(const BenchReport& report);
std::string report_to_tsv(const BenchReport& report);
// Writes <stem>.json, <stem>.tsv, or both, per format "json" | "tsv" | "both".
void emit_report(const BenchReport& report, const std::filesystem::path& stem,
                 std::string_view format);

std::string utc_timestamp();

}  // namespace prpipe
