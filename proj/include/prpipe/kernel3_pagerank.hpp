#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "prpipe/kernel2_filter.hpp"

namespace prpipe {

struct PageRankConfig {
    double damping = 0.85;
    int iterations = 20;
    std::uint64_t seed = 0;

    void validate() const;
};

// Nonnegative length-N row vector with its 1-norm tracked alongside.
struct RankVector {
    std::vector<double> values;
    double norm1 = 0.0;

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

// Uniform random entries divided by their sum; 1-norm 1, deterministic per seed.
RankVector init_rank(std::int64_t n, std::uint64_t seed);

// One PageRank update: r' = c * (r A) + ((1 - c)/N) * sum(r), the sum spread
// uniformly over every component. sum(r) is taken from the iterate itself, not
// assumed to be 1 - dangling rows make the iteration sub-stochastic.
RankVector pagerank_step(const RankVector& r, const StochasticMatrix& a, double damping);

struct Kernel3Result {
    RankVector ranks;
    double elapsed_seconds = 0.0;
    double rate = 0.0;  // iterations * M / elapsed
};

// Kernel 3, timed: seeded initialization plus exactly `iterations` update
// steps, no convergence checks. total_edges is the original M, not nnz.
Kernel3Result run_kernel3(const StochasticMatrix& a, const PageRankConfig& config,
                          std::int64_t total_edges);

struct ConvergenceResult {
    RankVector ranks;  // direction-normalized to 1-norm 1
    bool converged = false;
    int iterations = 0;  // steps actually applied
};

// Validation-only mode: iterate until successive direction-normalized iterates
// differ by less than tol in 1-norm, or max_iters is exhausted (flagged via
// converged = false). Never used for benchmark timing.
ConvergenceResult run_to_convergence(const StochasticMatrix& a, double damping, double tol,
                                     int max_iters, std::uint64_t seed);
ConvergenceResult run_to_convergence(const StochasticMatrix& a, double damping, double tol,
                                     int max_iters, RankVector start);

// One "label TAB rank" line per vertex, for offline inspection.
void dump_ranks(const RankVector& r, const std::filesystem::path& path);

}  // namespace prpipe
