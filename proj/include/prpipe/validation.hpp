#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prpipe/kernel2_filter.hpp"
#include "prpipe/kernel3_pagerank.hpp"

namespace prpipe {

// Largest N for which the dense validation matrix may be materialized.
inline constexpr std::int64_t kDenseCap = std::int64_t{1} << 12;

// Row-major dense square matrix; oracle-sized only.
struct DenseMatrix {
    std::int64_t n = 0;
    std::vector<double> data;

    double at(std::int64_t i, std::int64_t j) const {
        return data[static_cast<std::size_t>(i * n + j)];
    }
    double& at(std::int64_t i, std::int64_t j) {
        return data[static_cast<std::size_t>(i * n + j)];
    }
};

// G(i, j) = c * A(j, i) + (1 - c)/n. The converged PageRank direction is the
// dominant eigenvector of G. Refused above dense_cap; lower the scale instead.
DenseMatrix dense_pagerank_matrix(const StochasticMatrix& a, double damping,
                                  std::int64_t dense_cap = kDenseCap);

struct EigenResult {
    std::vector<double> vector;  // nonnegative, 1-norm 1
    double value = 0.0;          // dominant eigenvalue estimate
    bool converged = false;
    int iterations = 0;
};

// Power iteration with 1-norm renormalization per step. G must be nonnegative
// (the construction above is strictly positive, so the dominant eigenvector is
// simple and nonnegative and the iteration converges).
EigenResult principal_eigenvector(const DenseMatrix& g, double tol = 1e-8, int max_iters = 10000);

// True iff the direction-normalized vectors differ by at most tol in 1-norm.
// Throws on length mismatch or zero-norm input.
bool validate(std::span<const double> r, std::span<const double> r1, double tol);

struct ValidationOutcome {
    bool passed = false;
    double difference = 0.0;  // 1-norm distance between the normalized vectors
    double tol = 0.0;
    bool sparse_converged = false;
    bool dense_converged = false;
    int sparse_iterations = 0;
    int dense_iterations = 0;
};

// Full cross-check: converge the sparse iteration, compute the dense dominant
// eigenvector, compare directions at `tol`. Both solvers run at a tolerance
// well below `tol` so truncation cannot masquerade as a mismatch.
ValidationOutcome validate_against_oracle(const StochasticMatrix& a, double damping, double tol,
                                          int max_iters, std::uint64_t seed);

}  // namespace prpipe
