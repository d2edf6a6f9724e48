#include "prpipe/validation.hpp"

#include <algorithm>
#include <cmath>

namespace prpipe {

DenseMatrix dense_pagerank_matrix(const StochasticMatrix& a, double damping,
                                  std::int64_t dense_cap) {
    if (a.n > dense_cap)
        throw Error("N = " + std::to_string(a.n) + " exceeds the dense validation cap " +
                    std::to_string(dense_cap) + "; lower the scale to validate");
    if (a.n < 1) throw Error("validation matrix needs at least one vertex");
    DenseMatrix g;
    g.n = a.n;
    g.data.assign(static_cast<std::size_t>(a.n) * static_cast<std::size_t>(a.n),
                  (1.0 - damping) / static_cast<double>(a.n));
    for (std::int64_t u = 0; u < a.n; ++u)
        for (auto k = a.row_offsets[static_cast<std::size_t>(u)];
             k < a.row_offsets[static_cast<std::size_t>(u) + 1]; ++k)
            g.at(a.cols[static_cast<std::size_t>(k)], u) +=
                damping * a.values[static_cast<std::size_t>(k)];
    return g;
}

EigenResult principal_eigenvector(const DenseMatrix& g, double tol, int max_iters) {
    if (!(tol > 0.0)) throw Error("tolerance must be positive");
    if (g.n < 1) throw Error("empty matrix");
    const auto n = static_cast<std::size_t>(g.n);
    EigenResult result;
    std::vector<double> x(n, 1.0 / static_cast<double>(g.n));
    std::vector<double> y(n, 0.0);
    for (int it = 1; it <= max_iters; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            const double* row = g.data.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
            y[i] = acc;
        }
        double norm = 0.0;
        for (double v : y) norm += std::abs(v);
        if (!(norm > 0.0)) throw Error("power iteration collapsed to the zero vector");
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= norm;
            diff += std::abs(y[i] - x[i]);
        }
        x.swap(y);
        result.value = norm;
        result.iterations = it;
        if (diff <= tol) {
            result.converged = true;
            break;
        }
    }
    result.vector = std::move(x);
    return result;
}

bool validate(std::span<const double> r, std::span<const double> r1, double tol) {
    if (r.size() != r1.size()) throw Error("vectors differ in length");
    if (r.empty()) throw Error("empty vectors");
    double na = 0.0;
    double nb = 0.0;
    for (double v : r) na += std::abs(v);
    for (double v : r1) nb += std::abs(v);
    if (!(na > 0.0) || !(nb > 0.0)) throw Error("cannot normalize a zero-norm vector");
    double diff = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) diff += std::abs(r[i] / na - r1[i] / nb);
    return diff <= tol;
}

ValidationOutcome validate_against_oracle(const StochasticMatrix& a, double damping, double tol,
                                          int max_iters, std::uint64_t seed) {
    if (!(tol > 0.0)) throw Error("tolerance must be positive");
    // Solver tolerance sits three decades under the comparison tolerance.
    const double solve_tol = std::min(1e-12, tol * 1e-3);

    ValidationOutcome outcome;
    outcome.tol = tol;

    const auto sparse = run_to_convergence(a, damping, solve_tol, max_iters, seed);
    outcome.sparse_converged = sparse.converged;
    outcome.sparse_iterations = sparse.iterations;

    const auto g = dense_pagerank_matrix(a, damping);
    const auto dense = principal_eigenvector(g, solve_tol, max_iters);
    outcome.dense_converged = dense.converged;
    outcome.dense_iterations = dense.iterations;

    double diff = 0.0;
    for (std::size_t i = 0; i < dense.vector.size(); ++i)
        diff += std::abs(sparse.ranks.values[i] / sparse.ranks.norm1 -
                         dense.vector[i]);
    outcome.difference = diff;
    outcome.passed = sparse.converged && dense.converged && diff <= tol;
    return outcome;
}

}  // namespace prpipe
