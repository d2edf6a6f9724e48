#include "prpipe/kernel3_pagerank.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "prpipe/rng.hpp"
#include "prpipe/timer.hpp"

namespace prpipe {

namespace {

constexpr std::uint64_t kRankInitStream = 0x72616e6b696e6974ULL;

double sum_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

void PageRankConfig::validate() const {
    if (!(damping > 0.0 && damping < 1.0))
        throw Error("damping must lie strictly between 0 and 1");
    if (iterations < 1) throw Error("iteration count must be >= 1");
}

RankVector init_rank(std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw Error("rank vector needs at least one entry");
    RankVector r;
    r.values.resize(static_cast<std::size_t>(n));
    SplitMix64 g(mix_seed(seed, kRankInitStream));
    for (double& x : r.values) x = g.next_unit();
    const double sum = sum_of(r.values);
    for (double& x : r.values) x /= sum;
    r.norm1 = sum_of(r.values);
    return r;
}

RankVector pagerank_step(const RankVector& r, const StochasticMatrix& a, double damping) {
    if (r.size() != a.n)
        throw Error("rank vector length " + std::to_string(r.size()) +
                    " does not match matrix size " + std::to_string(a.n));
    const double total = sum_of(r.values);
    const double background = (1.0 - damping) / static_cast<double>(a.n) * total;

    RankVector out;
    out.values.assign(r.values.size(), 0.0);
    for (std::int64_t u = 0; u < a.n; ++u) {
        const double ru = r.values[static_cast<std::size_t>(u)];
        if (ru == 0.0) continue;
        for (auto k = a.row_offsets[static_cast<std::size_t>(u)];
             k < a.row_offsets[static_cast<std::size_t>(u) + 1]; ++k)
            out.values[static_cast<std::size_t>(a.cols[static_cast<std::size_t>(k)])] +=
                ru * a.values[static_cast<std::size_t>(k)];
    }
    double out_sum = 0.0;
    for (double& x : out.values) {
        x = damping * x + background;
        out_sum += x;
    }
    out.norm1 = out_sum;
    return out;
}

Kernel3Result run_kernel3(const StochasticMatrix& a, const PageRankConfig& config,
                          std::int64_t total_edges) {
    config.validate();
    Kernel3Result result;
    Timer timer;
    RankVector r = init_rank(a.n, config.seed);
    for (int i = 0; i < config.iterations; ++i) r = pagerank_step(r, a, config.damping);
    result.elapsed_seconds = timer.seconds();
    result.ranks = std::move(r);
    result.rate = rate_per_second(static_cast<std::int64_t>(config.iterations) * total_edges,
                                  result.elapsed_seconds);
    return result;
}

ConvergenceResult run_to_convergence(const StochasticMatrix& a, double damping, double tol,
                                     int max_iters, std::uint64_t seed) {
    return run_to_convergence(a, damping, tol, max_iters, init_rank(a.n, seed));
}

ConvergenceResult run_to_convergence(const StochasticMatrix& a, double damping, double tol,
                                     int max_iters, RankVector start) {
    if (!(tol > 0.0)) throw Error("convergence tolerance must be positive");
    if (max_iters < 1) throw Error("max_iters must be >= 1");
    if (start.size() != a.n) throw Error("start vector length does not match matrix size");
    double norm = sum_of(start.values);
    if (!(norm > 0.0)) throw Error("start vector has no rank mass");
    for (double& x : start.values) x /= norm;
    start.norm1 = sum_of(start.values);

    ConvergenceResult result;
    RankVector current = std::move(start);
    for (int it = 1; it <= max_iters; ++it) {
        RankVector next = pagerank_step(current, a, damping);
        if (!(next.norm1 > 0.0)) throw Error("iterate lost all rank mass");
        for (double& x : next.values) x /= next.norm1;
        next.norm1 = sum_of(next.values);
        double diff = 0.0;
        for (std::size_t i = 0; i < next.values.size(); ++i)
            diff += std::abs(next.values[i] - current.values[i]);
        current = std::move(next);
        result.iterations = it;
        if (diff < tol) {
            result.converged = true;
            break;
        }
    }
    result.ranks = std::move(current);
    return result;
}

void dump_ranks(const RankVector& r, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write rank dump " + path.string());
    char buf[64];
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        auto res = std::to_chars(buf, buf + sizeof(buf), static_cast<std::int64_t>(i) + 1);
        *res.ptr++ = '\t';
        res = std::to_chars(res.ptr, buf + sizeof(buf), r.values[i]);
        *res.ptr++ = '\n';
        out.write(buf, res.ptr - buf);
    }
    if (!out.flush()) throw Error("failed writing rank dump " + path.string());
}

}  // namespace prpipe
