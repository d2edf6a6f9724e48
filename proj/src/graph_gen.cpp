#include "prpipe/graph_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <new>
#include <numeric>

#include "prpipe/rng.hpp"

namespace prpipe {

namespace {

// Stream tag for the label permutation, far above any realistic edge index.
constexpr std::uint64_t kPermutationStream = 0x7065726d75746174ULL;

}  // namespace

std::pair<std::int64_t, std::int64_t> derived_sizes(int scale, std::int64_t edge_factor) {
    if (scale < 0 || scale > 62)
        throw Error("scale " + std::to_string(scale) + " out of range [0, 62]");
    if (edge_factor < 0)
        throw Error("edge factor must be nonnegative, got " + std::to_string(edge_factor));
    const std::int64_t n = std::int64_t{1} << scale;
    if (edge_factor > 0 && n > std::numeric_limits<std::int64_t>::max() / edge_factor)
        throw Error("edge count " + std::to_string(edge_factor) + " * 2^" + std::to_string(scale) +
                    " overflows the 64-bit edge counter");
    return {n, n * edge_factor};
}

std::int64_t GenConfig::vertex_count() const { return derived_sizes(scale, edge_factor).first; }

std::int64_t GenConfig::edge_count() const { return derived_sizes(scale, edge_factor).second; }

void GenConfig::validate() const {
    if (scale < 1) throw Error("scale must be >= 1, got " + std::to_string(scale));
    if (edge_factor < 1)
        throw Error("edge factor must be >= 1, got " + std::to_string(edge_factor));
    derived_sizes(scale, edge_factor);  // rejects overflowing sizes
    double sum = 0.0;
    for (double p : initiator) {
        if (!(p >= 0.0)) throw Error("initiator probabilities must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw Error("initiator probabilities must sum to 1, got " + std::to_string(sum));
}

std::int64_t estimate_memory_bytes(const GenConfig& config, std::int64_t bytes_per_edge) {
    if (bytes_per_edge <= 0)
        throw Error("bytes per edge must be positive, got " + std::to_string(bytes_per_edge));
    const auto [n, m] = derived_sizes(config.scale, config.edge_factor);
    (void)n;
    if (m > std::numeric_limits<std::int64_t>::max() / bytes_per_edge)
        throw Error("memory estimate overflows a 64-bit byte count");
    return m * bytes_per_edge;
}

EdgeGenerator::EdgeGenerator(const GenConfig& config) : config_(config) {
    config_.validate();
    std::tie(n_, m_) = derived_sizes(config_.scale, config_.edge_factor);
    if (config_.permute_labels) {
        try {
            labels_.resize(static_cast<std::size_t>(n_));
        } catch (const std::bad_alloc&) {
            throw Error("label permutation table for N=" + std::to_string(n_) +
                        " does not fit in memory; lower the scale or disable permute_labels");
        }
        std::iota(labels_.begin(), labels_.end(), std::int64_t{1});
        SplitMix64 g(mix_seed(config_.seed, kPermutationStream));
        for (std::int64_t i = n_ - 1; i > 0; --i) {
            const auto j = static_cast<std::int64_t>(g.next_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(labels_[static_cast<std::size_t>(i)], labels_[static_cast<std::size_t>(j)]);
        }
    }
}

std::int64_t EdgeGenerator::batch_count() const {
    return (m_ + kBatchEdges - 1) / kBatchEdges;
}

Edge EdgeGenerator::make_edge(std::int64_t edge_index) const {
    SplitMix64 g(mix_seed(config_.seed, static_cast<std::uint64_t>(edge_index)));
    const double a = config_.initiator[0];
    const double ab = a + config_.initiator[1];
    const double abc = ab + config_.initiator[2];
    std::int64_t u = 0;
    std::int64_t v = 0;
    for (int level = 0; level < config_.scale; ++level) {
        const double x = g.next_unit();
        const int quadrant = x < a ? 0 : x < ab ? 1 : x < abc ? 2 : 3;
        u = (u << 1) | (quadrant >> 1);
        v = (v << 1) | (quadrant & 1);
    }
    if (!labels_.empty())
        return {labels_[static_cast<std::size_t>(u)], labels_[static_cast<std::size_t>(v)]};
    return {u + 1, v + 1};
}

void EdgeGenerator::fill_batch(std::int64_t index, std::vector<Edge>& out) const {
    out.clear();
    if (index < 0 || index >= batch_count()) {
        if (m_ == 0 && index == 0) return;
        throw Error("batch index " + std::to_string(index) + " out of range");
    }
    const std::int64_t first = index * kBatchEdges;
    const std::int64_t count = std::min(kBatchEdges, m_ - first);
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) out.push_back(make_edge(first + i));
}

std::vector<Edge> generate_edges(const GenConfig& config) {
    EdgeGenerator gen(config);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(config.edge_count()));
    std::vector<Edge> batch;
    for (std::int64_t b = 0; b < gen.batch_count(); ++b) {
        gen.fill_batch(b, batch);
        edges.insert(edges.end(), batch.begin(), batch.end());
    }
    return edges;
}

}  // namespace prpipe
