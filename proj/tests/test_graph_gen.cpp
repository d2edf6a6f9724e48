#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "prpipe/graph_gen.hpp"
#include "helpers.hpp"

using namespace prpipe;

namespace {

GenConfig config_for(int scale, std::int64_t edge_factor = 16, std::uint64_t seed = 7) {
    GenConfig c;
    c.scale = scale;
    c.edge_factor = edge_factor;
    c.seed = seed;
    return c;
}

std::map<std::int64_t, std::int64_t> out_degrees(const std::vector<Edge>& edges) {
    std::map<std::int64_t, std::int64_t> d;
    for (const Edge& e : edges) ++d[e.u];
    return d;
}

// Least-squares slope of (log degree, log frequency) over the exact-degree
// histogram; the power-law proxy the generator has to satisfy.
double log_log_histogram_slope(const std::map<std::int64_t, std::int64_t>& degrees) {
    std::map<std::int64_t, std::int64_t> frequency;
    for (const auto& [vertex, degree] : degrees) ++frequency[degree];
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = 0;
    for (const auto& [degree, count] : frequency) {
        const double x = std::log(static_cast<double>(degree));
        const double y = std::log(static_cast<double>(count));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        n += 1;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_SUITE("graph_gen") {

TEST_CASE("derived sizes match the published run sizes") {
    CHECK(derived_sizes(30, 16) == std::pair<std::int64_t, std::int64_t>{1073741824, 17179869184});
    CHECK(derived_sizes(22, 16) == std::pair<std::int64_t, std::int64_t>{4194304, 67108864});
    CHECK(derived_sizes(16, 16) == std::pair<std::int64_t, std::int64_t>{65536, 1048576});
    CHECK(derived_sizes(0, 1) == std::pair<std::int64_t, std::int64_t>{1, 1});
}

TEST_CASE("derived sizes reject overflowing scales") {
    CHECK_THROWS_AS(derived_sizes(63, 16), Error);
    CHECK_THROWS_AS(derived_sizes(62, 16), Error);  // 16 * 2^62 > int64 max
    CHECK_THROWS_AS(derived_sizes(-1, 16), Error);
    CHECK_NOTHROW(derived_sizes(62, 1));
}

TEST_CASE("memory estimate is bytes_per_edge * M") {
    CHECK(estimate_memory_bytes(config_for(22), 24) == 1610612736);  // ~1.6 GB
    CHECK(estimate_memory_bytes(config_for(19), 24) == 201326592);   // ~201 MB
    CHECK_THROWS_AS(estimate_memory_bytes(config_for(10), 0), Error);
    CHECK_THROWS_AS(estimate_memory_bytes(config_for(10), -8), Error);
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(config_for(1, 1).validate());
    CHECK_THROWS_AS(config_for(0).validate(), Error);
    CHECK_THROWS_AS(config_for(10, 0).validate(), Error);

    GenConfig bad = config_for(10);
    bad.initiator = {0.5, 0.3, 0.1, 0.2};  // sums to 1.1
    CHECK_THROWS_AS(bad.validate(), Error);
    bad.initiator = {0.7, 0.5, -0.1, -0.1};
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("smallest config yields exactly two edges with labels in {1, 2}") {
    const auto edges = generate_edges(config_for(1, 1));
    REQUIRE(edges.size() == 2);
    for (const Edge& e : edges) {
        CHECK(e.u >= 1);
        CHECK(e.u <= 2);
        CHECK(e.v >= 1);
        CHECK(e.v <= 2);
    }
}

TEST_CASE("cardinality and label bounds at several scales") {
    for (int scale : {1, 4, 10}) {
        const auto config = config_for(scale);
        const auto edges = generate_edges(config);
        CHECK(static_cast<std::int64_t>(edges.size()) == config.edge_count());
        const auto n = config.vertex_count();
        const bool in_bounds = std::all_of(edges.begin(), edges.end(), [&](const Edge& e) {
            return e.u >= 1 && e.u <= n && e.v >= 1 && e.v <= n;
        });
        CHECK(in_bounds);
    }
}

TEST_CASE("generation is deterministic per seed and differs across seeds") {
    const auto a = generate_edges(config_for(10, 16, 42));
    const auto b = generate_edges(config_for(10, 16, 42));
    const auto c = generate_edges(config_for(10, 16, 43));
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("batches are pure functions of (config, index)") {
    const auto config = config_for(5, 16, 9);  // M = 512, several hundred edges
    EdgeGenerator gen1(config);
    EdgeGenerator gen2(config);
    std::vector<Edge> whole = generate_edges(config);
    std::vector<Edge> batch;
    // Read the only batch out of order and from distinct generator instances.
    gen2.fill_batch(0, batch);
    std::vector<Edge> again;
    gen1.fill_batch(0, again);
    CHECK(batch == again);
    CHECK(batch == whole);
    CHECK_THROWS_AS(gen1.fill_batch(99, batch), Error);
}

TEST_CASE("permutation changes labels but not the degree structure") {
    auto plain = config_for(6, 16, 11);
    plain.permute_labels = false;
    auto permuted = plain;
    permuted.permute_labels = true;
    const auto raw = generate_edges(plain);
    const auto shuffled = generate_edges(permuted);
    REQUIRE(raw.size() == shuffled.size());
    CHECK(raw != shuffled);
    // Multisets of degree values agree: relabeling preserves the histogram.
    auto degrees_of = [](const std::vector<Edge>& edges) {
        std::map<std::int64_t, std::int64_t> d;
        for (const Edge& e : edges) ++d[e.u];
        std::vector<std::int64_t> values;
        for (const auto& [vertex, degree] : d) values.push_back(degree);
        std::sort(values.begin(), values.end());
        return values;
    };
    CHECK(degrees_of(raw) == degrees_of(shuffled));
}

TEST_CASE("S=10 degree distribution is heavy-tailed with negative log-log slope") {
    const auto edges = generate_edges(config_for(10, 16, 7));
    const auto degrees = out_degrees(edges);

    std::vector<std::int64_t> nonzero;
    for (const auto& [vertex, degree] : degrees) nonzero.push_back(degree);
    std::sort(nonzero.begin(), nonzero.end());
    REQUIRE(!nonzero.empty());
    const std::int64_t median = nonzero[nonzero.size() / 2];
    const std::int64_t max = nonzero.back();
    CHECK(max > 20 * median);

    CHECK(log_log_histogram_slope(degrees) < 0.0);
}

TEST_CASE("disjoint batches can be filled from concurrent threads") {
    const GenConfig config = config_for(16, 16, 31);  // M = 2^20: sixteen full batches
    EdgeGenerator gen(config);
    REQUIRE(gen.batch_count() == 16);
    std::vector<std::vector<Edge>> parallel(static_cast<std::size_t>(gen.batch_count()));
    std::vector<std::thread> threads;
    for (std::int64_t b = 0; b < gen.batch_count(); ++b)
        threads.emplace_back(
            [&gen, &parallel, b] { gen.fill_batch(b, parallel[static_cast<std::size_t>(b)]); });
    for (auto& t : threads) t.join();

    std::vector<Edge> sequential;
    std::vector<Edge> batch;
    for (std::int64_t b = 0; b < gen.batch_count(); ++b) {
        gen.fill_batch(b, batch);
        sequential.insert(sequential.end(), batch.begin(), batch.end());
    }
    std::vector<Edge> joined;
    for (const auto& part : parallel) joined.insert(joined.end(), part.begin(), part.end());
    CHECK(joined == sequential);
}

TEST_CASE("S=10 has a super-node holding at least 1% of edge endpoints") {
    const auto edges = generate_edges(config_for(10, 16, 7));
    std::map<std::int64_t, std::int64_t> in;
    for (const Edge& e : edges) ++in[e.v];
    std::int64_t top = 0;
    for (const auto& [vertex, degree] : in) top = std::max(top, degree);
    CHECK(top * 100 >= static_cast<std::int64_t>(edges.size()));
}

}  // TEST_SUITE
