#include <doctest.h>

#include <cmath>
#include <numeric>

#include "prpipe/graph_gen.hpp"
#include "prpipe/kernel2_filter.hpp"
#include "prpipe/kernel3_pagerank.hpp"
#include "prpipe/validation.hpp"
#include "helpers.hpp"

using namespace prpipe;
using prpipe::testing::TempDir;
using prpipe::testing::sorted_by_start;
using prpipe::testing::worked_case_edges;

namespace {

StochasticMatrix worked_case_matrix() {
    const auto edges = sorted_by_start(worked_case_edges());
    const auto a = build_adjacency(edges, 4);
    return row_normalize(zero_columns(a, in_degree(a)));
}

// 2x2 swap: [[0,1],[1,0]], already row-stochastic.
StochasticMatrix permutation_matrix() {
    StochasticMatrix s;
    s.n = 2;
    s.row_offsets = {0, 1, 2};
    s.cols = {1, 0};
    s.values = {1.0, 1.0};
    return s;
}

StochasticMatrix zero_matrix(std::int64_t n) {
    StochasticMatrix s;
    s.n = n;
    s.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    return s;
}

RankVector make_rank(std::vector<double> values) {
    RankVector r;
    r.norm1 = std::accumulate(values.begin(), values.end(), 0.0);
    r.values = std::move(values);
    return r;
}

StochasticMatrix pipeline_matrix(int scale, std::uint64_t seed) {
    GenConfig config;
    config.scale = scale;
    config.seed = seed;
    const auto edges = sorted_by_start(generate_edges(config));
    const auto a = build_adjacency(edges, config.vertex_count());
    return row_normalize(zero_columns(a, in_degree(a)));
}

}  // namespace

TEST_SUITE("kernel3_pagerank") {

TEST_CASE("init_rank normalizes to 1-norm 1 and is seed-deterministic") {
    const auto r1 = init_rank(1, 5);
    REQUIRE(r1.size() == 1);
    CHECK(r1.values[0] == 1.0);

    const auto a = init_rank(1000, 42);
    CHECK(a.norm1 == doctest::Approx(1.0).epsilon(1e-12));
    for (double v : a.values) CHECK(v >= 0.0);
    const auto b = init_rank(1000, 42);
    CHECK(a.values == b.values);
    const auto c = init_rank(1000, 43);
    CHECK(a.values != c.values);

    CHECK_THROWS_AS(init_rank(0, 1), Error);
}

TEST_CASE("uniform vector is the fixed point of the permutation matrix") {
    const auto s = permutation_matrix();
    const auto r = make_rank({0.5, 0.5});
    const auto next = pagerank_step(r, s, 0.85);
    CHECK(next.values[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(next.values[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(next.norm1 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("all-zero matrix leaves only the damping term") {
    const auto s = zero_matrix(4);
    const auto r = make_rank({0.4, 0.3, 0.2, 0.1});
    const auto next = pagerank_step(r, s, 0.85);
    for (double v : next.values) CHECK(v == doctest::Approx(0.15 / 4).epsilon(1e-15));
    CHECK(next.norm1 == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("worked 4-vertex case matches the dense spot value") {
    const auto s = worked_case_matrix();
    const auto r = make_rank({0.25, 0.25, 0.25, 0.25});
    const auto next = pagerank_step(r, s, 0.85);
    // r'(1) = 0.85*(0.25*0.5 + 0.25*1.0) + 0.15/4
    CHECK(next.values[0] == doctest::Approx(0.356250).epsilon(1e-12));
}

TEST_CASE("one sparse step equals one dense multiply at S<=8") {
    for (int scale : {4, 8}) {
        const auto s = pipeline_matrix(scale, 17);
        const auto g = dense_pagerank_matrix(s, 0.85);
        const auto r = init_rank(s.n, 3);
        const auto sparse = pagerank_step(r, s, 0.85);
        for (std::int64_t i = 0; i < s.n; ++i) {
            double acc = 0.0;
            for (std::int64_t j = 0; j < s.n; ++j)
                acc += g.at(i, j) * r.values[static_cast<std::size_t>(j)];
            CHECK(std::abs(acc - sparse.values[static_cast<std::size_t>(i)]) <= 1e-12);
        }
    }
}

TEST_CASE("the update is linear: step(2r) = 2 step(r)") {
    const auto s = worked_case_matrix();
    const auto r = make_rank({0.1, 0.2, 0.3, 0.4});
    auto doubled = r;
    for (double& v : doubled.values) v *= 2.0;
    doubled.norm1 *= 2.0;
    const auto once = pagerank_step(r, s, 0.85);
    const auto twice = pagerank_step(doubled, s, 0.85);
    for (std::int64_t i = 0; i < 4; ++i)
        CHECK(twice.values[static_cast<std::size_t>(i)] ==
              doctest::Approx(2.0 * once.values[static_cast<std::size_t>(i)]).epsilon(1e-13));
}

TEST_CASE("dimension mismatch is an error") {
    const auto s = permutation_matrix();
    const auto r = make_rank({1.0, 2.0, 3.0});
    CHECK_THROWS_AS(pagerank_step(r, s, 0.85), Error);
}

TEST_CASE("mass dissipates but never increases over 20 iterations at S=10") {
    const auto s = pipeline_matrix(10, 7);
    RankVector r = init_rank(s.n, 7);
    double previous = r.norm1;
    CHECK(previous == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 20; ++i) {
        r = pagerank_step(r, s, 0.85);
        CHECK(r.norm1 <= previous);
        CHECK(r.norm1 > 0.0);
        for (double v : r.values) CHECK(v >= 0.0);
        previous = r.norm1;
    }
}

TEST_CASE("run_kernel3 applies exactly the configured number of steps") {
    const auto s = worked_case_matrix();
    PageRankConfig config;
    config.iterations = 1;
    config.seed = 11;
    const auto result = run_kernel3(s, config, 8);
    const auto manual = pagerank_step(init_rank(4, 11), s, config.damping);
    CHECK(result.ranks.values == manual.values);

    PageRankConfig three = config;
    three.iterations = 3;
    auto r = init_rank(4, 11);
    for (int i = 0; i < 3; ++i) r = pagerank_step(r, s, config.damping);
    CHECK(run_kernel3(s, three, 8).ranks.values == r.values);
}

TEST_CASE("run_kernel3 is bitwise deterministic per seed") {
    const auto s = pipeline_matrix(8, 23);
    PageRankConfig config;
    config.seed = 99;
    const auto a = run_kernel3(s, config, 16 * 256);
    const auto b = run_kernel3(s, config, 16 * 256);
    CHECK(a.ranks.values == b.ranks.values);
}

TEST_CASE("config validation rejects bad damping and iteration counts") {
    PageRankConfig config;
    config.damping = 1.0;
    CHECK_THROWS_AS(config.validate(), Error);
    config.damping = 0.0;
    CHECK_THROWS_AS(config.validate(), Error);
    config.damping = 0.85;
    config.iterations = 0;
    CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("convergence from the uniform fixed point takes one iteration") {
    const auto s = permutation_matrix();
    const auto result = run_to_convergence(s, 0.85, 1e-12, 100, make_rank({0.5, 0.5}));
    CHECK(result.converged);
    CHECK(result.iterations <= 2);
    CHECK(result.ranks.values[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("non-convergence is flagged, not silently accepted") {
    const auto s = permutation_matrix();
    const auto result = run_to_convergence(s, 0.85, 1e-12, 1, make_rank({0.9, 0.1}));
    CHECK(!result.converged);
    CHECK(result.iterations == 1);
}

TEST_CASE("converged direction matches the dense eigenvector on the worked case") {
    const auto s = worked_case_matrix();
    const auto result = run_to_convergence(s, 0.85, 1e-12, 10000, std::uint64_t{5});
    REQUIRE(result.converged);
    const auto g = dense_pagerank_matrix(s, 0.85);
    const auto eig = principal_eigenvector(g, 1e-12, 10000);
    REQUIRE(eig.converged);
    CHECK(validate(result.ranks.values, eig.vector, 1e-8));
}

TEST_CASE("rank dump emits one label TAB rank line per vertex") {
    TempDir tmp;
    const auto r = make_rank({0.5, 0.25, 0.25});
    const auto path = tmp / "ranks.tsv";
    dump_ranks(r, path);
    CHECK(prpipe::testing::slurp(path) == "1\t0.5\n2\t0.25\n3\t0.25\n");
}

}  // TEST_SUITE
