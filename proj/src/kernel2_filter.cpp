#include "prpipe/kernel2_filter.hpp"

#include <algorithm>
#include <numeric>

#include "prpipe/timer.hpp"

namespace prpipe {

namespace {

template <class Source>
CountMatrix build_from(Source&& next_edge, std::int64_t n) {
    if (n <= 0) throw Error("vertex count must be positive");
    CountMatrix a;
    a.n = n;
    a.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);

    std::vector<std::int64_t> pending;  // 0-based end vertices of the open row
    std::int64_t open_row = 0;

    auto close_rows_through = [&](std::int64_t next_row) {
        if (!pending.empty()) {
            std::sort(pending.begin(), pending.end());
            for (std::size_t i = 0; i < pending.size();) {
                std::size_t j = i + 1;
                while (j < pending.size() && pending[j] == pending[i]) ++j;
                a.cols.push_back(pending[i]);
                a.counts.push_back(static_cast<std::int64_t>(j - i));
                i = j;
            }
            pending.clear();
        }
        const auto nnz = static_cast<std::int64_t>(a.cols.size());
        for (std::int64_t r = open_row; r < next_row; ++r)
            a.row_offsets[static_cast<std::size_t>(r) + 1] = nnz;
        open_row = next_row;
    };

    Edge e;
    while (next_edge(e)) {
        if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
            throw Error("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                        ") outside [1, " + std::to_string(n) + "]");
        const std::int64_t row = e.u - 1;
        if (row < open_row)
            throw Error("input not sorted by start vertex: " + std::to_string(e.u) +
                        " follows " + std::to_string(open_row + 1));
        if (row > open_row) close_rows_through(row);
        pending.push_back(e.v - 1);
    }
    close_rows_through(n);
    return a;
}

}  // namespace

std::int64_t CountMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::int64_t CountMatrix::count_at(std::int64_t row, std::int64_t col) const {
    const auto first = cols.begin() + static_cast<std::ptrdiff_t>(row_offsets.at(static_cast<std::size_t>(row)));
    const auto last = cols.begin() + static_cast<std::ptrdiff_t>(row_offsets.at(static_cast<std::size_t>(row) + 1));
    const auto it = std::lower_bound(first, last, col);
    if (it == last || *it != col) return 0;
    return counts[static_cast<std::size_t>(it - cols.begin())];
}

double StochasticMatrix::value_at(std::int64_t row, std::int64_t col) const {
    const auto first = cols.begin() + static_cast<std::ptrdiff_t>(row_offsets.at(static_cast<std::size_t>(row)));
    const auto last = cols.begin() + static_cast<std::ptrdiff_t>(row_offsets.at(static_cast<std::size_t>(row) + 1));
    const auto it = std::lower_bound(first, last, col);
    if (it == last || *it != col) return 0.0;
    return values[static_cast<std::size_t>(it - cols.begin())];
}

double StochasticMatrix::row_sum(std::int64_t row) const {
    double sum = 0.0;
    for (auto k = row_offsets.at(static_cast<std::size_t>(row));
         k < row_offsets.at(static_cast<std::size_t>(row) + 1); ++k)
        sum += values[static_cast<std::size_t>(k)];
    return sum;
}

CountMatrix build_adjacency(EdgeReader& edges, std::int64_t n) {
    return build_from([&](Edge& e) { return edges.next(e); }, n);
}

CountMatrix build_adjacency(std::span<const Edge> edges, std::int64_t n) {
    std::size_t i = 0;
    return build_from(
        [&](Edge& e) {
            if (i == edges.size()) return false;
            e = edges[i++];
            return true;
        },
        n);
}

std::vector<std::int64_t> in_degree(const CountMatrix& a) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(a.n), 0);
    for (std::size_t k = 0; k < a.cols.size(); ++k)
        d[static_cast<std::size_t>(a.cols[k])] += a.counts[k];
    return d;
}

CountMatrix zero_columns(const CountMatrix& a, const std::vector<std::int64_t>& d_in) {
    if (static_cast<std::int64_t>(d_in.size()) != a.n)
        throw Error("in-degree vector length does not match the matrix");
    std::int64_t max_in = 0;
    for (std::int64_t d : d_in) max_in = std::max(max_in, d);

    CountMatrix out;
    out.n = a.n;
    out.row_offsets.assign(static_cast<std::size_t>(a.n) + 1, 0);
    out.cols.reserve(a.cols.size());
    out.counts.reserve(a.counts.size());
    for (std::int64_t row = 0; row < a.n; ++row) {
        for (auto k = a.row_offsets[static_cast<std::size_t>(row)];
             k < a.row_offsets[static_cast<std::size_t>(row) + 1]; ++k) {
            const auto col = a.cols[static_cast<std::size_t>(k)];
            const auto d = d_in[static_cast<std::size_t>(col)];
            if (d == max_in || d == 1) continue;
            out.cols.push_back(col);
            out.counts.push_back(a.counts[static_cast<std::size_t>(k)]);
        }
        out.row_offsets[static_cast<std::size_t>(row) + 1] =
            static_cast<std::int64_t>(out.cols.size());
    }
    return out;
}

StochasticMatrix row_normalize(const CountMatrix& a) {
    StochasticMatrix s;
    s.n = a.n;
    s.row_offsets = a.row_offsets;
    s.cols = a.cols;
    s.values.resize(a.counts.size());
    for (std::int64_t row = 0; row < a.n; ++row) {
        const auto begin = a.row_offsets[static_cast<std::size_t>(row)];
        const auto end = a.row_offsets[static_cast<std::size_t>(row) + 1];
        std::int64_t out_degree = 0;
        for (auto k = begin; k < end; ++k) out_degree += a.counts[static_cast<std::size_t>(k)];
        if (out_degree == 0) continue;
        for (auto k = begin; k < end; ++k)
            s.values[static_cast<std::size_t>(k)] =
                static_cast<double>(a.counts[static_cast<std::size_t>(k)]) /
                static_cast<double>(out_degree);
    }
    return s;
}

Kernel2Result run_kernel2(const EdgeManifest& input) {
    if (!input.sorted_by_start)
        throw Error("kernel 2 requires edges sorted by start vertex; run kernel 1 first");
    Kernel2Result result;
    result.edges = input.total_edges;
    Timer timer;
    EdgeReader reader(input);
    CountMatrix counts = build_adjacency(reader, input.vertex_count());
    const auto d_in = in_degree(counts);
    const CountMatrix filtered = zero_columns(counts, d_in);
    result.matrix = row_normalize(filtered);
    result.elapsed_seconds = timer.seconds();
    result.rate = rate_per_second(result.edges, result.elapsed_seconds);
    return result;
}

}  // namespace prpipe
