#include "prpipe/kernel1_sort.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <vector>

#include <unistd.h>

namespace prpipe {

namespace {

constexpr auto by_start_vertex = [](const Edge& a, const Edge& b) { return a.u < b.u; };

std::string run_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "run_%05d.tsv", index);
    return buf;
}

// Sorts one buffered run and spills it to a TSV file.
std::filesystem::path spill_run(std::vector<Edge>& edges, const std::filesystem::path& dir,
                                int index, std::size_t io_buffer) {
    std::sort(edges.begin(), edges.end(), by_start_vertex);
    auto path = dir / run_name(index);
    EdgeFileWriter writer(path, io_buffer);
    for (const Edge& e : edges) writer.append(e);
    writer.close();
    return path;
}

// Merges the given runs into `sink`, smallest start vertex first; ties break
// by run order, which keeps the merge deterministic.
template <class Sink>
void merge_runs(const std::vector<std::filesystem::path>& runs, std::int64_t max_label,
                std::size_t io_buffer, Sink&& sink) {
    struct Head {
        Edge edge;
        std::size_t source;
    };
    const auto later = [](const Head& a, const Head& b) {
        if (a.edge.u != b.edge.u) return a.edge.u > b.edge.u;
        return a.source > b.source;
    };
    std::vector<EdgeFileReader> readers;
    readers.reserve(runs.size());
    std::priority_queue<Head, std::vector<Head>, decltype(later)> heap(later);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        readers.emplace_back(runs[i], max_label, io_buffer);
        Edge e;
        if (readers.back().next(e)) heap.push({e, i});
    }
    while (!heap.empty()) {
        Head head = heap.top();
        heap.pop();
        sink(head.edge);
        Edge e;
        if (readers[head.source].next(e)) heap.push({e, head.source});
    }
}

EdgeManifest sort_in_memory(const EdgeManifest& input, const std::filesystem::path& output_dir,
                            int num_files) {
    std::vector<Edge> edges = read_edges(input);
    std::sort(edges.begin(), edges.end(), by_start_vertex);
    return write_edges(edges, output_dir, num_files, input.scale, /*sorted_by_start=*/true);
}

EdgeManifest sort_out_of_core(const EdgeManifest& input, const std::filesystem::path& output_dir,
                              int num_files, std::int64_t budget_bytes,
                              const std::filesystem::path& spill_dir, int fan_in) {
    std::filesystem::create_directories(spill_dir);
    const std::int64_t run_capacity =
        std::max<std::int64_t>(1, budget_bytes / static_cast<std::int64_t>(sizeof(Edge)));
    const std::int64_t max_label = input.vertex_count();
    // Stream buffers share the budget across the fan-in during merges.
    const std::size_t io_buffer = static_cast<std::size_t>(std::clamp<std::int64_t>(
        budget_bytes / (fan_in + 1), 4096, std::int64_t{1} << 20));

    // Run formation: budget-sized sorted spill files.
    std::vector<std::filesystem::path> runs;
    {
        EdgeReader reader(input);
        std::vector<Edge> buffer;
        buffer.reserve(static_cast<std::size_t>(run_capacity));
        Edge e;
        int run_index = 0;
        while (reader.next(e)) {
            buffer.push_back(e);
            if (static_cast<std::int64_t>(buffer.size()) == run_capacity) {
                runs.push_back(spill_run(buffer, spill_dir, run_index++, io_buffer));
                buffer.clear();
            }
        }
        if (!buffer.empty()) runs.push_back(spill_run(buffer, spill_dir, run_index++, io_buffer));
    }

    // Intermediate passes keep the merge fan-in bounded.
    int next_run = static_cast<int>(runs.size());
    while (static_cast<int>(runs.size()) > fan_in) {
        std::vector<std::filesystem::path> merged;
        for (std::size_t i = 0; i < runs.size(); i += static_cast<std::size_t>(fan_in)) {
            const auto last = std::min(runs.size(), i + static_cast<std::size_t>(fan_in));
            std::vector<std::filesystem::path> group(runs.begin() + static_cast<std::ptrdiff_t>(i),
                                                     runs.begin() + static_cast<std::ptrdiff_t>(last));
            auto out = spill_dir / run_name(next_run++);
            EdgeFileWriter writer(out, io_buffer);
            merge_runs(group, max_label, io_buffer, [&](const Edge& e) { writer.append(e); });
            writer.close();
            for (const auto& p : group) std::filesystem::remove(p);
            merged.push_back(std::move(out));
        }
        runs = std::move(merged);
    }

    EdgeWriter writer(output_dir, num_files, input.total_edges, input.scale);
    merge_runs(runs, max_label, io_buffer, [&](const Edge& e) { writer.append(e); });
    auto manifest = writer.finish(/*sorted_by_start=*/true);
    std::filesystem::remove_all(spill_dir);
    return manifest;
}

}  // namespace

std::int64_t default_memory_budget() {
    const long pages = sysconf(_SC_PHYS_PAGES);
    const long page_size = sysconf(_SC_PAGE_SIZE);
    if (pages <= 0 || page_size <= 0) return std::int64_t{1} << 30;
    return static_cast<std::int64_t>(pages) * page_size / 4;
}

EdgeManifest sort_edges(const EdgeManifest& input, const std::filesystem::path& output_dir,
                        const SortOptions& options) {
    const std::int64_t budget =
        options.memory_budget_bytes > 0 ? options.memory_budget_bytes : default_memory_budget();
    if (budget <= 0) throw Error("memory budget must be positive");
    const int fan_in = std::max(2, options.merge_fan_in);
    const int num_files =
        options.num_files > 0 ? options.num_files : default_num_files(input.total_edges);

    // Division instead of multiplication keeps huge edge counts from overflowing.
    if (input.total_edges <= budget / static_cast<std::int64_t>(sizeof(Edge)))
        return sort_in_memory(input, output_dir, num_files);

    const auto spill_dir =
        options.spill_dir.empty() ? output_dir / "spill" : options.spill_dir;
    return sort_out_of_core(input, output_dir, num_files, budget, spill_dir, fan_in);
}

}  // namespace prpipe
