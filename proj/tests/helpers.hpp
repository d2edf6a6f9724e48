#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "prpipe/types.hpp"

namespace prpipe::testing {

// Worked 4-vertex case (N=4, M=8), hand-checkable through every kernel-2 step:
// d_in = [2,3,2,1], columns 2 (max) and 4 (leaf) zeroed, normalized rows
// {1->3: 1.0}, {2->1: 0.5, 2->3: 0.5}, {3->1: 1.0}, row 4 empty.
inline std::vector<Edge> worked_case_edges() {
    return {{1, 2}, {3, 2}, {4, 2}, {1, 3}, {2, 3}, {2, 1}, {3, 1}, {1, 4}};
}

inline std::vector<Edge> sorted_by_start(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u < b.u; });
    return edges;
}

inline std::vector<Edge> sorted_fully(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return edges;
}

// Self-cleaning unique directory under the system temp root.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("prpipe_test_" + std::to_string(getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace prpipe::testing
