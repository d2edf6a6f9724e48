#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prpipe/types.hpp"

namespace prpipe {

inline constexpr const char* kManifestName = "manifest.json";

struct ManifestFile {
    std::string name;
    std::int64_t edges = 0;

    friend bool operator==(const ManifestFile&, const ManifestFile&) = default;
};

// Sidecar metadata for a directory of sharded TSV edge files; the handoff
// artifact between kernels 0, 1 and 2. Persisted as <directory>/manifest.json.
struct EdgeManifest {
    std::filesystem::path directory;
    std::vector<ManifestFile> files;
    std::int64_t total_edges = 0;
    bool sorted_by_start = false;
    int scale = 0;

    std::int64_t vertex_count() const { return std::int64_t{1} << scale; }
    std::filesystem::path file_path(std::size_t index) const;

    void save() const;
    static EdgeManifest load(const std::filesystem::path& directory);
};

// Default shard count: one file per 2^20 edges.
int default_num_files(std::int64_t total_edges);

inline constexpr std::size_t kDefaultIoBuffer = std::size_t{1} << 20;

// Buffered writer for a single TSV shard: "u TAB v LF" per edge, ASCII decimal.
class EdgeFileWriter {
public:
    explicit EdgeFileWriter(std::filesystem::path path,
                            std::size_t buffer_bytes = kDefaultIoBuffer);
    ~EdgeFileWriter();

    EdgeFileWriter(const EdgeFileWriter&) = delete;
    EdgeFileWriter& operator=(const EdgeFileWriter&) = delete;

    void append(const Edge& edge);
    // Flushes and closes; returns the number of edges written.
    std::int64_t close();

    const std::filesystem::path& path() const { return path_; }

private:
    void flush_buffer();

    std::filesystem::path path_;
    std::ofstream out_;
    std::vector<char> buffer_;
    std::size_t used_ = 0;
    std::int64_t count_ = 0;
    bool closed_ = false;
};

// Shards `total_edges` edges contiguously, in arrival order, across
// `num_files` TSV files in `directory`, then records the result in a manifest.
class EdgeWriter {
public:
    EdgeWriter(std::filesystem::path directory, int num_files, std::int64_t total_edges, int scale);

    void append(const Edge& edge);
    void append(std::span<const Edge> edges);

    // Closes the last shard, writes manifest.json, and returns the manifest.
    // Throws if fewer than total_edges edges were appended.
    EdgeManifest finish(bool sorted_by_start);

private:
    void open_next_file();

    EdgeManifest manifest_;
    std::int64_t total_edges_ = 0;
    int num_files_ = 1;
    std::int64_t appended_ = 0;
    std::int64_t remaining_in_file_ = 0;
    std::optional<EdgeFileWriter> file_;
    bool finished_ = false;
};

// One-shot write of an in-memory edge list.
EdgeManifest write_edges(std::span<const Edge> edges, const std::filesystem::path& directory,
                         int num_files, int scale, bool sorted_by_start = false);

// Streaming reader for one TSV shard. Labels are validated against
// [1, max_label]; malformed lines raise ParseError with file and line number.
class EdgeFileReader {
public:
    EdgeFileReader(std::filesystem::path path, std::int64_t max_label,
                   std::size_t buffer_bytes = kDefaultIoBuffer);

    // False at clean end of file.
    bool next(Edge& out);

    std::int64_t edges_read() const { return count_; }
    const std::filesystem::path& path() const { return path_; }

private:
    bool refill();
    void parse_line(const char* begin, const char* end, Edge& out);

    std::filesystem::path path_;
    std::ifstream in_;
    std::vector<char> buffer_;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;
    bool eof_ = false;
    std::int64_t line_ = 0;
    std::int64_t count_ = 0;
    std::int64_t max_label_ = 0;
};

// Streams a manifest's shards in order, yielding exactly total_edges edges.
class EdgeReader {
public:
    explicit EdgeReader(const EdgeManifest& manifest);

    bool next(Edge& out);

private:
    std::vector<std::filesystem::path> paths_;
    std::vector<std::int64_t> expected_counts_;
    std::int64_t max_label_ = 0;
    std::size_t file_index_ = 0;
    std::optional<EdgeFileReader> current_;
};

// Desk-scale convenience: the whole manifest in memory, in file order.
std::vector<Edge> read_edges(const EdgeManifest& manifest);

}  // namespace prpipe
