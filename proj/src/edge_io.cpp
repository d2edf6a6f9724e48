#include "prpipe/edge_io.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <system_error>

#include <json.hpp>

namespace prpipe {

namespace {

// Two 20-digit labels, separator, newline; anything longer is malformed.
constexpr std::size_t kMaxLineBytes = 64;

std::size_t clamped_buffer(std::size_t requested) {
    return std::max<std::size_t>(requested, 2 * kMaxLineBytes);
}

std::string shard_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "edges_%04d.tsv", index);
    return buf;
}

}  // namespace

std::filesystem::path EdgeManifest::file_path(std::size_t index) const {
    return directory / files.at(index).name;
}

void EdgeManifest::save() const {
    nlohmann::ordered_json j;
    // Shard names are relative to the manifest's own location, which keeps
    // manifests relocatable and their bytes independent of the absolute path.
    j["directory"] = ".";
    j["total_edges"] = total_edges;
    j["sorted_by_start"] = sorted_by_start;
    j["scale"] = scale;
    auto& list = j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : files) list.push_back({{"name", f.name}, {"edges", f.edges}});

    const auto path = directory / kManifestName;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write manifest " + path.string());
    out << j.dump(2) << '\n';
    if (!out.flush()) throw Error("failed writing manifest " + path.string());
}

EdgeManifest EdgeManifest::load(const std::filesystem::path& directory) {
    const auto path = directory / kManifestName;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("missing manifest " + path.string());
    nlohmann::json j;
    try {
        in >> j;
        EdgeManifest m;
        m.directory = directory;  // trust the actual location, not the recorded one
        m.total_edges = j.at("total_edges").get<std::int64_t>();
        m.sorted_by_start = j.at("sorted_by_start").get<bool>();
        m.scale = j.at("scale").get<int>();
        std::int64_t sum = 0;
        for (const auto& f : j.at("files")) {
            ManifestFile mf{f.at("name").get<std::string>(), f.at("edges").get<std::int64_t>()};
            sum += mf.edges;
            m.files.push_back(std::move(mf));
        }
        if (sum != m.total_edges)
            throw Error("manifest " + path.string() + " is inconsistent: per-file edges sum to " +
                        std::to_string(sum) + ", total_edges is " + std::to_string(m.total_edges));
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed manifest " + path.string() + ": " + e.what());
    }
}

int default_num_files(std::int64_t total_edges) {
    const std::int64_t per_file = std::int64_t{1} << 20;
    if (total_edges <= per_file) return 1;
    return static_cast<int>((total_edges + per_file - 1) / per_file);
}

EdgeFileWriter::EdgeFileWriter(std::filesystem::path path, std::size_t buffer_bytes)
    : path_(std::move(path)),
      out_(path_, std::ios::binary | std::ios::trunc),
      buffer_(clamped_buffer(buffer_bytes)) {
    if (!out_) throw Error("cannot open " + path_.string() + " for writing");
}

EdgeFileWriter::~EdgeFileWriter() {
    if (!closed_ && out_.is_open()) {
        // Best effort; errors surface only through close().
        out_.write(buffer_.data(), static_cast<std::streamsize>(used_));
    }
}

void EdgeFileWriter::flush_buffer() {
    if (used_ == 0) return;
    out_.write(buffer_.data(), static_cast<std::streamsize>(used_));
    if (!out_) throw Error("write failed on " + path_.string());
    used_ = 0;
}

void EdgeFileWriter::append(const Edge& edge) {
    if (buffer_.size() - used_ < kMaxLineBytes) flush_buffer();
    char* p = buffer_.data() + used_;
    auto r = std::to_chars(p, p + 24, edge.u);
    p = r.ptr;
    *p++ = '\t';
    r = std::to_chars(p, p + 24, edge.v);
    p = r.ptr;
    *p++ = '\n';
    used_ = static_cast<std::size_t>(p - buffer_.data());
    ++count_;
}

std::int64_t EdgeFileWriter::close() {
    if (closed_) return count_;
    flush_buffer();
    out_.flush();
    if (!out_) throw Error("flush failed on " + path_.string());
    out_.close();
    closed_ = true;
    return count_;
}

EdgeWriter::EdgeWriter(std::filesystem::path directory, int num_files, std::int64_t total_edges,
                       int scale)
    : total_edges_(total_edges), num_files_(num_files) {
    if (total_edges < 0) throw Error("negative edge count");
    if (num_files < 1) throw Error("number of files must be >= 1");
    if (total_edges == 0 && num_files != 1)
        throw Error("an empty edge list is written as exactly one file");
    if (total_edges > 0 && num_files > total_edges)
        throw Error("cannot split " + std::to_string(total_edges) + " edges across " +
                    std::to_string(num_files) + " files");
    manifest_.directory = std::move(directory);
    manifest_.total_edges = total_edges;
    manifest_.scale = scale;
    std::filesystem::create_directories(manifest_.directory);
    open_next_file();
}

void EdgeWriter::open_next_file() {
    if (file_) {
        const auto written = file_->close();
        manifest_.files.back().edges = written;
    }
    const int index = static_cast<int>(manifest_.files.size());
    if (index >= num_files_) {
        file_.reset();
        return;
    }
    // Contiguous split: earlier shards take the remainder, one extra edge each.
    const std::int64_t base = total_edges_ / num_files_;
    const std::int64_t extra = index < (total_edges_ % num_files_) ? 1 : 0;
    remaining_in_file_ = base + extra;
    const auto name = shard_name(index);
    manifest_.files.push_back({name, 0});
    file_.emplace(manifest_.directory / name);
}

void EdgeWriter::append(const Edge& edge) {
    if (finished_) throw Error("EdgeWriter already finished");
    if (appended_ == total_edges_)
        throw Error("more edges appended than the declared total " + std::to_string(total_edges_));
    if (remaining_in_file_ == 0) open_next_file();
    file_->append(edge);
    --remaining_in_file_;
    ++appended_;
}

void EdgeWriter::append(std::span<const Edge> edges) {
    for (const Edge& e : edges) append(e);
}

EdgeManifest EdgeWriter::finish(bool sorted_by_start) {
    if (finished_) throw Error("EdgeWriter already finished");
    if (appended_ != total_edges_)
        throw Error("expected " + std::to_string(total_edges_) + " edges, got " +
                    std::to_string(appended_));
    if (file_) manifest_.files.back().edges = file_->close();
    file_.reset();
    finished_ = true;
    manifest_.sorted_by_start = sorted_by_start;
    manifest_.save();
    return manifest_;
}

EdgeManifest write_edges(std::span<const Edge> edges, const std::filesystem::path& directory,
                         int num_files, int scale, bool sorted_by_start) {
    EdgeWriter writer(directory, num_files, static_cast<std::int64_t>(edges.size()), scale);
    writer.append(edges);
    return writer.finish(sorted_by_start);
}

EdgeFileReader::EdgeFileReader(std::filesystem::path path, std::int64_t max_label,
                               std::size_t buffer_bytes)
    : path_(std::move(path)),
      in_(path_, std::ios::binary),
      buffer_(clamped_buffer(buffer_bytes)),
      max_label_(max_label) {
    if (!in_) throw Error("cannot open " + path_.string() + " for reading");
}

bool EdgeFileReader::refill() {
    // Keep the unconsumed tail, then top the buffer up.
    if (pos_ > 0) {
        std::memmove(buffer_.data(), buffer_.data() + pos_, end_ - pos_);
        end_ -= pos_;
        pos_ = 0;
    }
    if (end_ == buffer_.size()) {
        ++line_;
        throw ParseError(path_.string(), line_, "line exceeds " +
                         std::to_string(buffer_.size()) + " bytes");
    }
    in_.read(buffer_.data() + end_, static_cast<std::streamsize>(buffer_.size() - end_));
    const auto got = in_.gcount();
    if (in_.bad()) throw Error("read failed on " + path_.string());
    end_ += static_cast<std::size_t>(got);
    if (got == 0) eof_ = true;
    return got > 0;
}

void EdgeFileReader::parse_line(const char* begin, const char* end, Edge& out) {
    ++line_;
    auto fail = [&](const char* detail) { throw ParseError(path_.string(), line_, detail); };
    std::int64_t u = 0;
    std::int64_t v = 0;
    auto r = std::from_chars(begin, end, u);
    if (r.ec != std::errc{}) fail("expected an integer start vertex");
    if (r.ptr == end || *r.ptr != '\t') fail("expected a TAB after the start vertex");
    r = std::from_chars(r.ptr + 1, end, v);
    if (r.ec != std::errc{}) fail("expected an integer end vertex");
    if (r.ptr != end) fail("unexpected bytes after the end vertex");
    if (u < 1 || u > max_label_ || v < 1 || v > max_label_)
        fail("vertex label outside [1, N]");
    out = {u, v};
}

bool EdgeFileReader::next(Edge& out) {
    for (;;) {
        const char* base = buffer_.data();
        const void* nl = std::memchr(base + pos_, '\n', end_ - pos_);
        if (nl != nullptr) {
            const auto* line_end = static_cast<const char*>(nl);
            parse_line(base + pos_, line_end, out);
            pos_ = static_cast<std::size_t>(line_end - base) + 1;
            ++count_;
            return true;
        }
        if (!eof_ && refill()) continue;
        if (pos_ == end_) return false;
        // Final line without a trailing newline is accepted.
        parse_line(base + pos_, base + end_, out);
        pos_ = end_;
        ++count_;
        return true;
    }
}

EdgeReader::EdgeReader(const EdgeManifest& manifest) : max_label_(manifest.vertex_count()) {
    paths_.reserve(manifest.files.size());
    for (std::size_t i = 0; i < manifest.files.size(); ++i) {
        paths_.push_back(manifest.file_path(i));
        expected_counts_.push_back(manifest.files[i].edges);
    }
}

bool EdgeReader::next(Edge& out) {
    for (;;) {
        if (!current_) {
            if (file_index_ >= paths_.size()) return false;
            current_.emplace(paths_[file_index_], max_label_);
        }
        if (current_->next(out)) return true;
        if (current_->edges_read() != expected_counts_[file_index_])
            throw Error(paths_[file_index_].string() + " holds " +
                        std::to_string(current_->edges_read()) + " edges, manifest says " +
                        std::to_string(expected_counts_[file_index_]));
        current_.reset();
        ++file_index_;
    }
}

std::vector<Edge> read_edges(const EdgeManifest& manifest) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(manifest.total_edges));
    EdgeReader reader(manifest);
    Edge e;
    while (reader.next(e)) edges.push_back(e);
    return edges;
}

}  // namespace prpipe
