#include "prpipe/bench.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "prpipe/timer.hpp"

namespace prpipe {

namespace {

KernelRecord make_record(std::string name, double elapsed, std::int64_t work, bool scoring) {
    KernelRecord rec;
    rec.name = std::move(name);
    rec.elapsed_seconds = elapsed;
    rec.work_edges = work;
    rec.rate = rate_per_second(work, elapsed);
    rec.scoring = scoring;
    return rec;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

BenchReport report_skeleton(const PipelineOptions& opt) {
    BenchReport report;
    report.timestamp = utc_timestamp();
    report.seed = opt.gen.seed;
    report.scale = opt.gen.scale;
    report.edge_factor = opt.gen.edge_factor;
    report.iterations = opt.pagerank.iterations;
    report.damping = opt.pagerank.damping;
    report.data_dir = opt.data_dir.string();
    return report;
}

// K0: generate M edges and shard them under dir; timed but non-scoring.
StageOutput run_kernel0(const GenConfig& config, const std::filesystem::path& dir,
                        int num_files) {
    EdgeGenerator gen(config);
    const auto total = config.edge_count();
    const int files = num_files > 0 ? num_files : default_num_files(total);
    Timer timer;
    EdgeWriter writer(dir, files, total, config.scale);
    std::vector<Edge> batch;
    for (std::int64_t b = 0; b < gen.batch_count(); ++b) {
        gen.fill_batch(b, batch);
        writer.append(batch);
    }
    auto manifest = writer.finish(/*sorted_by_start=*/false);
    const double elapsed = timer.seconds();
    return {std::move(manifest), make_record("k0_generate", elapsed, total, /*scoring=*/false)};
}

}  // namespace

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path stage_dir(const std::filesystem::path& data_dir, std::string_view stage) {
    return data_dir / stage;
}

EdgeManifest load_stage_manifest(const std::filesystem::path& data_dir, std::string_view stage) {
    const auto dir = stage_dir(data_dir, stage);
    if (!std::filesystem::exists(dir / kManifestName))
        throw Error("missing manifest " + (dir / kManifestName).string() +
                    "; run the previous kernel first");
    return EdgeManifest::load(dir);
}

StageOutput generate_stage(const GenConfig& config, const std::filesystem::path& data_dir,
                           int num_files) {
    return run_kernel0(config, stage_dir(data_dir, kStageGenerated), num_files);
}

StageOutput sort_stage(const std::filesystem::path& data_dir, const SortOptions& options) {
    const auto input = load_stage_manifest(data_dir, kStageGenerated);
    Timer timer;
    auto manifest = sort_edges(input, stage_dir(data_dir, kStageSorted), options);
    const double elapsed = timer.seconds();
    return {std::move(manifest),
            make_record("k1_sort", elapsed, input.total_edges, /*scoring=*/true)};
}

FilterStageOutput filter_stage(const std::filesystem::path& data_dir) {
    const auto input = load_stage_manifest(data_dir, kStageSorted);
    auto result = run_kernel2(input);
    auto record =
        make_record("k2_filter", result.elapsed_seconds, result.edges, /*scoring=*/true);
    return {std::move(result), std::move(record)};
}

PageRankStageOutput pagerank_stage(const std::filesystem::path& data_dir,
                                   const PageRankConfig& config) {
    const auto input = load_stage_manifest(data_dir, kStageSorted);
    auto k2 = run_kernel2(input);  // untimed preparation for a standalone K3 run
    auto result = run_kernel3(k2.matrix, config, input.total_edges);
    auto record = make_record("k3_pagerank", result.elapsed_seconds,
                              static_cast<std::int64_t>(config.iterations) * input.total_edges,
                              /*scoring=*/true);
    return {std::move(result), std::move(record), input.total_edges};
}

ValidationOutcome validate_stage(const std::filesystem::path& data_dir, double damping, double tol,
                                 int max_iters, std::uint64_t seed) {
    const auto input = load_stage_manifest(data_dir, kStageSorted);
    const auto k2 = run_kernel2(input);
    return validate_against_oracle(k2.matrix, damping, tol, max_iters, seed);
}

BenchReport run_pipeline(const PipelineOptions& options) {
    BenchReport report = report_skeleton(options);
    try {
        options.gen.validate();
        options.pagerank.validate();
        const auto [n, m] = derived_sizes(options.gen.scale, options.gen.edge_factor);
        report.vertices = n;
        report.edges = m;
        if (options.validate && n > kDenseCap)
            throw Error("validation needs N <= " + std::to_string(kDenseCap) +
                        "; lower the scale or drop --validate");
        const int files = options.num_files > 0 ? options.num_files : default_num_files(m);
        report.num_files = files;

        // Kernel 0; barrier: the manifest exists only once all shards are closed.
        auto k0 = run_kernel0(options.gen, stage_dir(options.data_dir, kStageGenerated), files);
        report.kernels.push_back(k0.record);

        // Kernel 1.
        SortOptions sort_options;
        sort_options.memory_budget_bytes = options.memory_budget_bytes;
        sort_options.num_files = files;
        Timer k1_timer;
        auto sorted = sort_edges(k0.manifest, stage_dir(options.data_dir, kStageSorted),
                                 sort_options);
        report.kernels.push_back(make_record("k1_sort", k1_timer.seconds(), m, true));

        // Kernel 2.
        auto k2 = run_kernel2(sorted);
        report.kernels.push_back(make_record("k2_filter", k2.elapsed_seconds, m, true));

        // Kernel 3.
        auto k3 = run_kernel3(k2.matrix, options.pagerank, m);
        report.kernels.push_back(
            make_record("k3_pagerank", k3.elapsed_seconds,
                        static_cast<std::int64_t>(options.pagerank.iterations) * m, true));

        if (options.rank_dump) dump_ranks(k3.ranks, *options.rank_dump);

        if (options.validate) {
            const auto outcome =
                validate_against_oracle(k2.matrix, options.pagerank.damping, options.validate_tol,
                                        options.validate_max_iters, options.pagerank.seed);
            report.validation.performed = true;
            report.validation.tol = outcome.tol;
            report.validation.passed = outcome.passed;
        }
    } catch (const std::exception& e) {
        report.failed = true;
        report.error = e.what();
    }
    return report;
}

std::string report_to_json(const BenchReport& report) {
    nlohmann::ordered_json j;
    j["benchmark"] = "pagerank-pipeline";
    j["timestamp"] = report.timestamp;
    j["config"] = {{"scale", report.scale},
                   {"edge_factor", report.edge_factor},
                   {"seed", report.seed},
                   {"iterations", report.iterations},
                   {"damping", report.damping},
                   {"num_files", report.num_files},
                   {"data_dir", report.data_dir}};
    j["sizes"] = {{"vertices", report.vertices}, {"edges", report.edges}};
    auto& kernels = j["kernels"] = nlohmann::ordered_json::array();
    for (const auto& k : report.kernels)
        kernels.push_back({{"name", k.name},
                           {"elapsed_seconds", k.elapsed_seconds},
                           {"rate_edges_per_sec", k.rate},
                           {"work_edges", k.work_edges},
                           {"scoring", k.scoring}});
    j["validation"] = {{"performed", report.validation.performed},
                       {"tol", report.validation.tol},
                       {"passed", report.validation.passed}};
    j["failed"] = report.failed;
    j["error"] = report.error;
    return j.dump(2) + "\n";
}

std::string report_to_tsv(const BenchReport& report) {
    std::string out =
        "kernel\tscale\tvertices\tedges\twork_edges\telapsed_seconds\trate_edges_per_sec\t"
        "scoring\n";
    for (const auto& k : report.kernels) {
        out += k.name;
        out += '\t';
        out += std::to_string(report.scale);
        out += '\t';
        out += std::to_string(report.vertices);
        out += '\t';
        out += std::to_string(report.edges);
        out += '\t';
        out += std::to_string(k.work_edges);
        out += '\t';
        out += format_double(k.elapsed_seconds);
        out += '\t';
        out += format_double(k.rate);
        out += '\t';
        out += k.scoring ? "true" : "false";
        out += '\n';
    }
    return out;
}

void emit_report(const BenchReport& report, const std::filesystem::path& stem,
                 std::string_view format) {
    if (format != "json" && format != "tsv" && format != "both")
        throw Error("unknown report format '" + std::string(format) + "'");
    auto write = [&](const char* extension, const std::string& body) {
        auto path = stem;
        path += extension;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write report " + path.string());
        out << body;
        if (!out.flush()) throw Error("failed writing report " + path.string());
    };
    if (format == "json" || format == "both") write(".json", report_to_json(report));
    if (format == "tsv" || format == "both") write(".tsv", report_to_tsv(report));
}

}  // namespace prpipe
