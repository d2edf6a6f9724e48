// prpipe: four-kernel PageRank pipeline benchmark.
//
// Kernel 0 generates an approximately power-law edge list to sharded TSV
// files, kernel 1 sorts it by start vertex, kernel 2 builds and filters the
// normalized sparse adjacency matrix, kernel 3 runs fixed-iteration PageRank.
// Kernels run fused (`run`) or one at a time against the staged files.

#include <cinttypes>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "prpipe/bench.hpp"

namespace {

struct CommonOptions {
    int scale = 10;
    std::int64_t edge_factor = 16;
    std::uint64_t seed = 0;
    int num_files = 0;
    std::int64_t memory_budget = 0;
    int iterations = 20;
    double damping = 0.85;
    std::string data_dir = "prpipe_data";
};

void add_data_dir(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--data-dir", opt.data_dir, "Directory holding the staged edge files")
        ->envname("PRPIPE_DATA_DIR")
        ->capture_default_str();
}

void print_record(const prpipe::KernelRecord& rec) {
    std::printf("%-12s %12.6f s  %14.1f edges/s  (%" PRId64 " edges%s)\n", rec.name.c_str(),
                rec.elapsed_seconds, rec.rate, rec.work_edges,
                rec.scoring ? "" : ", not scored");
}

int run_command(const CommonOptions& opt, bool validate, double tol, int max_iters,
                const std::string& output, const std::string& format,
                const std::string& rank_out) {
    prpipe::PipelineOptions pipeline;
    pipeline.gen.scale = opt.scale;
    pipeline.gen.edge_factor = opt.edge_factor;
    pipeline.gen.seed = opt.seed;
    pipeline.pagerank.iterations = opt.iterations;
    pipeline.pagerank.damping = opt.damping;
    pipeline.pagerank.seed = opt.seed;
    pipeline.num_files = opt.num_files;
    pipeline.memory_budget_bytes = opt.memory_budget;
    pipeline.data_dir = opt.data_dir;
    pipeline.validate = validate;
    pipeline.validate_tol = tol;
    pipeline.validate_max_iters = max_iters;
    if (!rank_out.empty()) pipeline.rank_dump = rank_out;

    const auto report = prpipe::run_pipeline(pipeline);

    std::printf("pagerank pipeline: scale %d, %" PRId64 " vertices, %" PRId64 " edges, seed %" PRIu64 "\n",
                report.scale, report.vertices, report.edges, report.seed);
    for (const auto& rec : report.kernels) print_record(rec);
    if (report.validation.performed)
        std::printf("validation   %s (tol %g)\n",
                    report.validation.passed ? "passed" : "FAILED", report.validation.tol);
    if (!output.empty()) prpipe::emit_report(report, output, format);

    if (report.failed) {
        std::fprintf(stderr, "error: %s\n", report.error.c_str());
        return 1;
    }
    if (report.validation.performed && !report.validation.passed) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PageRank pipeline benchmark"};
    app.set_version_flag("--version", "prpipe 0.1.0");
    app.require_subcommand(1);

    CommonOptions opt;
    bool validate = false;
    double tol = 1e-8;
    int max_iters = 10000;
    std::string output;
    std::string format = "both";
    std::string rank_out;

    auto* run = app.add_subcommand("run", "Run kernels 0-3 in sequence and report throughput");
    run->add_option("--scale", opt.scale,
                    "log2 of the vertex count; for a meaningful measurement pick a scale "
                    "whose edge data fills ~25% of RAM (advisory, not enforced)")
        ->capture_default_str();
    run->add_option("--edge-factor", opt.edge_factor, "Average edges per vertex")
        ->capture_default_str();
    run->add_option("--seed", opt.seed, "Master seed for generation and PageRank init")
        ->capture_default_str();
    run->add_option("--num-files", opt.num_files, "Shard count (0 = one per 2^20 edges)");
    run->add_option("--memory-budget", opt.memory_budget,
                    "Sort memory budget in bytes (0 = 25% of RAM)");
    run->add_option("--iterations", opt.iterations, "PageRank iterations")->capture_default_str();
    run->add_option("--damping", opt.damping, "PageRank damping factor")->capture_default_str();
    run->add_flag("--validate", validate, "Cross-check against the dense eigenvector oracle");
    run->add_option("--tol", tol, "Validation tolerance (normalized 1-norm)")
        ->capture_default_str();
    run->add_option("--output", output, "Report file stem (writes <stem>.json / <stem>.tsv)");
    run->add_option("--format", format, "Report format: json, tsv or both")
        ->check(CLI::IsMember({"json", "tsv", "both"}))
        ->capture_default_str();
    run->add_option("--rank-out", rank_out, "Dump the final rank vector as TSV");
    add_data_dir(run, opt);

    auto* generate = app.add_subcommand("generate", "Kernel 0: generate edges to files");
    generate->add_option("--scale", opt.scale)->capture_default_str();
    generate->add_option("--edge-factor", opt.edge_factor)->capture_default_str();
    generate->add_option("--seed", opt.seed)->capture_default_str();
    generate->add_option("--num-files", opt.num_files);
    add_data_dir(generate, opt);

    auto* sort = app.add_subcommand("sort", "Kernel 1: sort the generated edges by start vertex");
    sort->add_option("--num-files", opt.num_files);
    sort->add_option("--memory-budget", opt.memory_budget);
    add_data_dir(sort, opt);

    auto* filter = app.add_subcommand("filter", "Kernel 2: build and normalize the adjacency matrix");
    add_data_dir(filter, opt);

    auto* pagerank = app.add_subcommand("pagerank", "Kernel 3: run PageRank on the staged edges");
    pagerank->add_option("--iterations", opt.iterations)->capture_default_str();
    pagerank->add_option("--damping", opt.damping)->capture_default_str();
    pagerank->add_option("--seed", opt.seed)->capture_default_str();
    pagerank->add_option("--rank-out", rank_out, "Dump the final rank vector as TSV");
    add_data_dir(pagerank, opt);

    auto* validate_cmd =
        app.add_subcommand("validate", "Compare converged PageRank with the dense eigenvector");
    validate_cmd->add_option("--damping", opt.damping)->capture_default_str();
    validate_cmd->add_option("--seed", opt.seed)->capture_default_str();
    validate_cmd->add_option("--tol", tol)->capture_default_str();
    validate_cmd->add_option("--max-iters", max_iters)->capture_default_str();
    add_data_dir(validate_cmd, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_command(opt, validate, tol, max_iters, output, format, rank_out);
        if (generate->parsed()) {
            prpipe::GenConfig config;
            config.scale = opt.scale;
            config.edge_factor = opt.edge_factor;
            config.seed = opt.seed;
            const auto out = prpipe::generate_stage(config, opt.data_dir, opt.num_files);
            print_record(out.record);
            std::printf("wrote %zu file(s) under %s\n", out.manifest.files.size(),
                        out.manifest.directory.string().c_str());
            return 0;
        }
        if (sort->parsed()) {
            prpipe::SortOptions options;
            options.memory_budget_bytes = opt.memory_budget;
            options.num_files = opt.num_files;
            const auto out = prpipe::sort_stage(opt.data_dir, options);
            print_record(out.record);
            return 0;
        }
        if (filter->parsed()) {
            const auto out = prpipe::filter_stage(opt.data_dir);
            print_record(out.record);
            std::printf("matrix: %" PRId64 " vertices, %" PRId64 " stored entries\n",
                        out.result.matrix.n, out.result.matrix.nnz());
            return 0;
        }
        if (pagerank->parsed()) {
            prpipe::PageRankConfig config;
            config.iterations = opt.iterations;
            config.damping = opt.damping;
            config.seed = opt.seed;
            const auto out = prpipe::pagerank_stage(opt.data_dir, config);
            print_record(out.record);
            if (!rank_out.empty()) prpipe::dump_ranks(out.result.ranks, rank_out);
            return 0;
        }
        if (validate_cmd->parsed()) {
            const auto outcome =
                prpipe::validate_stage(opt.data_dir, opt.damping, tol, max_iters, opt.seed);
            std::printf("validation %s: |r - r1|_1 = %.3e (tol %g, sparse %d iters, dense %d iters)\n",
                        outcome.passed ? "passed" : "FAILED", outcome.difference, outcome.tol,
                        outcome.sparse_iterations, outcome.dense_iterations);
            return outcome.passed ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
