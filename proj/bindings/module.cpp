// Python bindings for the PageRank pipeline benchmark core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <json.hpp>

#include "prpipe/bench.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            py::dict d;
            for (const auto& [key, value] : j.items()) d[py::str(key)] = json_to_py(value);
            return d;
        }
        case nlohmann::json::value_t::array: {
            py::list l;
            for (const auto& value : j) l.append(json_to_py(value));
            return l;
        }
        case nlohmann::json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer:
            return py::int_(j.get<std::int64_t>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<std::uint64_t>());
        case nlohmann::json::value_t::number_float:
            return py::float_(j.get<double>());
        default:
            return py::none();
    }
}

std::vector<prpipe::Edge> edges_from_pairs(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
    std::vector<prpipe::Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs) edges.push_back({u, v});
    return edges;
}

std::vector<std::pair<std::int64_t, std::int64_t>> pairs_from_edges(
    const std::vector<prpipe::Edge>& edges) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    pairs.reserve(edges.size());
    for (const auto& e : edges) pairs.emplace_back(e.u, e.v);
    return pairs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    using namespace prpipe;

    m.doc() = "Four-kernel PageRank pipeline benchmark: generate, sort, filter, PageRank.";

    py::register_exception<Error>(m, "PipelineError", PyExc_RuntimeError);

    m.attr("DENSE_CAP") = kDenseCap;

    py::class_<GenConfig>(m, "GenConfig")
        .def(py::init([](int scale, std::int64_t edge_factor, std::uint64_t seed,
                         std::array<double, 4> initiator, bool permute_labels) {
                 GenConfig c;
                 c.scale = scale;
                 c.edge_factor = edge_factor;
                 c.seed = seed;
                 c.initiator = initiator;
                 c.permute_labels = permute_labels;
                 return c;
             }),
             py::arg("scale") = 10, py::arg("edge_factor") = 16, py::arg("seed") = 0,
             py::arg("initiator") = std::array<double, 4>{0.57, 0.19, 0.19, 0.05},
             py::arg("permute_labels") = true)
        .def_readwrite("scale", &GenConfig::scale)
        .def_readwrite("edge_factor", &GenConfig::edge_factor)
        .def_readwrite("seed", &GenConfig::seed)
        .def_readwrite("initiator", &GenConfig::initiator)
        .def_readwrite("permute_labels", &GenConfig::permute_labels)
        .def_property_readonly("vertex_count", &GenConfig::vertex_count)
        .def_property_readonly("edge_count", &GenConfig::edge_count)
        .def("validate", &GenConfig::validate);

    m.def("derived_sizes", &derived_sizes, py::arg("scale"), py::arg("edge_factor") = 16,
          "(N, M) = (2^scale, edge_factor * 2^scale)");
    m.def("estimate_memory_bytes", &estimate_memory_bytes, py::arg("config"),
          py::arg("bytes_per_edge") = 24);
    m.def(
        "generate_edges",
        [](const GenConfig& config) { return pairs_from_edges(generate_edges(config)); },
        py::arg("config"), "The full edge list as (u, v) pairs; desk scales only.");

    py::class_<ManifestFile>(m, "ManifestFile")
        .def_readonly("name", &ManifestFile::name)
        .def_readonly("edges", &ManifestFile::edges);

    py::class_<EdgeManifest>(m, "EdgeManifest")
        .def_property_readonly("directory",
                               [](const EdgeManifest& m_) { return m_.directory.string(); })
        .def_readonly("files", &EdgeManifest::files)
        .def_readonly("total_edges", &EdgeManifest::total_edges)
        .def_readonly("sorted_by_start", &EdgeManifest::sorted_by_start)
        .def_readonly("scale", &EdgeManifest::scale)
        .def_property_readonly("vertex_count", &EdgeManifest::vertex_count)
        .def_static("load", &EdgeManifest::load, py::arg("directory"));

    m.def(
        "write_edges",
        [](const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
           const std::filesystem::path& directory, int num_files, int scale,
           bool sorted_by_start) {
            const auto edges = edges_from_pairs(pairs);
            return write_edges(edges, directory, num_files, scale, sorted_by_start);
        },
        py::arg("edges"), py::arg("directory"), py::arg("num_files"), py::arg("scale"),
        py::arg("sorted_by_start") = false);
    m.def(
        "read_edges",
        [](const EdgeManifest& manifest) { return pairs_from_edges(read_edges(manifest)); },
        py::arg("manifest"));
    m.def("default_num_files", &default_num_files, py::arg("total_edges"));

    m.def("default_memory_budget", &default_memory_budget);
    m.def(
        "sort_edges",
        [](const EdgeManifest& input, const std::filesystem::path& output_dir,
           std::int64_t memory_budget_bytes, int num_files) {
            SortOptions options;
            options.memory_budget_bytes = memory_budget_bytes;
            options.num_files = num_files;
            return sort_edges(input, output_dir, options);
        },
        py::arg("input"), py::arg("output_dir"), py::arg("memory_budget_bytes") = 0,
        py::arg("num_files") = 0);

    py::class_<CountMatrix>(m, "CountMatrix")
        .def_readonly("n", &CountMatrix::n)
        .def_readonly("row_offsets", &CountMatrix::row_offsets)
        .def_readonly("cols", &CountMatrix::cols)
        .def_readonly("counts", &CountMatrix::counts)
        .def_property_readonly("nnz", &CountMatrix::nnz)
        .def("total", &CountMatrix::total)
        .def("count_at", &CountMatrix::count_at, py::arg("row"), py::arg("col"));

    py::class_<StochasticMatrix>(m, "StochasticMatrix")
        .def_readonly("n", &StochasticMatrix::n)
        .def_readonly("row_offsets", &StochasticMatrix::row_offsets)
        .def_readonly("cols", &StochasticMatrix::cols)
        .def_readonly("values", &StochasticMatrix::values)
        .def_property_readonly("nnz", &StochasticMatrix::nnz)
        .def("value_at", &StochasticMatrix::value_at, py::arg("row"), py::arg("col"))
        .def("row_sum", &StochasticMatrix::row_sum, py::arg("row"));

    m.def(
        "build_adjacency",
        [](const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs, std::int64_t n) {
            const auto edges = edges_from_pairs(pairs);
            return build_adjacency(std::span<const Edge>(edges), n);
        },
        py::arg("edges"), py::arg("n"));
    m.def("in_degree", &in_degree, py::arg("matrix"));
    m.def("zero_columns", &zero_columns, py::arg("matrix"), py::arg("d_in"));
    m.def("row_normalize", &row_normalize, py::arg("matrix"));
    m.def(
        "run_kernel2",
        [](const EdgeManifest& input) {
            auto result = run_kernel2(input);
            return py::make_tuple(std::move(result.matrix), result.elapsed_seconds, result.rate);
        },
        py::arg("input"), "Returns (matrix, elapsed_seconds, rate).");

    py::class_<PageRankConfig>(m, "PageRankConfig")
        .def(py::init([](double damping, int iterations, std::uint64_t seed) {
                 PageRankConfig c;
                 c.damping = damping;
                 c.iterations = iterations;
                 c.seed = seed;
                 return c;
             }),
             py::arg("damping") = 0.85, py::arg("iterations") = 20, py::arg("seed") = 0)
        .def_readwrite("damping", &PageRankConfig::damping)
        .def_readwrite("iterations", &PageRankConfig::iterations)
        .def_readwrite("seed", &PageRankConfig::seed);

    py::class_<RankVector>(m, "RankVector")
        .def(py::init([](std::vector<double> values) {
                 RankVector r;
                 double sum = 0.0;
                 for (double v : values) sum += v;
                 r.values = std::move(values);
                 r.norm1 = sum;
                 return r;
             }),
             py::arg("values"))
        .def_readonly("values", &RankVector::values)
        .def_readonly("norm1", &RankVector::norm1)
        .def_property_readonly("size", &RankVector::size);

    m.def("init_rank", &init_rank, py::arg("n"), py::arg("seed") = 0);
    m.def("pagerank_step", &pagerank_step, py::arg("r"), py::arg("matrix"),
          py::arg("damping") = 0.85);
    m.def(
        "run_kernel3",
        [](const StochasticMatrix& a, const PageRankConfig& config, std::int64_t total_edges) {
            auto result = run_kernel3(a, config, total_edges);
            return py::make_tuple(std::move(result.ranks), result.elapsed_seconds, result.rate);
        },
        py::arg("matrix"), py::arg("config"), py::arg("total_edges"),
        "Returns (ranks, elapsed_seconds, rate).");
    m.def(
        "run_to_convergence",
        [](const StochasticMatrix& a, double damping, double tol, int max_iters,
           std::uint64_t seed) {
            auto result = run_to_convergence(a, damping, tol, max_iters, seed);
            return py::make_tuple(std::move(result.ranks), result.converged, result.iterations);
        },
        py::arg("matrix"), py::arg("damping") = 0.85, py::arg("tol") = 1e-8,
        py::arg("max_iters") = 10000, py::arg("seed") = 0,
        "Returns (ranks, converged, iterations).");
    m.def("dump_ranks", &dump_ranks, py::arg("ranks"), py::arg("path"));

    py::class_<DenseMatrix>(m, "DenseMatrix")
        .def_readonly("n", &DenseMatrix::n)
        .def_readonly("data", &DenseMatrix::data)
        .def("at", [](const DenseMatrix& g, std::int64_t i, std::int64_t j) { return g.at(i, j); });

    m.def("dense_pagerank_matrix", &dense_pagerank_matrix, py::arg("matrix"),
          py::arg("damping") = 0.85, py::arg("dense_cap") = kDenseCap);
    m.def(
        "principal_eigenvector",
        [](const DenseMatrix& g, double tol, int max_iters) {
            auto result = principal_eigenvector(g, tol, max_iters);
            return py::make_tuple(std::move(result.vector), result.value, result.converged,
                                  result.iterations);
        },
        py::arg("matrix"), py::arg("tol") = 1e-8, py::arg("max_iters") = 10000,
        "Returns (vector, eigenvalue, converged, iterations).");
    m.def(
        "validate",
        [](const std::vector<double>& r, const std::vector<double>& r1, double tol) {
            return validate(r, r1, tol);
        },
        py::arg("r"), py::arg("r1"), py::arg("tol") = 1e-8);

    m.def(
        "run_pipeline",
        [](int scale, std::int64_t edge_factor, std::uint64_t seed, int iterations, double damping,
           const std::filesystem::path& data_dir, int num_files, std::int64_t memory_budget_bytes,
           bool validate, double validate_tol) {
            PipelineOptions options;
            options.gen.scale = scale;
            options.gen.edge_factor = edge_factor;
            options.gen.seed = seed;
            options.pagerank.iterations = iterations;
            options.pagerank.damping = damping;
            options.pagerank.seed = seed;
            options.data_dir = data_dir;
            options.num_files = num_files;
            options.memory_budget_bytes = memory_budget_bytes;
            options.validate = validate;
            options.validate_tol = validate_tol;
            const auto report = run_pipeline(options);
            return json_to_py(nlohmann::json::parse(report_to_json(report)));
        },
        py::arg("scale") = 10, py::arg("edge_factor") = 16, py::arg("seed") = 0,
        py::arg("iterations") = 20, py::arg("damping") = 0.85,
        py::arg("data_dir") = std::filesystem::path("prpipe_data"), py::arg("num_files") = 0,
        py::arg("memory_budget_bytes") = 0, py::arg("validate") = false,
        py::arg("validate_tol") = 1e-8,
        "Runs kernels 0-3 with barriers and returns the report as a dict.");
}
