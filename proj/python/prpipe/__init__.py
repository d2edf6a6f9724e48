"""Four-kernel PageRank pipeline benchmark: generate, sort, filter, PageRank."""

from prpipe._core import (
    DENSE_CAP,
    CountMatrix,
    DenseMatrix,
    EdgeManifest,
    GenConfig,
    ManifestFile,
    PageRankConfig,
    PipelineError,
    RankVector,
    StochasticMatrix,
    build_adjacency,
    default_memory_budget,
    default_num_files,
    dense_pagerank_matrix,
    derived_sizes,
    dump_ranks,
    estimate_memory_bytes,
    generate_edges,
    in_degree,
    init_rank,
    pagerank_step,
    principal_eigenvector,
    read_edges,
    row_normalize,
    run_kernel2,
    run_kernel3,
    run_pipeline,
    run_to_convergence,
    sort_edges,
    validate,
    write_edges,
    zero_columns,
)

__version__ = "0.1.0"

__all__ = [
    "DENSE_CAP",
    "CountMatrix",
    "DenseMatrix",
    "EdgeManifest",
    "GenConfig",
    "ManifestFile",
    "PageRankConfig",
    "PipelineError",
    "RankVector",
    "StochasticMatrix",
    "build_adjacency",
    "default_memory_budget",
    "default_num_files",
    "dense_pagerank_matrix",
    "derived_sizes",
    "dump_ranks",
    "estimate_memory_bytes",
    "generate_edges",
    "in_degree",
    "init_rank",
    "pagerank_step",
    "principal_eigenvector",
    "read_edges",
    "row_normalize",
    "run_kernel2",
    "run_kernel3",
    "run_pipeline",
    "run_to_convergence",
    "sort_edges",
    "validate",
    "write_edges",
    "zero_columns",
    "__version__",
]
