#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "specprop/dense.hpp"

namespace specprop {

/// Undirected simple graph: deduplicated edge list (u < v, no self-loops)
/// plus a CSR view of the symmetrized adjacency.
struct SparseGraph {
    std::size_t node_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::size_t> row_offsets;   // size node_count + 1
    std::vector<std::uint32_t> col_indices; // neighbors, ascending within each row

    [[nodiscard]] std::size_t degree(std::size_t node) const {
        return row_offsets[node + 1] - row_offsets[node];
    }
};

/// Build the CSR view from node_count and edges (called by the constructors
/// below; exposed for tests that assemble graphs by hand).
[[nodiscard]] SparseGraph make_graph(std::size_t node_count,
                                     std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

struct EdgeListResult {
    SparseGraph graph;
    std::size_t self_loops_ignored = 0;
};

/// Whitespace-separated "u v" lines; '#' lines are comments; self-loop lines
/// are dropped (counted); malformed lines throw with their line number.
[[nodiscard]] EdgeListResult load_edge_list(std::istream& in);

void save_edge_list(std::ostream& out, const SparseGraph& graph);

enum class OperatorKind { NormalizedAdjacency, Laplacian };

/// Symmetric CSR operator: P~ = D~^{-1/2} (A+I) D~^{-1/2} (spectrum in [-1,1])
/// or L~ = I - P~ (spectrum in [0,2]). Self-loops enter here, never the graph.
struct PropagationOperator {
    OperatorKind kind = OperatorKind::NormalizedAdjacency;
    std::size_t node_count = 0;
    std::vector<std::size_t> row_offsets;
    std::vector<std::uint32_t> col_indices;
    std::vector<double> values;
};

[[nodiscard]] PropagationOperator propagation_operator(const SparseGraph& graph,
                                                       OperatorKind kind);

/// Exact sparse * dense product; within each row, terms are accumulated in
/// ascending column order, so results are bit-identical for any thread count.
[[nodiscard]] DenseMatrix spmm(const PropagationOperator& op, const DenseMatrix& dense,
                               unsigned threads = 1);

/// Stochastic block model with Gaussian class features: each class mean is a
/// seeded unit-norm random direction scaled by feature_shift; node features
/// add unit-variance noise. Fully determined by the seed.
struct SbmData {
    SparseGraph graph;
    DenseMatrix features;
    std::vector<std::uint32_t> labels;
};

[[nodiscard]] SbmData sbm_generate(const std::vector<std::size_t>& block_sizes, double p_in,
                                   double p_out, std::size_t feature_dim, double feature_shift,
                                   std::uint64_t seed);

[[nodiscard]] bool is_connected(const SparseGraph& graph);

/// Feature file: first line "n m", then n lines of m reals.
void save_features(std::ostream& out, const DenseMatrix& features);
[[nodiscard]] DenseMatrix load_features(std::istream& in);

/// Label file: lines "node_id class_id".
void save_labels(std::ostream& out, const std::vector<std::uint32_t>& labels);
[[nodiscard]] std::vector<std::uint32_t> load_labels(std::istream& in, std::size_t node_count);

}  // namespace specprop
