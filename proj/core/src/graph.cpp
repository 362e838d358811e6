#include "specprop/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "specprop/rng.hpp"

namespace specprop {

SparseGraph make_graph(std::size_t node_count,
                       std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("make_graph: self-loop in edge list");
        if (u >= node_count || v >= node_count)
            throw std::invalid_argument("make_graph: endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    SparseGraph graph;
    graph.node_count = node_count;
    graph.edges = std::move(edges);

    std::vector<std::size_t> counts(node_count + 1, 0);
    for (const auto& [u, v] : graph.edges) {
        ++counts[u + 1];
        ++counts[v + 1];
    }
    for (std::size_t i = 0; i < node_count; ++i) counts[i + 1] += counts[i];
    graph.row_offsets = counts;
    graph.col_indices.resize(graph.edges.size() * 2);
    std::vector<std::size_t> cursor(graph.row_offsets.begin(), graph.row_offsets.end() - 1);
    for (const auto& [u, v] : graph.edges) {
        graph.col_indices[cursor[u]++] = v;
        graph.col_indices[cursor[v]++] = u;
    }
    for (std::size_t i = 0; i < node_count; ++i)
        std::sort(graph.col_indices.begin() + static_cast<std::ptrdiff_t>(graph.row_offsets[i]),
                  graph.col_indices.begin() + static_cast<std::ptrdiff_t>(graph.row_offsets[i + 1]));
    return graph;
}

EdgeListResult load_edge_list(std::istream& in) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::size_t self_loops = 0;
    std::size_t max_id = 0;
    bool any_node = false;

    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream fields(line);
        long long u = -1, v = -1;
        if (!(fields >> u >> v) || u < 0 || v < 0)
            throw std::invalid_argument("edge list line " + std::to_string(line_number) +
                                        ": expected two non-negative integers");
        std::string trailing;
        if (fields >> trailing)
            throw std::invalid_argument("edge list line " + std::to_string(line_number) +
                                        ": trailing tokens");
        any_node = true;
        max_id = std::max(max_id, static_cast<std::size_t>(std::max(u, v)));
        if (u == v) {
            ++self_loops;
            continue;
        }
        edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    }

    EdgeListResult result;
    result.self_loops_ignored = self_loops;
    result.graph = make_graph(any_node ? max_id + 1 : 0, std::move(edges));
    return result;
}

void save_edge_list(std::ostream& out, const SparseGraph& graph) {
    for (const auto& [u, v] : graph.edges) out << u << ' ' << v << '\n';
}

PropagationOperator propagation_operator(const SparseGraph& graph, OperatorKind kind) {
    const std::size_t n = graph.node_count;
    if (n == 0) throw std::invalid_argument("propagation_operator: empty graph");

    std::vector<double> inv_sqrt_deg(n);
    for (std::size_t i = 0; i < n; ++i)
        inv_sqrt_deg[i] = 1.0 / std::sqrt(static_cast<double>(graph.degree(i)) + 1.0);

    PropagationOperator op;
    op.kind = kind;
    op.node_count = n;
    op.row_offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        op.row_offsets[i + 1] = op.row_offsets[i] + graph.degree(i) + 1;  // +1 self entry
    op.col_indices.resize(op.row_offsets[n]);
    op.values.resize(op.row_offsets[n]);

    const double sign = (kind == OperatorKind::Laplacian) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t out_pos = op.row_offsets[i];
        bool self_written = false;
        const double self_value = inv_sqrt_deg[i] * inv_sqrt_deg[i];
        for (std::size_t pos = graph.row_offsets[i]; pos < graph.row_offsets[i + 1]; ++pos) {
            const std::uint32_t j = graph.col_indices[pos];
            if (!self_written && j > i) {
                op.col_indices[out_pos] = static_cast<std::uint32_t>(i);
                op.values[out_pos] = (kind == OperatorKind::Laplacian) ? 1.0 - self_value
                                                                       : self_value;
                ++out_pos;
                self_written = true;
            }
            op.col_indices[out_pos] = j;
            op.values[out_pos] = sign * inv_sqrt_deg[i] * inv_sqrt_deg[j];
            ++out_pos;
        }
        if (!self_written) {
            op.col_indices[out_pos] = static_cast<std::uint32_t>(i);
            op.values[out_pos] = (kind == OperatorKind::Laplacian) ? 1.0 - self_value : self_value;
            ++out_pos;
        }
    }
    return op;
}

DenseMatrix spmm(const PropagationOperator& op, const DenseMatrix& dense, unsigned threads) {
    if (dense.rows != op.node_count) throw std::invalid_argument("spmm: dimension mismatch");
    DenseMatrix out(dense.rows, dense.cols);

    auto run_rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double* out_row = &out.values[i * out.cols];
            for (std::size_t pos = op.row_offsets[i]; pos < op.row_offsets[i + 1]; ++pos) {
                const double w = op.values[pos];
                const double* in_row = &dense.values[op.col_indices[pos] * dense.cols];
                for (std::size_t c = 0; c < dense.cols; ++c) out_row[c] += w * in_row[c];
            }
        }
    };

    if (threads <= 1 || op.node_count < 2 * static_cast<std::size_t>(threads)) {
        run_rows(0, op.node_count);
        return out;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (op.node_count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(op.node_count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run_rows, begin, end);
    }
    for (auto& worker : pool) worker.join();
    return out;
}

SbmData sbm_generate(const std::vector<std::size_t>& block_sizes, double p_in, double p_out,
                     std::size_t feature_dim, double feature_shift, std::uint64_t seed) {
    if (block_sizes.empty()) throw std::invalid_argument("sbm_generate: no blocks");
    for (std::size_t b : block_sizes)
        if (b == 0) throw std::invalid_argument("sbm_generate: block sizes must be >= 1");
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw std::invalid_argument("sbm_generate: probabilities must lie in [0,1]");

    std::size_t n = 0;
    std::vector<std::uint32_t> labels;
    for (std::size_t b = 0; b < block_sizes.size(); ++b)
        for (std::size_t i = 0; i < block_sizes[b]; ++i) labels.push_back(static_cast<std::uint32_t>(b));
    n = labels.size();

    Rng rng(seed);
    Rng edge_rng = rng.stream(1);
    Rng mean_rng = rng.stream(2);
    Rng noise_rng = rng.stream(3);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const double p = (labels[u] == labels[v]) ? p_in : p_out;
            if (p >= 1.0 || (p > 0.0 && edge_rng.next_double() < p))
                edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
        }
    }

    const std::size_t classes = block_sizes.size();
    DenseMatrix means(classes, feature_dim);
    for (std::size_t c = 0; c < classes; ++c) {
        double norm = 0.0;
        for (std::size_t j = 0; j < feature_dim; ++j) {
            means(c, j) = mean_rng.next_normal();
            norm += means(c, j) * means(c, j);
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) norm = 1.0;
        for (std::size_t j = 0; j < feature_dim; ++j)
            means(c, j) *= feature_shift / norm;
    }

    SbmData data;
    data.features = DenseMatrix(n, feature_dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < feature_dim; ++j)
            data.features(i, j) = means(labels[i], j) + noise_rng.next_normal();
    data.labels = std::move(labels);
    data.graph = make_graph(n, std::move(edges));
    return data;
}

bool is_connected(const SparseGraph& graph) {
    if (graph.node_count == 0) return true;
    std::vector<char> seen(graph.node_count, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t pos = graph.row_offsets[u]; pos < graph.row_offsets[u + 1]; ++pos) {
            const std::uint32_t v = graph.col_indices[pos];
            if (!seen[v]) {
                seen[v] = 1;
                ++visited;
                stack.push_back(v);
            }
        }
    }
    return visited == graph.node_count;
}

void save_features(std::ostream& out, const DenseMatrix& features) {
    out << features.rows << ' ' << features.cols << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < features.rows; ++i) {
        for (std::size_t j = 0; j < features.cols; ++j) {
            if (j > 0) out << ' ';
            out << features(i, j);
        }
        out << '\n';
    }
}

DenseMatrix load_features(std::istream& in) {
    std::size_t n = 0, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("feature file: bad header line");
    DenseMatrix features(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!(in >> features(i, j)))
                throw std::invalid_argument("feature file: truncated at row " + std::to_string(i));
    return features;
}

void save_labels(std::ostream& out, const std::vector<std::uint32_t>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << ' ' << labels[i] << '\n';
}

std::vector<std::uint32_t> load_labels(std::istream& in, std::size_t node_count) {
    std::vector<std::uint32_t> labels(node_count, 0);
    std::vector<char> seen(node_count, 0);
    std::size_t node = 0, cls = 0;
    while (in >> node >> cls) {
        if (node >= node_count) throw std::invalid_argument("label file: node id out of range");
        labels[node] = static_cast<std::uint32_t>(cls);
        seen[node] = 1;
    }
    for (std::size_t i = 0; i < node_count; ++i)
        if (!seen[i]) throw std::invalid_argument("label file: missing label for node " +
                                                  std::to_string(i));
    return labels;
}

}  // namespace specprop
