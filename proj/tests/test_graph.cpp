#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "specprop/graph.hpp"
#include "specprop/linalg.hpp"
#include "specprop/oracle.hpp"

using namespace specprop;

namespace {

DenseMatrix densify(const PropagationOperator& op) {
    DenseMatrix dense(op.node_count, op.node_count);
    for (std::size_t i = 0; i < op.node_count; ++i)
        for (std::size_t pos = op.row_offsets[i]; pos < op.row_offsets[i + 1]; ++pos)
            dense(i, op.col_indices[pos]) = op.values[pos];
    return dense;
}

}  // namespace

TEST_CASE("load_edge_list basics") {
    SUBCASE("path graph") {
        std::istringstream in("0 1\n1 2\n");
        const auto result = load_edge_list(in);
        CHECK(result.graph.node_count == 3);
        CHECK(result.graph.edges.size() == 2);
        CHECK(result.self_loops_ignored == 0);
    }
    SUBCASE("deduplication and symmetrization") {
        std::istringstream in("0 1\n1 0\n0 1\n");
        const auto result = load_edge_list(in);
        CHECK(result.graph.node_count == 2);
        CHECK(result.graph.edges.size() == 1);
    }
    SUBCASE("empty stream") {
        std::istringstream in("");
        const auto result = load_edge_list(in);
        CHECK(result.graph.node_count == 0);
        CHECK(result.graph.edges.empty());
    }
    SUBCASE("comments and self-loops") {
        std::istringstream in("# a comment\n0 1\n2 2\n1 2\n");
        const auto result = load_edge_list(in);
        CHECK(result.graph.node_count == 3);
        CHECK(result.graph.edges.size() == 2);
        CHECK(result.self_loops_ignored == 1);
    }
    SUBCASE("malformed line reports its number") {
        std::istringstream in("0 1\nnot numbers\n");
        try {
            (void)load_edge_list(in);
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& err) {
            CHECK(std::string(err.what()).find("line 2") != std::string::npos);
        }
    }
}

TEST_CASE("edge list round trip") {
    std::istringstream in("3 7\n0 1\n# note\n1 2\n5 3\n");
    const auto first = load_edge_list(in);
    std::ostringstream out;
    save_edge_list(out, first.graph);
    std::istringstream again(out.str());
    const auto second = load_edge_list(again);
    CHECK(second.graph.node_count == first.graph.node_count);
    CHECK(second.graph.edges == first.graph.edges);
    CHECK(second.graph.col_indices == first.graph.col_indices);
}

TEST_CASE("propagation operators") {
    SUBCASE("single node") {
        const auto graph = make_graph(1, {});
        const auto p = propagation_operator(graph, OperatorKind::NormalizedAdjacency);
        CHECK(densify(p)(0, 0) == doctest::Approx(1.0));
        const auto l = propagation_operator(graph, OperatorKind::Laplacian);
        CHECK(densify(l)(0, 0) == doctest::Approx(0.0));
    }
    SUBCASE("two nodes, one edge") {
        const auto graph = make_graph(2, {{0, 1}});
        const auto p = propagation_operator(graph, OperatorKind::NormalizedAdjacency);
        const auto dense = densify(p);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(dense(i, j) == doctest::Approx(0.5));
        const auto eig = jacobi_eigh(dense);
        CHECK(eig.values[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("triangle graph rows sum to one") {
        const auto graph = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
        const auto p = propagation_operator(graph, OperatorKind::NormalizedAdjacency);
        const auto dense = densify(p);
        for (std::size_t i = 0; i < 3; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < 3; ++j) sum += dense(i, j);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
    SUBCASE("operators are symmetric and laplacian = I - adjacency") {
        const auto data = sbm_generate({6, 6}, 0.8, 0.2, 3, 1.0, 7);
        const auto p = densify(propagation_operator(data.graph, OperatorKind::NormalizedAdjacency));
        const auto l = densify(propagation_operator(data.graph, OperatorKind::Laplacian));
        for (std::size_t i = 0; i < p.rows; ++i) {
            for (std::size_t j = 0; j < p.cols; ++j) {
                CHECK(std::fabs(p(i, j) - p(j, i)) < 1e-14);
                const double eye = i == j ? 1.0 : 0.0;
                CHECK(l(i, j) == doctest::Approx(eye - p(i, j)).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("spectra of the operators stay in their theoretical ranges") {
    const auto data = sbm_generate({8, 8, 8}, 0.5, 0.1, 2, 1.0, 3);
    const auto p = propagation_operator(data.graph, OperatorKind::NormalizedAdjacency);

    // power iteration on P~: spectral radius <= 1 + 1e-10
    DenseMatrix x(p.node_count, 1, 1.0);
    double radius = 0.0;
    for (int it = 0; it < 200; ++it) {
        DenseMatrix y = spmm(p, x);
        double norm = 0.0;
        for (double v : y.values) norm += v * v;
        norm = std::sqrt(norm);
        double xnorm = 0.0;
        for (double v : x.values) xnorm += v * v;
        radius = norm / std::sqrt(xnorm);
        scale_inplace(y, 1.0 / norm);
        x = std::move(y);
    }
    CHECK(radius <= 1.0 + 1e-10);

    const auto l = propagation_operator(data.graph, OperatorKind::Laplacian);
    const auto eig = jacobi_eigh(densify(l));
    CHECK(eig.values.front() >= -1e-10);
    CHECK(eig.values.back() <= 2.0 + 1e-10);

    // Gershgorin discs of L~ confirm [0,2] on this degree-homogeneous graph
    const auto dense_l = densify(l);
    for (std::size_t i = 0; i < dense_l.rows; ++i) {
        double center = dense_l(i, i);
        double radius_row = 0.0;
        for (std::size_t j = 0; j < dense_l.cols; ++j)
            if (j != i) radius_row += std::fabs(dense_l(i, j));
        CHECK(center - radius_row >= -0.5);
        CHECK(center + radius_row <= 2.0 + 1e-12);
    }
}

TEST_CASE("spmm") {
    SUBCASE("single-node identity") {
        const auto graph = make_graph(1, {});
        const auto p = propagation_operator(graph, OperatorKind::NormalizedAdjacency);
        DenseMatrix v(1, 3);
        v(0, 0) = 2.0;
        v(0, 1) = -1.0;
        v(0, 2) = 0.5;
        const auto out = spmm(p, v);
        for (std::size_t j = 0; j < 3; ++j) CHECK(out(0, j) == doctest::Approx(v(0, j)));
    }
    SUBCASE("two-node averaging") {
        const auto graph = make_graph(2, {{0, 1}});
        const auto p = propagation_operator(graph, OperatorKind::NormalizedAdjacency);
        DenseMatrix v(2, 1);
        v(0, 0) = 1.0;
        const auto out = spmm(p, v);
        CHECK(out(0, 0) == doctest::Approx(0.5));
        CHECK(out(1, 0) == doctest::Approx(0.5));
    }
    SUBCASE("zero matrix stays zero") {
        const auto data = sbm_generate({5, 5}, 0.6, 0.2, 2, 1.0, 11);
        const auto p = propagation_operator(data.graph, OperatorKind::NormalizedAdjacency);
        const DenseMatrix zero(p.node_count, 4);
        const auto out = spmm(p, zero);
        for (double v : out.values) CHECK(v == 0.0);
    }
    SUBCASE("threaded result is bit-identical") {
        const auto data = sbm_generate({20, 20}, 0.3, 0.05, 2, 1.0, 13);
        const auto p = propagation_operator(data.graph, OperatorKind::NormalizedAdjacency);
        DenseMatrix v(p.node_count, 8);
        for (std::size_t i = 0; i < v.values.size(); ++i)
            v.values[i] = std::sin(static_cast<double>(i));
        const auto serial = spmm(p, v, 1);
        const auto threaded = spmm(p, v, 4);
        CHECK(serial.values == threaded.values);
    }
    SUBCASE("dimension mismatch rejected") {
        const auto graph = make_graph(2, {{0, 1}});
        const auto p = propagation_operator(graph, OperatorKind::NormalizedAdjacency);
        const DenseMatrix wrong(3, 1);
        CHECK_THROWS_AS((void)spmm(p, wrong), std::invalid_argument);
    }
}

TEST_CASE("sbm generation") {
    SUBCASE("deterministic limit: two disjoint cliques") {
        const auto data = sbm_generate({50, 50}, 1.0, 0.0, 4, 1.0, 1);
        CHECK(data.graph.node_count == 100);
        CHECK(data.graph.edges.size() == 2 * (50 * 49) / 2);
        for (const auto& [u, v] : data.graph.edges)
            CHECK(data.labels[u] == data.labels[v]);
    }
    SUBCASE("intra-block edge count near the binomial expectation") {
        // C(100,2) * 0.1 = 495 per block, sd = sqrt(4950*0.1*0.9) ~ 21.1
        for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
            const auto data = sbm_generate({100, 100}, 0.1, 0.0, 2, 1.0, seed);
            std::size_t block0 = 0;
            for (const auto& [u, v] : data.graph.edges)
                if (data.labels[u] == 0 && data.labels[v] == 0) ++block0;
            CHECK(std::fabs(static_cast<double>(block0) - 495.0) < 4.0 * 21.11);
        }
    }
    SUBCASE("same seed reproduces everything") {
        const auto a = sbm_generate({30, 30}, 0.2, 0.02, 5, 0.7, 42);
        const auto b = sbm_generate({30, 30}, 0.2, 0.02, 5, 0.7, 42);
        CHECK(a.graph.edges == b.graph.edges);
        CHECK(a.features.values == b.features.values);
        CHECK(a.labels == b.labels);
    }
}

TEST_CASE("feature and label file round trips") {
    const auto data = sbm_generate({4, 4}, 0.7, 0.3, 3, 0.9, 5);
    std::ostringstream fout;
    save_features(fout, data.features);
    std::istringstream fin(fout.str());
    const auto features = load_features(fin);
    CHECK(features.rows == data.features.rows);
    CHECK(features.values == data.features.values);

    std::ostringstream lout;
    save_labels(lout, data.labels);
    std::istringstream lin(lout.str());
    const auto labels = load_labels(lin, data.labels.size());
    CHECK(labels == data.labels);
}

TEST_CASE("exact filter oracle") {
    SUBCASE("identity filter returns the signal") {
        const auto data = sbm_generate({5, 5}, 0.5, 0.2, 2, 1.0, 9);
        const auto p = propagation_operator(data.graph, OperatorKind::NormalizedAdjacency);
        FilterSpec ones{"one", [](double) { return 1.0; }, Interval(-1.0, 1.0), std::nullopt};
        DenseMatrix x(p.node_count, 2);
        for (std::size_t i = 0; i < x.values.size(); ++i)
            x.values[i] = std::cos(static_cast<double>(i));
        const auto y = exact_filter_oracle(p, ones, x);
        for (std::size_t i = 0; i < x.values.size(); ++i)
            CHECK(std::fabs(y.values[i] - x.values[i]) < 1e-10);
    }
    SUBCASE("identity-map filter reconstructs the operator action") {
        const auto data = sbm_generate({6, 6}, 0.5, 0.2, 2, 1.0, 10);
        const auto l = propagation_operator(data.graph, OperatorKind::Laplacian);
        FilterSpec ramp{"omega", [](double w) { return w; }, Interval(-0.1, 2.1), std::nullopt};
        DenseMatrix x(l.node_count, 1);
        for (std::size_t i = 0; i < x.values.size(); ++i)
            x.values[i] = std::sin(0.3 * static_cast<double>(i));
        const auto oracle = exact_filter_oracle(l, ramp, x);
        const auto direct = spmm(l, x);
        for (std::size_t i = 0; i < x.values.size(); ++i)
            CHECK(std::fabs(oracle.values[i] - direct.values[i]) < 1e-10);
    }
    SUBCASE("g4 on the two-node laplacian") {
        const auto graph = make_graph(2, {{0, 1}});
        const auto l = propagation_operator(graph, OperatorKind::Laplacian);
        // eigenvalues {0, 1}; evaluating g4 there needs the closed theoretical
        // domain, so wrap the scalar with a domain that includes 0
        FilterSpec g4{"g4", [](double w) { return std::exp(-10.0 * w * w); }, Interval(-1e-9, 2.0),
                      std::nullopt};
        DenseMatrix x(2, 1);
        x(0, 0) = 1.0;
        const auto y = exact_filter_oracle(l, g4, x);
        const double e10 = std::exp(-10.0);
        CHECK(y(0, 0) == doctest::Approx((1.0 + e10) / 2.0).epsilon(1e-12));
        CHECK(y(1, 0) == doctest::Approx((1.0 - e10) / 2.0).epsilon(1e-12));
    }
    SUBCASE("eigenvalue outside the domain is rejected") {
        const auto graph = make_graph(2, {{0, 1}});
        const auto l = propagation_operator(graph, OperatorKind::Laplacian);
        FilterSpec narrow{"narrow", [](double) { return 1.0; }, Interval(0.4, 0.6), std::nullopt};
        DenseMatrix x(2, 1, 1.0);
        CHECK_THROWS_AS((void)exact_filter_oracle(l, narrow, x), std::domain_error);
    }
    SUBCASE("n > 64 rejected") {
        const auto data = sbm_generate({40, 40}, 0.1, 0.01, 2, 1.0, 17);
        const auto p = propagation_operator(data.graph, OperatorKind::NormalizedAdjacency);
        FilterSpec ones{"one", [](double) { return 1.0; }, Interval(-1.0, 1.0), std::nullopt};
        const DenseMatrix x(p.node_count, 1, 1.0);
        CHECK_THROWS_AS((void)exact_filter_oracle(p, ones, x), std::invalid_argument);
    }
}
