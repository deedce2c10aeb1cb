#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fxnet/error.hpp"
#include "fxnet/oracle.hpp"
#include "fxnet/synth.hpp"
#include "fxnet/tree.hpp"

using namespace fxnet;

namespace {

Matrix random_distances(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Matrix d(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = 0.05 + 1.9 * static_cast<double>(gen() >> 11) * 0x1.0p-53;
            d(i, j) = v;
            d(j, i) = v;
        }
    return d;
}

CorrelationNetwork network_from_distances(const Matrix& d) {
    const std::size_t n = d.rows();
    CorrelationNetwork net{CurrencyCode("BBB"), synthetic_codes(n), Matrix(n, n), Matrix(n, n),
                           d};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            net.R(i, j) = correlation_from_distance(d(i, j));
            net.weights(i, j) = std::abs(net.R(i, j));
        }
    return net;
}

} // namespace

TEST_CASE("three nodes: the two shortest edges win") {
    Matrix d(3, 3, 0.0);
    d(0, 1) = d(1, 0) = 0.5;
    d(1, 2) = d(2, 1) = 0.7;
    d(0, 2) = d(2, 0) = 0.9;
    auto tree = build_mst(network_from_distances(d));
    auto edges = edge_set(tree);
    auto codes = synthetic_codes(3);
    CHECK(edges.count({codes[0], codes[1]}) == 1);
    CHECK(edges.count({codes[1], codes[2]}) == 1);
    CHECK(edges.count({codes[0], codes[2]}) == 0);
    CHECK(tree.total_distance() == doctest::Approx(1.2).epsilon(1e-15));
}

TEST_CASE("equidistant nodes resolve deterministically by the code tie-break") {
    Matrix d(5, 5, 1.0);
    for (std::size_t i = 0; i < 5; ++i) d(i, i) = 0.0;
    auto net = network_from_distances(d);
    auto t1 = build_mst(net);
    auto t2 = build_mst(net);
    CHECK(edge_set(t1) == edge_set(t2));
    // (d, min code, max code) ordering makes AAA the hub
    auto codes = synthetic_codes(5);
    for (std::size_t k = 1; k < 5; ++k) CHECK(edge_set(t1).count({codes[0], codes[k]}) == 1);
}

TEST_CASE("greedy total equals the exhaustive Prufer minimum on random instances") {
    std::mt19937_64 gen(606);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 4 + trial % 4;  // 4..7
        Matrix d = random_distances(n, gen());
        auto tree = build_mst(network_from_distances(d));
        double oracle_best = oracle::mst_total_distance(d);
        CHECK(std::abs(tree.total_distance() - oracle_best) <= 1e-12);
    }
}

TEST_CASE("tree structure invariants hold") {
    Matrix d = random_distances(9, 4);
    auto tree = build_mst(network_from_distances(d));
    CHECK(tree.edges.size() == 8);
    CHECK_NOTHROW(tree.validate());
}

TEST_CASE("mst is invariant under monotone distance transforms") {
    std::mt19937_64 gen(1717);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 5 + trial % 5;
        Matrix d = random_distances(n, gen());
        Matrix squared(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) squared(i, j) = d(i, j) * d(i, j);
        auto codes = synthetic_codes(n);
        auto e1 = mst_edges(d, codes);
        auto e2 = mst_edges(squared, codes);
        REQUIRE(e1.size() == e2.size());
        for (std::size_t k = 0; k < e1.size(); ++k) {
            CHECK(e1[k].a == e2[k].a);
            CHECK(e1[k].b == e2[k].b);
        }
    }
}

TEST_CASE("anticorrelation flags match negative correlations") {
    Matrix d(3, 3, 0.0);
    d(0, 1) = d(1, 0) = distance_from_correlation(0.8);
    d(1, 2) = d(2, 1) = distance_from_correlation(-0.4);  // d > sqrt(2)
    d(0, 2) = d(2, 0) = distance_from_correlation(-0.9);
    auto tree = build_mst(network_from_distances(d));
    REQUIRE(tree.edges.size() == 2);
    for (const auto& e : tree.edges) {
        bool positive_pair = e.a == 0 && e.b == 1;
        CHECK(e.anticorrelated == !positive_pair);
        CHECK(e.anticorrelated == (e.distance > std::numbers::sqrt2));
    }
}

TEST_CASE("non-finite distances are rejected") {
    Matrix d = random_distances(4, 8);
    d(1, 2) = d(2, 1) = std::nan("");
    CHECK_THROWS_AS(mst_edges(d, synthetic_codes(4)), ValidationError);
}

TEST_CASE("edge sets are canonical and labeled") {
    auto codes = synthetic_codes(3);
    SpanningTree path{CurrencyCode("BBB"), codes, {{0, 1, 0.5, 0.9, false},
                                                   {1, 2, 0.6, 0.8, false}}};
    auto s = edge_set(path);
    REQUIRE(s.size() == 2);
    CHECK(s.count({codes[0], codes[1]}) == 1);
    CHECK(s.count({codes[1], codes[2]}) == 1);

    // same shape, different labels -> different set
    SpanningTree relabeled{CurrencyCode("BBB"), codes, {{1, 0, 0.5, 0.9, false},
                                                        {0, 2, 0.6, 0.8, false}}};
    CHECK(edge_set(relabeled) != s);
}

TEST_CASE("single-step survival ratio") {
    auto c = synthetic_codes(4);
    EdgeSet e1{{c[0], c[1]}, {c[1], c[2]}, {c[2], c[3]}};
    EdgeSet e2{{c[0], c[1]}, {c[1], c[3]}, {c[2], c[3]}};
    CHECK(survival_single(e1, e1, 4) == 1.0);
    CHECK(survival_single(e1, e2, 4) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    EdgeSet one_common{{c[0], c[1]}, {c[0], c[2]}, {c[1], c[3]}};
    CHECK(survival_single(e1, one_common, 4) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("disjoint trees have zero survival") {
    auto c = synthetic_codes(4);
    EdgeSet e1{{c[0], c[1]}, {c[1], c[2]}, {c[2], c[3]}};
    EdgeSet e2{{c[0], c[2]}, {c[1], c[3]}, {c[0], c[3]}};
    CHECK(survival_single(e1, e2, 4) == 0.0);
}

TEST_CASE("multi-step survival ratio") {
    auto c = synthetic_codes(4);
    EdgeSet a{{c[0], c[1]}, {c[1], c[2]}, {c[2], c[3]}};
    EdgeSet b{{c[0], c[1]}, {c[1], c[3]}, {c[2], c[3]}};
    EdgeSet d{{c[0], c[1]}, {c[0], c[2]}, {c[0], c[3]}};

    std::vector<EdgeSet> self{a};
    CHECK(survival_multi(self, 4) == 1.0);

    std::vector<EdgeSet> shares_ab{a, b, d};  // only AAA-AAB everywhere
    CHECK(survival_multi(shares_ab, 4) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    EdgeSet disjoint{{c[0], c[2]}, {c[1], c[3]}, {c[0], c[3]}};
    std::vector<EdgeSet> with_disjoint{a, b, disjoint};
    CHECK(survival_multi(with_disjoint, 4) == 0.0);

    std::vector<EdgeSet> empty;
    CHECK_THROWS_AS(survival_multi(empty, 4), ValidationError);
}

TEST_CASE("tree-level survival validates node sets") {
    Matrix d1 = random_distances(5, 1);
    Matrix d2 = random_distances(5, 2);
    auto t1 = build_mst(network_from_distances(d1));
    auto t2 = build_mst(network_from_distances(d2));
    CHECK(survival_single(t1, t2) >= 0.0);

    Matrix d3 = random_distances(6, 3);
    auto t3 = build_mst(network_from_distances(d3));
    CHECK_THROWS_AS(survival_single(t1, t3), ValidationError);
}

TEST_CASE("multi-step never exceeds the single-step ratio") {
    std::mt19937_64 gen(2024);
    std::vector<SpanningTree> trees;
    for (int k = 0; k < 6; ++k)
        trees.push_back(build_mst(network_from_distances(random_distances(7, gen()))));
    std::vector<EdgeSet> sets;
    for (const auto& t : trees) sets.push_back(edge_set(t));
    for (std::size_t delta = 1; delta < trees.size(); ++delta) {
        for (std::size_t i = 0; i + delta < trees.size(); ++i) {
            double multi =
                survival_multi(std::span<const EdgeSet>(sets).subspan(i, delta + 1), 7);
            double single = survival_single(sets[i], sets[i + delta], 7);
            CHECK(multi <= single + 1e-15);
        }
    }
}
