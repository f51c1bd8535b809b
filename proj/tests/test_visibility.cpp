#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "vgt/rng.hpp"
#include "vgt/visibility.hpp"

namespace {

using EdgeSet = std::set<std::pair<std::uint32_t, std::uint32_t>>;

EdgeSet edge_set(const vgt::VisibilityGraph& g) {
    EdgeSet out;
    for (const vgt::VisibilityEdge& e : g.edges) out.insert({e.i, e.j});
    return out;
}

std::vector<double> gaussian_values(std::size_t n, std::uint64_t seed) {
    vgt::Rng rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = 100.0 + rng.normal();
    return v;
}

}  // namespace

TEST_CASE("visible on three-point hand cases") {
    const std::vector<double> peak{1, 2, 1};
    CHECK_FALSE(vgt::visible(peak, 0, 2));  // the peak blocks the endpoints

    const std::vector<double> valley{2, 1, 2};
    CHECK(vgt::visible(valley, 0, 2));

    // A point exactly on the sight line blocks it (strict inequality).
    const std::vector<double> collinear{1, 2, 3};
    CHECK_FALSE(vgt::visible(collinear, 0, 2));

    // Adjacent points always see each other.
    for (std::size_t i = 0; i + 1 < peak.size(); ++i) {
        CHECK(vgt::visible(peak, i, i + 1));
        CHECK(vgt::visible(valley, i, i + 1));
        CHECK(vgt::visible(collinear, i, i + 1));
    }
}

TEST_CASE("edge_weight closed forms") {
    const double e = std::exp(1.0);

    const std::vector<double> up{1.0, e};
    CHECK(vgt::edge_weight(up, 0, 1, vgt::WeightKind::LogRatio) ==
          doctest::Approx(1.0).epsilon(1e-15));

    const std::vector<double> down{e, 1.0};
    CHECK(vgt::edge_weight(down, 0, 1, vgt::WeightKind::LogRatio) ==
          doctest::Approx(-1.0).epsilon(1e-15));

    const std::vector<double> doubling{1.0, 2.0, 4.0};
    CHECK(vgt::edge_weight(doubling, 0, 2, vgt::WeightKind::LogRatio) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));

    CHECK(vgt::edge_weight(down, 0, 1, vgt::WeightKind::LogRatio,
                           vgt::WeightMode::Absolute) ==
          doctest::Approx(1.0).epsilon(1e-15));

    const std::vector<double> walk{3.0, -1.0, 5.0};
    CHECK(vgt::edge_weight(walk, 0, 2, vgt::WeightKind::Difference) == 1.0);
    CHECK(vgt::edge_weight(walk, 0, 1, vgt::WeightKind::Difference) == -4.0);
}

TEST_CASE("build_visibility_graph on small hand cases") {
    using P = std::pair<std::uint32_t, std::uint32_t>;

    const std::vector<double> valley{2, 1, 2};
    CHECK(edge_set(vgt::build_visibility_graph(valley, vgt::WeightKind::Difference)) ==
          EdgeSet{P{0, 1}, P{1, 2}, P{0, 2}});

    const std::vector<double> peak{1, 2, 1};
    CHECK(edge_set(vgt::build_visibility_graph(peak, vgt::WeightKind::Difference)) ==
          EdgeSet{P{0, 1}, P{1, 2}});

    // Doubling series is convex: every pair sees every pair.
    const std::vector<double> convex{1, 2, 4, 8};
    CHECK(vgt::build_visibility_graph(convex, vgt::WeightKind::LogRatio).edges.size() ==
          6);

    // Sawtooth: peaks shadow everything except one over-the-valley pair.
    const std::vector<double> saw{1, 2, 1, 2, 1};
    CHECK(edge_set(vgt::build_visibility_graph(saw, vgt::WeightKind::Difference)) ==
          EdgeSet{P{0, 1}, P{1, 2}, P{2, 3}, P{3, 4}, P{1, 3}});
}

TEST_CASE("edges arrive sorted by (i, j) with correct weights") {
    const std::vector<double> v = gaussian_values(64, 11);
    const vgt::VisibilityGraph g =
        vgt::build_visibility_graph(v, vgt::WeightKind::LogRatio);
    REQUIRE(!g.edges.empty());
    CHECK(g.n == 64);
    for (std::size_t k = 0; k + 1 < g.edges.size(); ++k) {
        const auto& a = g.edges[k];
        const auto& b = g.edges[k + 1];
        CHECK((a.i < b.i || (a.i == b.i && a.j < b.j)));
    }
    for (const vgt::VisibilityEdge& e : g.edges) {
        CHECK(e.i < e.j);
        CHECK(e.weight ==
              vgt::edge_weight(v, e.i, e.j, vgt::WeightKind::LogRatio));
    }
}

TEST_CASE("fast builder equals the naive oracle on random series") {
    vgt::Rng rng(99);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 50 + rng.uniform_below(451);
        std::vector<double> v(n);
        for (double& x : v) x = 50.0 + 10.0 * rng.uniform01();
        const vgt::VisibilityGraph fast =
            vgt::build_visibility_graph(v, vgt::WeightKind::LogRatio);
        const vgt::VisibilityGraph naive =
            vgt::build_visibility_graph_naive(v, vgt::WeightKind::LogRatio);
        REQUIRE(fast.edges.size() == naive.edges.size());
        for (std::size_t k = 0; k < fast.edges.size(); ++k) {
            CHECK(fast.edges[k].i == naive.edges[k].i);
            CHECK(fast.edges[k].j == naive.edges[k].j);
            CHECK(fast.edges[k].weight == naive.edges[k].weight);
        }
    }
}

TEST_CASE("edge-set topology is invariant under positive affine maps") {
    const std::vector<double> v = gaussian_values(120, 5);
    const EdgeSet base =
        edge_set(vgt::build_visibility_graph(v, vgt::WeightKind::Difference));
    const std::vector<std::pair<double, double>> maps{
        {2.0, 0.0}, {0.25, 10.0}, {7.0, -50.0}};
    for (auto [a, b] : maps) {
        std::vector<double> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = a * v[i] + b;
        CHECK(edge_set(vgt::build_visibility_graph(w, vgt::WeightKind::Difference)) ==
              base);
    }
}

TEST_CASE("edge set mirrors under time reversal") {
    const std::vector<double> v = gaussian_values(90, 17);
    std::vector<double> r(v.rbegin(), v.rend());
    const EdgeSet fwd =
        edge_set(vgt::build_visibility_graph(v, vgt::WeightKind::Difference));
    EdgeSet mirrored;
    const std::uint32_t n = static_cast<std::uint32_t>(v.size());
    for (auto [i, j] :
         edge_set(vgt::build_visibility_graph(r, vgt::WeightKind::Difference)))
        mirrored.insert({n - 1 - j, n - 1 - i});
    CHECK(mirrored == fwd);
}

TEST_CASE("edge count bounds and guaranteed consecutive edges") {
    vgt::Rng rng(123);
    for (std::size_t n : {3, 4, 10, 60}) {
        std::vector<double> v(n);
        for (double& x : v) x = 1.0 + rng.uniform01();
        const vgt::VisibilityGraph g =
            vgt::build_visibility_graph(v, vgt::WeightKind::LogRatio);
        CHECK(g.edges.size() >= n - 1);
        CHECK(g.edges.size() <= n * (n - 1) / 2);
        const EdgeSet es = edge_set(g);
        for (std::uint32_t i = 0; i + 1 < n; ++i)
            CHECK(es.count({i, i + 1}) == 1);
    }
}

TEST_CASE("degenerate inputs") {
    // The raw span form accepts two points (one edge); fewer is an error.
    const vgt::VisibilityGraph pair = vgt::build_visibility_graph(
        std::vector<double>{1.0, 2.0}, vgt::WeightKind::Difference);
    CHECK(pair.edges.size() == 1);

    CHECK_THROWS_AS(
        (void)vgt::build_visibility_graph(std::vector<double>{5.0},
                                          vgt::WeightKind::LogRatio),
        vgt::Error);
    CHECK_THROWS_AS(
        (void)vgt::build_visibility_graph(std::vector<double>{},
                                          vgt::WeightKind::LogRatio),
        vgt::Error);

    // Log-ratio weights need strictly positive values.
    CHECK_THROWS_AS(
        (void)vgt::build_visibility_graph(std::vector<double>{1.0, -2.0, 3.0},
                                          vgt::WeightKind::LogRatio),
        vgt::Error);

    // The price-series form enforces the 3-point series minimum.
    vgt::PriceSeries two{"two", {1.0, 2.0}};
    CHECK_THROWS_AS((void)vgt::build_visibility_graph(two), vgt::Error);
}

TEST_CASE("PriceSeries convenience overload uses log-ratio weights") {
    vgt::PriceSeries s{"conv", {1.0, 2.0, 4.0, 8.0}};
    const vgt::VisibilityGraph a = vgt::build_visibility_graph(s);
    const vgt::VisibilityGraph b = vgt::build_visibility_graph(
        s.prices, vgt::WeightKind::LogRatio);
    REQUIRE(a.edges.size() == b.edges.size());
    for (std::size_t k = 0; k < a.edges.size(); ++k)
        CHECK(a.edges[k].weight == b.edges[k].weight);
}

TEST_CASE("write_edge_csv golden output") {
    const std::vector<double> valley{2, 1, 2};
    const vgt::VisibilityGraph g =
        vgt::build_visibility_graph(valley, vgt::WeightKind::Difference);
    vgt::write_edge_csv(g, "test_tmp_edges.csv");
    std::ifstream f("test_tmp_edges.csv");
    const std::string content((std::istreambuf_iterator<char>(f)), {});
    CHECK(content == "i,j,weight\n0,1,-1\n0,2,0\n1,2,1\n");
    std::remove("test_tmp_edges.csv");
}
