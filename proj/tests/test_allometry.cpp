#include <cmath>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "vgt/allometry.hpp"
#include "vgt/rng.hpp"

namespace {

vgt::SpanningTree chain(std::uint32_t n) {
    vgt::SpanningTree t;
    t.kind = vgt::TreeKind::MaxST;
    t.n = n;
    for (std::uint32_t i = 0; i + 1 < n; ++i) t.edges.emplace_back(i, i + 1);
    return t;
}

vgt::SpanningTree star(std::uint32_t leaves, std::uint32_t center) {
    vgt::SpanningTree t;
    t.kind = vgt::TreeKind::MaxST;
    t.n = leaves + 1;
    for (std::uint32_t v = 0; v < t.n; ++v)
        if (v != center)
            t.edges.emplace_back(std::min(v, center), std::max(v, center));
    return t;
}

// Random labeled tree: attach each node to a uniformly chosen earlier node.
vgt::SpanningTree random_tree(vgt::Rng& rng, std::uint32_t n) {
    vgt::SpanningTree t;
    t.kind = vgt::TreeKind::RanST;
    t.n = n;
    for (std::uint32_t v = 1; v < n; ++v) {
        const std::uint32_t p =
            static_cast<std::uint32_t>(rng.uniform_below(v));
        t.edges.emplace_back(std::min(p, v), std::max(p, v));
    }
    return t;
}

// Independent oracle for C: sum A over the subtree by walking every node's
// ancestor chain (each node's A contributes to all of its ancestors' C).
std::vector<std::uint64_t> subtree_sum_of_a(const vgt::RootedTree& rt,
                                            const std::vector<std::uint64_t>& a) {
    std::vector<std::uint64_t> c(rt.n, 0);
    for (std::uint32_t v = 0; v < rt.n; ++v) {
        std::int32_t u = static_cast<std::int32_t>(v);
        while (u >= 0) {
            c[static_cast<std::uint32_t>(u)] += a[v];
            u = rt.parent[static_cast<std::uint32_t>(u)];
        }
    }
    return c;
}

}  // namespace

TEST_CASE("choose_root picks maximum degree, smallest index on ties") {
    CHECK(vgt::choose_root(chain(3)) == 1);  // middle node, degree 2

    vgt::SpanningTree s = star(3, 3);  // center is node 3
    CHECK(vgt::choose_root(s) == 3);

    CHECK(vgt::choose_root(chain(2)) == 0);  // both degree 1: smallest wins

    // Long chain: every interior node has degree 2; node 1 is the smallest.
    CHECK(vgt::choose_root(chain(10)) == 1);
}

TEST_CASE("three-node path rooted at the middle") {
    const vgt::RootedTree rt = vgt::root_tree(chain(3), 1);
    CHECK(rt.root == 1);
    CHECK(rt.parent == std::vector<std::int32_t>{1, -1, 1});
    const vgt::AllometryResult r = vgt::compute_ac(rt);
    CHECK(r.a == std::vector<std::uint64_t>{1, 3, 1});
    CHECK(r.c == std::vector<std::uint64_t>{1, 5, 1});
}

TEST_CASE("end-rooted chain closed form: A_i = i, C_i = i(i+1)/2") {
    for (std::uint32_t n : {2u, 5u, 37u, 200u}) {
        const vgt::AllometryResult r = vgt::compute_ac(vgt::root_tree(chain(n), 0));
        for (std::uint32_t v = 0; v < n; ++v) {
            const std::uint64_t i = n - v;  // position counted from the far leaf
            CHECK(r.a[v] == i);
            CHECK(r.c[v] == i * (i + 1) / 2);
        }
    }
}

TEST_CASE("star closed form: root A = m+1, C = 2m+1") {
    for (std::uint32_t m : {3u, 10u, 64u}) {
        const vgt::SpanningTree t = star(m, 0);
        const vgt::AllometryResult r = vgt::compute_ac(vgt::root_tree(t, 0));
        CHECK(r.a[0] == m + 1);
        CHECK(r.c[0] == 2 * m + 1);
        for (std::uint32_t v = 1; v <= m; ++v) {
            CHECK(r.a[v] == 1);
            CHECK(r.c[v] == 1);
        }
    }
}

TEST_CASE("chain eta matches frozen independently computed fits") {
    struct Case {
        std::uint32_t n;
        double eta;
    };
    // ln C vs ln A over non-leaf chain nodes, fitted externally and frozen.
    for (const Case& c : {Case{10, 1.813461265872}, Case{100, 1.940978091311},
                          Case{1000, 1.985663795623}}) {
        vgt::AllometryResult r = vgt::compute_ac(vgt::root_tree(chain(c.n), 0));
        vgt::fit_eta(r);
        CHECK(r.eta == doctest::Approx(c.eta).epsilon(1e-9));
        CHECK(r.n_fit_points == c.n - 1);  // every node but the far leaf
    }

    // The long-chain exponent approaches 2 from below.
    vgt::AllometryResult r = vgt::compute_ac(vgt::root_tree(chain(1000), 0));
    vgt::fit_eta(r);
    CHECK(r.eta >= 1.85);
    CHECK(r.eta < 2.0);
}

TEST_CASE("degenerate fits raise FitError") {
    // Middle-rooted 3-path: only one non-leaf point.
    vgt::AllometryResult mid = vgt::compute_ac(vgt::root_tree(chain(3), 1));
    CHECK_THROWS_AS(vgt::fit_eta(mid), vgt::FitError);

    // Star: the root is the only non-leaf node.
    CHECK_THROWS_AS((void)vgt::analyze_tree(star(6, 0)), vgt::FitError);

    // Two-node tree: no non-leaf beyond the root; also via analyze_tree.
    CHECK_THROWS_AS((void)vgt::analyze_tree(chain(2)), vgt::FitError);

    // Two distinct A values are enough: hang one extra leaf off each original
    // leaf, giving five nodes at A = 2 plus the root at A = 11.
    vgt::SpanningTree broom = star(5, 0);
    const std::uint32_t base = broom.n;
    for (std::uint32_t k = 0; k < 5; ++k)
        broom.edges.emplace_back(k + 1, base + k);
    broom.n += 5;
    CHECK_NOTHROW((void)vgt::analyze_tree(broom));
}

TEST_CASE("random-tree invariants: root count and subtree sums") {
    vgt::Rng rng(606);
    for (int rep = 0; rep < 30; ++rep) {
        const std::uint32_t n =
            3 + static_cast<std::uint32_t>(rng.uniform_below(98));
        const vgt::SpanningTree t = random_tree(rng, n);
        const std::uint32_t root = vgt::choose_root(t);
        const vgt::RootedTree rt = vgt::root_tree(t, root);
        const vgt::AllometryResult r = vgt::compute_ac(rt);

        CHECK(r.a[root] == n);  // the root's subtree is the whole tree
        CHECK(r.c == subtree_sum_of_a(rt, r.a));

        std::uint64_t leaf_count = 0;
        for (std::uint32_t v = 0; v < n; ++v) {
            CHECK(r.a[v] >= 1);
            CHECK(r.c[v] >= r.a[v]);
            if (r.a[v] == 1) {
                CHECK(r.c[v] == 1);
                ++leaf_count;
            }
        }
        CHECK(leaf_count >= 1);
    }
}

TEST_CASE("eta is invariant under node relabeling") {
    vgt::Rng rng(99);
    const std::uint32_t n = 60;
    const vgt::SpanningTree t = random_tree(rng, n);
    const std::uint32_t root = vgt::choose_root(t);
    vgt::AllometryResult base = vgt::compute_ac(vgt::root_tree(t, root));
    vgt::fit_eta(base);

    // Apply a random permutation to the labels and root at the image of the
    // original root: the geometry is unchanged, so eta must be too.
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::uint32_t i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.uniform_below(i + 1)]);

    vgt::SpanningTree relabeled;
    relabeled.kind = t.kind;
    relabeled.n = n;
    for (const auto& [i, j] : t.edges)
        relabeled.edges.emplace_back(std::min(perm[i], perm[j]),
                                     std::max(perm[i], perm[j]));
    vgt::AllometryResult moved =
        vgt::compute_ac(vgt::root_tree(relabeled, perm[root]));
    vgt::fit_eta(moved);

    CHECK(moved.eta == doctest::Approx(base.eta).epsilon(1e-12));
    CHECK(moved.n_fit_points == base.n_fit_points);
}

TEST_CASE("eta stays inside (1, 2) on trees from the real pipeline") {
    vgt::Rng rng(2718);
    for (int rep = 0; rep < 8; ++rep) {
        const std::size_t n = 50 + rng.uniform_below(251);
        std::vector<double> walk(n);
        double level = 0.0;
        for (double& v : walk) {
            level += rng.normal();
            v = level;
        }
        const vgt::VisibilityGraph g =
            vgt::build_visibility_graph(walk, vgt::WeightKind::Difference);
        const vgt::Adjacency adj = vgt::Adjacency::from_graph(g);
        vgt::Rng tr(1000 + static_cast<std::uint64_t>(rep));
        for (const vgt::SpanningTree& t :
             {vgt::max_spanning_tree(g, adj), vgt::min_spanning_tree(g, adj),
              vgt::random_spanning_tree(g, adj, tr)}) {
            const vgt::AllometryResult r = vgt::analyze_tree(t);
            CHECK(r.eta > 1.0);
            CHECK(r.eta < 2.0);
            CHECK(r.eta_stderr >= 0.0);
            CHECK(r.n_fit_points >= 3);
        }
    }
}

TEST_CASE("chain eta increases monotonically toward 2") {
    double prev = 1.0;
    for (std::uint32_t n : {10u, 30u, 100u, 300u, 1000u}) {
        vgt::AllometryResult r = vgt::compute_ac(vgt::root_tree(chain(n), 0));
        vgt::fit_eta(r);
        CHECK(r.eta > prev);
        prev = r.eta;
    }
    CHECK(prev < 2.0);
}

TEST_CASE("root_tree rejects malformed input") {
    CHECK_THROWS_AS((void)vgt::root_tree(chain(5), 5), vgt::Error);

    vgt::SpanningTree extra = chain(4);
    extra.edges.emplace_back(0, 2);  // n-1+1 edges: contains a cycle
    CHECK_THROWS_AS((void)vgt::root_tree(extra, 0), vgt::Error);

    vgt::SpanningTree forest;  // right edge count, but disconnected
    forest.kind = vgt::TreeKind::MaxST;
    forest.n = 4;
    forest.edges = {{0, 1}, {2, 3}, {2, 3}};
    CHECK_THROWS_AS((void)vgt::root_tree(forest, 0), vgt::Error);
}

TEST_CASE("ac and parent-map exports write golden files") {
    const vgt::RootedTree rt = vgt::root_tree(chain(3), 1);
    const vgt::AllometryResult r = vgt::compute_ac(rt);

    vgt::write_ac_csv(r, "test_tmp_ac.csv");
    std::ifstream fa("test_tmp_ac.csv");
    const std::string ac((std::istreambuf_iterator<char>(fa)), {});
    CHECK(ac == "node,A,C,is_leaf\n0,1,1,1\n1,3,5,0\n2,1,1,1\n");
    std::remove("test_tmp_ac.csv");

    vgt::write_tree_csv(rt, "test_tmp_tree.csv");
    std::ifstream ft("test_tmp_tree.csv");
    const std::string tree((std::istreambuf_iterator<char>(ft)), {});
    CHECK(tree == "child,parent\n0,1\n1,\n2,1\n");
    std::remove("test_tmp_tree.csv");
}
