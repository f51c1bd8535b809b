#include "vgt/spanning.hpp"

#include <algorithm>
#include <queue>

namespace vgt {
namespace {

struct Cand {
    double w;
    std::uint32_t u, v;  // u inside the tree at push time, v outside
};

inline std::pair<std::uint32_t, std::uint32_t> norm(std::uint32_t a, std::uint32_t b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

// Priority order: extremal weight first; among equal weights the smaller
// normalized (i, j) pair wins, which pins down the tree deterministically.
template <bool Maximize>
struct CandWorse {
    bool operator()(const Cand& a, const Cand& b) const {
        if (a.w != b.w) return Maximize ? a.w < b.w : a.w > b.w;
        return norm(a.u, a.v) > norm(b.u, b.v);
    }
};

template <bool Maximize>
SpanningTree grow_extremal(const VisibilityGraph& g, const Adjacency& adj) {
    const std::uint32_t n = g.n;
    SpanningTree t;
    t.kind = Maximize ? TreeKind::MaxST : TreeKind::MinST;
    t.n = n;
    if (g.edges.empty()) {
        if (n > 1) throw Error("spanning tree of an edgeless graph");
        return t;
    }

    // Seed: the globally extremal edge (first in (i,j) order among ties,
    // since the edge list is (i,j)-sorted and only strict improvement moves it).
    const VisibilityEdge* seed = &g.edges[0];
    for (const VisibilityEdge& e : g.edges) {
        if (Maximize ? (e.weight > seed->weight) : (e.weight < seed->weight))
            seed = &e;
    }

    std::vector<char> in_tree(n, 0);
    std::priority_queue<Cand, std::vector<Cand>, CandWorse<Maximize>> heap;
    auto push_frontier = [&](std::uint32_t u) {
        for (std::uint32_t e = adj.offsets[u]; e < adj.offsets[u + 1]; ++e)
            if (!in_tree[adj.nbr[e]]) heap.push({adj.w[e], u, adj.nbr[e]});
    };

    t.edges.reserve(n - 1);
    in_tree[seed->i] = in_tree[seed->j] = 1;
    t.edges.emplace_back(seed->i, seed->j);
    t.total_weight = seed->weight;
    push_frontier(seed->i);
    push_frontier(seed->j);

    std::uint32_t joined = 2;
    while (joined < n) {
        if (heap.empty()) throw Error("graph is disconnected");
        Cand c = heap.top();
        heap.pop();
        if (in_tree[c.v]) continue;  // became stale after it was pushed
        in_tree[c.v] = 1;
        ++joined;
        t.edges.push_back(norm(c.u, c.v));
        t.total_weight += c.w;
        push_frontier(c.v);
    }
    return t;
}

}  // namespace

const char* tree_kind_name(TreeKind k) {
    switch (k) {
        case TreeKind::MaxST: return "maxst";
        case TreeKind::MinST: return "minst";
        case TreeKind::RanST: return "ranst";
    }
    return "?";
}

Adjacency Adjacency::from_graph(const VisibilityGraph& g) {
    Adjacency adj;
    adj.n = g.n;
    adj.offsets.assign(g.n + 1, 0);
    for (const VisibilityEdge& e : g.edges) {
        ++adj.offsets[e.i + 1];
        ++adj.offsets[e.j + 1];
    }
    for (std::uint32_t v = 0; v < g.n; ++v) adj.offsets[v + 1] += adj.offsets[v];
    adj.nbr.resize(2 * g.edges.size());
    adj.w.resize(2 * g.edges.size());
    std::vector<std::uint32_t> fill(adj.offsets.begin(), adj.offsets.end() - 1);
    for (const VisibilityEdge& e : g.edges) {
        adj.nbr[fill[e.i]] = e.j;
        adj.w[fill[e.i]++] = e.weight;
        adj.nbr[fill[e.j]] = e.i;
        adj.w[fill[e.j]++] = e.weight;
    }
    return adj;
}

SpanningTree max_spanning_tree(const VisibilityGraph& g, const Adjacency& adj) {
    return grow_extremal<true>(g, adj);
}

SpanningTree min_spanning_tree(const VisibilityGraph& g, const Adjacency& adj) {
    return grow_extremal<false>(g, adj);
}

SpanningTree max_spanning_tree(const VisibilityGraph& g) {
    return max_spanning_tree(g, Adjacency::from_graph(g));
}

SpanningTree min_spanning_tree(const VisibilityGraph& g) {
    return min_spanning_tree(g, Adjacency::from_graph(g));
}

SpanningTree random_spanning_tree(const VisibilityGraph& g, const Adjacency& adj,
                                  Rng& rng) {
    const std::uint32_t n = g.n;
    SpanningTree t;
    t.kind = TreeKind::RanST;
    t.n = n;
    if (g.edges.empty()) {
        if (n > 1) throw Error("spanning tree of an edgeless graph");
        return t;
    }

    std::vector<char> in_tree(n, 0);
    std::vector<Cand> frontier;
    auto push_frontier = [&](std::uint32_t u) {
        for (std::uint32_t e = adj.offsets[u]; e < adj.offsets[u + 1]; ++e)
            if (!in_tree[adj.nbr[e]])
                frontier.push_back({adj.w[e], u, adj.nbr[e]});
    };

    const VisibilityEdge& seed =
        g.edges[rng.uniform_below(g.edges.size())];
    in_tree[seed.i] = in_tree[seed.j] = 1;
    t.edges.reserve(n - 1);
    t.edges.emplace_back(seed.i, seed.j);
    t.total_weight = seed.weight;
    push_frontier(seed.i);
    push_frontier(seed.j);

    std::uint32_t joined = 2;
    while (joined < n) {
        if (frontier.empty()) throw Error("graph is disconnected");
        const std::size_t idx = rng.uniform_below(frontier.size());
        const Cand c = frontier[idx];
        frontier[idx] = frontier.back();
        frontier.pop_back();
        // Entries pointing at an already-joined node are stale; dropping them
        // and redrawing keeps the pick uniform over the live frontier edges.
        if (in_tree[c.v]) continue;
        in_tree[c.v] = 1;
        ++joined;
        t.edges.push_back(norm(c.u, c.v));
        t.total_weight += c.w;
        push_frontier(c.v);
    }
    return t;
}

SpanningTree random_spanning_tree(const VisibilityGraph& g, std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    return random_spanning_tree(g, Adjacency::from_graph(g), rng);
}

}  // namespace vgt
