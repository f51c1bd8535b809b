#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vgt/rng.hpp"
#include "vgt/visibility.hpp"

namespace vgt {

enum class TreeKind { MaxST, MinST, RanST };

const char* tree_kind_name(TreeKind k);

// Undirected spanning tree, stored as its edge list in growth order (pairs
// normalized i < j).  Rooting is a separate, later step (see allometry).
struct SpanningTree {
    TreeKind kind;
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    double total_weight = 0.0;
};

// Compressed adjacency of a visibility graph; build once and share when many
// trees are grown from the same graph.
struct Adjacency {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> offsets;  // n + 1
    std::vector<std::uint32_t> nbr;      // 2E
    std::vector<double> w;               // 2E, matching nbr

    static Adjacency from_graph(const VisibilityGraph& g);
};

// Greedy frontier growth seeded at the extremal-weight edge; equal-weight
// candidates break ties toward the smaller (i, j) pair.  The result is a true
// maximum / minimum spanning tree.
SpanningTree max_spanning_tree(const VisibilityGraph& g, const Adjacency& adj);
SpanningTree min_spanning_tree(const VisibilityGraph& g, const Adjacency& adj);
SpanningTree max_spanning_tree(const VisibilityGraph& g);
SpanningTree min_spanning_tree(const VisibilityGraph& g);

// Random growth: seed edge uniform over all edges, then repeatedly attach a
// frontier edge (tree -> new node) chosen uniformly.  This is the literal
// randomized frontier procedure, not uniform sampling over all spanning trees.
SpanningTree random_spanning_tree(const VisibilityGraph& g, const Adjacency& adj,
                                  Rng& rng);
SpanningTree random_spanning_tree(const VisibilityGraph& g, std::uint64_t rng_seed);

}  // namespace vgt
