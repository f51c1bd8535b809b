#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vgt/spanning.hpp"

namespace vgt {

// A fit that cannot be performed (too few usable points) is an explicit
// error, never a silently defaulted exponent.
class FitError : public Error {
public:
    explicit FitError(const std::string& msg) : Error(msg) {}
};

struct RootedTree {
    std::uint32_t n = 0;
    std::uint32_t root = 0;
    std::vector<std::int32_t> parent;  // -1 at the root
    std::vector<std::uint32_t> order;  // breadth-first from the root
};

// Per-node allometric values and the fitted scaling exponent.
// A[node]: nodes in its subtree (leaves get 1); C[node]: sum of A over the
// subtree, via the recursion A_i = 1 + sum_children A, C_i = A_i + sum_children C.
struct AllometryResult {
    std::vector<std::uint64_t> a, c;
    double eta = 0.0;
    double eta_stderr = 0.0;
    double r_squared = 0.0;
    std::size_t n_fit_points = 0;
};

// The root is the node with maximum degree within the tree, ties broken by
// the smallest node index.
std::uint32_t choose_root(const SpanningTree& t);

RootedTree root_tree(const SpanningTree& t, std::uint32_t root);

// A and C filled; fit fields left zero.
AllometryResult compute_ac(const RootedTree& rt);

// OLS of ln C against ln A over non-leaf nodes (A > 1), one point per node.
// Requires at least 3 such nodes spanning at least 2 distinct A values;
// throws FitError otherwise.
void fit_eta(AllometryResult& r);

// Convenience: root by rule, compute, fit.
AllometryResult analyze_tree(const SpanningTree& t);

// Point-cloud export: header "node,A,C,is_leaf".
void write_ac_csv(const AllometryResult& r, const std::string& path);

// Parent-map export: header "child,parent"; the root row has an empty parent.
void write_tree_csv(const RootedTree& rt, const std::string& path);

}  // namespace vgt
