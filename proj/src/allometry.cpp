#include "vgt/allometry.hpp"

#include <cmath>
#include <fstream>

#include "vgt/stats.hpp"

namespace vgt {

std::uint32_t choose_root(const SpanningTree& t) {
    if (t.n == 0) throw Error("choose_root on an empty tree");
    std::vector<std::uint32_t> degree(t.n, 0);
    for (const auto& [i, j] : t.edges) {
        ++degree[i];
        ++degree[j];
    }
    std::uint32_t root = 0;
    for (std::uint32_t v = 1; v < t.n; ++v)
        if (degree[v] > degree[root]) root = v;  // '>' keeps the smallest index on ties
    return root;
}

RootedTree root_tree(const SpanningTree& t, std::uint32_t root) {
    if (root >= t.n) throw Error("root index out of range");
    if (t.edges.size() + 1 != t.n) throw Error("not a spanning tree: wrong edge count");

    // Tree adjacency in CSR form.
    std::vector<std::uint32_t> offsets(t.n + 1, 0);
    for (const auto& [i, j] : t.edges) {
        ++offsets[i + 1];
        ++offsets[j + 1];
    }
    for (std::uint32_t v = 0; v < t.n; ++v) offsets[v + 1] += offsets[v];
    std::vector<std::uint32_t> nbr(2 * t.edges.size());
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (const auto& [i, j] : t.edges) {
        nbr[fill[i]++] = j;
        nbr[fill[j]++] = i;
    }

    RootedTree rt;
    rt.n = t.n;
    rt.root = root;
    rt.parent.assign(t.n, -1);
    rt.order.reserve(t.n);
    rt.order.push_back(root);
    std::vector<char> seen(t.n, 0);
    seen[root] = 1;
    for (std::size_t head = 0; head < rt.order.size(); ++head) {
        const std::uint32_t u = rt.order[head];
        for (std::uint32_t e = offsets[u]; e < offsets[u + 1]; ++e) {
            const std::uint32_t v = nbr[e];
            if (seen[v]) continue;
            seen[v] = 1;
            rt.parent[v] = static_cast<std::int32_t>(u);
            rt.order.push_back(v);
        }
    }
    if (rt.order.size() != t.n) throw Error("not a spanning tree: disconnected");
    return rt;
}

AllometryResult compute_ac(const RootedTree& rt) {
    AllometryResult r;
    r.a.assign(rt.n, 1);
    r.c.assign(rt.n, 0);
    // Children precede parents in reverse BFS order, so a single pass works:
    // by the time u is reached, every child has already folded its final A
    // and C into u, making C[u] += A[u] the last missing term of
    // C_u = A_u + sum_children C.
    for (std::size_t idx = rt.order.size(); idx-- > 0;) {
        const std::uint32_t u = rt.order[idx];
        r.c[u] += r.a[u];
        const std::int32_t p = rt.parent[u];
        if (p >= 0) {
            r.a[static_cast<std::uint32_t>(p)] += r.a[u];
            r.c[static_cast<std::uint32_t>(p)] += r.c[u];
        }
    }
    return r;
}

void fit_eta(AllometryResult& r) {
    std::vector<double> x, y;
    x.reserve(r.a.size());
    y.reserve(r.a.size());
    std::uint64_t a_first = 0;
    bool distinct_a = false;
    for (std::size_t v = 0; v < r.a.size(); ++v) {
        if (r.a[v] <= 1) continue;  // leaves (A = C = 1) are excluded from the fit
        if (x.empty())
            a_first = r.a[v];
        else if (r.a[v] != a_first)
            distinct_a = true;
        x.push_back(std::log(static_cast<double>(r.a[v])));
        y.push_back(std::log(static_cast<double>(r.c[v])));
    }
    if (x.size() < 3 || !distinct_a)
        throw FitError("eta fit needs >= 3 non-leaf nodes with >= 2 distinct A values, got " +
                       std::to_string(x.size()));
    const LinFit f = linear_fit(x, y);
    r.eta = f.b;
    r.eta_stderr = f.se_b;
    r.r_squared = f.r2;
    r.n_fit_points = f.n;
}

AllometryResult analyze_tree(const SpanningTree& t) {
    AllometryResult r = compute_ac(root_tree(t, choose_root(t)));
    fit_eta(r);
    return r;
}

void write_ac_csv(const AllometryResult& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << "node,A,C,is_leaf\n";
    for (std::size_t v = 0; v < r.a.size(); ++v)
        out << v << ',' << r.a[v] << ',' << r.c[v] << ','
            << (r.a[v] == 1 ? 1 : 0) << '\n';
    if (!out) throw Error("write failed: " + path);
}

void write_tree_csv(const RootedTree& rt, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << "child,parent\n";
    for (std::uint32_t v = 0; v < rt.n; ++v) {
        out << v << ',';
        if (rt.parent[v] >= 0) out << rt.parent[v];
        out << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

}  // namespace vgt
