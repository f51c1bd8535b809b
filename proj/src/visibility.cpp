#include "vgt/visibility.hpp"

#include <cmath>
#include <fstream>

#include "vgt/kernels.hpp"

namespace vgt {
namespace {

void check_values(std::span<const double> values, WeightKind kind) {
    if (values.size() < 2) throw Error("visibility graph needs at least 2 points");
    if (values.size() > 0xFFFFFFFFull) throw Error("series too long for 32-bit node ids");
    for (double v : values) {
        if (!std::isfinite(v)) throw Error("visibility input contains a non-finite value");
        if (kind == WeightKind::LogRatio && v <= 0.0)
            throw Error("log-ratio weights require strictly positive values");
    }
}

// Weight-source values: ln v for log-ratio, v itself for differences.
std::vector<double> weight_values(std::span<const double> values, WeightKind kind) {
    std::vector<double> wv(values.begin(), values.end());
    if (kind == WeightKind::LogRatio)
        for (double& v : wv) v = std::log(v);
    return wv;
}

double finish_weight(double w, WeightMode mode) {
    return mode == WeightMode::Absolute ? std::fabs(w) : w;
}

}  // namespace

bool visible(std::span<const double> values, std::size_t i, std::size_t j) {
    if (i >= j || j >= values.size()) throw Error("visible(): need i < j < n");
    const double slope_ij = (values[j] - values[i]) / static_cast<double>(j - i);
    for (std::size_t k = i + 1; k < j; ++k) {
        const double slope_kj = (values[j] - values[k]) / static_cast<double>(j - k);
        if (!(slope_kj > slope_ij)) return false;
    }
    return true;
}

double edge_weight(std::span<const double> values, std::size_t i, std::size_t j,
                   WeightKind kind, WeightMode mode) {
    if (i >= j || j >= values.size()) throw Error("edge_weight(): need i < j < n");
    double wi = values[i], wj = values[j];
    if (kind == WeightKind::LogRatio) {
        wi = std::log(wi);
        wj = std::log(wj);
    }
    return finish_weight((wj - wi) / static_cast<double>(j - i), mode);
}

VisibilityGraph build_visibility_graph(std::span<const double> values,
                                       WeightKind kind, WeightMode mode) {
    check_values(values, kind);
    const std::size_t n = values.size();
    const std::vector<double> wv = weight_values(values, kind);
    const KernelSet& ks = active_kernels();

    VisibilityGraph g;
    g.n = static_cast<std::uint32_t>(n);
    g.edges.reserve(4 * n);

    std::vector<std::uint32_t> hits(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t cnt = ks.visible_sweep(values.data(), n, i, hits.data());
        for (std::size_t t = 0; t < cnt; ++t) {
            const std::uint32_t j = hits[t];
            const double w = (wv[j] - wv[i]) / static_cast<double>(j - i);
            g.edges.push_back({static_cast<std::uint32_t>(i), j,
                               finish_weight(w, mode)});
        }
    }
    return g;
}

VisibilityGraph build_visibility_graph_naive(std::span<const double> values,
                                             WeightKind kind, WeightMode mode) {
    check_values(values, kind);
    const std::size_t n = values.size();
    const std::vector<double> wv = weight_values(values, kind);

    VisibilityGraph g;
    g.n = static_cast<std::uint32_t>(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!visible(values, i, j)) continue;
            const double w = (wv[j] - wv[i]) / static_cast<double>(j - i);
            g.edges.push_back({static_cast<std::uint32_t>(i),
                               static_cast<std::uint32_t>(j),
                               finish_weight(w, mode)});
        }
    }
    return g;
}

VisibilityGraph build_visibility_graph(const PriceSeries& s, WeightMode mode) {
    validate_series(s);
    return build_visibility_graph(std::span<const double>(s.prices),
                                  WeightKind::LogRatio, mode);
}

VisibilityGraph build_visibility_graph_naive(const PriceSeries& s, WeightMode mode) {
    validate_series(s);
    return build_visibility_graph_naive(std::span<const double>(s.prices),
                                        WeightKind::LogRatio, mode);
}

void write_edge_csv(const VisibilityGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << "i,j,weight\n";
    for (const VisibilityEdge& e : g.edges)
        out << e.i << ',' << e.j << ',' << format_double(e.weight) << '\n';
    if (!out) throw Error("write failed: " + path);
}

}  // namespace vgt
