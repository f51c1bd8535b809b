#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vgt/series.hpp"

namespace vgt {

// How edge weights are derived from the series values.
//   LogRatio:   w = (ln v[j] - ln v[i]) / (j - i)   -- price series
//   Difference: w = (v[j] - v[i]) / (j - i)         -- raw random-walk paths
enum class WeightKind { LogRatio, Difference };

// Signed weights are the default; Absolute takes |w| (variant mode kept for
// sensitivity checks, not used by the standard analyses).
enum class WeightMode { Signed, Absolute };

struct VisibilityEdge {
    std::uint32_t i, j;  // i < j
    double weight;
};

struct VisibilityGraph {
    std::uint32_t n = 0;
    std::vector<VisibilityEdge> edges;  // sorted by (i, j)
};

// Literal sight-line test: true iff every intermediate point k lies strictly
// below the line from point i to point j, expressed as the slope comparison
// (v[j]-v[k])/(j-k) > (v[j]-v[i])/(j-i).  Adjacent points always see each
// other.
bool visible(std::span<const double> values, std::size_t i, std::size_t j);

double edge_weight(std::span<const double> values, std::size_t i, std::size_t j,
                   WeightKind kind, WeightMode mode = WeightMode::Signed);

// Fast O(n^2) builder: one forward sweep per anchor, maintaining the running
// maximum forward slope (dispatched to the active SIMD kernel).
VisibilityGraph build_visibility_graph(std::span<const double> values,
                                       WeightKind kind,
                                       WeightMode mode = WeightMode::Signed);

// Brute-force triple-loop oracle with the identical contract; intended for
// tests on short series.
VisibilityGraph build_visibility_graph_naive(std::span<const double> values,
                                             WeightKind kind,
                                             WeightMode mode = WeightMode::Signed);

// Price-series convenience forms (log-ratio weights).
VisibilityGraph build_visibility_graph(const PriceSeries& s,
                                       WeightMode mode = WeightMode::Signed);
VisibilityGraph build_visibility_graph_naive(const PriceSeries& s,
                                             WeightMode mode = WeightMode::Signed);

// Edge-list export: header "i,j,weight", rows sorted by (i, j).
void write_edge_csv(const VisibilityGraph& g, const std::string& path);

}  // namespace vgt
