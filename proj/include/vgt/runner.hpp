#pragma once

// Experiment orchestration: single-series analysis, finite-size and Hurst
// scans, and surrogate comparisons, aggregated into report structs that
// serialize to JSON with a fixed {config, results, regressions} layout.
//
// Seed policy: every stochastic object consumed by a run (a synthetic path,
// a random window, a surrogate, a random spanning tree) gets its own Rng
// seeded base_seed + k, where k counts consumed objects from 0 in the
// documented loop order of each operation.  Re-running with the same inputs
// therefore reproduces every draw, and no two objects share a stream.
//
// Synthetic ensembles (Brownian / fractional-Brownian scans, the Bm baseline
// in the surrogate comparison) are analyzed as raw walk values with
// difference weights rather than exponentiated prices: exponentiating a
// unit-variance walk stretches the upper half of the path so strongly that
// the measured exponents shift by ~0.15, swamping the effects the scans
// measure.  Real (and surrogate) price series keep log-ratio weights.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vgt/series.hpp"
#include "vgt/stats.hpp"
#include "vgt/synth.hpp"

namespace vgt {

// Single-tree fit: the exponent with its OLS standard error.
struct TreeFit {
    double eta = 0.0;
    double stderr_eta = 0.0;
    std::size_t n_fit_points = 0;
};

// Ensemble aggregate: mean and sample sd (n-1) of fitted exponents; count is
// the number of successful fits, dropped the number of fit failures.
struct EnsembleStat {
    double mean = 0.0;
    double sd = 0.0;
    std::size_t count = 0;
    std::size_t dropped = 0;
};

// One analyzed series: unique MaxST/MinST fits plus a RanST ensemble.
struct IndexReport {
    std::string label;
    std::size_t length = 0;
    TreeFit maxst, minst;
    EnsembleStat ranst;
    std::size_t ranst_count = 0;  // requested ensemble size
};

// One scan cell (a length, a Hurst index, or a surrogate kind).
struct ScanPoint {
    std::string label;
    double x = 0.0;  // scan coordinate where one exists (L or H)
    EnsembleStat maxst, minst, ranst;
};

struct OrderingCheck {
    std::string label;       // e.g. "maxst: bm < surr1"
    double gap = 0.0;        // mean(right) - mean(left)
    double combined_se = 0.0;
    bool holds = false;       // gap > 0
    bool significant = false; // gap > 2 * combined_se
};

struct LabeledRegression {
    std::string label;
    RegressionReport fit;
};

struct ScanReport {
    std::string kind;  // "length-scan" | "hurst-scan" | "surrogate-compare"
    std::vector<ScanPoint> points;
    std::optional<IndexReport> original;   // surrogate-compare only
    std::vector<OrderingCheck> orderings;  // surrogate-compare only
    std::vector<LabeledRegression> regressions;
};

// Analyze one price series: build the visibility graph once, fit the unique
// MaxST and MinST (propagating their fit failures), then grow ranst_count
// random trees with seeds seed+0 .. seed+count-1, dropping and counting
// failed fits.
IndexReport analyze_index(const PriceSeries& s, std::size_t ranst_count,
                          std::uint64_t seed);

// Finite-size scan.  index == nullptr selects Brownian mode (fresh raw walks
// per realization); otherwise each realization is a random contiguous window
// of *index.  Emits per-length aggregates and five regressions: mean MaxST,
// MinST and RanST exponents against L, mean RanST against ln L, and the
// per-realization RanST exponents against ln L (the per-series form used for
// significance tests; length means hide too few points to carry one).
ScanReport length_scan(const PriceSeries* index,
                       const std::vector<std::size_t>& lengths,
                       std::size_t realizations, std::uint64_t seed);

// Hurst scan over fractional-Brownian walks of fixed length: per-H
// aggregates plus regressions of the mean exponents against H.
ScanReport hurst_scan(const std::vector<double>& hursts, std::size_t length,
                      std::size_t realizations, std::uint64_t seed);

// Surrogate comparison: the original series' own report, per-kind ensembles
// (surr1, surr2, surr3, plus a matched-length Brownian baseline), and the
// ordering checks bm < surr1 and surr2 < surr3 for the MaxST and MinST.
ScanReport surrogate_compare(const PriceSeries& s, std::size_t realizations,
                             std::uint64_t seed);

// Serialized reports: {"config": <caller-supplied>, "results": [...],
// "regressions": [...]} rendered deterministically (two-space indent,
// shortest round-trip numbers), ending in a newline.  `config_json` must be
// a serialized JSON object; the CLI assembles it from the invocation.
std::string report_json(const IndexReport& r, const std::string& config_json);
std::string report_json(const ScanReport& r, const std::string& config_json);

}  // namespace vgt
