#pragma once

// Synthetic series generators and surrogate constructions.
//
// Brownian and fractional-Brownian generators come in two flavours:
//
//   * gen_brownian / gen_fbm return a PriceSeries whose log-returns are the
//     Gaussian increments (prices = 100 * exp(cumsum)).  These back the
//     `synth` CLI subcommand and keep the positive-price invariant.
//
//   * gen_brownian_path / gen_fbm_path return the raw random walk itself
//     (leading 0, then cumulative sums).  Ensemble scans analyze these raw
//     paths with difference weights: exponentiating a unit-variance walk
//     inflates the measured exponents because exp() is far from affine over
//     swings of many units, so the raw path is the faithful object for
//     synthetic-ensemble statistics.
//
// Fractional Gaussian noise is generated by exact circulant embedding
// (Davies-Harte): the target autocovariance
//     gamma(k) = 0.5 * (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H})
// is embedded in a circulant matrix whose eigenvalues are obtained by FFT,
// and one Hermitian-symmetric complex Gaussian vector is transformed back.
// The result is an exact sample of fGn, not an approximation; H = 0.5
// degenerates to i.i.d. standard normals and is special-cased.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vgt/rng.hpp"
#include "vgt/series.hpp"

namespace vgt {

enum class SurrogateKind : std::uint8_t {
    Surr1,  // shuffled log-returns: distribution kept, all ordering destroyed
    Surr2,  // Gaussian draws rank-reordered to the original returns: ordering
            // (nonlinearity) kept, marginal forced Gaussian
    Surr3,  // bootstrap resample rank-reordered to the original returns:
            // ordering and marginal distribution both kept
};

const char* surrogate_kind_name(SurrogateKind kind);

struct FbmSpec {
    double hurst = 0.5;  // strictly inside (0, 1)
    std::size_t length = 0;
    std::uint64_t seed = 0;
};

// Exact fractional Gaussian noise: n unit-variance increments with Hurst
// index h.  Draws from `rng` in a pinned order, so equal seeds give equal
// output.  Throws Error if the circulant embedding stays negative after
// padding retries (does not happen for this autocovariance in practice).
std::vector<double> fgn(double hurst, std::size_t n, Rng& rng);

// Brownian-motion price series: length prices, log-returns i.i.d. N(0,1),
// p0 = 100.  Throws Error if the exponentiated level overflows (very long
// series with unit-variance log-returns exceed double range; use
// gen_brownian_path for ensemble work at such lengths).
PriceSeries gen_brownian(std::size_t length, std::uint64_t seed);

// Fractional Brownian price series; H = 0.5 matches gen_brownian's
// distribution.
PriceSeries gen_fbm(const FbmSpec& spec);

// Raw walk variants: `length` values, starting at 0.
std::vector<double> gen_brownian_path(std::size_t length, std::uint64_t seed);
std::vector<double> gen_fbm_path(double hurst, std::size_t length,
                                 std::uint64_t seed);

// Surrogate construction on the log-returns of s; prices are rebuilt with
// p0 = s.prices[0] and the label gains a "_surr*" suffix.
PriceSeries make_surrogate(const PriceSeries& s, SurrogateKind kind,
                           std::uint64_t seed);

// Fat-tailed nonlinear test series: standardized Student-t(3) increments,
// rank-reordered so their magnitude ordering follows a slowly varying
// volatility envelope exp(kappa * fGn(hurst_vol)) applied to Gaussian noise.
// The increments keep the exact t(3) marginal; the reordering imposes
// volatility clustering (positive |return| autocorrelation) without touching
// the marginal.  Returns are scaled to daily-index magnitude before
// exponentiation so the price path looks like an equity index.
PriceSeries gen_clustered_t(std::size_t length, std::uint64_t seed,
                            double kappa = 0.5, double hurst_vol = 0.85,
                            double scale = 0.011);

// Positions of each element in the stable ascending sort of x: out[i] is the
// rank of x[i], ties broken by original position.  Shared by the surrogate
// constructions; exposed for tests.
std::vector<std::size_t> ranks_of(const std::vector<double>& x);

}  // namespace vgt
