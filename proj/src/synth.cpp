#include "vgt/synth.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace vgt {

const char* surrogate_kind_name(SurrogateKind kind) {
    switch (kind) {
        case SurrogateKind::Surr1: return "surr1";
        case SurrogateKind::Surr2: return "surr2";
        case SurrogateKind::Surr3: return "surr3";
    }
    return "?";
}

namespace {

// RAII for FFTW buffers; fftw_malloc guarantees the alignment the planner
// assumes, independent of how the host allocator behaves.
struct FftwBuffer {
    fftw_complex* data = nullptr;
    explicit FftwBuffer(std::size_t n)
        : data(static_cast<fftw_complex*>(
              fftw_malloc(sizeof(fftw_complex) * n))) {
        if (data == nullptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

struct FftwPlan {
    fftw_plan plan = nullptr;
    FftwPlan(std::size_t n, fftw_complex* in, fftw_complex* out)
        : plan(fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD,
                                FFTW_ESTIMATE)) {
        if (plan == nullptr) throw Error("FFT plan creation failed");
    }
    ~FftwPlan() { fftw_destroy_plan(plan); }
    FftwPlan(const FftwPlan&) = delete;
    FftwPlan& operator=(const FftwPlan&) = delete;
};

double fgn_autocov(double hurst, std::size_t k) {
    if (k == 0) return 1.0;
    const double kk = static_cast<double>(k);
    const double twoh = 2.0 * hurst;
    return 0.5 * (std::pow(kk + 1.0, twoh) - 2.0 * std::pow(kk, twoh) +
                  std::pow(kk - 1.0, twoh));
}

// One circulant-embedding attempt with ring size m (power of two, >= 2n).
// Returns false if the embedding has a meaningfully negative eigenvalue, in
// which case the caller retries with a larger ring.
bool fgn_attempt(double hurst, std::size_t n, std::size_t m, Rng& rng,
                 std::vector<double>& out) {
    FftwBuffer buf(m);
    FftwPlan plan(m, buf.data, buf.data);

    // First row of the circulant matrix: gamma(0..m/2), then mirrored.
    for (std::size_t j = 0; j <= m / 2; ++j) {
        buf.data[j][0] = fgn_autocov(hurst, j);
        buf.data[j][1] = 0.0;
    }
    for (std::size_t j = m / 2 + 1; j < m; ++j) {
        buf.data[j][0] = buf.data[m - j][0];
        buf.data[j][1] = 0.0;
    }
    fftw_execute(plan.plan);

    std::vector<double> lambda(m);
    double max_lambda = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        lambda[j] = buf.data[j][0];
        max_lambda = std::max(max_lambda, lambda[j]);
    }
    const double tol = 1e-10 * max_lambda;
    for (std::size_t j = 0; j < m; ++j) {
        if (lambda[j] < -tol) return false;  // genuine failure: pad and retry
        if (lambda[j] < 0.0) lambda[j] = 0.0;
    }

    // Hermitian-symmetric Gaussian spectrum: E|V_j|^2 = lambda_j, so the
    // inverse ring transform (scaled by 1/sqrt(m)) has covariance gamma.
    // Draw order is pinned: V_0, then (re, im) pairs for j = 1 .. m/2-1,
    // then V_{m/2}.
    buf.data[0][0] = std::sqrt(lambda[0]) * rng.normal();
    buf.data[0][1] = 0.0;
    for (std::size_t j = 1; j < m / 2; ++j) {
        const double amp = std::sqrt(0.5 * lambda[j]);
        const double re = amp * rng.normal();
        const double im = amp * rng.normal();
        buf.data[j][0] = re;
        buf.data[j][1] = im;
        buf.data[m - j][0] = re;
        buf.data[m - j][1] = -im;
    }
    buf.data[m / 2][0] = std::sqrt(lambda[m / 2]) * rng.normal();
    buf.data[m / 2][1] = 0.0;

    fftw_execute(plan.plan);

    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    out.resize(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = buf.data[j][0] * scale;
    return true;
}

}  // namespace

std::vector<double> fgn(double hurst, std::size_t n, Rng& rng) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw Error("hurst index must lie strictly inside (0, 1), got " +
                    std::to_string(hurst));
    if (n == 0) return {};
    std::vector<double> out;
    if (hurst == 0.5) {  // iid case: no embedding needed
        out.resize(n);
        for (double& v : out) v = rng.normal();
        return out;
    }
    std::size_t m = std::bit_ceil(std::max<std::size_t>(2 * n, 8));
    for (int attempt = 0; attempt < 4; ++attempt, m *= 2) {
        if (fgn_attempt(hurst, n, m, rng, out)) return out;
    }
    throw Error("circulant embedding stayed negative after padding retries "
                "(hurst = " + std::to_string(hurst) + ")");
}

namespace {

PriceSeries exponentiate(std::vector<double> returns, std::string label,
                         double p0 = 100.0) {
    // Guard the log-level before exponentiating: a unit-variance walk of tens
    // of thousands of steps can leave double range, and "use the raw-path
    // generator" is a better report than a generic validation failure.
    double level = std::log(p0);
    for (double r : returns) {
        level += r;
        if (!(level > -700.0 && level < 700.0))
            throw Error("synthetic log-price level left double range; this "
                        "length needs the raw-path generator");
    }
    ReturnSeries rs;
    rs.label = std::move(label);
    rs.returns = std::move(returns);
    return prices_from_returns(rs, p0);
}

}  // namespace

PriceSeries gen_brownian(std::size_t length, std::uint64_t seed) {
    return gen_fbm(FbmSpec{0.5, length, seed});
}

PriceSeries gen_fbm(const FbmSpec& spec) {
    if (spec.length < 3) throw Error("synthetic series length must be >= 3");
    Rng rng(spec.seed);
    std::vector<double> incr = fgn(spec.hurst, spec.length - 1, rng);
    std::string label =
        spec.hurst == 0.5
            ? "bm_" + std::to_string(spec.seed)
            : "fbm_h" + format_double(spec.hurst) + "_" + std::to_string(spec.seed);
    return exponentiate(std::move(incr), std::move(label));
}

namespace {

std::vector<double> walk_from(std::vector<double> incr) {
    std::vector<double> path(incr.size() + 1);
    path[0] = 0.0;
    for (std::size_t i = 0; i < incr.size(); ++i) path[i + 1] = path[i] + incr[i];
    return path;
}

}  // namespace

std::vector<double> gen_brownian_path(std::size_t length, std::uint64_t seed) {
    return gen_fbm_path(0.5, length, seed);
}

std::vector<double> gen_fbm_path(double hurst, std::size_t length,
                                 std::uint64_t seed) {
    if (length < 3) throw Error("synthetic series length must be >= 3");
    Rng rng(seed);
    return walk_from(fgn(hurst, length - 1, rng));
}

std::vector<std::size_t> ranks_of(const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<std::size_t> ranks(x.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = pos;
    return ranks;
}

namespace {

// Place sorted sample values at the rank slots of the template returns:
// output[i] gets the value whose rank equals the rank of templ[i].
std::vector<double> place_by_ranks(std::vector<double> sample,
                                   const std::vector<double>& templ) {
    std::sort(sample.begin(), sample.end());
    const std::vector<std::size_t> ranks = ranks_of(templ);
    std::vector<double> out(templ.size());
    for (std::size_t i = 0; i < templ.size(); ++i) out[i] = sample[ranks[i]];
    return out;
}

}  // namespace

PriceSeries make_surrogate(const PriceSeries& s, SurrogateKind kind,
                           std::uint64_t seed) {
    validate_series(s);
    const ReturnSeries rs = log_returns(s);
    const std::vector<double>& r = rs.returns;
    const std::size_t n = r.size();
    Rng rng(seed);

    std::vector<double> out;
    switch (kind) {
        case SurrogateKind::Surr1: {
            out = r;  // Fisher-Yates: every permutation equally likely
            for (std::size_t i = n - 1; i > 0; --i) {
                const std::size_t j = rng.uniform_below(i + 1);
                std::swap(out[i], out[j]);
            }
            break;
        }
        case SurrogateKind::Surr2: {
            double mean = 0.0;
            for (double v : r) mean += v;
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (double v : r) var += (v - mean) * (v - mean);
            var /= static_cast<double>(n);
            const double sd = std::sqrt(var);
            std::vector<double> draws(n);
            for (double& v : draws) v = mean + sd * rng.normal();
            out = place_by_ranks(std::move(draws), r);
            break;
        }
        case SurrogateKind::Surr3: {
            std::vector<double> draws(n);
            for (double& v : draws) v = r[rng.uniform_below(n)];
            out = place_by_ranks(std::move(draws), r);
            break;
        }
    }

    ReturnSeries rr;
    rr.label = s.label + "_" + surrogate_kind_name(kind);
    rr.returns = std::move(out);
    return prices_from_returns(rr, s.prices[0]);
}

PriceSeries gen_clustered_t(std::size_t length, std::uint64_t seed,
                            double kappa, double hurst_vol, double scale) {
    if (length < 3) throw Error("synthetic series length must be >= 3");
    const std::size_t n = length - 1;
    Rng rng(seed);

    // Heavy-tailed values: Student-t(3) scaled to unit variance.
    std::vector<double> tails(n);
    for (double& v : tails)
        v = rng.student_t(3) / std::sqrt(3.0);

    // Clustering template: Gaussian noise under a slowly varying volatility
    // envelope.  Reordering the t(3) draws to this template's ranks places
    // the large-magnitude values inside high-envelope stretches.
    const std::vector<double> envelope = fgn(hurst_vol, n, rng);
    std::vector<double> templ(n);
    for (std::size_t i = 0; i < n; ++i)
        templ[i] = rng.normal() * std::exp(kappa * envelope[i]);

    std::vector<double> returns = place_by_ranks(std::move(tails), templ);
    for (double& v : returns) v *= scale;
    return exponentiate(std::move(returns), "clustered_t3_" + std::to_string(seed));
}

}  // namespace vgt
