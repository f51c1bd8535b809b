#include "kernels_internal.hpp"

#ifdef VGT_BUILD_NEON

#include <arm_neon.h>

#include <limits>

namespace vgt {
namespace {

// Two slopes per iteration; same slope arithmetic and running-max semantics
// as the scalar kernel, so emitted index sets are bit-identical.
std::size_t visible_sweep_neon(const double* values, std::size_t n,
                               std::size_t anchor, std::uint32_t* out) {
    const double vi = values[anchor];
    double best = -std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    std::size_t k = anchor + 1;

    const float64x2_t vvi = vdupq_n_f64(vi);
    for (; k + 2 <= n; k += 2) {
        const float64x2_t vp = vld1q_f64(values + k);
        const float64x2_t vdt = {static_cast<double>(k - anchor),
                                 static_cast<double>(k + 1 - anchor)};
        const float64x2_t s = vdivq_f64(vsubq_f64(vp, vvi), vdt);
        const double s0 = vgetq_lane_f64(s, 0);
        const double s1 = vgetq_lane_f64(s, 1);
        if (s0 > best) {
            out[count++] = static_cast<std::uint32_t>(k);
            best = s0;
        }
        if (s1 > best) {
            out[count++] = static_cast<std::uint32_t>(k + 1);
            best = s1;
        }
    }
    for (; k < n; ++k) {
        const double s = (values[k] - vi) / static_cast<double>(k - anchor);
        if (s > best) {
            out[count++] = static_cast<std::uint32_t>(k);
            best = s;
        }
    }
    return count;
}

Moments2 moments2_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t sx = vdupq_n_f64(0.0), sy = vdupq_n_f64(0.0);
    float64x2_t sxx = vdupq_n_f64(0.0), sxy = vdupq_n_f64(0.0);
    float64x2_t syy = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t vx = vld1q_f64(x + i);
        const float64x2_t vy = vld1q_f64(y + i);
        sx = vaddq_f64(sx, vx);
        sy = vaddq_f64(sy, vy);
        sxx = vfmaq_f64(sxx, vx, vx);
        sxy = vfmaq_f64(sxy, vx, vy);
        syy = vfmaq_f64(syy, vy, vy);
    }
    Moments2 m;
    m.sx = vaddvq_f64(sx);
    m.sy = vaddvq_f64(sy);
    m.sxx = vaddvq_f64(sxx);
    m.sxy = vaddvq_f64(sxy);
    m.syy = vaddvq_f64(syy);
    for (; i < n; ++i) {
        m.sx += x[i];
        m.sy += y[i];
        m.sxx += x[i] * x[i];
        m.sxy += x[i] * y[i];
        m.syy += y[i] * y[i];
    }
    return m;
}

}  // namespace

const KernelSet* neon_kernels_or_null() {
    // NEON with double lanes is baseline on aarch64; no runtime probe needed.
    static const KernelSet ks{"neon", visible_sweep_neon, moments2_neon};
    return &ks;
}

}  // namespace vgt

#else

namespace vgt {
const KernelSet* neon_kernels_or_null() { return nullptr; }
}  // namespace vgt

#endif
