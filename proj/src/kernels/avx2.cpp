#include "kernels_internal.hpp"

#ifdef VGT_BUILD_AVX2

#include <immintrin.h>

#include <limits>

namespace vgt {
namespace {

// Shift lanes up by one / two, filling vacated low lanes from `fill`:
// [a,b,c,d] -> [f,a,b,c] and [f,f,a,b].
inline __m256d shift_up1(__m256d x, __m256d fill) {
    __m256d p = _mm256_permute4x64_pd(x, _MM_SHUFFLE(2, 1, 0, 0));
    return _mm256_blend_pd(p, fill, 0x1);
}

inline __m256d shift_up2(__m256d x, __m256d fill) {
    __m256d p = _mm256_permute4x64_pd(x, _MM_SHUFFLE(1, 0, 0, 0));
    return _mm256_blend_pd(p, fill, 0x3);
}

std::size_t visible_sweep_avx2(const double* values, std::size_t n,
                               std::size_t anchor, std::uint32_t* out) {
    const double vi = values[anchor];
    const double ninf = -std::numeric_limits<double>::infinity();
    double best = ninf;
    std::size_t count = 0;
    std::size_t k = anchor + 1;

    const __m256d vvi = _mm256_set1_pd(vi);
    const __m256d vninf = _mm256_set1_pd(ninf);
    const __m256d vlane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    __m256d vbest = _mm256_set1_pd(best);

    // Four slopes per iteration.  The slope of lane l is computed with the
    // same two IEEE operations the scalar kernel uses ((v[k+l]-vi)/(k+l-i),
    // both operands exact), and the emission test compares against the exact
    // maximum of all earlier slopes, so emitted index sets are bit-identical
    // to the scalar kernel's.
    for (; k + 4 <= n; k += 4) {
        const __m256d vp = _mm256_loadu_pd(values + k);
        const __m256d vdt =
            _mm256_add_pd(_mm256_set1_pd(static_cast<double>(k - anchor)), vlane);
        const __m256d s = _mm256_div_pd(_mm256_sub_pd(vp, vvi), vdt);

        // Inclusive in-register max scan, then shift for the exclusive scan.
        __m256d m = _mm256_max_pd(s, shift_up1(s, vninf));
        m = _mm256_max_pd(m, shift_up2(m, vninf));
        const __m256d excl = _mm256_max_pd(shift_up1(m, vninf), vbest);

        int mask = _mm256_movemask_pd(_mm256_cmp_pd(s, excl, _CMP_GT_OQ));
        while (mask) {
            const int l = __builtin_ctz(static_cast<unsigned>(mask));
            out[count++] = static_cast<std::uint32_t>(k + static_cast<std::size_t>(l));
            mask &= mask - 1;
        }

        const __m128d hi = _mm256_extractf128_pd(m, 1);
        const double block_max = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
        if (block_max > best) {
            best = block_max;
            vbest = _mm256_set1_pd(best);
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

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

Moments2 moments2_avx2(const double* x, const double* y, std::size_t n) {
    __m256d sx = _mm256_setzero_pd(), sy = _mm256_setzero_pd();
    __m256d sxx = _mm256_setzero_pd(), sxy = _mm256_setzero_pd();
    __m256d syy = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        sx = _mm256_add_pd(sx, vx);
        sy = _mm256_add_pd(sy, vy);
        sxx = _mm256_fmadd_pd(vx, vx, sxx);
        sxy = _mm256_fmadd_pd(vx, vy, sxy);
        syy = _mm256_fmadd_pd(vy, vy, syy);
    }
    Moments2 m;
    m.sx = hsum(sx);
    m.sy = hsum(sy);
    m.sxx = hsum(sxx);
    m.sxy = hsum(sxy);
    m.syy = hsum(syy);
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

const KernelSet* avx2_kernels_or_null() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
        return nullptr;
    static const KernelSet ks{"avx2", visible_sweep_avx2, moments2_avx2};
    return &ks;
}

}  // namespace vgt

#else

namespace vgt {
const KernelSet* avx2_kernels_or_null() { return nullptr; }
}  // namespace vgt

#endif
