#include "vgt/kernels.hpp"

#include <limits>

namespace vgt {
namespace {

std::size_t visible_sweep_scalar(const double* values, std::size_t n,
                                 std::size_t anchor, std::uint32_t* out) {
    const double vi = values[anchor];
    double best = -std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    for (std::size_t k = anchor + 1; k < n; ++k) {
        const double s = (values[k] - vi) / static_cast<double>(k - anchor);
        // Strictly above every earlier forward slope <=> visible from anchor.
        // `best` only moves on emission, which keeps it equal to the running
        // maximum: a non-emitted slope is by definition <= best.
        if (s > best) {
            out[count++] = static_cast<std::uint32_t>(k);
            best = s;
        }
    }
    return count;
}

Moments2 moments2_scalar(const double* x, const double* y, std::size_t n) {
    Moments2 m;
    for (std::size_t i = 0; i < n; ++i) {
        m.sx += x[i];
        m.sy += y[i];
        m.sxx += x[i] * x[i];
        m.sxy += x[i] * y[i];
        m.syy += y[i] * y[i];
    }
    return m;
}

}  // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet ks{"scalar", visible_sweep_scalar, moments2_scalar};
    return ks;
}

}  // namespace vgt
