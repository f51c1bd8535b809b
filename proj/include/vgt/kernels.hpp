#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace vgt {

// Sum moments used by the OLS fits: S x, S y, S x^2, S xy, S y^2.
struct Moments2 {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
};

// One anchor step of the visibility sweep: given the value array and an
// anchor index i, write the indices j > i that are visible from i (in
// increasing order) to `out` and return how many were written.  `out` must
// have room for n - i - 1 entries.
//
// Visibility from the anchor reduces to a strict running-maximum test on the
// forward slopes s_k = (v[k] - v[i]) / (k - i): j is visible iff s_j exceeds
// every earlier s_k.  Both kernels implement exactly this recurrence; since
// per-lane IEEE subtract/divide and max are order-insensitive here, the SIMD
// variant emits bit-identical index sets.
using VisibleSweepFn = std::size_t (*)(const double* values, std::size_t n,
                                       std::size_t anchor, std::uint32_t* out);

using Moments2Fn = Moments2 (*)(const double* x, const double* y, std::size_t n);

struct KernelSet {
    const char* name;
    VisibleSweepFn visible_sweep;
    Moments2Fn moments2;
};

// Portable reference implementation; always available.
const KernelSet& scalar_kernels();

// All kernel sets usable on this machine (scalar first).
std::vector<const KernelSet*> available_kernels();

// The active set: the widest supported ISA by default, overridable with the
// VGT_KERNEL environment variable ("scalar", "avx2", "neon").  Resolved once.
const KernelSet& active_kernels();

// Force a specific set by name (testing hook); throws on unknown/unsupported.
void select_kernels(const std::string& name);

}  // namespace vgt
