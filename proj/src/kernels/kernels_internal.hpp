#pragma once

#include "vgt/kernels.hpp"

namespace vgt {

// Each ISA-specific translation unit exposes its kernel set, or nullptr when
// the binary or the running CPU lacks support.
const KernelSet* avx2_kernels_or_null();
const KernelSet* neon_kernels_or_null();

}  // namespace vgt
