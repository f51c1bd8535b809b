#include <cstdlib>
#include <stdexcept>

#include "kernels_internal.hpp"

namespace vgt {
namespace {

const KernelSet* g_active = nullptr;

const KernelSet* resolve_default() {
    const char* want = std::getenv("VGT_KERNEL");
    if (want != nullptr) {
        for (const KernelSet* ks : available_kernels())
            if (std::string(ks->name) == want) return ks;
        throw std::runtime_error(
            std::string("VGT_KERNEL='") + want +
            "' is unknown or unsupported on this machine");
    }
    // Prefer the widest ISA actually present.
    const KernelSet* best = &scalar_kernels();
    if (const KernelSet* ks = avx2_kernels_or_null()) best = ks;
    if (const KernelSet* ks = neon_kernels_or_null()) best = ks;
    return best;
}

}  // namespace

std::vector<const KernelSet*> available_kernels() {
    std::vector<const KernelSet*> out{&scalar_kernels()};
    if (const KernelSet* ks = avx2_kernels_or_null()) out.push_back(ks);
    if (const KernelSet* ks = neon_kernels_or_null()) out.push_back(ks);
    return out;
}

const KernelSet& active_kernels() {
    if (g_active == nullptr) g_active = resolve_default();
    return *g_active;
}

void select_kernels(const std::string& name) {
    for (const KernelSet* ks : available_kernels()) {
        if (name == ks->name) {
            g_active = ks;
            return;
        }
    }
    throw std::runtime_error("kernel set '" + name +
                             "' is unknown or unsupported on this machine");
}

}  // namespace vgt
