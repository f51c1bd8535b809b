#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

namespace vgt {

// Deterministic random source.  The mt19937_64 engine itself is pinned
// bit-for-bit by the C++ standard, but the standard *distributions* are
// implementation-defined, so every transform we need (uniform, normal,
// Student-t) is spelled out here to keep seeded runs byte-identical across
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1) with full 53-bit mantissa resolution.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), unbiased via bitmask rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
        for (;;) {
            std::uint64_t v = eng_() & mask;
            if (v < n) return v;
        }
    }

    // Standard normal via the Marsaglia polar method (one spare cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Student-t with integer dof: z / sqrt(chi2_nu / nu), chi2 summed from
    // squared normals.  Only small dof are ever requested.
    double student_t(int nu) {
        double z = normal();
        double chi2 = 0.0;
        for (int i = 0; i < nu; ++i) {
            double g = normal();
            chi2 += g * g;
        }
        return z / std::sqrt(chi2 / static_cast<double>(nu));
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace vgt
