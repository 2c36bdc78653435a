#pragma once

#include "sosforge/types.hpp"

#include <cstdint>

namespace sosforge {

/// Deterministic low-discrepancy sampling. All ratio checks and seminorm
/// estimates draw their points from this schedule so reports are
/// reproducible bit-for-bit.
inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

inline constexpr std::uint64_t kHaltonPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

/// i-th Halton point in [0,1)^dim; offset decorrelates independent schedules.
inline Point halton_point(std::uint64_t i, int dim, std::uint64_t offset = 0) {
    Point p(dim);
    for (int a = 0; a < dim; ++a)
        p[a] = radical_inverse(i + 1 + offset, kHaltonPrimes[a % 8]);
    return p;
}

inline Point halton_in_box(std::uint64_t i, const Box& box, std::uint64_t offset = 0) {
    Point p = halton_point(i, box.dim(), offset);
    for (int a = 0; a < box.dim(); ++a) p[a] = box.lo[a] + p[a] * box.side(a);
    return p;
}

/// Stable 64-bit hash of a seed label, used to offset Halton schedules.
inline std::uint64_t seed_from_label(const std::string& label) {
    std::uint64_t h = 14695981039346656037ull;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h % 100003;
}

}  // namespace sosforge
