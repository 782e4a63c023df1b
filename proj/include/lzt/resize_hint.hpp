#pragma once

#include <algorithm>
#include <cstdint>

#include <lzt/core.hpp>

namespace lzt {

namespace detail {

inline std::uint64_t isqrt(std::uint64_t x) {
    if (x < 2) return x;
    std::uint64_t r = std::uint64_t(1) << ((bit_width_u64(x) + 1) / 2);
    while (true) {
        const std::uint64_t next = (r + x / r) / 2;
        if (next >= r) return r;
        r = next;
    }
}

} // namespace detail

// How many factors to expect at minimum: any text of length n has at least
// ceil(sqrt(2n)) - O(1) factors because factor lengths grow by at most one,
// so reserving ceil(sqrt(2n)) slots makes the most repetitive inputs parse
// without a single resize.
inline std::uint64_t initial_reserve(std::uint64_t n) {
    const std::uint64_t two_n = 2 * n;
    std::uint64_t s = detail::isqrt(two_n);
    if (s * s < two_n) ++s;
    return s;
}

// Estimated total number of factors once parsing finishes, given the input
// length n, the number r of characters still to parse, and the z_prime
// factors produced so far. Late in the parse (r < n/2) the incompressibility
// bound 3r/lg r caps what is still to come; earlier, the factors-per-character
// rate so far is extrapolated over the remainder.
inline std::uint64_t growth_estimate(std::uint64_t n, std::uint64_t r,
                                     std::uint64_t z_prime) {
    if (r <= 1) return z_prime + r;
    if (2 * r < n) {
        const std::uint64_t lg = bit_width_u64(r) - 1;
        return z_prime + ceil_div(3 * r, lg);
    }
    const std::uint64_t consumed = std::max<std::uint64_t>(n - r, 1);
    return z_prime + ceil_div(z_prime * r, consumed);
}

} // namespace lzt
