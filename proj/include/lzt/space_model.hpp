#pragma once

#include <cmath>
#include <cstdint>

#include <lzt/core.hpp>

namespace lzt {

// Closed-form size envelopes, in bits, for a trie holding z entries. best
// assumes the tightest allocation the representation can reach (arrays
// exactly fitted, table maximally loaded), worst the loosest one that
// regular growth can leave behind (arrays freshly doubled, table minimally
// loaded, plus the rebuild window where two tables coexist). Measured peaks
// are judged with a multiplicative tolerance against both ends.

struct SpaceEnvelope {
    double best_bits = 0;
    double worst_bits = 0;
};

namespace detail {
inline double lg(double x) { return std::log2(x); }
} // namespace detail

inline SpaceEnvelope envelope_binary(std::uint64_t z) {
    const double t = 2 * detail::lg(double(z)) + 8;
    return {1.5 * z * (t - 2.0 / 3.0), 3.0 * z * (t + 4.0 / 3.0)};
}

inline SpaceEnvelope envelope_ternary(std::uint64_t z) {
    const double t = 3 * detail::lg(double(z)) + 8;
    return {1.5 * z * (t - 1.0), 3.0 * z * (t + 2.0)};
}

inline SpaceEnvelope envelope_hash(std::uint64_t z, double alpha) {
    const double t = 2 * detail::lg(double(z)) + 8;
    return {1.5 * z * (t - 2.0 / 3.0) / alpha, 6.0 * z * (t + 4.0 / 3.0) / alpha};
}

inline SpaceEnvelope envelope_compact(std::uint64_t z, double alpha) {
    const double t = detail::lg(alpha * double(z) * 256.0);
    return {1.5 * z * (t + 8.0 / 3.0) / alpha, 3.0 * z * (t + 11.0 / 3.0) / alpha};
}

inline SpaceEnvelope envelope_rolling(std::uint64_t z, double alpha,
                                      std::uint32_t width) {
    const double t = width + detail::lg(double(z)) + 8;
    return {1.5 * z * (t - 1.0 / 3.0) / alpha, 6.0 * z * (t + 2.0 / 3.0) / alpha};
}

inline bool within_envelope(double measured_bits, const SpaceEnvelope& e,
                            double tol = 1.15) {
    return measured_bits >= e.best_bits / tol &&
           measured_bits <= e.worst_bits * tol;
}

// Factor lengths grow by at most one per factor, so any parse of n
// characters has at least about sqrt(2n) factors: z (z + 1) >= 2 n, in both
// formats. Integer-exact.
inline bool satisfies_factor_lower_bound(std::uint64_t z, std::uint64_t n) {
    return (unsigned __int128)(z) * (z + 1) >= 2 * (unsigned __int128)(n);
}

} // namespace lzt
