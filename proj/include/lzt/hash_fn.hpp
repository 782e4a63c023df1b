#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <random>

#include <lzt/core.hpp>

namespace lzt {

// 64-bit finalizer used to spread table keys before masking. This is the
// splitmix64 mix function; each step is invertible, so the whole map is a
// bijection on 64-bit integers (scramble64_inv below).
inline std::uint64_t scramble64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    x = x ^ (x >> 31);
    return x;
}

namespace detail {

inline std::uint64_t unshift_xor_right(std::uint64_t y, std::uint32_t s) {
    std::uint64_t x = y;
    for (std::uint32_t done = s; done < 64; done += s) {
        x = y ^ (x >> s);
    }
    return x;
}

} // namespace detail

inline std::uint64_t scramble64_inv(std::uint64_t x) {
    x = detail::unshift_xor_right(x, 31);
    x *= 0x319642B2D24D8EC3ull;  // modular inverse of 0x94D049BB133111EB
    x = detail::unshift_xor_right(x, 27);
    x *= 0x96DE1B173F119089ull;  // modular inverse of 0xBF58476D1CE4E5B9
    x = detail::unshift_xor_right(x, 30);
    return x;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t((unsigned __int128)(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, exact for all 64-bit integers with this
// witness set.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    std::uint32_t s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (std::uint32_t i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline std::uint64_t next_prime_above(std::uint64_t x) {
    std::uint64_t c = x + 1;
    if (c <= 2) return 2;
    if ((c & 1) == 0) ++c;
    while (!is_prime_u64(c)) c += 2;
    return c;
}

// prime_above_pow2[k] is the smallest prime in (2^k, 2^{k+1}) for k = 1..63
// (a prime above 2^64 does not fit in 64 bits; keys here stay far below).
inline constexpr std::array<std::uint64_t, 64> prime_above_pow2 = {
    0ull,  // k = 0 unused
    3ull, 5ull, 11ull, 17ull,
    37ull, 67ull, 131ull, 257ull,
    521ull, 1031ull, 2053ull, 4099ull,
    8209ull, 16411ull, 32771ull, 65537ull,
    131101ull, 262147ull, 524309ull, 1048583ull,
    2097169ull, 4194319ull, 8388617ull, 16777259ull,
    33554467ull, 67108879ull, 134217757ull, 268435459ull,
    536870923ull, 1073741827ull, 2147483659ull, 4294967311ull,
    8589934609ull, 17179869209ull, 34359738421ull, 68719476767ull,
    137438953481ull, 274877906951ull, 549755813911ull, 1099511627791ull,
    2199023255579ull, 4398046511119ull, 8796093022237ull, 17592186044423ull,
    35184372088891ull, 70368744177679ull, 140737488355333ull, 281474976710677ull,
    562949953421381ull, 1125899906842679ull, 2251799813685269ull, 4503599627370517ull,
    9007199254740997ull, 18014398509482143ull, 36028797018963971ull, 72057594037928017ull,
    144115188075855881ull, 288230376151711813ull, 576460752303423619ull, 1152921504606847009ull,
    2305843009213693967ull, 4611686018427388039ull, 9223372036854775837ull,
};

inline std::uint64_t modinv_fermat(std::uint64_t a, std::uint64_t p) {
    return powmod_u64(a, p - 2, p);
}

// Extended-gcd inverse, kept as an independent cross-check of modinv_fermat.
inline std::uint64_t modinv_extgcd(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = std::int64_t(p), new_r = std::int64_t(a % p);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t -= q * new_t; std::swap(t, new_t);
        r -= q * new_r; std::swap(r, new_r);
    }
    assert(r == 1);
    if (t < 0) t += std::int64_t(p);
    return std::uint64_t(t);
}

// Bijection x -> (a*x + b) mod p on [0..p-1], p prime, 1 <= a < p.
struct LcgHash {
    std::uint64_t a = 1;
    std::uint64_t b = 0;
    std::uint64_t p = 2;
    std::uint64_t a_inv = 1;

    static LcgHash make(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
        assert(is_prime_u64(p));
        assert(a >= 1 && a < p && b < p);
        return LcgHash{a, b, p, modinv_fermat(a, p)};
    }

    std::uint64_t forward(std::uint64_t x) const {
        assert(x < p);
        return (mulmod_u64(a, x, p) + b) % p;
    }

    std::uint64_t inverse(std::uint64_t y) const {
        assert(y < p);
        return mulmod_u64((y + p - b) % p, a_inv, p);
    }

    std::uint64_t domain() const { return p; }
};

// Bijection on [0..2^w-1] built from xorshift steps x -> x ^ (x << j) or
// x -> x ^ (x >> j) with |j| > w/2 (each such step is then an involution)
// and odd-multiplier steps, which break up the shift structure.
struct XorshiftHash {
    struct Step {
        enum class Kind : std::uint8_t { shift, mul } kind;
        std::int32_t j = 0;            // shift amount, sign = direction
        std::uint64_t a = 1;           // odd multiplier
        std::uint64_t a_inv = 1;       // inverse of a mod 2^w
    };

    std::uint32_t w = 64;
    std::array<Step, 3> steps{};
    std::uint32_t n_steps = 0;

    static std::uint64_t mul_inverse_pow2(std::uint64_t a, std::uint32_t w) {
        // Newton iteration for the 2-adic inverse of an odd a.
        std::uint64_t inv = a;
        for (int i = 0; i < 5; ++i) inv *= 2 - a * inv;
        return w == 64 ? inv : inv & ((std::uint64_t(1) << w) - 1);
    }

    std::uint64_t mask() const {
        return w == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << w) - 1;
    }

    static std::uint64_t xorshift_step(std::uint64_t x, std::int32_t j,
                                       std::uint64_t mask) {
        if (j >= 0) return (x ^ (x << j)) & mask;
        return x ^ (x >> -j);
    }

    void add_shift(std::int32_t j) {
        assert(std::uint32_t(j >= 0 ? j : -j) > w / 2);
        steps[n_steps++] = Step{Step::Kind::shift, j, 1, 1};
    }

    void add_mul(std::uint64_t a) {
        assert(a & 1);
        a &= mask();
        steps[n_steps++] = Step{Step::Kind::mul, 0, a, mul_inverse_pow2(a, w)};
    }

    std::uint64_t forward(std::uint64_t x) const {
        assert((x & ~mask()) == 0);
        for (std::uint32_t i = 0; i < n_steps; ++i) {
            const Step& s = steps[i];
            x = s.kind == Step::Kind::shift ? xorshift_step(x, s.j, mask())
                                            : (x * s.a) & mask();
        }
        return x;
    }

    std::uint64_t inverse(std::uint64_t y) const {
        assert((y & ~mask()) == 0);
        for (std::uint32_t i = n_steps; i-- > 0;) {
            const Step& s = steps[i];
            // a shift step with |j| > w/2 is its own inverse
            y = s.kind == Step::Kind::shift ? xorshift_step(y, s.j, mask())
                                            : (y * s.a_inv) & mask();
        }
        return y;
    }

    std::uint64_t domain() const {
        return w == 64 ? 0 : std::uint64_t(1) << w;  // 0 means 2^64
    }
};

enum class HashFamily : std::uint8_t { lcg, xorshift };

// A randomly drawn bijection whose domain covers the key universe [0..u-1]
// and whose range stays below 2u, so quotients after division by the table
// size fit a fixed narrow field.
class KeyBijection {
public:
    KeyBijection() : m_family(HashFamily::lcg) {}

    static KeyBijection draw(std::uint64_t u, HashFamily family,
                             std::mt19937_64& rng) {
        assert(u >= 2);
        KeyBijection h;
        h.m_family = family;
        if (family == HashFamily::lcg) {
            // prime p with u < p < 2u; the table covers exact powers of two,
            // anything else is a short deterministic search upward
            std::uint64_t p;
            if ((u & (u - 1)) == 0) {
                p = prime_above_pow2[bit_width_u64(u) - 1];
            } else {
                p = next_prime_above(u);
            }
            assert(p > u && p < 2 * u);
            const std::uint64_t a = 1 + rng() % (p - 1);
            const std::uint64_t b = rng() % p;
            h.m_lcg = LcgHash::make(a, b, p);
        } else {
            assert(ceil_log2(u) < 64);
            const std::uint32_t w = std::max<std::uint32_t>(ceil_log2(u), 4);
            h.m_xs.w = w;
            const auto draw_j = [&]() {
                const std::uint32_t lo = w / 2 + 1;
                const std::int32_t j = std::int32_t(lo + rng() % (w - lo));
                return (rng() & 1) ? j : -j;
            };
            h.m_xs.add_shift(draw_j());
            h.m_xs.add_mul(rng() | 1);
            h.m_xs.add_shift(draw_j());
        }
        return h;
    }

    std::uint64_t forward(std::uint64_t x) const {
        return m_family == HashFamily::lcg ? m_lcg.forward(x) : m_xs.forward(x);
    }

    std::uint64_t inverse(std::uint64_t y) const {
        return m_family == HashFamily::lcg ? m_lcg.inverse(y) : m_xs.inverse(y);
    }

    // exclusive upper bound of the hash range
    std::uint64_t range_end() const {
        return m_family == HashFamily::lcg ? m_lcg.p
                                           : std::uint64_t(1) << m_xs.w;
    }

    HashFamily family() const { return m_family; }
    const LcgHash& lcg() const { return m_lcg; }
    const XorshiftHash& xorshift() const { return m_xs; }

private:
    HashFamily m_family;
    LcgHash m_lcg{};
    XorshiftHash m_xs{};
};

} // namespace lzt
