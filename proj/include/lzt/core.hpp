#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

namespace lzt {

// The alphabet is fixed to bytes. Input bytes b are mapped to symbols c = b + 1,
// so symbols range over [1..SIGMA] and 0 is free to mean "none".
inline constexpr std::uint32_t SIGMA = 256;

using symbol = std::uint16_t;        // 1..SIGMA
using factor_index = std::uint32_t;  // node label / factor number; 0 is the root

inline constexpr symbol to_symbol(std::uint8_t byte) { return symbol(byte) + 1; }
inline constexpr std::uint8_t to_byte(symbol c) { return std::uint8_t(c - 1); }

// One LZ78 factor: the text of factor x is text(ref) + ext.
// ext is absent only for the final factor of a parse that ends mid-descent.
struct Lz78Factor {
    factor_index ref = 0;
    std::optional<symbol> ext;

    bool operator==(const Lz78Factor&) const = default;
};

// One LZW factor as a signed code: -c for a fresh literal with symbol c,
// y > 0 for a reference to the dictionary entry created after factor y.
struct LzwFactor {
    std::int64_t code = 0;

    bool is_literal() const { return code < 0; }
    symbol literal() const { return symbol(-code); }
    factor_index ref() const { return factor_index(code); }

    bool operator==(const LzwFactor&) const = default;
};

enum class Format : std::uint8_t {
    lz78 = 0,
    lzw = 1,
};

// Counters every trie backend reports. Deterministic (array-based) backends
// report collisions = 0 and table_size_M = 0. collisions counts occupied,
// non-matching slots traversed during child_or_insert operations; probes made
// while rebuilding a table during growth are not counted. allocated_bytes is
// the live structure size from the allocation account (peaks live there too).
struct BackendStats {
    std::uint64_t collisions = 0;
    std::uint64_t table_size_M = 0;
    std::uint64_t allocated_bytes = 0;
};

// Invoked by a backend when it has to grow: returns an estimate of the total
// number of entries the trie will hold at the end of the parse, or nothing if
// the driver considers it too early to guess (backends then simply double).
using SizeHintFn = std::function<std::optional<std::uint64_t>()>;

// The contract every LZ trie representation implements. child_or_insert
// returns the child node when (node, c) exists, otherwise inserts a new child
// labeled new_label and returns nothing; the driver then restarts at root().
template<typename T>
concept LzTrieBackend = requires(T t, const T ct, typename T::node_type u,
                                 symbol c, factor_index x, std::uint64_t n,
                                 SizeHintFn hint) {
    typename T::node_type;
    { t.root() } -> std::same_as<typename T::node_type>;
    { t.child_or_insert(u, c, x) } -> std::same_as<std::optional<typename T::node_type>>;
    { ct.label_of(u) } -> std::same_as<factor_index>;
    { ct.size() } -> std::same_as<std::uint64_t>;
    t.reserve(n);
    t.set_hint(hint);
    { ct.stats() } -> std::same_as<BackendStats>;
};

inline constexpr std::uint32_t bit_width_u64(std::uint64_t x) {
    std::uint32_t w = 0;
    while (x) { ++w; x >>= 1; }
    return w;
}

// Bits needed to distinguish x values, i.e. ceil(lg x); 0 for x <= 1.
inline constexpr std::uint32_t ceil_log2(std::uint64_t x) {
    return x <= 1 ? 0 : bit_width_u64(x - 1);
}

inline constexpr std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
    return (a + b - 1) / b;
}

inline constexpr std::uint64_t ceil_pow2(std::uint64_t x) {
    std::uint64_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

} // namespace lzt
