#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <optional>
#include <random>

#include <lzt/alloc_account.hpp>
#include <lzt/core.hpp>
#include <lzt/hash_fn.hpp>
#include <lzt/probing_table.hpp>

namespace lzt {

enum class RollingFn : std::uint8_t {
    fermat,  // fp' = fp * 257 + byte, mod 2^w
    id37,    // fp' = fp * B + psi[byte], mod 2^w, seeded B and psi table
};

// Identifies a trie node by the rolling fingerprint of its full string, so a
// descent step is one multiply-add and one table probe and nothing else is
// stored per node. Two distinct strings can share a fingerprint; the trie
// then silently conflates their nodes and the parse goes wrong (Monte
// Carlo). Use factorize_verified to turn that event into a detected error.
// The scramble flag only affects how fingerprints are mapped to table slots,
// never the fingerprints themselves.
class RollingTrie {
public:
    struct Node {
        std::uint64_t fp = 0;
        factor_index label = 0;
    };
    using node_type = Node;

    struct MaybeScramble {
        bool on = true;
        std::uint64_t operator()(std::uint64_t x) const {
            return on ? scramble64(x) : x;
        }
    };

    RollingTrie(AllocAccount& account, Addressing mode, RollingFn fn,
                std::uint32_t width, bool scramble, std::uint64_t seed)
        : m_account(&account),
          m_fn(fn),
          m_width(width),
          m_mask(width == 64 ? ~std::uint64_t(0)
                             : (std::uint64_t(1) << width) - 1),
          // fitted addressing is multiply-shift and reads the high hash
          // bits; raw fingerprints of short strings have none, so that
          // mode always scrambles
          m_table(account, mode,
                  MaybeScramble{scramble || mode == Addressing::fitted}) {
        assert(width >= 4 && width <= 64);
        if (fn == RollingFn::id37) {
            std::mt19937_64 rng(seed);
            m_base = rng() | 1;
            for (auto& p : m_psi) p = rng();
        }
    }

    node_type root() const { return Node{0, 0}; }
    factor_index label_of(const node_type& u) const { return u.label; }
    std::uint64_t size() const { return m_table.size(); }

    std::optional<node_type> child_or_insert(const node_type& u, symbol c,
                                             factor_index new_label) {
        const std::uint64_t fp = roll(u.fp, c);
        const auto [value, inserted] = m_table.find_or_insert(fp, new_label);
        if (inserted) return std::nullopt;
        return Node{fp, value};
    }

    std::uint64_t roll(std::uint64_t fp, symbol c) const {
        const std::uint64_t digit = to_byte(c);
        if (m_fn == RollingFn::fermat) {
            return (fp * 257 + digit) & m_mask;
        }
        return (fp * m_base + m_psi[digit]) & m_mask;
    }

    void reserve(std::uint64_t n) { m_table.reserve(n); }
    void set_hint(SizeHintFn hint) { m_table.set_hint(std::move(hint)); }

    BackendStats stats() const {
        return BackendStats{m_table.collisions(), m_table.capacity(),
                            m_account->live()};
    }

    RollingFn fn() const { return m_fn; }
    std::uint32_t width() const { return m_width; }
    const ProbingTable<8, MaybeScramble>& table() const { return m_table; }

private:
    AllocAccount* m_account;
    RollingFn m_fn;
    std::uint32_t m_width;
    std::uint64_t m_mask;
    std::uint64_t m_base = 257;
    std::array<std::uint64_t, 256> m_psi{};
    ProbingTable<8, MaybeScramble> m_table;
};

} // namespace lzt
