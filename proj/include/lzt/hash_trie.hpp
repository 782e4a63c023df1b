#pragma once

#include <cassert>
#include <cstdint>
#include <optional>

#include <lzt/alloc_account.hpp>
#include <lzt/core.hpp>
#include <lzt/hash_fn.hpp>
#include <lzt/probing_table.hpp>

namespace lzt {

struct Scramble64 {
    std::uint64_t operator()(std::uint64_t x) const { return scramble64(x); }
};

// Hash trie: a node is its label, an edge (u, c) is the 40-bit key
// 256 * label(u) + (c - 1) in a scrambled linear-probing table mapping the
// key to the child label. Addressing::fitted is the "+" variant whose table
// is resized to exactly fit the total-size hint instead of the next power
// of two.
class HashTrie {
public:
    using node_type = factor_index;

    HashTrie(AllocAccount& account, Addressing mode)
        : m_account(&account), m_table(account, mode) {}

    node_type root() const { return 0; }
    factor_index label_of(node_type u) const { return u; }
    std::uint64_t size() const { return m_table.size(); }

    std::optional<node_type> child_or_insert(node_type u, symbol c,
                                             factor_index new_label) {
        const std::uint64_t key = (std::uint64_t(u) << 8) | to_byte(c);
        const auto [value, inserted] = m_table.find_or_insert(key, new_label);
        if (inserted) return std::nullopt;
        return node_type(value);
    }

    void reserve(std::uint64_t n) { m_table.reserve(n); }
    void set_hint(SizeHintFn hint) { m_table.set_hint(std::move(hint)); }

    BackendStats stats() const {
        return BackendStats{m_table.collisions(), m_table.capacity(),
                            m_account->live()};
    }

    const ProbingTable<5, Scramble64>& table() const { return m_table; }

private:
    AllocAccount* m_account;
    ProbingTable<5, Scramble64> m_table;
};

} // namespace lzt
