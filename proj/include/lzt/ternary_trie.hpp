#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>

#include <lzt/alloc_account.hpp>
#include <lzt/core.hpp>

namespace lzt {

// Ternary trie: each node's children form an unbalanced binary search tree
// ordered by edge character, so finding a child branches lo/hi instead of
// scanning a list. Four parallel arrays indexed by label - 1: the root of a
// node's child BST, the lo/hi links inside the BST the node belongs to, and
// the edge character. New children become BST leaves; there is no
// rebalancing. Capacity management matches BinaryTrie (exact reallocation,
// hints honored when they beat doubling).
class TernaryTrie {
public:
    using node_type = factor_index;

    explicit TernaryTrie(AllocAccount& account)
        : m_account(&account),
          m_child(TrackedAlloc<std::uint32_t>(&account)),
          m_lo(TrackedAlloc<std::uint32_t>(&account)),
          m_hi(TrackedAlloc<std::uint32_t>(&account)),
          m_char(TrackedAlloc<std::uint8_t>(&account)) {}

    node_type root() const { return 0; }
    factor_index label_of(node_type u) const { return u; }
    std::uint64_t size() const { return m_size; }

    std::optional<node_type> child_or_insert(node_type u, symbol c,
                                             factor_index new_label) {
        // new_label == 0 marks a lookup-only call: the caller guarantees
        // the child exists, so the insertion branches are unreachable.
        assert(new_label == 0 || new_label == m_size + 1);
        const std::uint8_t ec = to_byte(c);
        std::uint32_t head = u == 0 ? m_root_head : m_child[u - 1];
        if (head == 0) {
            assert(new_label != 0);
            append_node(ec);
            if (u == 0) {
                m_root_head = new_label;
            } else {
                m_child[u - 1] = new_label;
            }
            return std::nullopt;
        }
        std::uint32_t v = head;
        while (true) {
            const std::uint8_t vc = m_char[v - 1];
            if (vc == ec) return node_type(v);
            ++m_descent_steps;
            auto& branch = ec < vc ? m_lo[v - 1] : m_hi[v - 1];
            if (branch == 0) {
                assert(new_label != 0);
                // branch is revalidated below: append_node may reallocate
                const bool lo = ec < vc;
                append_node(ec);
                (lo ? m_lo[v - 1] : m_hi[v - 1]) = new_label;
                return std::nullopt;
            }
            v = branch;
        }
    }

    void reserve(std::uint64_t n) {
        if (n > m_capacity) grow_to(n);
    }

    void set_hint(SizeHintFn hint) { m_hint = std::move(hint); }

    BackendStats stats() const {
        return BackendStats{0, 0, m_account->live()};
    }

    std::uint64_t descent_steps() const { return m_descent_steps; }
    std::uint64_t capacity() const { return m_capacity; }

    // raw array views for structural checks, indexed by label - 1
    std::uint32_t child_raw(factor_index x) const { return m_child[x - 1]; }
    std::uint32_t lo_raw(factor_index x) const { return m_lo[x - 1]; }
    std::uint32_t hi_raw(factor_index x) const { return m_hi[x - 1]; }
    std::uint8_t char_raw(factor_index x) const { return m_char[x - 1]; }
    std::uint32_t root_head_raw() const { return m_root_head; }

private:
    void append_node(std::uint8_t ec) {
        if (m_size == m_capacity) grow();
        m_char[m_size] = ec;
        ++m_size;
    }

    void grow() {
        const std::uint64_t needed = m_size + 1;
        std::uint64_t new_cap = std::max<std::uint64_t>({2 * m_capacity, needed, 8});
        if (m_hint) {
            if (const auto h = m_hint();
                h && *h >= needed && *h <= 2 * m_capacity) {
                new_cap = *h;
            }
        }
        grow_to(new_cap);
    }

    template <typename T>
    void grow_array(tracked_vector<T>& v, std::uint64_t new_cap) {
        tracked_vector<T> nv(new_cap, T(0), TrackedAlloc<T>(m_account));
        std::copy(v.begin(), v.begin() + m_size, nv.begin());
        v = std::move(nv);
    }

    void grow_to(std::uint64_t new_cap) {
        grow_array(m_child, new_cap);
        grow_array(m_lo, new_cap);
        grow_array(m_hi, new_cap);
        grow_array(m_char, new_cap);
        m_capacity = new_cap;
    }

    AllocAccount* m_account;
    tracked_vector<std::uint32_t> m_child;
    tracked_vector<std::uint32_t> m_lo;
    tracked_vector<std::uint32_t> m_hi;
    tracked_vector<std::uint8_t> m_char;
    std::uint32_t m_root_head = 0;
    std::uint64_t m_size = 0;
    std::uint64_t m_capacity = 0;
    std::uint64_t m_descent_steps = 0;
    SizeHintFn m_hint;
};

} // namespace lzt
