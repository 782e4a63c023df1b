#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>

#include <lzt/alloc_account.hpp>
#include <lzt/core.hpp>

namespace lzt {

// First-child / next-sibling trie. Three parallel arrays indexed by
// label - 1: the head of a node's child list, the next sibling in that list,
// and the edge character. Sibling lists are kept in insertion order with new
// children appended at the tail. Capacity is managed manually: arrays are
// grown by exact reallocation, honoring a pending total-size hint when it
// saves memory over plain doubling.
class BinaryTrie {
public:
    using node_type = factor_index;

    explicit BinaryTrie(AllocAccount& account)
        : m_account(&account),
          m_first_child(TrackedAlloc<std::uint32_t>(&account)),
          m_next_sibling(TrackedAlloc<std::uint32_t>(&account)),
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
        std::uint32_t head = u == 0 ? m_root_first_child : m_first_child[u - 1];
        if (head == 0) {
            assert(new_label != 0);
            append_node(ec);
            if (u == 0) {
                m_root_first_child = new_label;
            } else {
                m_first_child[u - 1] = new_label;
            }
            return std::nullopt;
        }
        std::uint32_t v = head;
        while (true) {
            if (m_char[v - 1] == ec) return node_type(v);
            // a visited non-matching sibling is the list analogue of a
            // hash table collision
            ++m_sibling_steps;
            const std::uint32_t next = m_next_sibling[v - 1];
            if (next == 0) {
                assert(new_label != 0);
                append_node(ec);
                m_next_sibling[v - 1] = new_label;
                return std::nullopt;
            }
            v = next;
        }
    }

    void reserve(std::uint64_t n) {
        if (n > m_capacity) grow_to(n);
    }

    void set_hint(SizeHintFn hint) { m_hint = std::move(hint); }

    BackendStats stats() const {
        return BackendStats{0, 0, m_account->live()};
    }

    std::uint64_t sibling_steps() const { return m_sibling_steps; }
    std::uint64_t capacity() const { return m_capacity; }

    // raw array views for structural checks, indexed by label - 1
    std::uint32_t first_child_raw(factor_index x) const { return m_first_child[x - 1]; }
    std::uint32_t next_sibling_raw(factor_index x) const { return m_next_sibling[x - 1]; }
    std::uint8_t char_raw(factor_index x) const { return m_char[x - 1]; }
    std::uint32_t root_first_child_raw() const { return m_root_first_child; }

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
        grow_array(m_first_child, new_cap);
        grow_array(m_next_sibling, new_cap);
        grow_array(m_char, new_cap);
        m_capacity = new_cap;
    }

    AllocAccount* m_account;
    tracked_vector<std::uint32_t> m_first_child;
    tracked_vector<std::uint32_t> m_next_sibling;
    tracked_vector<std::uint8_t> m_char;
    std::uint32_t m_root_first_child = 0;
    std::uint64_t m_size = 0;
    std::uint64_t m_capacity = 0;
    std::uint64_t m_sibling_steps = 0;
    SizeHintFn m_hint;
};

} // namespace lzt
