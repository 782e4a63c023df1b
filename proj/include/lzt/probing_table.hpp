#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <utility>

#include <lzt/alloc_account.hpp>
#include <lzt/core.hpp>
#include <lzt/int_vector.hpp>

namespace lzt {

enum class Addressing : std::uint8_t {
    pow2,    // capacity is a power of two, slot = hash & (M-1)
    fitted,  // arbitrary capacity, slot = (hash * M) >> 64
};

// Open-addressing table with linear probing. Keys are packed into KeyBytes
// bytes per slot (5 for 40-bit trie keys, 8 for fingerprints), values are
// 32-bit, occupancy is one bit per slot. The load factor starts at 0.3 and
// is relaxed to 0.95 once a total-size hint announces how many entries are
// still to come; growth is eager, i.e. happens as soon as the entry count
// reaches floor(alpha * M) so the table never sits at its fill limit.
template <std::size_t KeyBytes, typename Hash>
class ProbingTable {
public:
    static_assert(KeyBytes >= 1 && KeyBytes <= 8);
    static constexpr std::uint64_t MIN_M = 16;

    ProbingTable(AllocAccount& account, Addressing mode, Hash hash = Hash{})
        : m_account(&account),
          m_mode(mode),
          m_hash(std::move(hash)),
          m_keys(TrackedAlloc<std::uint8_t>(&account)),
          m_values(TrackedAlloc<std::uint32_t>(&account)),
          m_occupied(account, 1) {
        allocate(MIN_M);
    }

    ProbingTable(ProbingTable&&) = default;
    ProbingTable& operator=(ProbingTable&&) = default;

    void set_hint(SizeHintFn hint) { m_hint = std::move(hint); }

    // Pre-size for an expected number of entries under the current load
    // factor. Never shrinks.
    void reserve(std::uint64_t expected_entries) {
        std::uint64_t target = ceil_div(expected_entries * m_alpha_den, m_alpha_num);
        if (m_mode == Addressing::pow2) target = ceil_pow2(target);
        if (target < MIN_M) target = MIN_M;
        if (target > m_M) rebuild(target);
    }

    // Returns the value stored under key, inserting new_value first if the
    // key was absent; second is true iff the insert happened.
    std::pair<std::uint32_t, bool> find_or_insert(std::uint64_t key,
                                                  std::uint32_t new_value) {
        std::uint64_t i = slot_of(m_hash(key));
        while (m_occupied.get(i)) {
            if (key_at(i) == key) return {m_values[i], false};
            ++m_collisions;
            i = next_slot(i);
        }
        place(i, key, new_value);
        ++m_entries;
        if (m_entries >= m_max_entries) grow();
        return {new_value, true};
    }

    std::optional<std::uint32_t> find(std::uint64_t key) const {
        std::uint64_t i = slot_of(m_hash(key));
        while (m_occupied.get(i)) {
            if (key_at(i) == key) return m_values[i];
            ++m_collisions;
            i = next_slot(i);
        }
        return std::nullopt;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::uint64_t i = 0; i < m_M; ++i) {
            if (m_occupied.get(i)) fn(key_at(i), m_values[i]);
        }
    }

    std::uint64_t size() const { return m_entries; }
    std::uint64_t capacity() const { return m_M; }
    std::uint64_t fill_limit() const { return m_max_entries; }
    std::uint64_t collisions() const { return m_collisions; }
    const Hash& hash_fn() const { return m_hash; }

private:
    static constexpr std::uint64_t max_key() {
        return KeyBytes == 8 ? ~std::uint64_t(0)
                             : (std::uint64_t(1) << (8 * KeyBytes)) - 1;
    }

    std::uint64_t slot_of(std::uint64_t hash) const {
        if (m_mode == Addressing::pow2) return hash & (m_M - 1);
        return std::uint64_t(((unsigned __int128)(hash)*m_M) >> 64);
    }

    std::uint64_t next_slot(std::uint64_t i) const {
        ++i;
        return i == m_M ? 0 : i;
    }

    std::uint64_t key_at(std::uint64_t i) const {
        std::uint64_t k = 0;
        const std::uint8_t* p = m_keys.data() + i * KeyBytes;
        for (std::size_t b = 0; b < KeyBytes; ++b) {
            k |= std::uint64_t(p[b]) << (8 * b);
        }
        return k;
    }

    void place(std::uint64_t i, std::uint64_t key, std::uint32_t value) {
        assert(key <= max_key());
        std::uint8_t* p = m_keys.data() + i * KeyBytes;
        for (std::size_t b = 0; b < KeyBytes; ++b) {
            p[b] = std::uint8_t(key >> (8 * b));
        }
        m_values[i] = value;
        m_occupied.set(i, 1);
    }

    void allocate(std::uint64_t M) {
        m_M = M;
        m_keys = tracked_vector<std::uint8_t>(M * KeyBytes, 0,
                                              TrackedAlloc<std::uint8_t>(m_account));
        m_values = tracked_vector<std::uint32_t>(M, 0,
                                                 TrackedAlloc<std::uint32_t>(m_account));
        PackedIntVector occ(*m_account, 1);
        occ.resize(M);
        m_occupied = std::move(occ);
        m_max_entries = M * m_alpha_num / m_alpha_den;
        m_entries = 0;
    }

    void rebuild(std::uint64_t new_M) {
        auto old_keys = std::move(m_keys);
        auto old_values = std::move(m_values);
        auto old_occ = std::move(m_occupied);
        const std::uint64_t old_M = m_M;
        allocate(new_M);
        // reinserts probe with fresh slots and do not count collisions
        for (std::uint64_t s = 0; s < old_M; ++s) {
            if (!old_occ.get(s)) continue;
            std::uint64_t k = 0;
            const std::uint8_t* p = old_keys.data() + s * KeyBytes;
            for (std::size_t b = 0; b < KeyBytes; ++b) {
                k |= std::uint64_t(p[b]) << (8 * b);
            }
            std::uint64_t i = slot_of(m_hash(k));
            while (m_occupied.get(i)) i = next_slot(i);
            place(i, k, old_values[s]);
            ++m_entries;
        }
    }

    // Called the moment the entry count reaches the fill limit. A pending
    // total-size hint, if any, decides between relaxing the load factor in
    // place, doubling, or (fitted mode) resizing to exactly fit the hint.
    void grow() {
        const std::optional<std::uint64_t> h =
            m_hint ? m_hint() : std::nullopt;
        std::uint64_t new_M = m_M;
        if (h) {
            if (m_mode == Addressing::fitted) {
                m_alpha_num = 19;
                m_alpha_den = 20;
                const std::uint64_t want = std::max(*h, m_entries + 1);
                new_M = ceil_div(want * 20, 19);
            } else {
                if (*h * 20 <= 19 * m_M) {
                    m_alpha_num = 19;
                    m_alpha_den = 20;
                } else if (*h * 20 <= 19 * 2 * m_M) {
                    m_alpha_num = 19;
                    m_alpha_den = 20;
                    new_M = 2 * m_M;
                } else {
                    new_M = 2 * m_M;
                }
            }
        } else {
            new_M = 2 * m_M;
        }
        while (new_M * m_alpha_num / m_alpha_den <= m_entries) new_M *= 2;
        if (new_M != m_M) {
            rebuild(new_M);
        } else {
            m_max_entries = m_M * m_alpha_num / m_alpha_den;
        }
    }

    AllocAccount* m_account;
    Addressing m_mode;
    Hash m_hash;
    tracked_vector<std::uint8_t> m_keys;
    tracked_vector<std::uint32_t> m_values;
    PackedIntVector m_occupied;
    std::uint64_t m_M = 0;
    std::uint64_t m_entries = 0;
    std::uint64_t m_max_entries = 0;
    std::uint64_t m_alpha_num = 3;
    std::uint64_t m_alpha_den = 10;
    mutable std::uint64_t m_collisions = 0;
    SizeHintFn m_hint;
};

} // namespace lzt
