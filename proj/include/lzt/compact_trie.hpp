#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include <lzt/alloc_account.hpp>
#include <lzt/core.hpp>
#include <lzt/hash_fn.hpp>
#include <lzt/int_vector.hpp>

namespace lzt {

// Compact hash trie. An edge (u, c) becomes the key 256 * label(u) + (c - 1)
// over the universe [0 .. m * 256) where m is the current fill limit. A drawn
// bijection h spreads keys over a range below 2 * m * 256; a key is stored
// split into its home address h(key) mod M and its quotient h(key) / M, and
// only the quotient is kept (incremented by one, so that a stored 0 can mark
// an empty slot). A slot therefore costs about lg(2 * m * 256 / M) bits
// instead of a full key.
//
// Layout: clusters (maximal ranges of occupied slots) keep their entries
// sorted by home address, and two bit vectors recover which entry belongs to
// which home. V is indexed by address: V[j] = 1 iff some stored key has home
// j (which implies slot j itself is occupied). C is indexed by slot:
// C[s] = 1 iff the entry at s starts a run, i.e. a maximal group of entries
// sharing one home. The i-th run of a cluster then has as its home the i-th
// set bit of V at or after the cluster start, which makes every key
// recoverable via the inverse bijection. Inserting into a cluster shifts its
// tail one slot forward; quotients, values and C bits move together, V bits
// never move.
//
// Growth is eager: the moment the entry count reaches m the table is
// rebuilt, because lookups of children of the newest node must stay inside
// the key universe. Rebuilds always redraw the bijection since the universe
// scales with m. A pending total-size hint can instead relax the load factor
// from 0.3 to 0.95, with or without doubling M, exactly as in ProbingTable.
//
// collisions counts slots inspected while locating a key: backward steps to
// the cluster start, slots passed while walking to the key's run, and failed
// quotient comparisons inside it. Work done during rebuilds is not counted.
class CompactTrie {
public:
    using node_type = factor_index;

    static constexpr std::uint64_t MIN_M = 32;

    CompactTrie(AllocAccount& account, HashFamily family, std::uint64_t seed)
        : m_account(&account),
          m_family(family),
          m_rng(seed),
          m_quot(account, 1),
          m_val(account, 1),
          m_V(account, 1),
          m_C(account, 1) {
        build_fresh(MIN_M);
    }

    node_type root() const { return 0; }
    factor_index label_of(node_type u) const { return u; }
    std::uint64_t size() const { return m_entries; }

    std::optional<node_type> child_or_insert(node_type u, symbol c,
                                             factor_index new_label) {
        const std::uint64_t key = (std::uint64_t(u) << 8) | to_byte(c);
        assert(key < m_u);
        const auto [value, inserted] = find_or_insert(key, new_label);
        if (inserted) return std::nullopt;
        return node_type(value);
    }

    void reserve(std::uint64_t n) {
        std::uint64_t target =
            ceil_pow2(ceil_div(n * m_alpha_den, m_alpha_num));
        if (target < MIN_M) target = MIN_M;
        if (target > m_M) rebuild(target);
    }

    void set_hint(SizeHintFn hint) { m_hint = std::move(hint); }

    BackendStats stats() const {
        return BackendStats{m_collisions, m_M, m_account->live()};
    }

    // audit: replays every stored (key, child label) pair from quotients,
    // V and C alone
    template <typename Fn>
    void for_each(Fn&& fn) const {
        recover(m_quot, m_val, m_V, m_C, m_M, m_h, m_entries, fn);
    }

    std::uint64_t capacity() const { return m_M; }
    std::uint64_t fill_limit() const { return m_m; }
    std::uint64_t universe() const { return m_u; }
    std::uint32_t quotient_width() const { return m_quot.width(); }
    std::uint32_t value_width() const { return m_val.width(); }
    std::uint64_t collisions() const { return m_collisions; }
    const KeyBijection& bijection() const { return m_h; }

    // exact structure size: M * (quotient width + value width + 2) bits
    std::uint64_t total_bits() const {
        return m_quot.bits() + m_val.bits() + m_V.bits() + m_C.bits();
    }

private:
    std::uint64_t next(std::uint64_t s) const { return (s + 1) & (m_M - 1); }
    std::uint64_t prev(std::uint64_t s) const { return (s - 1) & (m_M - 1); }
    bool empty_slot(std::uint64_t s) const { return m_quot.get(s) == 0; }

    void note_collisions(std::uint64_t k) {
        if (m_counting) m_collisions += k;
    }

    std::pair<std::uint32_t, bool> find_or_insert(std::uint64_t key,
                                                  std::uint32_t new_value) {
        const std::uint64_t hv = m_h.forward(key);
        const std::uint64_t j = hv & (m_M - 1);
        const std::uint64_t stored_q = (hv >> m_k) + 1;

        if (empty_slot(j)) {
            assert(m_V.get(j) == 0);
            write_entry(j, stored_q, new_value, /*run_start=*/true);
            m_V.set(j, 1);
            finish_insert();
            return {new_value, true};
        }

        // backscan to the cluster start, counting used homes on the way
        std::uint64_t cs = j;
        std::uint64_t t = 0;
        while (!empty_slot(prev(cs))) {
            cs = prev(cs);
            t += m_V.get(cs);
            note_collisions(1);
        }

        if (m_V.get(j) == 0) {
            // no run for home j yet; splice a fresh one after the t runs
            // whose homes precede j
            const std::uint64_t ins = run_start_slot(cs, t);
            insert_at(ins, stored_q, new_value, /*run_start=*/true);
            m_V.set(j, 1);
            finish_insert();
            return {new_value, true};
        }

        // home j is in use: its run is number t + 1 within the cluster
        std::uint64_t s = run_start_slot(cs, t);
        while (true) {
            if (m_quot.get(s) == stored_q) {
                return {std::uint32_t(m_val.get(s) + 1), false};
            }
            note_collisions(1);
            const std::uint64_t ns = next(s);
            if (empty_slot(ns) || m_C.get(ns) == 1) {
                insert_at(ns, stored_q, new_value, /*run_start=*/false);
                finish_insert();
                return {new_value, true};
            }
            s = ns;
        }
    }

    // Slot of the (t + 1)-th run start in the cluster beginning at cs, or
    // the empty slot one past the cluster end if it has only t runs.
    std::uint64_t run_start_slot(std::uint64_t cs, std::uint64_t t) {
        std::uint64_t s = cs;
        std::uint64_t seen = 0;
        while (true) {
            if (empty_slot(s)) return s;
            if (m_C.get(s) == 1) {
                ++seen;
                if (seen == t + 1) return s;
            }
            note_collisions(1);
            s = next(s);
        }
    }

    void write_entry(std::uint64_t s, std::uint64_t stored_q,
                     std::uint32_t value, bool run_start) {
        m_quot.set(s, stored_q);
        m_val.set(s, value - 1);
        m_C.set(s, run_start ? 1 : 0);
    }

    void insert_at(std::uint64_t ins, std::uint64_t stored_q,
                   std::uint32_t value, bool run_start) {
        if (!empty_slot(ins)) shift_forward(ins);
        write_entry(ins, stored_q, value, run_start);
    }

    // Moves the occupied block starting at ins one slot forward into the
    // first empty slot after it. Quotients, values and C travel together.
    void shift_forward(std::uint64_t ins) {
        std::uint64_t e = ins;
        while (!empty_slot(e)) e = next(e);
        while (e != ins) {
            const std::uint64_t p = prev(e);
            m_quot.set(e, m_quot.get(p));
            m_val.set(e, m_val.get(p));
            m_C.set(e, m_C.get(p));
            e = p;
        }
    }

    void finish_insert() {
        ++m_entries;
        if (m_entries >= m_m) grow();
    }

    void grow() {
        const std::optional<std::uint64_t> h =
            m_hint ? m_hint() : std::nullopt;
        std::uint64_t new_M = m_M;
        if (h) {
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
        } else {
            new_M = 2 * m_M;
        }
        while (new_M * m_alpha_num / m_alpha_den <= m_entries) new_M *= 2;
        rebuild(new_M);
    }

    // Tears the table down to (key, value) pairs via the inverse bijection
    // and rebuilds it with the new geometry and a freshly drawn bijection.
    void rebuild(std::uint64_t new_M) {
        auto old_quot = std::move(m_quot);
        auto old_val = std::move(m_val);
        auto old_V = std::move(m_V);
        auto old_C = std::move(m_C);
        const std::uint64_t old_M = m_M;
        const KeyBijection old_h = m_h;
        const std::uint64_t old_entries = m_entries;

        build_fresh(new_M);
        assert(m_m > old_entries);

        m_counting = false;
        recover(old_quot, old_val, old_V, old_C, old_M, old_h, old_entries,
                [&](std::uint64_t key, std::uint32_t value) {
                    assert(key < m_u);
                    const auto r = find_or_insert(key, value);
                    assert(r.second);
                    (void)r;
                });
        m_counting = true;
        assert(m_entries == old_entries);
    }

    void build_fresh(std::uint64_t M) {
        assert(M >= MIN_M && (M & (M - 1)) == 0);
        m_M = M;
        m_k = bit_width_u64(M) - 1;
        m_m = M * m_alpha_num / m_alpha_den;
        m_u = m_m * SIGMA;
        m_h = KeyBijection::draw(m_u, m_family, m_rng);
        const std::uint64_t maxq = (m_h.range_end() - 1) >> m_k;
        // with a prime modulus the +1 sentinel never widens the field for
        // this geometry; a power-of-two range (xorshift) pays one extra bit
        assert(m_family != HashFamily::lcg ||
               bit_width_u64(maxq + 1) == bit_width_u64(maxq));
        const std::uint32_t q_w = bit_width_u64(maxq + 1);
        const std::uint32_t v_w = bit_width_u64(m_m - 1);

        PackedIntVector quot(*m_account, q_w);
        quot.resize(M);
        PackedIntVector val(*m_account, v_w);
        val.resize(M);
        PackedIntVector V(*m_account, 1);
        V.resize(M);
        PackedIntVector C(*m_account, 1);
        C.resize(M);
        m_quot = std::move(quot);
        m_val = std::move(val);
        m_V = std::move(V);
        m_C = std::move(C);
        m_entries = 0;
    }

    template <typename Fn>
    static void recover(const PackedIntVector& quot, const PackedIntVector& val,
                        const PackedIntVector& V, const PackedIntVector& C,
                        std::uint64_t M, const KeyBijection& h,
                        std::uint64_t entries, Fn&& fn) {
        if (entries == 0) return;
        const auto nxt = [M](std::uint64_t s) { return (s + 1) & (M - 1); };
        const auto prv = [M](std::uint64_t s) { return (s - 1) & (M - 1); };
        // start at a cluster boundary so run / home alignment is known
        std::uint64_t s0 = M;
        for (std::uint64_t s = 0; s < M; ++s) {
            if (quot.get(s) != 0 && quot.get(prv(s)) == 0) {
                s0 = s;
                break;
            }
        }
        assert(s0 < M);
        std::uint64_t s = s0;
        std::uint64_t av = s0;  // address cursor: next candidate home
        std::uint64_t home = 0;
        std::uint64_t remaining = entries;
        while (remaining > 0) {
            if (quot.get(s) == 0) {
                s = nxt(s);
                av = s;
                continue;
            }
            if (C.get(s) == 1) {
                while (V.get(av) == 0) av = nxt(av);
                home = av;
                av = nxt(av);
            }
            const std::uint64_t hv = (quot.get(s) - 1) * M + home;
            fn(h.inverse(hv), std::uint32_t(val.get(s) + 1));
            --remaining;
            s = nxt(s);
        }
    }

    AllocAccount* m_account;
    HashFamily m_family;
    std::mt19937_64 m_rng;
    PackedIntVector m_quot;
    PackedIntVector m_val;
    PackedIntVector m_V;
    PackedIntVector m_C;
    KeyBijection m_h;
    std::uint64_t m_M = 0;
    std::uint32_t m_k = 0;
    std::uint64_t m_m = 0;
    std::uint64_t m_u = 0;
    std::uint64_t m_entries = 0;
    std::uint64_t m_alpha_num = 3;
    std::uint64_t m_alpha_den = 10;
    std::uint64_t m_collisions = 0;
    bool m_counting = true;
    SizeHintFn m_hint;
};

} // namespace lzt
