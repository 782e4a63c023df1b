#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstring>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <lzt/core.hpp>
#include <lzt/resize_hint.hpp>

namespace lzt {

class MemorySource {
public:
    explicit MemorySource(std::span<const std::uint8_t> data) : m_data(data) {}

    std::size_t read(std::uint8_t* buf, std::size_t cap) {
        const std::size_t take = std::min(cap, m_data.size() - m_pos);
        if (take == 0) return 0;
        std::memcpy(buf, m_data.data() + m_pos, take);
        m_pos += take;
        return take;
    }

private:
    std::span<const std::uint8_t> m_data;
    std::size_t m_pos = 0;
};

class StreamSource {
public:
    explicit StreamSource(std::istream& in) : m_in(in) {}

    std::size_t read(std::uint8_t* buf, std::size_t cap) {
        m_in.read(reinterpret_cast<char*>(buf), std::streamsize(cap));
        return std::size_t(m_in.gcount());
    }

private:
    std::istream& m_in;
};

namespace detail {

inline constexpr std::size_t PARSE_CHUNK = std::size_t(1) << 16;

// Drives one full pass over the source. The per-step callback sees each
// symbol; consumed is advanced before the step so a growth hint fired from
// inside the trie sees the true remainder.
template <typename Source, typename Step>
void for_each_symbol(Source& src, std::uint64_t n, std::uint64_t& consumed,
                     Step&& step) {
    std::vector<std::uint8_t> buf(std::min<std::uint64_t>(PARSE_CHUNK, n));
    while (consumed < n) {
        const std::size_t want =
            std::size_t(std::min<std::uint64_t>(buf.size(), n - consumed));
        const std::size_t got = src.read(buf.data(), want);
        if (got == 0) {
            throw std::runtime_error("input ended before the declared length");
        }
        for (std::size_t i = 0; i < got; ++i) {
            ++consumed;
            step(to_symbol(buf[i]));
        }
    }
}

} // namespace detail

// LZ78 parse: repeatedly follow the longest known prefix down the trie; on
// the first unknown (node, symbol) pair, insert it, emit (node, symbol) and
// restart at the root. Factor x creates node x. The final factor has no
// extension symbol when the input ends mid-descent.
//
// The trie is pre-sized for the guaranteed factor minimum and receives a
// growth hint that extrapolates the final factor count once less than half
// of the input remains.
template <LzTrieBackend Trie, typename Source, typename Sink>
std::uint64_t factorize_lz78(Trie& trie, Source& src, std::uint64_t n,
                             Sink&& emit) {
    std::uint64_t consumed = 0;
    std::uint64_t z = 0;
    trie.reserve(initial_reserve(n));
    trie.set_hint([&]() -> std::optional<std::uint64_t> {
        const std::uint64_t r = n - consumed;
        if (2 * r >= n) return std::nullopt;
        return growth_estimate(n, r, z);
    });

    typename Trie::node_type current = trie.root();
    detail::for_each_symbol(src, n, consumed, [&](symbol c) {
        const auto child = trie.child_or_insert(current, c, factor_index(z + 1));
        if (child) {
            current = *child;
        } else {
            emit(Lz78Factor{trie.label_of(current), c});
            ++z;
            current = trie.root();
        }
    });
    if (trie.label_of(current) != 0) {
        emit(Lz78Factor{trie.label_of(current), std::nullopt});
        ++z;
    }
    trie.set_hint(SizeHintFn{});
    return z;
}

// LZW parse: the trie is seeded with one root child per symbol (labels
// 1..256); factor x then creates node 256 + x. A factor is emitted for the
// node reached when the next symbol has no child; that symbol is reprocessed
// from the root, where it always finds its seeded literal. Factors are codes:
// -c for the literal node of symbol c, y for the node created by factor y.
// The final factor may name an existing node exactly (no new node).
template <LzTrieBackend Trie, typename Source, typename Sink>
std::uint64_t factorize_lzw(Trie& trie, Source& src, std::uint64_t n,
                            Sink&& emit) {
    if (n == 0) return 0;
    std::uint64_t consumed = 0;
    std::uint64_t z = 0;
    trie.reserve(initial_reserve(n) + SIGMA);
    trie.set_hint([&]() -> std::optional<std::uint64_t> {
        const std::uint64_t r = n - consumed;
        if (2 * r >= n) return std::nullopt;
        return growth_estimate(n, r, z) + SIGMA;
    });

    for (std::uint32_t c = 1; c <= SIGMA; ++c) {
        const auto seeded = trie.child_or_insert(trie.root(), symbol(c), c);
        assert(!seeded);
        (void)seeded;
    }

    const auto code_of = [&](factor_index label) {
        return label <= SIGMA ? LzwFactor{-std::int64_t(label)}
                              : LzwFactor{std::int64_t(label - SIGMA)};
    };

    typename Trie::node_type current = trie.root();
    detail::for_each_symbol(src, n, consumed, [&](symbol c) {
        const factor_index next_label = factor_index(SIGMA + z + 1);
        const auto child = trie.child_or_insert(current, c, next_label);
        if (child) {
            current = *child;
        } else {
            emit(code_of(trie.label_of(current)));
            ++z;
            const auto lit = trie.child_or_insert(trie.root(), c, 0);
            assert(lit);
            current = *lit;
        }
    });
    if (trie.label_of(current) != 0) {
        emit(code_of(trie.label_of(current)));
        ++z;
    }
    trie.set_hint(SizeHintFn{});
    return z;
}

// Rebuilds factor texts from LZ78 factors as they stream in. feed returns
// false on a reference to a not-yet-existing factor.
class Lz78Expander {
public:
    Lz78Expander() {
        m_par.push_back(0);
        m_ext.push_back(0);
        m_len.push_back(0);
    }

    // length of factor y's text (root: 0)
    std::uint64_t len(factor_index y) const { return m_len[y]; }
    std::uint64_t factors() const { return m_par.size() - 1; }

    bool feed(const Lz78Factor& f, std::vector<std::uint8_t>& out) {
        const factor_index x = factor_index(m_par.size());
        if (f.ref >= x) return false;
        m_scratch.clear();
        for (factor_index cur = f.ref; cur != 0; cur = m_par[cur]) {
            m_scratch.push_back(m_ext[cur]);
        }
        out.insert(out.end(), m_scratch.rbegin(), m_scratch.rend());
        if (f.ext) out.push_back(to_byte(*f.ext));
        m_par.push_back(f.ref);
        m_ext.push_back(f.ext ? to_byte(*f.ext) : 0);
        m_len.push_back(m_len[f.ref] + (f.ext ? 1 : 0));
        return true;
    }

private:
    std::vector<factor_index> m_par;
    std::vector<std::uint8_t> m_ext;
    std::vector<std::uint64_t> m_len;
    std::vector<std::uint8_t> m_scratch;
};

// Rebuilds factor texts from LZW codes as they stream in. Factor x with code
// y expands to text(y's node) = text(F_y) + first char of F_{y+1}; when
// y = x - 1 that first char is not known yet but equals F_y's own first
// char. feed returns false on a reference to a not-yet-existing factor.
class LzwExpander {
public:
    LzwExpander() {
        m_par.push_back(0);
        m_last.push_back(0);
        m_first.push_back(0);
        m_len.push_back(0);
    }

    std::uint64_t len(factor_index x) const { return m_len[x]; }
    std::uint64_t factors() const { return m_par.size() - 1; }

    bool feed(const LzwFactor& f, std::vector<std::uint8_t>& out) {
        const factor_index x = factor_index(m_par.size());
        std::uint8_t last, first;
        factor_index par;
        if (f.is_literal()) {
            par = 0;
            last = first = to_byte(f.literal());
        } else {
            const factor_index y = f.ref();
            if (y == 0 || y >= x) return false;
            par = y;
            last = y + 1 < x ? m_first[y + 1] : m_first[y];
            first = m_first[y];
        }
        m_par.push_back(par);
        m_last.push_back(last);
        m_first.push_back(first);
        m_len.push_back(m_len[par] + 1);
        m_scratch.clear();
        for (factor_index cur = x; cur != 0; cur = m_par[cur]) {
            m_scratch.push_back(m_last[cur]);
        }
        out.insert(out.end(), m_scratch.rbegin(), m_scratch.rend());
        return true;
    }

private:
    std::vector<factor_index> m_par;
    std::vector<std::uint8_t> m_last;
    std::vector<std::uint8_t> m_first;
    std::vector<std::uint64_t> m_len;
    std::vector<std::uint8_t> m_scratch;
};

// In-memory convenience wrappers, mainly for tests and verification.

template <LzTrieBackend Trie>
std::vector<Lz78Factor> factorize_lz78_mem(Trie& trie,
                                           std::span<const std::uint8_t> in) {
    std::vector<Lz78Factor> fs;
    MemorySource src(in);
    factorize_lz78(trie, src, in.size(),
                   [&](const Lz78Factor& f) { fs.push_back(f); });
    return fs;
}

template <LzTrieBackend Trie>
std::vector<LzwFactor> factorize_lzw_mem(Trie& trie,
                                         std::span<const std::uint8_t> in) {
    std::vector<LzwFactor> fs;
    MemorySource src(in);
    factorize_lzw(trie, src, in.size(),
                  [&](const LzwFactor& f) { fs.push_back(f); });
    return fs;
}

inline std::vector<std::uint8_t> expand_lz78(const std::vector<Lz78Factor>& fs) {
    std::vector<std::uint8_t> out;
    Lz78Expander ex;
    for (const auto& f : fs) {
        if (!ex.feed(f, out)) throw std::runtime_error("dangling factor reference");
    }
    return out;
}

inline std::vector<std::uint8_t> expand_lzw(const std::vector<LzwFactor>& fs) {
    std::vector<std::uint8_t> out;
    LzwExpander ex;
    for (const auto& f : fs) {
        if (!ex.feed(f, out)) throw std::runtime_error("dangling factor reference");
    }
    return out;
}

// Parse-then-check: factorize, expand the factors again and compare against
// the input. A mismatch means the trie conflated two distinct strings (only
// possible for fingerprint-based backends) and the parse is unusable.
template <typename FactorT>
struct VerifiedParse {
    std::vector<FactorT> factors;
    bool collision_detected = false;
};

template <LzTrieBackend Trie>
VerifiedParse<Lz78Factor> factorize_lz78_verified(
    Trie& trie, std::span<const std::uint8_t> in) {
    VerifiedParse<Lz78Factor> r;
    r.factors = factorize_lz78_mem(trie, in);
    std::vector<std::uint8_t> back;
    Lz78Expander ex;
    for (const auto& f : r.factors) {
        if (!ex.feed(f, back)) {
            r.collision_detected = true;
            return r;
        }
    }
    r.collision_detected = !(back.size() == in.size() &&
                             std::equal(back.begin(), back.end(), in.begin()));
    return r;
}

template <LzTrieBackend Trie>
VerifiedParse<LzwFactor> factorize_lzw_verified(
    Trie& trie, std::span<const std::uint8_t> in) {
    VerifiedParse<LzwFactor> r;
    r.factors = factorize_lzw_mem(trie, in);
    std::vector<std::uint8_t> back;
    LzwExpander ex;
    for (const auto& f : r.factors) {
        if (!ex.feed(f, back)) {
            r.collision_detected = true;
            return r;
        }
    }
    r.collision_detected = !(back.size() == in.size() &&
                             std::equal(back.begin(), back.end(), in.begin()));
    return r;
}

} // namespace lzt
