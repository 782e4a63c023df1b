#pragma once

#include <cassert>
#include <cstdint>

#include <lzt/alloc_account.hpp>

namespace lzt {

// Fixed-width packed integer array (width 1..64), backed by 64-bit words.
// Used by the compact trie for its quotient/value/flag arrays.
class PackedIntVector {
public:
    PackedIntVector(AllocAccount& account, std::uint32_t width)
        : m_words(TrackedAlloc<std::uint64_t>(&account)), m_width(width) {
        assert(width >= 1 && width <= 64);
    }

    void resize(std::uint64_t n) {
        m_size = n;
        m_words.assign(ceil_words(n * m_width), 0);
    }

    void clear() {
        m_size = 0;
        m_words.clear();
        m_words.shrink_to_fit();
    }

    std::uint64_t get(std::uint64_t i) const {
        assert(i < m_size);
        const std::uint64_t pos = i * m_width;
        const std::uint64_t word = pos >> 6;
        const std::uint32_t off = pos & 63;
        std::uint64_t v = m_words[word] >> off;
        if (off + m_width > 64) {
            v |= m_words[word + 1] << (64 - off);
        }
        return v & mask();
    }

    void set(std::uint64_t i, std::uint64_t v) {
        assert(i < m_size);
        assert((v & ~mask()) == 0);
        const std::uint64_t pos = i * m_width;
        const std::uint64_t word = pos >> 6;
        const std::uint32_t off = pos & 63;
        m_words[word] = (m_words[word] & ~(mask() << off)) | (v << off);
        if (off + m_width > 64) {
            const std::uint32_t hi = off + m_width - 64;
            m_words[word + 1] = (m_words[word + 1] & ~((std::uint64_t(1) << hi) - 1))
                              | (v >> (64 - off));
        }
    }

    std::uint64_t size() const { return m_size; }
    std::uint32_t width() const { return m_width; }
    std::uint64_t bits() const { return m_size * m_width; }

private:
    static std::uint64_t ceil_words(std::uint64_t bits) { return (bits + 63) >> 6; }

    std::uint64_t mask() const {
        return m_width == 64 ? ~std::uint64_t(0)
                             : (std::uint64_t(1) << m_width) - 1;
    }

    tracked_vector<std::uint64_t> m_words;
    std::uint32_t m_width;
    std::uint64_t m_size = 0;
};

} // namespace lzt
