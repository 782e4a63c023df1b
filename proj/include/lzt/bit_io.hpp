#pragma once

#include <cassert>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>

namespace lzt {

// MSB-first bit writer over a byte stream. The final partial byte is padded
// with zero bits on flush.
class BitSink {
public:
    explicit BitSink(std::ostream& out) : m_out(out) {}

    void write_bits(std::uint64_t value, std::uint32_t count) {
        assert(count <= 64);
        if (count == 0) return;
        assert(count == 64 || (value >> count) == 0);
        if (count > 32) {
            write_bits(value >> 32, count - 32);
            write_bits(value & 0xFFFFFFFFull, 32);
            return;
        }
        m_acc = (m_acc << count) | value;
        m_pending += count;
        m_written += count;
        while (m_pending >= 8) {
            m_pending -= 8;
            m_out.put(char(std::uint8_t(m_acc >> m_pending)));
        }
    }

    // Flushes a trailing partial byte, zero-padded. Call exactly once.
    void flush() {
        if (m_pending > 0) {
            m_out.put(char(std::uint8_t(m_acc << (8 - m_pending))));
            m_written += 8 - m_pending;
            m_pending = 0;
        }
        m_acc = 0;
    }

    std::uint64_t bits_written() const { return m_written; }

private:
    std::ostream& m_out;
    std::uint64_t m_acc = 0;
    std::uint32_t m_pending = 0;
    std::uint64_t m_written = 0;
};

// MSB-first bit reader; read_bits returns nothing when the underlying stream
// runs out before count bits are available.
class BitSource {
public:
    explicit BitSource(std::istream& in) : m_in(in) {}

    std::optional<std::uint64_t> read_bits(std::uint32_t count) {
        assert(count <= 64);
        if (count == 0) return std::uint64_t(0);
        if (count > 32) {
            const auto hi = read_bits(count - 32);
            if (!hi) return std::nullopt;
            const auto lo = read_bits(32);
            if (!lo) return std::nullopt;
            return (*hi << 32) | *lo;
        }
        while (m_pending < count) {
            const int byte = m_in.get();
            if (byte == std::char_traits<char>::eof()) return std::nullopt;
            m_acc = (m_acc << 8) | std::uint64_t(std::uint8_t(byte));
            m_pending += 8;
        }
        m_pending -= count;
        const std::uint64_t v = (m_acc >> m_pending)
            & (count == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << count) - 1);
        return v;
    }

private:
    std::istream& m_in;
    std::uint64_t m_acc = 0;
    std::uint32_t m_pending = 0;
};

} // namespace lzt
