#pragma once

#include <cassert>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <lzt/bit_io.hpp>
#include <lzt/core.hpp>
#include <lzt/factorize.hpp>

namespace lzt {

// Archive layout: 22 header bytes, then the bit-packed factor stream, zero
// padded to a byte boundary. Header fields are magic "LZT1", one format
// byte, the input length as 8 little-endian bytes, the backend id byte and
// the seed as 8 little-endian bytes. Backend id and seed are informational:
// decoding needs neither.
inline constexpr char ARCHIVE_MAGIC[4] = {'L', 'Z', 'T', '1'};
inline constexpr std::size_t HEADER_BYTES = 22;

struct ArchiveHeader {
    Format format = Format::lz78;
    std::uint64_t n = 0;
    std::uint8_t backend_id = 0;
    std::uint64_t seed = 1;
};

class decode_error : public std::runtime_error {
public:
    enum class Kind {
        bad_header,       // missing magic, unknown format, short header
        truncated,        // payload ends before the last factor is complete
        dangling_ref,     // factor references a factor that does not exist yet
        length_mismatch,  // factor stream disagrees with the declared length
    };

    decode_error(Kind kind, const std::string& what)
        : std::runtime_error(what), m_kind(kind) {}

    Kind kind() const { return m_kind; }

private:
    Kind m_kind;
};

inline void write_header(std::ostream& out, const ArchiveHeader& h) {
    out.write(ARCHIVE_MAGIC, 4);
    out.put(char(std::uint8_t(h.format)));
    for (int i = 0; i < 8; ++i) out.put(char(std::uint8_t(h.n >> (8 * i))));
    out.put(char(h.backend_id));
    for (int i = 0; i < 8; ++i) out.put(char(std::uint8_t(h.seed >> (8 * i))));
}

inline ArchiveHeader read_header(std::istream& in) {
    std::uint8_t buf[HEADER_BYTES];
    in.read(reinterpret_cast<char*>(buf), HEADER_BYTES);
    if (in.gcount() != std::streamsize(HEADER_BYTES)) {
        throw decode_error(decode_error::Kind::bad_header,
                           "archive header incomplete");
    }
    if (std::memcmp(buf, ARCHIVE_MAGIC, 4) != 0) {
        throw decode_error(decode_error::Kind::bad_header,
                           "not an LZT archive (bad magic)");
    }
    if (buf[4] > 1) {
        throw decode_error(decode_error::Kind::bad_header,
                           "unknown format byte");
    }
    ArchiveHeader h;
    h.format = Format(buf[4]);
    h.n = 0;
    for (int i = 0; i < 8; ++i) h.n |= std::uint64_t(buf[5 + i]) << (8 * i);
    h.backend_id = buf[13];
    h.seed = 0;
    for (int i = 0; i < 8; ++i) h.seed |= std::uint64_t(buf[14 + i]) << (8 * i);
    return h;
}

// LZ78 factor x is coded as its reference in ceil(lg x) bits (the first
// factor can only reference the root, so it takes zero bits) followed by the
// raw extension byte. The final factor omits the byte when the parse ended
// mid-descent; the decoder recognizes this because the factor's reference
// alone completes the declared length.
class Lz78Encoder {
public:
    explicit Lz78Encoder(BitSink& sink) : m_sink(sink) {}

    void put(const Lz78Factor& f) {
        assert(!m_final_seen);
        ++m_count;
        assert(f.ref < m_count);
        m_sink.write_bits(f.ref, bit_width_u64(m_count - 1));
        if (f.ext) {
            m_sink.write_bits(to_byte(*f.ext), 8);
        } else {
            m_final_seen = true;
        }
    }

    std::uint64_t factors() const { return m_count; }

private:
    BitSink& m_sink;
    std::uint64_t m_count = 0;
    bool m_final_seen = false;
};

// LZW factor x is one code in ceil(lg(256 + x - 1)) bits: values below 256
// are literals (the raw byte), value 256 + y - 1 references factor y.
class LzwEncoder {
public:
    explicit LzwEncoder(BitSink& sink) : m_sink(sink) {}

    void put(const LzwFactor& f) {
        ++m_count;
        const std::uint64_t wire =
            f.is_literal() ? std::uint64_t(f.literal() - 1)
                           : std::uint64_t(SIGMA + f.ref() - 1);
        assert(wire <= SIGMA + m_count - 2);
        m_sink.write_bits(wire, bit_width_u64(SIGMA + m_count - 2));
    }

    std::uint64_t factors() const { return m_count; }

private:
    BitSink& m_sink;
    std::uint64_t m_count = 0;
};

// Decodes factors until exactly n output bytes are produced; out is called
// once per factor with that factor's text. Returns the factor count.
template <typename ByteSink>
std::uint64_t decode_lz78(BitSource& bits, std::uint64_t n, ByteSink&& out) {
    Lz78Expander ex;
    std::vector<std::uint8_t> buf;
    std::uint64_t chars = 0;
    std::uint64_t x = 0;
    while (chars < n) {
        ++x;
        const auto ref = bits.read_bits(bit_width_u64(x - 1));
        if (!ref) {
            throw decode_error(decode_error::Kind::truncated,
                               "payload ends inside factor " + std::to_string(x));
        }
        if (*ref >= x) {
            throw decode_error(decode_error::Kind::dangling_ref,
                               "factor " + std::to_string(x) + " references " +
                                   std::to_string(*ref));
        }
        Lz78Factor f{factor_index(*ref), std::nullopt};
        const std::uint64_t base_len = ex.len(f.ref);
        if (chars + base_len == n) {
            // extension-less final factor
        } else if (chars + base_len < n) {
            const auto ext = bits.read_bits(8);
            if (!ext) {
                throw decode_error(decode_error::Kind::truncated,
                                   "payload ends inside factor " +
                                       std::to_string(x));
            }
            f.ext = to_symbol(std::uint8_t(*ext));
        } else {
            throw decode_error(decode_error::Kind::length_mismatch,
                               "factor stream overshoots the declared length");
        }
        buf.clear();
        const bool ok = ex.feed(f, buf);
        assert(ok);
        (void)ok;
        out(buf.data(), buf.size());
        chars += buf.size();
    }
    return x;
}

template <typename ByteSink>
std::uint64_t decode_lzw(BitSource& bits, std::uint64_t n, ByteSink&& out) {
    LzwExpander ex;
    std::vector<std::uint8_t> buf;
    std::uint64_t chars = 0;
    std::uint64_t x = 0;
    while (chars < n) {
        ++x;
        const auto wire = bits.read_bits(bit_width_u64(SIGMA + x - 2));
        if (!wire) {
            throw decode_error(decode_error::Kind::truncated,
                               "payload ends inside factor " + std::to_string(x));
        }
        if (*wire > SIGMA + x - 2) {
            throw decode_error(decode_error::Kind::dangling_ref,
                               "factor " + std::to_string(x) + " references " +
                                   std::to_string(*wire - SIGMA + 1));
        }
        const LzwFactor f = *wire < SIGMA
                                ? LzwFactor{-std::int64_t(*wire + 1)}
                                : LzwFactor{std::int64_t(*wire - SIGMA + 1)};
        buf.clear();
        const bool ok = ex.feed(f, buf);
        assert(ok);
        (void)ok;
        out(buf.data(), buf.size());
        chars += buf.size();
        if (chars > n) {
            throw decode_error(decode_error::Kind::length_mismatch,
                               "factor stream overshoots the declared length");
        }
    }
    return x;
}

} // namespace lzt
