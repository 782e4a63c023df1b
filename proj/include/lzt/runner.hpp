#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include <lzt/alloc_account.hpp>
#include <lzt/binary_trie.hpp>
#include <lzt/coder.hpp>
#include <lzt/compact_trie.hpp>
#include <lzt/core.hpp>
#include <lzt/factorize.hpp>
#include <lzt/hash_trie.hpp>
#include <lzt/rolling_trie.hpp>
#include <lzt/ternary_trie.hpp>

namespace lzt {

enum class BackendId : std::uint8_t {
    binary = 0,
    ternary = 1,
    hash = 2,
    hash_plus = 3,
    cht = 4,
    rolling = 5,
    rolling_plus = 6,
};

inline constexpr BackendId ALL_BACKENDS[] = {
    BackendId::binary,  BackendId::ternary, BackendId::hash,
    BackendId::hash_plus, BackendId::cht,   BackendId::rolling,
    BackendId::rolling_plus,
};

inline const char* backend_name(BackendId id) {
    switch (id) {
        case BackendId::binary: return "binary";
        case BackendId::ternary: return "ternary";
        case BackendId::hash: return "hash";
        case BackendId::hash_plus: return "hash+";
        case BackendId::cht: return "cht";
        case BackendId::rolling: return "rolling";
        case BackendId::rolling_plus: return "rolling+";
    }
    return "?";
}

inline std::optional<BackendId> backend_from_name(const std::string& name) {
    for (const BackendId id : ALL_BACKENDS) {
        if (name == backend_name(id)) return id;
    }
    return std::nullopt;
}

inline bool backend_is_rolling(BackendId id) {
    return id == BackendId::rolling || id == BackendId::rolling_plus;
}

struct RunConfig {
    BackendId backend = BackendId::binary;
    Format format = Format::lz78;
    RollingFn rolling_fn = RollingFn::fermat;
    bool scramble = false;
    std::uint32_t rolling_width = 64;
    std::uint64_t seed = 1;
};

// Builds the configured trie on the given account and hands it to fn.
template <typename Fn>
decltype(auto) with_backend(const RunConfig& cfg, AllocAccount& account,
                            Fn&& fn) {
    switch (cfg.backend) {
        case BackendId::binary: {
            BinaryTrie t(account);
            return fn(t);
        }
        case BackendId::ternary: {
            TernaryTrie t(account);
            return fn(t);
        }
        case BackendId::hash: {
            HashTrie t(account, Addressing::pow2);
            return fn(t);
        }
        case BackendId::hash_plus: {
            HashTrie t(account, Addressing::fitted);
            return fn(t);
        }
        case BackendId::cht: {
            CompactTrie t(account, HashFamily::lcg, cfg.seed);
            return fn(t);
        }
        case BackendId::rolling: {
            RollingTrie t(account, Addressing::pow2, cfg.rolling_fn,
                          cfg.rolling_width, cfg.scramble, cfg.seed);
            return fn(t);
        }
        case BackendId::rolling_plus: {
            RollingTrie t(account, Addressing::fitted, cfg.rolling_fn,
                          cfg.rolling_width, cfg.scramble, cfg.seed);
            return fn(t);
        }
    }
    throw std::logic_error("unreachable backend id");
}

struct CompressResult {
    std::uint64_t n = 0;
    std::uint64_t z = 0;
    std::uint64_t payload_bits = 0;
    double time_ms = 0;
    std::uint64_t peak_bytes = 0;
    BackendStats stats;
};

// Streams src (exactly n bytes) into an archive on out. Time covers the
// factorization including encoding; peak_bytes is the trie's allocation
// high-water mark, not process RSS.
template <typename Source>
CompressResult run_compress(const RunConfig& cfg, Source& src, std::uint64_t n,
                            std::ostream& out) {
    write_header(out, ArchiveHeader{cfg.format, n,
                                    std::uint8_t(cfg.backend), cfg.seed});
    BitSink sink(out);
    AllocAccount account;
    CompressResult res;
    res.n = n;
    const auto t0 = std::chrono::steady_clock::now();
    with_backend(cfg, account, [&](auto& trie) {
        if (cfg.format == Format::lz78) {
            Lz78Encoder enc(sink);
            res.z = factorize_lz78(trie, src, n,
                                   [&](const Lz78Factor& f) { enc.put(f); });
        } else {
            LzwEncoder enc(sink);
            res.z = factorize_lzw(trie, src, n,
                                  [&](const LzwFactor& f) { enc.put(f); });
        }
        res.stats = trie.stats();
    });
    sink.flush();
    const auto t1 = std::chrono::steady_clock::now();
    res.payload_bits = sink.bits_written();
    res.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    res.peak_bytes = account.peak();
    return res;
}

struct DecompressResult {
    ArchiveHeader header;
    std::uint64_t z = 0;
};

inline DecompressResult run_decompress(std::istream& in, std::ostream& out) {
    DecompressResult res;
    res.header = read_header(in);
    BitSource bits(in);
    const auto sink = [&](const std::uint8_t* p, std::size_t len) {
        out.write(reinterpret_cast<const char*>(p), std::streamsize(len));
    };
    res.z = res.header.format == Format::lz78
                ? decode_lz78(bits, res.header.n, sink)
                : decode_lzw(bits, res.header.n, sink);
    return res;
}

struct VerifyResult {
    ArchiveHeader header;
    std::uint64_t z = 0;
    bool ok = false;
    std::string message;
};

// Decodes the archive and compares the output byte-for-byte against the
// original stream (which must also not be longer than the decoded text).
inline VerifyResult run_verify(std::istream& archive, std::istream& original) {
    VerifyResult res;
    res.header = read_header(archive);
    BitSource bits(archive);
    bool mismatch = false;
    std::vector<char> ref;
    const auto sink = [&](const std::uint8_t* p, std::size_t len) {
        if (mismatch) return;
        ref.resize(len);
        original.read(ref.data(), std::streamsize(len));
        if (std::size_t(original.gcount()) != len ||
            std::memcmp(ref.data(), p, len) != 0) {
            mismatch = true;
        }
    };
    res.z = res.header.format == Format::lz78
                ? decode_lz78(bits, res.header.n, sink)
                : decode_lzw(bits, res.header.n, sink);
    if (!mismatch && original.get() != std::char_traits<char>::eof()) {
        mismatch = true;
        res.message = "original is longer than the decoded text";
    } else if (mismatch) {
        res.message = "decoded text differs from the original";
    }
    res.ok = !mismatch;
    return res;
}

} // namespace lzt
