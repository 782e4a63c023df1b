#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <lzt/alloc_account.hpp>
#include <lzt/binary_trie.hpp>
#include <lzt/coder.hpp>
#include <lzt/factorize.hpp>
#include <lzt/runner.hpp>

using namespace lzt;

namespace {

std::span<const std::uint8_t> bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string hex(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (const char c : s) {
        out += digits[std::uint8_t(c) >> 4];
        out += digits[std::uint8_t(c) & 15];
        out += ' ';
    }
    if (!out.empty()) out.pop_back();
    return out;
}

std::pair<std::string, std::uint64_t> encode_lz78(std::string_view text) {
    AllocAccount account;
    BinaryTrie trie(account);
    const auto fs = factorize_lz78_mem(trie, bytes(text));
    std::ostringstream os;
    BitSink sink(os);
    Lz78Encoder enc(sink);
    for (const auto& f : fs) enc.put(f);
    const std::uint64_t payload = sink.bits_written();
    sink.flush();
    return {os.str(), payload};
}

std::pair<std::string, std::uint64_t> encode_lzw(std::string_view text) {
    AllocAccount account;
    BinaryTrie trie(account);
    const auto fs = factorize_lzw_mem(trie, bytes(text));
    std::ostringstream os;
    BitSink sink(os);
    LzwEncoder enc(sink);
    for (const auto& f : fs) enc.put(f);
    const std::uint64_t payload = sink.bits_written();
    sink.flush();
    return {os.str(), payload};
}

std::string decode_lz78_str(const std::string& payload, std::uint64_t n) {
    std::istringstream is(payload);
    BitSource bits(is);
    std::string out;
    decode_lz78(bits, n, [&](const std::uint8_t* p, std::size_t len) {
        out.append(reinterpret_cast<const char*>(p), len);
    });
    return out;
}

std::string decode_lzw_str(const std::string& payload, std::uint64_t n) {
    std::istringstream is(payload);
    BitSource bits(is);
    std::string out;
    decode_lzw(bits, n, [&](const std::uint8_t* p, std::size_t len) {
        out.append(reinterpret_cast<const char*>(p), len);
    });
    return out;
}

}  // namespace

TEST_CASE("reference payloads, bit for bit", "[coder]") {
    const auto [p78, bits78] = encode_lz78("aaababaaaba");
    REQUIRE(bits78 == 59);
    REQUIRE(hex(p78) == "61 b0 8c 4b 12 61 6c 20");

    const auto [pw, bitsw] = encode_lzw("aaababaaaba");
    REQUIRE(bitsw == 62);
    REQUIRE(hex(pw) == "61 80 18 8c 30 28 09 84");

    const auto [p2, bits2] = encode_lz78("aa");
    REQUIRE(bits2 == 9);
    REQUIRE(hex(p2) == "61 80");
}

TEST_CASE("reference payloads decode back", "[coder]") {
    REQUIRE(decode_lz78_str(encode_lz78("aaababaaaba").first, 11) == "aaababaaaba");
    REQUIRE(decode_lzw_str(encode_lzw("aaababaaaba").first, 11) == "aaababaaaba");
    REQUIRE(decode_lz78_str(encode_lz78("aa").first, 2) == "aa");
    REQUIRE(decode_lzw_str(encode_lzw("aaa").first, 3) == "aaa");
}

TEST_CASE("reference widths: lz78 refs, lzw codes", "[coder]") {
    // factor x: ceil(lg x) reference bits (+8 for the extension byte)
    std::mt19937_64 rng(79);
    std::vector<std::uint8_t> text(3000);
    for (auto& b : text) b = std::uint8_t('a' + rng() % 7);

    AllocAccount a1;
    BinaryTrie t1(a1);
    const auto fs78 = factorize_lz78_mem(t1, text);
    std::uint64_t want = 0, exts = 0;
    for (std::uint64_t x = 1; x <= fs78.size(); ++x) {
        want += bit_width_u64(x - 1);
        exts += fs78[x - 1].ext ? 1 : 0;
    }
    std::ostringstream os;
    BitSink sink(os);
    Lz78Encoder enc(sink);
    for (const auto& f : fs78) enc.put(f);
    REQUIRE(sink.bits_written() == want + 8 * exts);

    // factor x: one code of ceil(lg(sigma + x - 1)) bits
    AllocAccount a2;
    BinaryTrie t2(a2);
    const auto fsw = factorize_lzw_mem(t2, text);
    std::uint64_t wantw = 0;
    for (std::uint64_t x = 1; x <= fsw.size(); ++x) {
        wantw += bit_width_u64(SIGMA + x - 2);
    }
    std::ostringstream osw;
    BitSink sinkw(osw);
    LzwEncoder encw(sinkw);
    for (const auto& f : fsw) encw.put(f);
    REQUIRE(sinkw.bits_written() == wantw);
}

TEST_CASE("header round-trip and golden bytes", "[coder]") {
    std::ostringstream os;
    write_header(os, ArchiveHeader{Format::lzw, 11, 5, 7});
    const std::string s = os.str();
    REQUIRE(s.size() == HEADER_BYTES);
    REQUIRE(s.substr(0, 4) == "LZT1");
    REQUIRE(std::uint8_t(s[4]) == 1);
    REQUIRE(std::uint8_t(s[5]) == 11);
    REQUIRE(std::uint8_t(s[13]) == 5);
    REQUIRE(std::uint8_t(s[14]) == 7);

    std::istringstream is(s);
    const ArchiveHeader h = read_header(is);
    REQUIRE(h.format == Format::lzw);
    REQUIRE(h.n == 11);
    REQUIRE(h.backend_id == 5);
    REQUIRE(h.seed == 7);
}

TEST_CASE("bad headers are rejected", "[coder]") {
    const auto kind_of = [](const std::string& s) {
        std::istringstream is(s);
        try {
            read_header(is);
        } catch (const decode_error& e) {
            return e.kind();
        }
        throw std::logic_error("header unexpectedly accepted");
    };
    REQUIRE(kind_of("LZT") == decode_error::Kind::bad_header);  // short
    std::string good;
    {
        std::ostringstream os;
        write_header(os, ArchiveHeader{Format::lz78, 4, 0, 1});
        good = os.str();
    }
    std::string bad_magic = good;
    bad_magic[0] = 'X';
    REQUIRE(kind_of(bad_magic) == decode_error::Kind::bad_header);
    std::string bad_format = good;
    bad_format[4] = 2;
    REQUIRE(kind_of(bad_format) == decode_error::Kind::bad_header);
}

TEST_CASE("decoder faults carry their cause", "[coder]") {
    const auto lz78_kind = [](std::initializer_list<
                                  std::pair<std::uint64_t, std::uint32_t>>
                                  fields,
                              std::uint64_t n) {
        std::ostringstream os;
        BitSink sink(os);
        for (const auto& [v, w] : fields) sink.write_bits(v, w);
        sink.flush();
        std::istringstream is(os.str());
        BitSource bits(is);
        try {
            decode_lz78(bits, n, [](const std::uint8_t*, std::size_t) {});
        } catch (const decode_error& e) {
            return e.kind();
        }
        throw std::logic_error("stream unexpectedly decoded");
    };

    // truncated: first factor promises an extension byte that never comes
    REQUIRE(lz78_kind({}, 1) == decode_error::Kind::truncated);
    // dangling: factor 3 references 3 (only 2 exist)
    REQUIRE(lz78_kind({{std::uint8_t('a'), 8},           // (0, a)
                       {0, 1}, {std::uint8_t('b'), 8},   // (0, b)
                       {3, 2}},                          // (3, ...)
                      10) == decode_error::Kind::dangling_ref);
    // length mismatch: factor 3 would overshoot n = 4
    REQUIRE(lz78_kind({{std::uint8_t('a'), 8},           // (0, a) -> "a"
                       {1, 1}, {std::uint8_t('b'), 8},   // (1, b) -> "ab"
                       {2, 2}},                          // (2, .) -> +2 chars
                      4) == decode_error::Kind::length_mismatch);

    const auto lzw_kind = [](std::initializer_list<
                                 std::pair<std::uint64_t, std::uint32_t>>
                                 fields,
                             std::uint64_t n) {
        std::ostringstream os;
        BitSink sink(os);
        for (const auto& [v, w] : fields) sink.write_bits(v, w);
        sink.flush();
        std::istringstream is(os.str());
        BitSource bits(is);
        try {
            decode_lzw(bits, n, [](const std::uint8_t*, std::size_t) {});
        } catch (const decode_error& e) {
            return e.kind();
        }
        throw std::logic_error("stream unexpectedly decoded");
    };

    REQUIRE(lzw_kind({}, 1) == decode_error::Kind::truncated);
    // code 257 names factor 2, which cannot exist at step 2
    REQUIRE(lzw_kind({{97, 8}, {257, 9}}, 5) ==
            decode_error::Kind::dangling_ref);
    // a back-reference of length 2 overshoots n = 2
    REQUIRE(lzw_kind({{97, 8}, {256, 9}}, 2) ==
            decode_error::Kind::length_mismatch);
}

TEST_CASE("archives round-trip through the runner", "[coder]") {
    std::mt19937_64 rng(83);
    for (const Format format : {Format::lz78, Format::lzw}) {
        std::vector<std::uint8_t> text(30000);
        for (auto& b : text) b = std::uint8_t('a' + rng() % 9);

        RunConfig cfg;
        cfg.backend = BackendId::hash;
        cfg.format = format;
        std::ostringstream archive;
        MemorySource src(text);
        const auto res = run_compress(cfg, src, text.size(), archive);
        REQUIRE(res.n == text.size());
        REQUIRE(res.z > 0);
        REQUIRE(archive.str().size() == HEADER_BYTES + res.payload_bits / 8);

        std::istringstream in(archive.str());
        std::ostringstream out;
        const auto dec = run_decompress(in, out);
        REQUIRE(dec.header.n == text.size());
        REQUIRE(dec.z == res.z);
        REQUIRE(out.str() == std::string(text.begin(), text.end()));

        std::istringstream in2(archive.str());
        std::istringstream orig(std::string(text.begin(), text.end()));
        REQUIRE(run_verify(in2, orig).ok);

        std::istringstream in3(archive.str());
        std::string wrong(text.begin(), text.end());
        wrong[wrong.size() / 2] ^= 1;
        std::istringstream orig3(wrong);
        REQUIRE(!run_verify(in3, orig3).ok);

        std::istringstream in4(archive.str());
        std::istringstream orig4(std::string(text.begin(), text.end()) + "x");
        REQUIRE(!run_verify(in4, orig4).ok);
    }
}

TEST_CASE("truncated archives fail cleanly", "[coder]") {
    std::vector<std::uint8_t> text(5000, std::uint8_t('a'));
    RunConfig cfg;
    std::ostringstream archive;
    MemorySource src(text);
    run_compress(cfg, src, text.size(), archive);
    const std::string full = archive.str();

    std::istringstream in(full.substr(0, full.size() - 1));
    std::ostringstream out;
    try {
        run_decompress(in, out);
        FAIL("truncated archive unexpectedly decoded");
    } catch (const decode_error& e) {
        REQUIRE(e.kind() == decode_error::Kind::truncated);
    }
}
