#pragma once

#include <cassert>
#include <cstdint>
#include <fstream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lzt {

// Deterministic corpora for tests and benchmarks. Alphabets of up to 26 use
// letters starting at 'a' rather than raw low bytes so that corpora never
// contain runs of zero bytes, which the fermat fingerprint maps to
// fingerprint zero regardless of run length.

inline std::vector<std::uint8_t> gen_random(std::uint64_t n,
                                            std::uint32_t alphabet,
                                            std::uint64_t seed) {
    assert(alphabet >= 1 && alphabet <= 256);
    std::mt19937_64 rng(seed);
    const std::uint8_t base = alphabet <= 26 ? std::uint8_t('a') : 0;
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = std::uint8_t(base + rng() % alphabet);
    return out;
}

// one seeded letter block of the given period, repeated to length n
inline std::vector<std::uint8_t> gen_periodic(std::uint64_t n,
                                              std::uint32_t period,
                                              std::uint64_t seed) {
    assert(period >= 1);
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> block(period);
    for (auto& b : block) b = std::uint8_t('a' + rng() % 26);
    std::vector<std::uint8_t> out(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = block[i % period];
    return out;
}

inline std::vector<std::uint8_t> gen_all_equal(std::uint64_t n,
                                               std::uint8_t byte = 'a') {
    return std::vector<std::uint8_t>(n, byte);
}

inline std::vector<std::uint8_t> cycle_to_length(
    std::span<const std::uint8_t> base, std::uint64_t n) {
    if (base.empty()) throw std::runtime_error("cannot cycle an empty buffer");
    std::vector<std::uint8_t> out(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = base[i % base.size()];
    return out;
}

inline std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    in.seekg(0, std::ios::end);
    const auto size = in.tellg();
    if (size < 0) throw std::runtime_error("cannot stat " + path);
    in.seekg(0, std::ios::beg);
    std::vector<std::uint8_t> out(static_cast<std::size_t>(size));
    if (size > 0) {
        in.read(reinterpret_cast<char*>(out.data()), size);
        if (in.gcount() != size) throw std::runtime_error("short read: " + path);
    }
    return out;
}

} // namespace lzt
