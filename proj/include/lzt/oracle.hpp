#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <lzt/core.hpp>

namespace lzt {

// Reference factorizers straight from the definitions: keep every dictionary
// string in a map, repeatedly strip the longest dictionary prefix of the
// remaining input. Quadratic and allocation-happy on purpose — these exist
// to cross-check the trie drivers, not to be fast.

inline std::vector<Lz78Factor> oracle_lz78(std::span<const std::uint8_t> in) {
    std::map<std::string, factor_index> dict;
    std::vector<Lz78Factor> out;
    std::size_t i = 0;
    factor_index next_label = 1;
    while (i < in.size()) {
        std::string cur;
        factor_index cur_label = 0;
        while (i < in.size()) {
            std::string cand = cur + char(in[i]);
            const auto it = dict.find(cand);
            if (it == dict.end()) break;
            cur = std::move(cand);
            cur_label = it->second;
            ++i;
        }
        if (i < in.size()) {
            dict.emplace(cur + char(in[i]), next_label++);
            out.push_back(Lz78Factor{cur_label, to_symbol(in[i])});
            ++i;
        } else {
            out.push_back(Lz78Factor{cur_label, std::nullopt});
        }
    }
    return out;
}

inline std::vector<LzwFactor> oracle_lzw(std::span<const std::uint8_t> in) {
    std::map<std::string, std::int64_t> dict;
    for (std::uint32_t b = 0; b < SIGMA; ++b) {
        dict.emplace(std::string(1, char(std::uint8_t(b))),
                     -std::int64_t(b + 1));
    }
    std::vector<LzwFactor> out;
    std::size_t i = 0;
    std::int64_t next_factor = 1;
    while (i < in.size()) {
        std::string cur;
        std::int64_t code = 0;
        while (i < in.size()) {
            std::string cand = cur + char(in[i]);
            const auto it = dict.find(cand);
            if (it == dict.end()) break;
            cur = std::move(cand);
            code = it->second;
            ++i;
        }
        out.push_back(LzwFactor{code});
        if (i < in.size()) {
            dict.emplace(cur + char(in[i]), next_factor);
        }
        ++next_factor;
    }
    return out;
}

} // namespace lzt
