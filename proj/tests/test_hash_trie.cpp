#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <lzt/alloc_account.hpp>
#include <lzt/factorize.hpp>
#include <lzt/hash_trie.hpp>
#include <lzt/oracle.hpp>

using namespace lzt;

static_assert(LzTrieBackend<HashTrie>);

TEST_CASE("hash trie parses equal the reference parse", "[hash_trie]") {
    std::mt19937_64 rng(29);
    for (const Addressing mode : {Addressing::pow2, Addressing::fitted}) {
        for (int round = 0; round < 50; ++round) {
            std::vector<std::uint8_t> text(1 + rng() % 500);
            for (auto& b : text) b = std::uint8_t(rng());
            {
                AllocAccount account;
                HashTrie trie(account, mode);
                REQUIRE(factorize_lz78_mem(trie, text) == oracle_lz78(text));
            }
            {
                AllocAccount account;
                HashTrie trie(account, mode);
                REQUIRE(factorize_lzw_mem(trie, text) == oracle_lzw(text));
            }
        }
    }
}

TEST_CASE("hash trie keys are edge pairs", "[hash_trie]") {
    AllocAccount account;
    HashTrie trie(account, Addressing::pow2);
    REQUIRE(!trie.child_or_insert(trie.root(), to_symbol('a'), 1));
    REQUIRE(trie.child_or_insert(trie.root(), to_symbol('a'), 0) == 1u);
    REQUIRE(!trie.child_or_insert(1, to_symbol('a'), 2));
    REQUIRE(!trie.child_or_insert(1, to_symbol('b'), 3));
    REQUIRE(trie.child_or_insert(1, to_symbol('b'), 0) == 3u);
    REQUIRE(trie.size() == 3);
    REQUIRE(trie.table().find((std::uint64_t(1) << 8) | std::uint8_t('b')) == 3u);
    REQUIRE(!trie.table().find((std::uint64_t(2) << 8) | std::uint8_t('a')));
}

TEST_CASE("hash trie stats expose the probing table", "[hash_trie]") {
    AllocAccount account;
    HashTrie trie(account, Addressing::pow2);
    std::mt19937_64 rng(31);
    std::vector<std::uint8_t> text(20000);
    for (auto& b : text) b = std::uint8_t('a' + rng() % 26);
    factorize_lz78_mem(trie, text);
    const auto st = trie.stats();
    REQUIRE(st.table_size_M == trie.table().capacity());
    REQUIRE((st.table_size_M & (st.table_size_M - 1)) == 0);  // pow2 mode
    REQUIRE(st.allocated_bytes == account.live());
    // scrambled addressing: collisions happen but stay in the same order of
    // magnitude as the entry count
    REQUIRE(st.collisions > 0);
    REQUIRE(st.collisions < 20 * trie.size());
}
