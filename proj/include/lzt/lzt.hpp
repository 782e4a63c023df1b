#pragma once

#include <lzt/alloc_account.hpp>
#include <lzt/bench.hpp>
#include <lzt/binary_trie.hpp>
#include <lzt/bit_io.hpp>
#include <lzt/coder.hpp>
#include <lzt/compact_trie.hpp>
#include <lzt/core.hpp>
#include <lzt/corpus.hpp>
#include <lzt/factorize.hpp>
#include <lzt/hash_fn.hpp>
#include <lzt/hash_trie.hpp>
#include <lzt/int_vector.hpp>
#include <lzt/oracle.hpp>
#include <lzt/probing_table.hpp>
#include <lzt/resize_hint.hpp>
#include <lzt/rolling_trie.hpp>
#include <lzt/runner.hpp>
#include <lzt/space_model.hpp>
#include <lzt/ternary_trie.hpp>
