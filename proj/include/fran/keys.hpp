#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace fran {

// Identifies one fragment of a file: the bits cached exactly at the edge
// nodes in en_mask and the users in user_mask.  Node i (1-based) maps to
// bit i-1 of the mask.
struct FragmentKey {
    std::uint32_t en_mask = 0;
    std::uint32_t user_mask = 0;

    bool operator==(const FragmentKey&) const = default;

    int en_count() const { return std::popcount(en_mask); }
    int user_count() const { return std::popcount(user_mask); }
    bool has_en(int i) const { return (en_mask >> (i - 1)) & 1u; }
    bool has_user(int k) const { return (user_mask >> (k - 1)) & 1u; }
};

// All 2^(kt+kr) keys in canonical order: lexicographic on
// (en_mask, user_mask) read as integers.
std::vector<FragmentKey> enumerate_fragment_keys(int kt, int kr);

// Position of a key in the canonical order.
std::size_t fragment_key_index(const FragmentKey& key, int kt, int kr);

}  // namespace fran
