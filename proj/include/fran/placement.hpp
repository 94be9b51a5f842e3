#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fran/bitset.hpp"
#include "fran/config.hpp"
#include "fran/keys.hpp"

namespace fran::placement {

// Per-node, per-file cached bit indices.  Every cache holds exactly
// floor(mu * F) bits of every file.
struct CacheState {
    int kt = 0;
    int kr = 0;
    int n_files = 0;
    std::uint64_t file_bits = 0;
    std::vector<std::vector<Bitset>> en_bits;    // [en][file]
    std::vector<std::vector<Bitset>> user_bits;  // [user][file]
};

CacheState place_caches(const SystemConfig& cfg);

// fragments[file][key_index] lists the bit positions cached exactly at the
// nodes of that key; the lists partition [0, F) for every file.
struct FragmentPartition {
    int kt = 0;
    int kr = 0;
    int n_files = 0;
    std::uint64_t file_bits = 0;
    std::vector<std::vector<std::vector<std::uint32_t>>> fragments;
};

FragmentPartition partition_files(const CacheState& state);
FragmentPartition partition_files_serial(const CacheState& state);

struct FragmentStat {
    FragmentKey key;
    std::uint64_t observed_bits = 0;  // summed over files
    double expected_bits = 0.0;
    double observed_fraction = 0.0;
    double expected_fraction = 0.0;
    double rel_error = 0.0;  // NaN when expected_bits < 1000
};

std::vector<FragmentStat> empirical_fragment_stats(const FragmentPartition& partition,
                                                   const SystemConfig& cfg);

// Columns: key_en_mask,key_user_mask,observed_bits,expected_bits,rel_error
void write_fragment_stats_csv(const std::vector<FragmentStat>& stats, std::ostream& out);

}  // namespace fran::placement
