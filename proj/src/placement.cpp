#include "fran/placement.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "fran/format.hpp"
#include "fran/ndt.hpp"
#include "fran/parallel.hpp"
#include "fran/rng.hpp"

namespace fran::placement {
namespace {

constexpr std::uint64_t kEnTag = 0x454E;    // "EN"
constexpr std::uint64_t kUserTag = 0x5552;  // "UR"

// Uniform random subset of exactly `want` indices out of [0, total), by
// selection sampling: index b joins with probability remaining/(total-b).
Bitset sample_exact(SplitMix64& rng, std::uint64_t total, std::uint64_t want) {
    Bitset bits(total);
    std::uint64_t remaining = want;
    for (std::uint64_t b = 0; b < total && remaining > 0; ++b) {
        if (rng.below(total - b) < remaining) {
            bits.set(b);
            --remaining;
        }
    }
    return bits;
}

std::uint64_t cache_bits_per_file(double mu, std::uint64_t file_bits) {
    return static_cast<std::uint64_t>(std::floor(mu * static_cast<double>(file_bits)));
}

}  // namespace

CacheState place_caches(const SystemConfig& cfg) {
    validate_config(cfg);
    if (cfg.file_bits < 1)
        throw std::invalid_argument("file_bits must be >= 1 for simulation");
    if (cfg.file_bits > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("file_bits too large for the simulator");

    CacheState state;
    state.kt = cfg.kt;
    state.kr = cfg.kr;
    state.n_files = cfg.n_files;
    state.file_bits = cfg.file_bits;
    state.en_bits.assign(cfg.kt, std::vector<Bitset>(cfg.n_files));
    state.user_bits.assign(cfg.kr, std::vector<Bitset>(cfg.n_files));

    const std::uint64_t en_want = cache_bits_per_file(cfg.mu_t, cfg.file_bits);
    const std::uint64_t user_want = cache_bits_per_file(cfg.mu_r, cfg.file_bits);
    const int jobs = (cfg.kt + cfg.kr) * cfg.n_files;

#pragma omp parallel for schedule(dynamic) num_threads(fran::max_worker_threads())
    for (int job = 0; job < jobs; ++job) {
        const int node = job / cfg.n_files;
        const int file = job % cfg.n_files;
        if (node < cfg.kt) {
            SplitMix64 rng(derive_stream(cfg.seed, kEnTag, node + 1, file + 1));
            state.en_bits[node][file] = sample_exact(rng, cfg.file_bits, en_want);
        } else {
            const int user = node - cfg.kt;
            SplitMix64 rng(derive_stream(cfg.seed, kUserTag, user + 1, file + 1));
            state.user_bits[user][file] = sample_exact(rng, cfg.file_bits, user_want);
        }
    }
    return state;
}

namespace {

void partition_one_file(const CacheState& state, int file,
                        std::vector<std::vector<std::uint32_t>>& frags) {
    const int kt = state.kt;
    const int kr = state.kr;
    frags.assign(std::size_t{1} << (kt + kr), {});
    for (std::uint64_t b = 0; b < state.file_bits; ++b) {
        std::uint32_t en_mask = 0;
        for (int i = 0; i < kt; ++i)
            if (state.en_bits[i][file].test(b)) en_mask |= 1u << i;
        std::uint32_t user_mask = 0;
        for (int k = 0; k < kr; ++k)
            if (state.user_bits[k][file].test(b)) user_mask |= 1u << k;
        frags[(std::size_t{en_mask} << kr) | user_mask].push_back(
            static_cast<std::uint32_t>(b));
    }
}

}  // namespace

FragmentPartition partition_files(const CacheState& state) {
    FragmentPartition out;
    out.kt = state.kt;
    out.kr = state.kr;
    out.n_files = state.n_files;
    out.file_bits = state.file_bits;
    out.fragments.resize(state.n_files);

#pragma omp parallel for schedule(dynamic) num_threads(fran::max_worker_threads())
    for (int file = 0; file < state.n_files; ++file)
        partition_one_file(state, file, out.fragments[file]);
    return out;
}

FragmentPartition partition_files_serial(const CacheState& state) {
    FragmentPartition out;
    out.kt = state.kt;
    out.kr = state.kr;
    out.n_files = state.n_files;
    out.file_bits = state.file_bits;
    out.fragments.resize(state.n_files);
    for (int file = 0; file < state.n_files; ++file)
        partition_one_file(state, file, out.fragments[file]);
    return out;
}

std::vector<FragmentStat> empirical_fragment_stats(const FragmentPartition& partition,
                                                   const SystemConfig& cfg) {
    validate_config(cfg);
    if (partition.kt != cfg.kt || partition.kr != cfg.kr)
        throw std::invalid_argument("partition does not match config");

    const double total = static_cast<double>(partition.file_bits) * partition.n_files;
    std::vector<FragmentStat> stats;
    for (const FragmentKey& key : enumerate_fragment_keys(cfg.kt, cfg.kr)) {
        FragmentStat st;
        st.key = key;
        const std::size_t idx = fragment_key_index(key, cfg.kt, cfg.kr);
        for (int file = 0; file < partition.n_files; ++file)
            st.observed_bits += partition.fragments[file][idx].size();
        st.expected_fraction =
            formulas::expected_fragment_fraction(cfg, key.en_count(), key.user_count());
        st.expected_bits = st.expected_fraction * total;
        st.observed_fraction = static_cast<double>(st.observed_bits) / total;
        st.rel_error = st.expected_bits >= 1000.0
                           ? (static_cast<double>(st.observed_bits) - st.expected_bits) /
                                 st.expected_bits
                           : std::numeric_limits<double>::quiet_NaN();
        stats.push_back(st);
    }
    return stats;
}

void write_fragment_stats_csv(const std::vector<FragmentStat>& stats, std::ostream& out) {
    out << "key_en_mask,key_user_mask,observed_bits,expected_bits,rel_error\n";
    for (const FragmentStat& st : stats) {
        out << st.key.en_mask << ',' << st.key.user_mask << ',' << st.observed_bits << ','
            << format_g12(st.expected_bits) << ',' << format_g12(st.rel_error) << '\n';
    }
}

}  // namespace fran::placement
