#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fran/ndt.hpp"
#include "fran/placement.hpp"
#include "test_util.hpp"

using namespace fran;
using namespace fran::placement;
using testutil::make_cfg;

namespace {

SystemConfig sim_cfg(int kt, int kr, double mu_t, double mu_r, std::uint64_t bits,
                     std::uint64_t seed, int files = 0) {
    SystemConfig cfg = make_cfg(kt, kr, mu_t, mu_r, 1.0, files > 0 ? files : kr);
    cfg.file_bits = bits;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("caches hold exactly floor(mu * F) bits of every file") {
    const SystemConfig cfg = sim_cfg(2, 3, 0.37, 0.61, 10000, 9);
    const CacheState state = place_caches(cfg);
    for (int i = 0; i < cfg.kt; ++i)
        for (int f = 0; f < cfg.n_files; ++f) CHECK(state.en_bits[i][f].count() == 3700);
    for (int k = 0; k < cfg.kr; ++k)
        for (int f = 0; f < cfg.n_files; ++f) CHECK(state.user_bits[k][f].count() == 6100);
}

TEST_CASE("placement is deterministic in the seed") {
    const SystemConfig cfg = sim_cfg(2, 2, 0.5, 0.5, 5000, 1234);
    const CacheState a = place_caches(cfg);
    const CacheState b = place_caches(cfg);
    CHECK(a.en_bits == b.en_bits);
    CHECK(a.user_bits == b.user_bits);

    SystemConfig other = cfg;
    other.seed = 1235;
    const CacheState c = place_caches(other);
    CHECK(a.en_bits != c.en_bits);
}

TEST_CASE("full and empty caches") {
    const CacheState full = place_caches(sim_cfg(2, 2, 1.0, 0.0, 777, 3));
    for (int i = 0; i < 2; ++i)
        for (int f = 0; f < 2; ++f) CHECK(full.en_bits[i][f].count() == 777);
    for (int k = 0; k < 2; ++k)
        for (int f = 0; f < 2; ++f) CHECK(full.user_bits[k][f].count() == 0);
}

TEST_CASE("partition is disjoint, exhaustive and placement-consistent") {
    const SystemConfig cfg = sim_cfg(2, 3, 0.4, 0.5, 20000, 77);
    const CacheState state = place_caches(cfg);
    const FragmentPartition partition = partition_files(state);

    for (int f = 0; f < cfg.n_files; ++f) {
        Bitset covered(cfg.file_bits);
        std::uint64_t total = 0;
        for (const auto& indices : partition.fragments[f]) {
            total += indices.size();
            for (std::uint32_t b : indices) {
                CHECK(!covered.test(b));
                covered.set(b);
            }
        }
        CHECK(total == cfg.file_bits);
        CHECK(covered.count() == cfg.file_bits);
    }

    // Membership rule: a bit sits in the key of exactly its caching nodes.
    const auto& keys = enumerate_fragment_keys(cfg.kt, cfg.kr);
    for (const FragmentKey& key : keys) {
        const auto& indices = partition.fragments[1][fragment_key_index(key, cfg.kt, cfg.kr)];
        for (std::size_t j = 0; j < indices.size(); j += 97) {
            for (int i = 1; i <= cfg.kt; ++i)
                CHECK(state.en_bits[i - 1][1].test(indices[j]) == key.has_en(i));
            for (int k = 1; k <= cfg.kr; ++k)
                CHECK(state.user_bits[k - 1][1].test(indices[j]) == key.has_user(k));
        }
    }
}

TEST_CASE("parallel and serial partition agree") {
    const CacheState state = place_caches(sim_cfg(2, 4, 0.3, 0.6, 30000, 5));
    const FragmentPartition a = partition_files(state);
    const FragmentPartition b = partition_files_serial(state);
    CHECK(a.fragments == b.fragments);
}

TEST_CASE("all bits land in the uncached key when caches are empty") {
    const SystemConfig cfg = sim_cfg(2, 2, 0.0, 0.0, 4096, 11);
    const FragmentPartition partition = partition_files(place_caches(cfg));
    for (int f = 0; f < cfg.n_files; ++f) {
        CHECK(partition.fragments[f][0].size() == 4096);  // key (0, 0) is first
        for (std::size_t idx = 1; idx < partition.fragments[f].size(); ++idx)
            CHECK(partition.fragments[f][idx].empty());
    }
}

TEST_CASE("full user caches populate only full-user-set keys") {
    const SystemConfig cfg = sim_cfg(2, 3, 0.5, 1.0, 4096, 13);
    const FragmentPartition partition = partition_files(place_caches(cfg));
    const std::uint32_t all_users = (1u << cfg.kr) - 1;
    for (int f = 0; f < cfg.n_files; ++f)
        for (const FragmentKey& key : enumerate_fragment_keys(cfg.kt, cfg.kr)) {
            const auto& indices =
                partition.fragments[f][fragment_key_index(key, cfg.kt, cfg.kr)];
            if (key.user_mask != all_users) CHECK(indices.empty());
        }
}

TEST_CASE("fragment sizes concentrate around the product form at F = 2^20") {
    const SystemConfig cfg = sim_cfg(2, 2, 0.5, 0.5, 1u << 20, 2024);
    const FragmentPartition partition = partition_files(place_caches(cfg));
    const double expected = (1u << 20) / 16.0;
    for (int f = 0; f < cfg.n_files; ++f)
        for (const auto& indices : partition.fragments[f])
            CHECK(std::fabs(indices.size() - expected) <= 0.01 * expected);
}

TEST_CASE("fragment sizes stay within 3 sigma at F = 1e6") {
    const SystemConfig cfg = sim_cfg(2, 4, 0.5, 0.5, 1000000, 6);
    const FragmentPartition partition = partition_files(place_caches(cfg));
    const double f = 1000000.0;
    for (const FragmentKey& key : enumerate_fragment_keys(cfg.kt, cfg.kr)) {
        const double p =
            formulas::expected_fragment_fraction(cfg, key.en_count(), key.user_count());
        if (p * f < 1000.0) continue;
        const double sigma = std::sqrt(f * p * (1.0 - p));
        const std::size_t idx = fragment_key_index(key, cfg.kt, cfg.kr);
        for (int file = 0; file < cfg.n_files; ++file) {
            const double diff = partition.fragments[file][idx].size() - p * f;
            CHECK(std::fabs(diff) <= 3.0 * sigma);
        }
    }
}

TEST_CASE("empirical stats reproduce the expected fractions") {
    const SystemConfig cfg = sim_cfg(2, 2, 0.5, 0.5, 100000, 6);
    const FragmentPartition partition = partition_files(place_caches(cfg));
    const std::vector<FragmentStat> stats = empirical_fragment_stats(partition, cfg);
    REQUIRE(stats.size() == 16);

    std::uint64_t total = 0;
    for (const FragmentStat& st : stats) {
        CHECK(st.expected_fraction ==
              doctest::Approx(formulas::expected_fragment_fraction(cfg, st.key.en_count(),
                                                                   st.key.user_count()))
                  .epsilon(1e-14));
        CHECK(st.expected_bits == doctest::Approx(st.expected_fraction * 2 * 100000.0));
        if (st.expected_bits >= 1000.0)
            CHECK(std::isfinite(st.rel_error));
        else
            CHECK(std::isnan(st.rel_error));
        total += st.observed_bits;
    }
    CHECK(total == 2 * 100000u);
}

TEST_CASE("stats rel_error is suppressed below the 1000-bit floor") {
    const SystemConfig cfg = sim_cfg(2, 2, 0.01, 0.5, 50000, 8);
    const std::vector<FragmentStat> stats =
        empirical_fragment_stats(partition_files(place_caches(cfg)), cfg);
    bool saw_nan = false, saw_value = false;
    for (const FragmentStat& st : stats) {
        if (std::isnan(st.rel_error))
            saw_nan = true;
        else
            saw_value = true;
    }
    CHECK(saw_nan);
    CHECK(saw_value);
}

TEST_CASE("fragment stats CSV shape") {
    const SystemConfig cfg = sim_cfg(2, 2, 0.5, 0.5, 2048, 21);
    const std::vector<FragmentStat> stats =
        empirical_fragment_stats(partition_files(place_caches(cfg)), cfg);
    std::ostringstream out;
    write_fragment_stats_csv(stats, out);
    const std::string text = out.str();

    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 17);  // header + 16 keys
    CHECK(text.rfind("key_en_mask,key_user_mask,observed_bits,expected_bits,rel_error\n",
                     0) == 0);
}

TEST_CASE("placement rejects zero file_bits") {
    SystemConfig cfg = sim_cfg(2, 2, 0.5, 0.5, 0, 1);
    CHECK_THROWS(place_caches(cfg));
}
