#pragma once

#include <cstdint>
#include <vector>

namespace fran {

// Problem instance for a cloud + edge-node + user caching network.
// mu_t / mu_r are cache sizes normalized by the library size, r is the
// fronthaul multiplexing gain.  file_bits and seed only matter for the
// bit-level simulator.
struct SystemConfig {
    int kt = 2;
    int kr = 2;
    int n_files = 2;
    double mu_t = 0.0;
    double mu_r = 0.0;
    double r = 1.0;
    std::uint64_t file_bits = 0;
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument naming the offending field.
void validate_config(const SystemConfig& cfg);

// The coded delivery scheme is defined for exactly two edge nodes; general
// kt is accepted only by the bounds module.
void require_two_edge_nodes(const SystemConfig& cfg);

struct DemandVector {
    std::vector<int> demands;  // 1-based file ids, one per user
};

// d_k = k, the distinct-demand worst case.  Requires n_files >= kr.
DemandVector worst_case_demands(const SystemConfig& cfg);

void validate_demands(const SystemConfig& cfg, const DemandVector& d);

bool has_repeated_demands(const DemandVector& d);

}  // namespace fran
