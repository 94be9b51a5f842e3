#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fran/bitset.hpp"
#include "fran/config.hpp"
#include "fran/ndt.hpp"
#include "fran/placement.hpp"

namespace fran::delivery {

// Deterministic file payload derived from (file id, bit index) so decode
// verification can compare against ground truth without storing a library.
bool content_bit(int file_id, std::uint64_t index);
Bitset file_content(int file_id, std::uint64_t file_bits);

struct StageTraffic {
    std::string stage;
    std::uint64_t fronthaul_bits = 0;
    std::uint64_t edge_bits = 0;
    std::uint64_t messages = 0;
};

struct UserVerdict {
    bool decode_ok = false;
    std::uint64_t missing_bits = 0;
};

struct MessageRecord {
    std::string stage;
    std::uint32_t en_mask = 0;    // transmitting ENs (0 = cloud-fed)
    std::uint32_t user_mask = 0;  // served users
    std::uint64_t bits = 0;
};

struct DeliveryReport {
    std::vector<StageTraffic> stages;  // "1","2","3","4","5a"/"5b"
    std::vector<UserVerdict> users;
    char stage5 = 'a';
    bool worst_case_demands = true;  // false when demands repeat
    std::vector<MessageRecord> log;
    NdtBreakdown ndt;
};

// Executes the five delivery stages at the bit level and verifies that every
// user reconstructs its requested file exactly.  A decode failure throws: it
// signals a bug, never a valid outcome.
DeliveryReport run_delivery(const SystemConfig& cfg, const placement::CacheState& state,
                            const placement::FragmentPartition& partition,
                            const DemandVector& demands, char stage5);

// Converts transmitted-bit counts into per-stage NDTs through the per-stage
// DoF model.  Stage-5 totals are variant independent, so both 5a and 5b rows
// are derived from the one that ran.
NdtBreakdown latency_from_report(const DeliveryReport& report, const SystemConfig& cfg);

std::string report_json(const DeliveryReport& report);

}  // namespace fran::delivery
