#pragma once

#include <string>
#include <vector>

#include "fran/config.hpp"

namespace fran {

// Stage 5 of the delivery scheme has two variants; scheme a uses 5a
// (interference alignment from the EN caches), scheme b uses 5b
// (cross-shipping over the fronthaul, then zero-forcing).
enum class Stage { s1, s2, s3, s4, s5a, s5b };
enum class Scheme { a, b };
enum class TransferMode { serial, pipelined };

const char* to_string(Stage stage);

struct StageNdt {
    Stage stage = Stage::s1;
    double fronthaul = 0.0;
    double edge = 0.0;
};

struct SchemePair {
    double fronthaul = 0.0;
    double edge = 0.0;
};

struct NdtBreakdown {
    std::vector<StageNdt> per_stage;  // stages 1,2,3,4,5a,5b in order
    SchemePair scheme_a;              // sum over {1,2,3,4,5a}
    SchemePair scheme_b;              // sum over {1,2,3,4,5b}
    double serial = 0.0;              // min over schemes of fronthaul+edge
    double pipelined = 0.0;           // min over schemes of max(fronthaul, edge)
};

namespace formulas {

// mu_t^|St| (1-mu_t)^(kt-|St|) mu_r^|Sr| (1-mu_r)^(kr-|Sr|); valid for any kt.
double expected_fragment_fraction(const SystemConfig& cfg, int st_size, int sr_size);

// Multicast rates (bits normalized by F) of the user-coded stages, computed
// by the direct binomial sums.  The *_closed variants evaluate the algebraic
// closed forms through their geometric-series expansion, which is exact and
// stays finite at mu_r = 0; they exist as an independent cross-check route.
double multicast_rate_r2(const SystemConfig& cfg);
double multicast_rate_r3(const SystemConfig& cfg);
double multicast_rate_r2_closed(const SystemConfig& cfg);
double multicast_rate_r3_closed(const SystemConfig& cfg);

StageNdt stage_ndt(const SystemConfig& cfg, Stage stage);

// Componentwise sum of the five stages of one scheme.
SchemePair scheme_ndt(const SystemConfig& cfg, Scheme scheme);
SchemePair scheme_ndt_closed(const SystemConfig& cfg, Scheme scheme);

double serial_ndt(const SystemConfig& cfg);
double pipelined_ndt(const SystemConfig& cfg);

NdtBreakdown ndt_breakdown(const SystemConfig& cfg);

// Special case mu_t = 1 (equivalently r -> infinity): the network is a
// two-antenna broadcast channel.  Function of (kr, mu_r) only.
double miso_special_ndt(const SystemConfig& cfg);

// Special case mu_r = 0 (caches at edge nodes only); kept as an independent
// piecewise formula for cross-validation against the stage sums.
double en_only_ndt(const SystemConfig& cfg, TransferMode mode);

// Single-antenna broadcast baseline for the mu_t = 1 comparison.
double baseline_single_antenna_ndt(const SystemConfig& cfg);

}  // namespace formulas
}  // namespace fran
