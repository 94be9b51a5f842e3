#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fran/config.hpp"
#include "fran/format.hpp"

namespace fran::analysis {

struct SweepRow {
    double mu_t = 0.0, mu_r = 0.0, r = 0.0;
    double delta_s_dec = 0.0, delta_p_dec = 0.0;
    double delta_s_lb = 0.0, delta_p_lb = 0.0;
    double gap_s = 0.0, gap_p = 0.0;
    double ratio_s = 1.0, ratio_p = 1.0;  // 1 when both terms are ~0
};

struct GapSummary {
    double max_gap_s = 0.0, max_gap_p = 0.0;
    double argmax_s_mu_t = 0.0, argmax_s_mu_r = 0.0;
    double argmax_p_mu_t = 0.0, argmax_p_mu_r = 0.0;
};

struct GapSweepResult {
    std::vector<SweepRow> rows;  // grid-major: mu_t outer, mu_r inner
    GapSummary summary;
};

GapSweepResult gap_sweep(int kr, double r, double step);
GapSweepResult gap_sweep_serial(int kr, double r, double step);  // reference

struct CompareRow {
    double mu_r = 0.0;
    double two_antenna = 0.0;
    double single_antenna = 0.0;
    double difference = 0.0;
};

// mu_t = 1 regime: two-antenna scheme against the single-antenna baseline.
std::vector<CompareRow> compare_baseline(int kr, double step);

struct OptimalityGrid {
    int mu_points = 101;
    int r_points = 50;
    double r_min = 1e-2;
    double r_max = 1e2;
};

struct RegionCheck {
    std::string name;
    bool pass = true;
    long points = 0;
    double worst = 0.0;  // max |ratio-1| for pipelined, max ratio for serial
    double worst_mu_t = 0.0;
    double worst_r = 0.0;
};

// Pipelined ratio must be 1 on p1_* regions; serial ratio must be <= 3 on
// p2_* regions.  Grid points outside all regions are counted as unverified.
struct OptimalityReport {
    int kr = 0;
    RegionCheck p1_high_r;  // r >= 1 - mu_t^2
    RegionCheck p1_low_mu;  // mu_t < 1/2, r < 1 - mu_t^2
    RegionCheck p2_high_r;  // r >= 1
    RegionCheck p2_low_mu;  // mu_t <= sqrt(2)-1, r < 1
    long unverified = 0;

    bool p1_pass() const { return p1_high_r.pass && p1_low_mu.pass; }
    bool p2_pass() const { return p2_high_r.pass && p2_low_mu.pass; }
};

OptimalityReport optimality_check(int kr, const OptimalityGrid& grid = {});

enum class TableFormat { csv, json };

void emit_table(const std::vector<SweepRow>& rows, TableFormat format, std::ostream& out);
void emit_table(const std::vector<SweepRow>& rows, TableFormat format,
                const std::string& path);
void emit_table(const std::vector<CompareRow>& rows, TableFormat format, std::ostream& out);
void emit_table(const std::vector<CompareRow>& rows, TableFormat format,
                const std::string& path);

using fran::format_g12;

}  // namespace fran::analysis
