#include "fran/analysis.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fran/bounds.hpp"
#include "fran/ndt.hpp"
#include "fran/parallel.hpp"
#include "json.hpp"

namespace fran::analysis {
namespace {

constexpr double kZero = 1e-12;

std::vector<double> unit_grid(double step) {
    if (!(step > 0.0 && step <= 1.0))
        throw std::invalid_argument("grid step must be in (0, 1]");
    const int n = static_cast<int>(std::lround(1.0 / step));
    std::vector<double> grid(n + 1);
    for (int i = 0; i <= n; ++i) grid[i] = std::min(1.0, i * step);
    return grid;
}

double safe_ratio(double dec, double lb) {
    if (dec < kZero && lb < kZero) return 1.0;
    return dec / lb;
}

SweepRow sweep_point(int kr, double r, double mu_t, double mu_r) {
    SystemConfig cfg;
    cfg.kt = 2;
    cfg.kr = kr;
    cfg.n_files = kr;
    cfg.mu_t = mu_t;
    cfg.mu_r = mu_r;
    cfg.r = r;

    SweepRow row;
    row.mu_t = mu_t;
    row.mu_r = mu_r;
    row.r = r;
    row.delta_s_dec = formulas::serial_ndt(cfg);
    row.delta_p_dec = formulas::pipelined_ndt(cfg);
    row.delta_s_lb = bounds::serial_lower_bound(cfg).delta_lb;
    row.delta_p_lb = bounds::pipelined_lower_bound(cfg);
    row.gap_s = row.delta_s_dec - row.delta_s_lb;
    row.gap_p = row.delta_p_dec - row.delta_p_lb;
    row.ratio_s = safe_ratio(row.delta_s_dec, row.delta_s_lb);
    row.ratio_p = safe_ratio(row.delta_p_dec, row.delta_p_lb);
    return row;
}

GapSummary summarize(const std::vector<SweepRow>& rows) {
    GapSummary s;
    bool first = true;
    for (const SweepRow& row : rows) {
        if (first || row.gap_s > s.max_gap_s) {
            s.max_gap_s = row.gap_s;
            s.argmax_s_mu_t = row.mu_t;
            s.argmax_s_mu_r = row.mu_r;
        }
        if (first || row.gap_p > s.max_gap_p) {
            s.max_gap_p = row.gap_p;
            s.argmax_p_mu_t = row.mu_t;
            s.argmax_p_mu_r = row.mu_r;
        }
        first = false;
    }
    return s;
}

}  // namespace

GapSweepResult gap_sweep(int kr, double r, double step) {
    const std::vector<double> grid = unit_grid(step);
    const long n = static_cast<long>(grid.size());

    GapSweepResult out;
    out.rows.resize(n * n);
#pragma omp parallel for schedule(dynamic, 8) num_threads(fran::max_worker_threads())
    for (long idx = 0; idx < n * n; ++idx)
        out.rows[idx] = sweep_point(kr, r, grid[idx / n], grid[idx % n]);
    out.summary = summarize(out.rows);
    return out;
}

GapSweepResult gap_sweep_serial(int kr, double r, double step) {
    const std::vector<double> grid = unit_grid(step);
    GapSweepResult out;
    out.rows.reserve(grid.size() * grid.size());
    for (double mu_t : grid)
        for (double mu_r : grid)
            out.rows.push_back(sweep_point(kr, r, mu_t, mu_r));
    out.summary = summarize(out.rows);
    return out;
}

std::vector<CompareRow> compare_baseline(int kr, double step) {
    std::vector<CompareRow> rows;
    for (double mu_r : unit_grid(step)) {
        SystemConfig cfg;
        cfg.kt = 2;
        cfg.kr = kr;
        cfg.n_files = kr;
        cfg.mu_t = 1.0;
        cfg.mu_r = mu_r;
        CompareRow row;
        row.mu_r = mu_r;
        row.two_antenna = formulas::miso_special_ndt(cfg);
        row.single_antenna = formulas::baseline_single_antenna_ndt(cfg);
        row.difference = row.single_antenna - row.two_antenna;
        rows.push_back(row);
    }
    return rows;
}

OptimalityReport optimality_check(int kr, const OptimalityGrid& grid) {
    if (grid.mu_points < 2 || grid.r_points < 2)
        throw std::invalid_argument("optimality grid needs at least 2 points per axis");
    const double sqrt2m1 = std::sqrt(2.0) - 1.0;

    OptimalityReport report;
    report.kr = kr;
    report.p1_high_r.name = "pipelined ratio = 1 for r >= 1 - mu_t^2";
    report.p1_low_mu.name = "pipelined ratio = 1 for mu_t < 1/2, r < 1 - mu_t^2";
    report.p2_high_r.name = "serial ratio <= 3 for r >= 1";
    report.p2_low_mu.name = "serial ratio <= 3 for mu_t <= sqrt(2)-1, r < 1";

    auto update = [](RegionCheck& check, double deviation, double limit, double mu_t,
                     double r) {
        ++check.points;
        if (deviation > check.worst || check.points == 1) {
            check.worst = deviation;
            check.worst_mu_t = mu_t;
            check.worst_r = r;
        }
        if (deviation > limit) check.pass = false;
    };

    for (int im = 0; im < grid.mu_points; ++im) {
        const double mu_t = static_cast<double>(im) / (grid.mu_points - 1);
        for (int ir = 0; ir < grid.r_points; ++ir) {
            const double t = static_cast<double>(ir) / (grid.r_points - 1);
            const double r = grid.r_min * std::pow(grid.r_max / grid.r_min, t);
            const SweepRow row = sweep_point(kr, r, mu_t, 0.0);

            const bool p1_main = r >= 1.0 - mu_t * mu_t - 1e-12;
            const bool p1_side = mu_t < 0.5 && !p1_main;
            const bool p2_main = r >= 1.0 - 1e-12;
            const bool p2_side = mu_t <= sqrt2m1 + 1e-12 && !p2_main;

            if (p1_main) update(report.p1_high_r, std::fabs(row.ratio_p - 1.0), 1e-9, mu_t, r);
            if (p1_side) update(report.p1_low_mu, std::fabs(row.ratio_p - 1.0), 1e-9, mu_t, r);
            if (p2_main) update(report.p2_high_r, row.ratio_s, 3.0, mu_t, r);
            if (p2_side) update(report.p2_low_mu, row.ratio_s, 3.0, mu_t, r);
            if (!p1_main && !p1_side && !p2_main && !p2_side) ++report.unverified;
        }
    }
    return report;
}

namespace {

const char* kSweepHeader =
    "mu_t,mu_r,r,delta_s_dec,delta_p_dec,delta_s_lb,delta_p_lb,gap_s,gap_p,ratio_s,"
    "ratio_p";

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kSweepHeader << '\n';
    for (const SweepRow& row : rows) {
        out << format_g12(row.mu_t) << ',' << format_g12(row.mu_r) << ','
            << format_g12(row.r) << ',' << format_g12(row.delta_s_dec) << ','
            << format_g12(row.delta_p_dec) << ',' << format_g12(row.delta_s_lb) << ','
            << format_g12(row.delta_p_lb) << ',' << format_g12(row.gap_s) << ','
            << format_g12(row.gap_p) << ',' << format_g12(row.ratio_s) << ','
            << format_g12(row.ratio_p) << '\n';
    }
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& out) {
    nlohmann::json j = nlohmann::json::array();
    for (const SweepRow& row : rows)
        j.push_back({{"mu_t", row.mu_t},
                     {"mu_r", row.mu_r},
                     {"r", row.r},
                     {"delta_s_dec", row.delta_s_dec},
                     {"delta_p_dec", row.delta_p_dec},
                     {"delta_s_lb", row.delta_s_lb},
                     {"delta_p_lb", row.delta_p_lb},
                     {"gap_s", row.gap_s},
                     {"gap_p", row.gap_p},
                     {"ratio_s", row.ratio_s},
                     {"ratio_p", row.ratio_p}});
    out << j.dump(2) << '\n';
}

void write_csv(const std::vector<CompareRow>& rows, std::ostream& out) {
    out << "mu_r,delta_two_antenna,delta_single_antenna,difference\n";
    for (const CompareRow& row : rows) {
        out << format_g12(row.mu_r) << ',' << format_g12(row.two_antenna) << ','
            << format_g12(row.single_antenna) << ',' << format_g12(row.difference)
            << '\n';
    }
}

void write_json(const std::vector<CompareRow>& rows, std::ostream& out) {
    nlohmann::json j = nlohmann::json::array();
    for (const CompareRow& row : rows)
        j.push_back({{"mu_r", row.mu_r},
                     {"delta_two_antenna", row.two_antenna},
                     {"delta_single_antenna", row.single_antenna},
                     {"difference", row.difference}});
    out << j.dump(2) << '\n';
}

template <typename Row>
void emit_rows(const std::vector<Row>& rows, TableFormat format, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("no rows to emit");
    if (format == TableFormat::csv)
        write_csv(rows, out);
    else
        write_json(rows, out);
}

template <typename Row>
void emit_rows_to_path(const std::vector<Row>& rows, TableFormat format,
                       const std::string& path) {
    if (path.empty()) throw std::invalid_argument("output path must not be empty");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    emit_rows(rows, format, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void emit_table(const std::vector<SweepRow>& rows, TableFormat format, std::ostream& out) {
    emit_rows(rows, format, out);
}

void emit_table(const std::vector<SweepRow>& rows, TableFormat format,
                const std::string& path) {
    emit_rows_to_path(rows, format, path);
}

void emit_table(const std::vector<CompareRow>& rows, TableFormat format,
                std::ostream& out) {
    emit_rows(rows, format, out);
}

void emit_table(const std::vector<CompareRow>& rows, TableFormat format,
                const std::string& path) {
    emit_rows_to_path(rows, format, path);
}

}  // namespace fran::analysis
