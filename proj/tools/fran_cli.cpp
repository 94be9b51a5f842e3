// Command-line front end: closed-form NDT evaluation, cut-set lower bounds,
// gap sweeps, baseline comparison, optimality region checks, and the
// bit-level placement/delivery simulator.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fran/analysis.hpp"
#include "fran/bounds.hpp"
#include "fran/config.hpp"
#include "fran/delivery.hpp"
#include "fran/ndt.hpp"
#include "fran/placement.hpp"
#include "json.hpp"

namespace {

using fran::analysis::format_g12;

struct Options {
    int kt = 2;
    int kr = 2;
    int files = 0;  // 0 -> kr
    double mu_t = 0.0;
    double mu_r = 0.0;
    double r = 1.0;
    std::uint64_t bits = 100000;
    std::uint64_t seed = 1;
    double step = 0.01;
    std::string format = "csv";
    std::string output;
    std::string stage5 = "a";
    std::string stats;  // fragment statistics CSV (simulate)
    bool verbose = false;
};

fran::SystemConfig to_config(const Options& opt) {
    fran::SystemConfig cfg;
    cfg.kt = opt.kt;
    cfg.kr = opt.kr;
    cfg.n_files = opt.files > 0 ? opt.files : opt.kr;
    cfg.mu_t = opt.mu_t;
    cfg.mu_r = opt.mu_r;
    cfg.r = opt.r;
    cfg.file_bits = opt.bits;
    cfg.seed = opt.seed;
    return cfg;
}

// Optional JSON file with the same field names as the long flags; explicit
// flags override it.
void load_config_file(const std::string& path, Options& opt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("kt")) opt.kt = j["kt"].get<int>();
    if (j.contains("kr")) opt.kr = j["kr"].get<int>();
    if (j.contains("files")) opt.files = j["files"].get<int>();
    if (j.contains("mu-t")) opt.mu_t = j["mu-t"].get<double>();
    if (j.contains("mu-r")) opt.mu_r = j["mu-r"].get<double>();
    if (j.contains("r")) opt.r = j["r"].get<double>();
    if (j.contains("bits")) opt.bits = j["bits"].get<std::uint64_t>();
    if (j.contains("seed")) opt.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("step")) opt.step = j["step"].get<double>();
    if (j.contains("format")) opt.format = j["format"].get<std::string>();
    if (j.contains("output")) opt.output = j["output"].get<std::string>();
    if (j.contains("stage5")) opt.stage5 = j["stage5"].get<std::string>();
}

void add_shared_flags(CLI::App* sub, Options& opt) {
    sub->add_option("--kt", opt.kt, "number of edge nodes")->capture_default_str();
    sub->add_option("--kr", opt.kr, "number of users")->capture_default_str();
    sub->add_option("--files", opt.files, "library size (default: kr)");
    sub->add_option("--mu-t", opt.mu_t, "normalized EN cache size in [0,1]")
        ->capture_default_str();
    sub->add_option("--mu-r", opt.mu_r, "normalized user cache size in [0,1]")
        ->capture_default_str();
    sub->add_option("--r", opt.r, "fronthaul multiplexing gain (> 0)")
        ->capture_default_str();
    sub->add_option("--bits", opt.bits, "bits per file (simulation)")
        ->capture_default_str();
    sub->add_option("--seed", opt.seed, "RNG seed (simulation)")->capture_default_str();
    sub->add_option("--step", opt.step, "grid step for sweeps")->capture_default_str();
    sub->add_option("--format", opt.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("-o,--output", opt.output, "output file (default: stdout)");
    sub->add_flag("-v,--verbose", opt.verbose, "extra progress output on stderr");
    sub->add_option("--config", [](const std::vector<std::string>&) { return true; },
                    "JSON config file with the same field names");
}

fran::analysis::TableFormat table_format(const Options& opt) {
    return opt.format == "json" ? fran::analysis::TableFormat::json
                                : fran::analysis::TableFormat::csv;
}

int cmd_eval(const Options& opt) {
    const fran::SystemConfig cfg = to_config(opt);
    const fran::NdtBreakdown b = fran::formulas::ndt_breakdown(cfg);
    if (opt.format == "json") {
        nlohmann::json j;
        j["per_stage"] = nlohmann::json::array();
        for (const fran::StageNdt& s : b.per_stage)
            j["per_stage"].push_back({{"stage", fran::to_string(s.stage)},
                                      {"fronthaul", s.fronthaul},
                                      {"edge", s.edge}});
        j["scheme_a"] = {{"fronthaul", b.scheme_a.fronthaul}, {"edge", b.scheme_a.edge}};
        j["scheme_b"] = {{"fronthaul", b.scheme_b.fronthaul}, {"edge", b.scheme_b.edge}};
        j["serial"] = b.serial;
        j["pipelined"] = b.pipelined;
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    std::cout << "stage fronthaul edge\n";
    for (const fran::StageNdt& s : b.per_stage)
        std::cout << fran::to_string(s.stage) << ' ' << format_g12(s.fronthaul) << ' '
                  << format_g12(s.edge) << '\n';
    std::cout << "scheme_a " << format_g12(b.scheme_a.fronthaul) << ' '
              << format_g12(b.scheme_a.edge) << '\n';
    std::cout << "scheme_b " << format_g12(b.scheme_b.fronthaul) << ' '
              << format_g12(b.scheme_b.edge) << '\n';
    std::cout << "serial: " << format_g12(b.serial) << '\n';
    std::cout << "pipelined: " << format_g12(b.pipelined) << '\n';
    return 0;
}

int cmd_bound(const Options& opt) {
    const fran::SystemConfig cfg = to_config(opt);
    const fran::bounds::LowerBoundResult lb = fran::bounds::serial_lower_bound(cfg);
    const fran::bounds::PipelinedBound plb = fran::bounds::pipelined_lower_bound_detail(cfg);
    if (opt.format == "json") {
        nlohmann::json j;
        j["delta_f"] = lb.delta_f;
        j["delta_e"] = lb.delta_e;
        j["delta_lb"] = lb.delta_lb;
        j["active_constraints"] = lb.active_constraints;
        j["pipelined_lb"] = plb.value;
        j["pipelined_argmax_s"] = plb.argmax_s;
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    std::cout << "delta_f: " << format_g12(lb.delta_f) << '\n';
    std::cout << "delta_e: " << format_g12(lb.delta_e) << '\n';
    std::cout << "delta_lb: " << format_g12(lb.delta_lb) << '\n';
    std::cout << "active_s:";
    for (int s : lb.active_constraints) std::cout << ' ' << s;
    std::cout << '\n';
    std::cout << "pipelined_lb: " << format_g12(plb.value);
    if (plb.argmax_s >= 0)
        std::cout << " (argmax s=" << plb.argmax_s << ")\n";
    else
        std::cout << " (user-cache bound)\n";
    return 0;
}

int cmd_sweep(const Options& opt) {
    const fran::analysis::GapSweepResult result =
        fran::analysis::gap_sweep(opt.kr, opt.r, opt.step);
    if (opt.output.empty())
        fran::analysis::emit_table(result.rows, table_format(opt), std::cout);
    else
        fran::analysis::emit_table(result.rows, table_format(opt), opt.output);
    std::cerr << "max gap_s " << format_g12(result.summary.max_gap_s) << " at mu_t="
              << format_g12(result.summary.argmax_s_mu_t)
              << " mu_r=" << format_g12(result.summary.argmax_s_mu_r) << "; max gap_p "
              << format_g12(result.summary.max_gap_p) << " at mu_t="
              << format_g12(result.summary.argmax_p_mu_t)
              << " mu_r=" << format_g12(result.summary.argmax_p_mu_r) << '\n';
    return 0;
}

int cmd_compare(const Options& opt) {
    const std::vector<fran::analysis::CompareRow> rows =
        fran::analysis::compare_baseline(opt.kr, opt.step);
    if (opt.output.empty())
        fran::analysis::emit_table(rows, table_format(opt), std::cout);
    else
        fran::analysis::emit_table(rows, table_format(opt), opt.output);
    return 0;
}

void print_region(const fran::analysis::RegionCheck& check) {
    std::cout << "  " << check.name << ": " << (check.pass ? "pass" : "FAIL")
              << " (points=" << check.points << ", worst=" << format_g12(check.worst)
              << " at mu_t=" << format_g12(check.worst_mu_t)
              << " r=" << format_g12(check.worst_r) << ")\n";
}

int cmd_optimality(const Options& opt) {
    const fran::analysis::OptimalityReport report = fran::analysis::optimality_check(opt.kr);
    std::cout << "kr=" << opt.kr << '\n';
    print_region(report.p1_high_r);
    print_region(report.p1_low_mu);
    print_region(report.p2_high_r);
    print_region(report.p2_low_mu);
    std::cout << (report.p1_pass() ? "P1 pass" : "P1 FAIL") << ", "
              << (report.p2_pass() ? "P2 pass" : "P2 FAIL") << '\n';
    std::cout << "unverified grid points: " << report.unverified << '\n';
    return report.p1_pass() && report.p2_pass() ? 0 : 1;
}

int cmd_simulate(const Options& opt) {
    const fran::SystemConfig cfg = to_config(opt);
    if (opt.stage5 != "a" && opt.stage5 != "b")
        throw std::invalid_argument("--stage5 must be a or b");
    if (opt.verbose) std::cerr << "placing caches (seed " << cfg.seed << ")\n";
    const fran::placement::CacheState state = fran::placement::place_caches(cfg);
    const fran::placement::FragmentPartition partition =
        fran::placement::partition_files(state);
    if (!opt.stats.empty()) {
        std::ofstream stats_out(opt.stats, std::ios::binary);
        if (!stats_out) throw std::runtime_error("cannot open stats file: " + opt.stats);
        fran::placement::write_fragment_stats_csv(
            fran::placement::empirical_fragment_stats(partition, cfg), stats_out);
    }
    const fran::DemandVector demands = fran::worst_case_demands(cfg);
    if (opt.verbose) std::cerr << "running delivery (stage 5" << opt.stage5 << ")\n";
    const fran::delivery::DeliveryReport report =
        fran::delivery::run_delivery(cfg, state, partition, demands, opt.stage5[0]);

    nlohmann::json j = nlohmann::json::parse(fran::delivery::report_json(report));
    const fran::NdtBreakdown analytic = fran::formulas::ndt_breakdown(cfg);
    nlohmann::json deltas = nlohmann::json::array();
    for (std::size_t i = 0; i < analytic.per_stage.size(); ++i) {
        const fran::StageNdt& sim = report.ndt.per_stage[i];
        const fran::StageNdt& ref = analytic.per_stage[i];
        deltas.push_back({{"stage", fran::to_string(sim.stage)},
                          {"fronthaul_sim", sim.fronthaul},
                          {"fronthaul_formula", ref.fronthaul},
                          {"edge_sim", sim.edge},
                          {"edge_formula", ref.edge}});
    }
    deltas.push_back({{"stage", "serial"},
                      {"sim", report.ndt.serial},
                      {"formula", analytic.serial}});
    deltas.push_back({{"stage", "pipelined"},
                      {"sim", report.ndt.pipelined},
                      {"formula", analytic.pipelined}});
    j["empirical_vs_analytic"] = deltas;

    if (opt.output.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(opt.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + opt.output);
        out << j.dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;

    // --config is applied before parsing so explicit flags win.
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        try {
            if (arg == "--config" && i + 1 < argc) {
                load_config_file(argv[i + 1], opt);
            } else if (arg.rfind("--config=", 0) == 0) {
                load_config_file(arg.substr(9), opt);
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
    }

    CLI::App app{"decentralized coded-caching NDT toolkit for 2xK fog networks"};
    app.require_subcommand(1);

    CLI::App* eval = app.add_subcommand("eval", "per-stage and aggregate NDTs");
    CLI::App* bound = app.add_subcommand("bound", "cut-set lower bounds");
    CLI::App* sweep = app.add_subcommand("sweep", "gap sweep over (mu_t, mu_r)");
    CLI::App* compare =
        app.add_subcommand("compare", "two- vs single-antenna comparison at mu_t=1");
    CLI::App* optimality =
        app.add_subcommand("optimality", "optimality/approximation region checks");
    CLI::App* simulate =
        app.add_subcommand("simulate", "bit-level placement + delivery simulation");
    for (CLI::App* sub : {eval, bound, sweep, compare, optimality, simulate})
        add_shared_flags(sub, opt);
    simulate->add_option("--stage5", opt.stage5, "stage-5 variant: a or b")
        ->check(CLI::IsMember({"a", "b"}))
        ->capture_default_str();
    simulate->add_option("--stats", opt.stats,
                         "write fragment-size statistics CSV to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval(opt);
        if (bound->parsed()) return cmd_bound(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (compare->parsed()) return cmd_compare(opt);
        if (optimality->parsed()) return cmd_optimality(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
