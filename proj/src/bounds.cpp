#include "fran/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fran::bounds {
namespace {

constexpr double kFeasTol = 1e-9;

bool feasible(const std::vector<LpConstraint>& cons, double x, double y) {
    for (const LpConstraint& c : cons) {
        const double slack = c.a * x + c.b * y - c.c;
        if (slack < -kFeasTol * std::max(1.0, std::fabs(c.c))) return false;
    }
    return true;
}

}  // namespace

double cutset_f(const SystemConfig& cfg, int s) {
    validate_config(cfg);
    const int s_max = std::min(cfg.kt, cfg.kr);
    if (s < 0 || s > s_max)
        throw std::invalid_argument("s out of [0, min(kt, kr)]");
    const double kr = cfg.kr;
    const double kt = cfg.kt;
    return kr * (1.0 - s * cfg.mu_r) -
           (kr - s) * ((kr - s) * cfg.mu_r + (kt - s) * cfg.mu_t);
}

std::vector<CutsetConstraint> cutset_constraints(const SystemConfig& cfg) {
    validate_config(cfg);
    std::vector<CutsetConstraint> out;
    const int s_max = std::min(cfg.kt, cfg.kr);
    out.reserve(s_max + 1);
    for (int s = 0; s <= s_max; ++s)
        out.push_back({s, static_cast<double>(s), (cfg.kt - s) * cfg.r, cutset_f(cfg, s)});
    return out;
}

LpSolution solve_lp_2d(const std::vector<LpConstraint>& constraints) {
    for (const LpConstraint& c : constraints) {
        if (c.a < 0.0 || c.b < 0.0)
            throw std::invalid_argument("constraint coefficients must be nonnegative");
        if (c.a == 0.0 && c.b == 0.0)
            throw std::invalid_argument("constraint must involve x or y");
    }

    // Boundary lines of all half-planes, plus the axes bounds x >= 0, y >= 0.
    std::vector<LpConstraint> lines = constraints;
    lines.push_back({1.0, 0.0, 0.0});
    lines.push_back({0.0, 1.0, 0.0});

    const std::size_t n = lines.size();
    bool found = false;
    double best_x = 0.0, best_y = 0.0, best_v = std::numeric_limits<double>::infinity();

    auto consider = [&](double x, double y) {
        if (!(x >= -kFeasTol && y >= -kFeasTol)) return;
        if (!(x > 0.0)) x = 0.0;  // also normalizes -0
        if (!(y > 0.0)) y = 0.0;
        if (!feasible(constraints, x, y)) return;
        const double v = x + y;
        const double tie = 1e-12 * std::max(1.0, std::fabs(best_v));
        if (!found || v < best_v - tie ||
            (v <= best_v + tie && (x < best_x || (x == best_x && y < best_y)))) {
            found = true;
            best_x = x;
            best_y = y;
            best_v = std::min(v, best_v);
        }
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
            const double scale = std::fabs(lines[i].a * lines[j].b) +
                                 std::fabs(lines[j].a * lines[i].b);
            if (std::fabs(det) <= 1e-14 * std::max(1.0, scale)) continue;  // parallel
            const double x = (lines[i].c * lines[j].b - lines[j].c * lines[i].b) / det;
            const double y = (lines[i].a * lines[j].c - lines[j].a * lines[i].c) / det;
            consider(x, y);
        }
    }

    if (!found) throw std::runtime_error("infeasible linear program");

    LpSolution sol;
    sol.x = best_x;
    sol.y = best_y;
    sol.value = best_x + best_y;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const LpConstraint& c = constraints[i];
        const double slack = c.a * best_x + c.b * best_y - c.c;
        if (std::fabs(slack) <= kFeasTol * std::max(1.0, std::fabs(c.c)))
            sol.active.push_back(static_cast<int>(i));
    }
    return sol;
}

LowerBoundResult serial_lower_bound(const SystemConfig& cfg) {
    const std::vector<CutsetConstraint> cuts = cutset_constraints(cfg);
    std::vector<LpConstraint> cons;
    cons.reserve(cuts.size() + 1);
    for (const CutsetConstraint& c : cuts)
        cons.push_back({c.fronthaul_coeff, c.edge_coeff, c.rhs});
    cons.push_back({0.0, 1.0, 1.0 - cfg.mu_r});

    const LpSolution sol = solve_lp_2d(cons);
    LowerBoundResult out;
    out.delta_f = sol.x;
    out.delta_e = sol.y;
    out.delta_lb = sol.value;
    for (int idx : sol.active)
        if (idx < static_cast<int>(cuts.size()))
            out.active_constraints.push_back(cuts[idx].s);
    return out;
}

PipelinedBound pipelined_lower_bound_detail(const SystemConfig& cfg) {
    const std::vector<CutsetConstraint> cuts = cutset_constraints(cfg);
    PipelinedBound out;
    out.value = 1.0 - cfg.mu_r;
    out.argmax_s = -1;
    for (const CutsetConstraint& c : cuts) {
        const double denom = c.edge_coeff + c.fronthaul_coeff;
        if (denom <= 0.0) continue;  // cannot occur for s >= 1 or r > 0
        const double candidate = c.rhs / denom;
        if (candidate > out.value) {
            out.value = candidate;
            out.argmax_s = c.s;
        }
    }
    return out;
}

double pipelined_lower_bound(const SystemConfig& cfg) {
    return pipelined_lower_bound_detail(cfg).value;
}

}  // namespace fran::bounds
