#pragma once

#include <vector>

#include "fran/config.hpp"

namespace fran::bounds {

// One cut-set constraint: s*delta_E + (kt-s)*r*delta_F >= f(s).
struct CutsetConstraint {
    int s = 0;
    double edge_coeff = 0.0;
    double fronthaul_coeff = 0.0;
    double rhs = 0.0;
};

// f(s) = kr(1 - s*mu_r) - (kr-s)[(kr-s)*mu_r + (kt-s)*mu_t]; may be negative,
// in which case the constraint is slack.  s must lie in [0, min(kt, kr)].
double cutset_f(const SystemConfig& cfg, int s);

std::vector<CutsetConstraint> cutset_constraints(const SystemConfig& cfg);

// a*x + b*y >= c with a, b >= 0 and (a, b) != (0, 0).
struct LpConstraint {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

struct LpSolution {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    std::vector<int> active;  // indices of tight caller constraints
};

// Minimizes x + y over the given half-planes plus x >= 0, y >= 0, by exact
// vertex enumeration.  Ties resolve to the smallest x, then smallest y.
LpSolution solve_lp_2d(const std::vector<LpConstraint>& constraints);

struct LowerBoundResult {
    double delta_f = 0.0;
    double delta_e = 0.0;
    double delta_lb = 0.0;               // delta_f + delta_e
    std::vector<int> active_constraints; // s values tight at the optimum
};

// Serial lower bound: min delta_F + delta_E subject to the cut-set family,
// delta_F >= 0 and delta_E >= 1 - mu_r.
LowerBoundResult serial_lower_bound(const SystemConfig& cfg);

struct PipelinedBound {
    double value = 0.0;
    int argmax_s = -1;  // -1 when the (1 - mu_r) term dominates
};

// max over s of f(s) / (s + (kt-s)*r), clamped below by 1 - mu_r.
double pipelined_lower_bound(const SystemConfig& cfg);
PipelinedBound pipelined_lower_bound_detail(const SystemConfig& cfg);

}  // namespace fran::bounds
