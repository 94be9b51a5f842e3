#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "fran/bounds.hpp"
#include "fran/config.hpp"
#include "fran/rng.hpp"

namespace testutil {

inline fran::SystemConfig make_cfg(int kt, int kr, double mu_t, double mu_r, double r,
                                   int n_files = 0) {
    fran::SystemConfig cfg;
    cfg.kt = kt;
    cfg.kr = kr;
    cfg.n_files = n_files > 0 ? n_files : std::max(1, kr);
    cfg.mu_t = mu_t;
    cfg.mu_r = mu_r;
    cfg.r = r;
    return cfg;
}

inline double rel_err(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    if (scale == 0.0) return 0.0;
    return std::fabs(a - b) / scale;
}

// Deterministic helper RNG for generated test instances.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (rng_.next() >> 11) * 0x1.0p-53;
    }

    double log_uniform(double lo, double hi) {
        return lo * std::exp(uniform(0.0, std::log(hi / lo)));
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(rng_.below(hi - lo + 1));
    }

private:
    fran::SplitMix64 rng_;
};

// Independent binomial-coefficient oracle (Pascal's triangle).
inline double binom_oracle(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    std::vector<double> row(n + 1, 0.0);
    row[0] = 1.0;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[j] += row[j - 1];
    return row[k];
}

// Minimum of x + y over the feasible grid points of step `step` in the box
// [0, box]^2: the dense-grid brute force.  For each grid x the smallest
// feasible grid y is found in closed form, which scans the same point set a
// full double loop would.
inline double dense_grid_lp_min(const std::vector<fran::bounds::LpConstraint>& cons,
                                double box, double step) {
    const long nx = static_cast<long>(std::floor(box / step + 1e-9));
    double best = std::numeric_limits<double>::infinity();
    for (long ix = 0; ix <= nx; ++ix) {
        const double x = ix * step;
        double y_min = 0.0;
        bool feasible_x = true;
        for (const fran::bounds::LpConstraint& c : cons) {
            if (c.b > 0.0) {
                y_min = std::max(y_min, (c.c - c.a * x) / c.b);
            } else if (c.a * x < c.c) {
                feasible_x = false;
                break;
            }
        }
        if (!feasible_x) continue;
        long iy = static_cast<long>(std::ceil(y_min / step - 1e-12));
        if (iy < 0) iy = 0;
        while (iy * step < y_min) ++iy;  // float safety
        if (iy * step > box + 1e-12) continue;
        best = std::min(best, x + iy * step);
    }
    return best;
}

inline std::vector<fran::bounds::LpConstraint> serial_lp_constraints(
    const fran::SystemConfig& cfg) {
    std::vector<fran::bounds::LpConstraint> cons;
    for (const fran::bounds::CutsetConstraint& c : fran::bounds::cutset_constraints(cfg))
        cons.push_back({c.fronthaul_coeff, c.edge_coeff, c.rhs});
    cons.push_back({0.0, 1.0, 1.0 - cfg.mu_r});
    return cons;
}

inline double lp_box(const fran::SystemConfig& cfg) {
    double max_f = 0.0;
    for (const fran::bounds::CutsetConstraint& c : fran::bounds::cutset_constraints(cfg))
        max_f = std::max(max_f, c.rhs);
    return 2.0 * std::max(max_f, static_cast<double>(cfg.kr));
}

}  // namespace testutil
