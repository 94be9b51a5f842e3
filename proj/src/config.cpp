#include "fran/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fran {

void validate_config(const SystemConfig& cfg) {
    if (cfg.kt < 1) throw std::invalid_argument("kt must be >= 1");
    if (cfg.kr < 1) throw std::invalid_argument("kr must be >= 1");
    if (cfg.n_files < 1) throw std::invalid_argument("n_files must be >= 1");
    if (!(cfg.mu_t >= 0.0 && cfg.mu_t <= 1.0))
        throw std::invalid_argument("mu_t out of [0,1]");
    if (!(cfg.mu_r >= 0.0 && cfg.mu_r <= 1.0))
        throw std::invalid_argument("mu_r out of [0,1]");
    if (!(cfg.r > 0.0) || !std::isfinite(cfg.r))
        throw std::invalid_argument("r must be > 0");
}

void require_two_edge_nodes(const SystemConfig& cfg) {
    if (cfg.kt != 2)
        throw std::invalid_argument(
            "unsupported topology: the delivery scheme requires kt = 2");
}

DemandVector worst_case_demands(const SystemConfig& cfg) {
    validate_config(cfg);
    if (cfg.n_files < cfg.kr)
        throw std::invalid_argument(
            "n_files must be >= kr for distinct worst-case demands");
    DemandVector d;
    d.demands.resize(cfg.kr);
    for (int k = 0; k < cfg.kr; ++k) d.demands[k] = k + 1;
    return d;
}

void validate_demands(const SystemConfig& cfg, const DemandVector& d) {
    if (static_cast<int>(d.demands.size()) != cfg.kr)
        throw std::invalid_argument("demand vector must have one entry per user");
    for (int file : d.demands)
        if (file < 1 || file > cfg.n_files)
            throw std::invalid_argument("demand outside [1, n_files]");
}

bool has_repeated_demands(const DemandVector& d) {
    std::vector<int> sorted = d.demands;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace fran
