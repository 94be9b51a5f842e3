#include "fran/ndt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fran {

const char* to_string(Stage stage) {
    switch (stage) {
        case Stage::s1: return "1";
        case Stage::s2: return "2";
        case Stage::s3: return "3";
        case Stage::s4: return "4";
        case Stage::s5a: return "5a";
        case Stage::s5b: return "5b";
    }
    return "?";
}

namespace formulas {
namespace {

std::vector<double> powers(double x, int n) {
    std::vector<double> p(n + 1);
    p[0] = 1.0;
    for (int i = 1; i <= n; ++i) p[i] = p[i - 1] * x;
    return p;
}

// sum_{i=2}^{kr} C(kr,i) mu_r^(i-1) (1-mu_r)^(kr-i+1), the per-EN-state
// factor shared by the two multicast stages.  Binomials grow by the
// multiplicative recurrence; every term stays bounded by (1-mu_r)/mu_r
// times a binomial probability, so double precision is safe for kr in the
// hundreds.
double coded_user_sum(int kr, double mu_r) {
    if (kr < 2) return 0.0;
    const std::vector<double> pr = powers(mu_r, kr);
    const std::vector<double> q = powers(1.0 - mu_r, kr);
    double binom = 0.5 * kr * (kr - 1);  // C(kr, 2)
    double sum = 0.0;
    for (int i = 2; i <= kr; ++i) {
        sum += binom * pr[i - 1] * q[kr - i + 1];
        binom *= static_cast<double>(kr - i) / (i + 1);
    }
    return sum;
}

// sum_{j=0}^{n-1} q^j; the geometric-series core of the closed forms,
// finite at q = 1 where the textbook (1-q^n)/(1-q) quotient is not.
double geometric_sum(double q, int n) {
    double g = 0.0, p = 1.0;
    for (int j = 0; j < n; ++j) {
        g += p;
        p *= q;
    }
    return g;
}

void check_two_en(const SystemConfig& cfg) {
    validate_config(cfg);
    require_two_edge_nodes(cfg);
}

}  // namespace

double expected_fragment_fraction(const SystemConfig& cfg, int st_size, int sr_size) {
    validate_config(cfg);
    if (st_size < 0 || st_size > cfg.kt)
        throw std::invalid_argument("st_size out of [0, kt]");
    if (sr_size < 0 || sr_size > cfg.kr)
        throw std::invalid_argument("sr_size out of [0, kr]");
    return std::pow(cfg.mu_t, st_size) * std::pow(1.0 - cfg.mu_t, cfg.kt - st_size) *
           std::pow(cfg.mu_r, sr_size) * std::pow(1.0 - cfg.mu_r, cfg.kr - sr_size);
}

double multicast_rate_r2(const SystemConfig& cfg) {
    check_two_en(cfg);
    const double qt = 1.0 - cfg.mu_t;
    return qt * qt * coded_user_sum(cfg.kr, cfg.mu_r);
}

double multicast_rate_r3(const SystemConfig& cfg) {
    check_two_en(cfg);
    if (cfg.kr < 2) return 0.0;
    const std::vector<double> pr = powers(cfg.mu_r, cfg.kr);
    const std::vector<double> q = powers(1.0 - cfg.mu_r, cfg.kr);
    double sum = 0.0;
    for (int t = 1; t <= 2; ++t) {
        const double en_weight = (t == 1 ? 2.0 : 1.0) * std::pow(cfg.mu_t, t) *
                                 std::pow(1.0 - cfg.mu_t, 2 - t);
        double binom = 0.5 * cfg.kr * (cfg.kr - 1);
        for (int i = 2; i <= cfg.kr; ++i) {
            sum += en_weight * binom * pr[i - 1] * q[cfg.kr - i + 1];
            binom *= static_cast<double>(cfg.kr - i) / (i + 1);
        }
    }
    return sum;
}

double multicast_rate_r2_closed(const SystemConfig& cfg) {
    check_two_en(cfg);
    const double qt = 1.0 - cfg.mu_t;
    const double qr = 1.0 - cfg.mu_r;
    const double g = geometric_sum(qr, cfg.kr);
    return qt * qt * qr * (g - cfg.kr * std::pow(qr, cfg.kr - 1));
}

double multicast_rate_r3_closed(const SystemConfig& cfg) {
    check_two_en(cfg);
    const double qt = 1.0 - cfg.mu_t;
    const double qr = 1.0 - cfg.mu_r;
    const double g = geometric_sum(qr, cfg.kr);
    return (1.0 - qt * qt) * qr * (g - cfg.kr * std::pow(qr, cfg.kr - 1));
}

StageNdt stage_ndt(const SystemConfig& cfg, Stage stage) {
    check_two_en(cfg);
    const double kr = cfg.kr;
    const double qt = 1.0 - cfg.mu_t;
    const double qr_kr = std::pow(1.0 - cfg.mu_r, cfg.kr);
    const double one_en = cfg.mu_t * qt * qr_kr;  // fragment at exactly one EN

    StageNdt out;
    out.stage = stage;
    switch (stage) {
        case Stage::s1: {
            const double edge = 0.5 * kr * qt * qt * qr_kr;
            out.fronthaul = edge / cfg.r;
            out.edge = edge;
            break;
        }
        case Stage::s2: {
            const double rate = multicast_rate_r2(cfg);
            out.fronthaul = rate / cfg.r;
            out.edge = rate;
            break;
        }
        case Stage::s3:
            out.edge = multicast_rate_r3(cfg);
            break;
        case Stage::s4:
            out.edge = 0.5 * kr * cfg.mu_t * cfg.mu_t * qr_kr;
            break;
        case Stage::s5a:
            out.edge = (kr + 1.0) * one_en;
            break;
        case Stage::s5b:
            out.fronthaul = kr * one_en / cfg.r;
            out.edge = kr * one_en;
            break;
    }
    return out;
}

SchemePair scheme_ndt(const SystemConfig& cfg, Scheme scheme) {
    const Stage fifth = scheme == Scheme::a ? Stage::s5a : Stage::s5b;
    SchemePair sum;
    for (Stage s : {Stage::s1, Stage::s2, Stage::s3, Stage::s4, fifth}) {
        const StageNdt part = stage_ndt(cfg, s);
        sum.fronthaul += part.fronthaul;
        sum.edge += part.edge;
    }
    return sum;
}

SchemePair scheme_ndt_closed(const SystemConfig& cfg, Scheme scheme) {
    check_two_en(cfg);
    const double kr = cfg.kr;
    const double qt = 1.0 - cfg.mu_t;
    const double qr = 1.0 - cfg.mu_r;
    const double g = geometric_sum(qr, cfg.kr);
    const double q_last = std::pow(qr, cfg.kr - 1);

    SchemePair out;
    if (scheme == Scheme::a) {
        out.fronthaul = qt * qt * qr * (g - 0.5 * kr * q_last) / cfg.r;
        out.edge = qr * (g - (0.5 * kr - cfg.mu_t * qt) * q_last);
    } else {
        out.fronthaul =
            qr * (qt * qt * g - 0.5 * kr * q_last * qt * (1.0 - 3.0 * cfg.mu_t)) / cfg.r;
        out.edge = qr * (g - 0.5 * kr * q_last);
    }
    return out;
}

double serial_ndt(const SystemConfig& cfg) {
    const SchemePair a = scheme_ndt(cfg, Scheme::a);
    const SchemePair b = scheme_ndt(cfg, Scheme::b);
    return std::min(a.fronthaul + a.edge, b.fronthaul + b.edge);
}

double pipelined_ndt(const SystemConfig& cfg) {
    const SchemePair a = scheme_ndt(cfg, Scheme::a);
    const SchemePair b = scheme_ndt(cfg, Scheme::b);
    return std::min(std::max(a.fronthaul, a.edge), std::max(b.fronthaul, b.edge));
}

NdtBreakdown ndt_breakdown(const SystemConfig& cfg) {
    NdtBreakdown out;
    for (Stage s : {Stage::s1, Stage::s2, Stage::s3, Stage::s4, Stage::s5a, Stage::s5b})
        out.per_stage.push_back(stage_ndt(cfg, s));
    out.scheme_a = scheme_ndt(cfg, Scheme::a);
    out.scheme_b = scheme_ndt(cfg, Scheme::b);
    out.serial = std::min(out.scheme_a.fronthaul + out.scheme_a.edge,
                          out.scheme_b.fronthaul + out.scheme_b.edge);
    out.pipelined = std::min(std::max(out.scheme_a.fronthaul, out.scheme_a.edge),
                             std::max(out.scheme_b.fronthaul, out.scheme_b.edge));
    return out;
}

double miso_special_ndt(const SystemConfig& cfg) {
    validate_config(cfg);
    const double qr = 1.0 - cfg.mu_r;
    // (1-mu_r)/mu_r [1 - (1-mu_r)^kr - (kr/2) mu_r (1-mu_r)^(kr-1)] written as
    // a polynomial in mu_r, so mu_r = 0 needs no special case.
    double tail = 0.0, p = 1.0;
    for (int j = 1; j <= cfg.kr; ++j) {
        p *= qr;
        tail += p;
    }
    return tail - 0.5 * cfg.kr * p;
}

double baseline_single_antenna_ndt(const SystemConfig& cfg) {
    validate_config(cfg);
    const double qr = 1.0 - cfg.mu_r;
    double tail = 0.0, p = 1.0;
    for (int j = 1; j <= cfg.kr; ++j) {
        p *= qr;
        tail += p;
    }
    return tail;
}

double en_only_ndt(const SystemConfig& cfg, TransferMode mode) {
    check_two_en(cfg);
    if (cfg.mu_r != 0.0)
        throw std::invalid_argument("en_only_ndt requires mu_r = 0");

    const double kr = cfg.kr;
    const double qt = 1.0 - cfg.mu_t;
    if (mode == TransferMode::serial) {
        if (cfg.r <= kr)
            return 0.5 * kr * (qt * qt / cfg.r + 1.0) + cfg.mu_t * qt;
        return 0.5 * kr * ((1.0 - cfg.mu_t * cfg.mu_t) / cfg.r + 1.0);
    }

    // Pipelined piecewise from min over schemes of max(fronthaul, edge).
    // Between the fronthaul-limited branches there is an edge-limited
    // plateau at kr/2 + mu_t(1-mu_t) where scheme a wins.
    const double r1 = 1.0 - cfg.mu_t * cfg.mu_t;
    const double denom = 1.0 + 2.0 * cfg.mu_t * qt / kr;
    const double rb = r1 / denom;
    const double r2 = qt * qt / denom;
    if (cfg.r >= r1) return 0.5 * kr;
    if (cfg.r >= rb) return 0.5 * kr * (1.0 - cfg.mu_t * cfg.mu_t) / cfg.r;
    if (cfg.r >= r2) return 0.5 * kr + cfg.mu_t * qt;
    return 0.5 * kr * qt * qt / cfg.r;
}

}  // namespace formulas
}  // namespace fran
