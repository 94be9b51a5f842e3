#include "fran/delivery.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "fran/keys.hpp"
#include "fran/rng.hpp"
#include "json.hpp"

namespace fran::delivery {
namespace {

constexpr std::uint64_t kContentTag = 0xC0DEDBEEF00DULL;

std::uint64_t content_word(int file_id, std::uint64_t word_index) {
    return mix64(mix64(kContentTag ^ static_cast<std::uint64_t>(file_id)) ^ word_index);
}

using Words = std::vector<std::uint64_t>;

// Packed payload of a fragment: bit j is the content bit at the j-th index.
Words pack_payload(const Bitset& content, const std::vector<std::uint32_t>& indices) {
    Words words((indices.size() + 63) / 64, 0);
    for (std::size_t j = 0; j < indices.size(); ++j)
        if (content.test(indices[j])) words[j >> 6] |= 1ULL << (j & 63);
    return words;
}

void xor_into(Words& acc, const Words& other) {
    if (other.size() > acc.size()) acc.resize(other.size(), 0);
    for (std::size_t w = 0; w < other.size(); ++w) acc[w] ^= other[w];
}

struct UserWorkspace {
    Bitset known;
    Bitset value;
};

struct DecodeContext {
    const placement::CacheState* state = nullptr;
    const placement::FragmentPartition* partition = nullptr;
    const DemandVector* demands = nullptr;
    std::vector<Bitset> content;  // per demanded user, content of d_k
    std::vector<UserWorkspace> users;

    const std::vector<std::uint32_t>& fragment(int user, const FragmentKey& key) const {
        const int file = (*demands).demands[user] - 1;
        return (*partition).fragments[file][fragment_key_index(key, state->kt, state->kr)];
    }

    // Marks fragment bits as received; every bit must arrive exactly once.
    void accept(int user, const std::vector<std::uint32_t>& indices, const Words& bits) {
        UserWorkspace& ws = users[user];
        for (std::size_t j = 0; j < indices.size(); ++j) {
            if (ws.known.test(indices[j]))
                throw std::logic_error("fragment delivered twice to the same user");
            ws.known.set(indices[j]);
            ws.value.assign(indices[j], (bits[j >> 6] >> (j & 63)) & 1ULL);
        }
    }
};

void require_en_cached(const placement::CacheState& state, std::uint32_t en_mask, int file,
                       const std::vector<std::uint32_t>& indices) {
    for (int i = 0; i < state.kt; ++i) {
        if (!((en_mask >> i) & 1u)) continue;
        for (std::uint32_t idx : indices)
            if (!state.en_bits[i][file].test(idx))
                throw std::logic_error("transmitting EN does not cache the fragment");
    }
}

}  // namespace

bool content_bit(int file_id, std::uint64_t index) {
    return (content_word(file_id, index >> 6) >> (index & 63)) & 1ULL;
}

Bitset file_content(int file_id, std::uint64_t file_bits) {
    Bitset content(file_bits);
    auto& words = content.words();
    for (std::size_t w = 0; w < words.size(); ++w) words[w] = content_word(file_id, w);
    const std::uint64_t tail = file_bits & 63;
    if (tail != 0) words.back() &= (1ULL << tail) - 1;
    return content;
}

DeliveryReport run_delivery(const SystemConfig& cfg, const placement::CacheState& state,
                            const placement::FragmentPartition& partition,
                            const DemandVector& demands, char stage5) {
    validate_config(cfg);
    require_two_edge_nodes(cfg);
    validate_demands(cfg, demands);
    if (stage5 != 'a' && stage5 != 'b')
        throw std::invalid_argument("stage5 must be 'a' or 'b'");
    if (cfg.kr > 20)
        throw std::invalid_argument("kr too large for the bit-level simulator");
    if (state.kt != cfg.kt || state.kr != cfg.kr || partition.kt != cfg.kt ||
        partition.kr != cfg.kr || state.file_bits != partition.file_bits ||
        state.file_bits != cfg.file_bits)
        throw std::invalid_argument("cache state / partition mismatch");

    const int kr = cfg.kr;
    const std::uint64_t file_bits = state.file_bits;

    DecodeContext ctx;
    ctx.state = &state;
    ctx.partition = &partition;
    ctx.demands = &demands;
    ctx.content.reserve(kr);
    ctx.users.resize(kr);
    for (int k = 0; k < kr; ++k) {
        const int file = demands.demands[k];
        ctx.content.push_back(file_content(file, file_bits));
        UserWorkspace& ws = ctx.users[k];
        ws.known = state.user_bits[k][file - 1];
        ws.value = ctx.content[k];
        for (std::size_t w = 0; w < ws.value.words().size(); ++w)
            ws.value.words()[w] &= ws.known.words()[w];
    }

    DeliveryReport report;
    report.stage5 = stage5;
    report.worst_case_demands = !has_repeated_demands(demands);
    StageTraffic t1{"1"}, t2{"2"}, t3{"3"}, t4{"4"};
    StageTraffic t5{stage5 == 'a' ? "5a" : "5b"};

    // Stage 1: fragments cached nowhere, cloud -> ENs -> zero-forced broadcast.
    for (int k = 0; k < kr; ++k) {
        const auto& frag = ctx.fragment(k, {0, 0});
        if (frag.empty()) continue;
        const Words payload = pack_payload(ctx.content[k], frag);
        t1.fronthaul_bits += frag.size();
        t1.edge_bits += frag.size();
        ++t1.messages;
        report.log.push_back({"1", 0b11u, 1u << k, frag.size()});
        ctx.accept(k, frag, payload);
    }

    // Stages 2 and 3: XOR multicast to every user group of size >= 2; each
    // member strips the operands it caches and keeps its own fragment.
    auto multicast_stage = [&](StageTraffic& traffic, const char* name,
                               std::uint32_t st_mask, bool over_fronthaul,
                               std::uint32_t tx_mask) {
        const std::uint32_t groups = 1u << kr;
        for (std::uint32_t sr = 0; sr < groups; ++sr) {
            if (std::popcount(sr) < 2) continue;
            std::vector<int> members;
            for (int k = 0; k < kr; ++k)
                if ((sr >> k) & 1u) members.push_back(k);

            std::size_t max_len = 0;
            std::vector<const std::vector<std::uint32_t>*> frags(members.size());
            for (std::size_t m = 0; m < members.size(); ++m) {
                const FragmentKey key{st_mask, sr & ~(1u << members[m])};
                frags[m] = &ctx.fragment(members[m], key);
                max_len = std::max(max_len, frags[m]->size());
            }
            if (max_len == 0) continue;

            std::vector<Words> payloads(members.size());
            Words message((max_len + 63) / 64, 0);
            for (std::size_t m = 0; m < members.size(); ++m) {
                const int file = demands.demands[members[m]];
                if (st_mask != 0)
                    require_en_cached(state, st_mask, file - 1, *frags[m]);
                payloads[m] = pack_payload(ctx.content[members[m]], *frags[m]);
                xor_into(message, payloads[m]);
            }

            traffic.edge_bits += max_len;
            if (over_fronthaul) traffic.fronthaul_bits += max_len;
            ++traffic.messages;
            report.log.push_back({name, tx_mask == 0 ? st_mask : tx_mask, sr, max_len});

            for (std::size_t m = 0; m < members.size(); ++m) {
                const int k = members[m];
                Words acc = message;
                for (std::size_t o = 0; o < members.size(); ++o) {
                    if (o == m) continue;
                    // The stripped operands must sit in user k's cache.
                    const int other_file = demands.demands[members[o]] - 1;
                    for (std::uint32_t idx : *frags[o])
                        if (!state.user_bits[k][other_file].test(idx))
                            throw std::logic_error(
                                "xor operand missing from receiver cache");
                    xor_into(acc, payloads[o]);
                }
                ctx.accept(k, *frags[m], acc);
            }
        }
    };

    multicast_stage(t2, "2", 0, true, 0b01u);  // EN 1 relays the cloud message
    for (std::uint32_t st : {0b01u, 0b10u, 0b11u})
        multicast_stage(t3, "3", st, false, 0);

    // Stage 4: fragments cached at both ENs, zero-forced broadcast.
    for (int k = 0; k < kr; ++k) {
        const auto& frag = ctx.fragment(k, {0b11u, 0});
        if (frag.empty()) continue;
        require_en_cached(state, 0b11u, demands.demands[k] - 1, frag);
        const Words payload = pack_payload(ctx.content[k], frag);
        t4.edge_bits += frag.size();
        ++t4.messages;
        report.log.push_back({"4", 0b11u, 1u << k, frag.size()});
        ctx.accept(k, frag, payload);
    }

    // Stage 5: fragments at exactly one EN.  Variant a keeps them where they
    // are (X-channel); variant b cross-ships them first and zero-forces.
    for (int k = 0; k < kr; ++k) {
        for (std::uint32_t en : {0b01u, 0b10u}) {
            const auto& frag = ctx.fragment(k, {en, 0});
            if (frag.empty()) continue;
            require_en_cached(state, en, demands.demands[k] - 1, frag);
            const Words payload = pack_payload(ctx.content[k], frag);
            t5.edge_bits += frag.size();
            if (stage5 == 'b') t5.fronthaul_bits += frag.size();
            ++t5.messages;
            report.log.push_back({t5.stage, stage5 == 'b' ? 0b11u : en, 1u << k,
                                  frag.size()});
            ctx.accept(k, frag, payload);
        }
    }

    report.stages = {t1, t2, t3, t4, t5};

    report.users.resize(kr);
    for (int k = 0; k < kr; ++k) {
        UserWorkspace& ws = ctx.users[k];
        const std::uint64_t missing = file_bits - ws.known.count();
        const bool ok = missing == 0 && ws.value == ctx.content[k];
        report.users[k] = {ok, missing};
        if (!ok) {
            std::uint64_t first_bad = 0;
            for (std::uint64_t b = 0; b < file_bits; ++b) {
                if (!ws.known.test(b) || ws.value.test(b) != ctx.content[k].test(b)) {
                    first_bad = b;
                    break;
                }
            }
            const int file = demands.demands[k] - 1;
            FragmentKey key;
            for (int i = 0; i < cfg.kt; ++i)
                if (state.en_bits[i][file].test(first_bad)) key.en_mask |= 1u << i;
            for (int u = 0; u < cfg.kr; ++u)
                if (state.user_bits[u][file].test(first_bad)) key.user_mask |= 1u << u;
            std::ostringstream msg;
            msg << "decode failure at user " << (k + 1) << " (file " << (file + 1)
                << "): " << missing << " bits missing, first bad bit " << first_bad
                << " in fragment (en_mask=" << key.en_mask
                << ", user_mask=" << key.user_mask << ")";
            throw std::runtime_error(msg.str());
        }
    }

    report.ndt = latency_from_report(report, cfg);
    return report;
}

NdtBreakdown latency_from_report(const DeliveryReport& report, const SystemConfig& cfg) {
    validate_config(cfg);
    require_two_edge_nodes(cfg);
    if (cfg.file_bits < 1)
        throw std::invalid_argument("file_bits must be >= 1 for simulation");

    auto traffic = [&](const char* name) -> StageTraffic {
        for (const StageTraffic& t : report.stages)
            if (t.stage == name) return t;
        return StageTraffic{name};
    };
    const double f = static_cast<double>(cfg.file_bits);
    const double kr = cfg.kr;
    const StageTraffic s1 = traffic("1");
    const StageTraffic s2 = traffic("2");
    const StageTraffic s3 = traffic("3");
    const StageTraffic s4 = traffic("4");
    const StageTraffic s5 = report.stage5 == 'a' ? traffic("5a") : traffic("5b");
    // Stage-5 edge payload is the same set of fragments under both variants.
    const double e5 = static_cast<double>(s5.edge_bits);

    NdtBreakdown out;
    out.per_stage = {
        {Stage::s1, s1.fronthaul_bits / (2.0 * cfg.r * f), s1.edge_bits / (2.0 * f)},
        {Stage::s2, s2.fronthaul_bits / (cfg.r * f), s2.edge_bits / f},
        {Stage::s3, 0.0, s3.edge_bits / f},
        {Stage::s4, 0.0, s4.edge_bits / (2.0 * f)},
        {Stage::s5a, 0.0, e5 * (kr + 1.0) / (2.0 * kr * f)},
        {Stage::s5b, e5 / (2.0 * cfg.r * f), e5 / (2.0 * f)},
    };
    for (std::size_t i = 0; i < 4; ++i) {
        out.scheme_a.fronthaul += out.per_stage[i].fronthaul;
        out.scheme_a.edge += out.per_stage[i].edge;
    }
    out.scheme_b = out.scheme_a;
    out.scheme_a.fronthaul += out.per_stage[4].fronthaul;
    out.scheme_a.edge += out.per_stage[4].edge;
    out.scheme_b.fronthaul += out.per_stage[5].fronthaul;
    out.scheme_b.edge += out.per_stage[5].edge;
    out.serial = std::min(out.scheme_a.fronthaul + out.scheme_a.edge,
                          out.scheme_b.fronthaul + out.scheme_b.edge);
    out.pipelined = std::min(std::max(out.scheme_a.fronthaul, out.scheme_a.edge),
                             std::max(out.scheme_b.fronthaul, out.scheme_b.edge));
    return out;
}

std::string report_json(const DeliveryReport& report) {
    nlohmann::json j;
    j["stages"] = nlohmann::json::array();
    for (const StageTraffic& t : report.stages)
        j["stages"].push_back({{"id", t.stage},
                               {"fronthaul_bits", t.fronthaul_bits},
                               {"edge_bits", t.edge_bits},
                               {"messages", t.messages}});
    j["users"] = nlohmann::json::array();
    for (const UserVerdict& u : report.users)
        j["users"].push_back({{"decode_ok", u.decode_ok}, {"missing_bits", u.missing_bits}});
    j["stage5"] = std::string(1, report.stage5);
    j["worst_case_demands"] = report.worst_case_demands;

    nlohmann::json ndt;
    ndt["per_stage"] = nlohmann::json::array();
    for (const StageNdt& s : report.ndt.per_stage)
        ndt["per_stage"].push_back({{"stage", to_string(s.stage)},
                                    {"fronthaul", s.fronthaul},
                                    {"edge", s.edge}});
    ndt["scheme_a"] = {{"fronthaul", report.ndt.scheme_a.fronthaul},
                       {"edge", report.ndt.scheme_a.edge}};
    ndt["scheme_b"] = {{"fronthaul", report.ndt.scheme_b.fronthaul},
                       {"edge", report.ndt.scheme_b.edge}};
    ndt["serial"] = report.ndt.serial;
    ndt["pipelined"] = report.ndt.pipelined;
    j["ndt"] = ndt;
    return j.dump(2);
}

}  // namespace fran::delivery
