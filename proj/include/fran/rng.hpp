#pragma once

#include <cstdint>

namespace fran {

// SplitMix64 finalizer; also used to fold identifiers into substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Self-contained generator so placement is bit-identical across platforms
// and standard library versions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) via the multiply-shift reduction.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

// Independent per-(node, file) placement substream.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t node_tag,
                                   std::uint64_t node_id, std::uint64_t file_id) {
    std::uint64_t s = mix64(seed ^ 0xF06D0A11CAC4E001ULL);
    s = mix64(s ^ node_tag);
    s = mix64(s ^ node_id);
    s = mix64(s ^ file_id);
    return s;
}

}  // namespace fran
