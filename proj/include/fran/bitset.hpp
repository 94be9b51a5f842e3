#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fran {

// Fixed-size bit array with word access for fast XOR/compare.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t bits)
        : words_((bits + 63) / 64, 0), bits_(bits) {}

    std::size_t size() const { return bits_; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1ULL;
    }

    void set(std::size_t i) { words_[i >> 6] |= 1ULL << (i & 63); }

    void assign(std::size_t i, bool v) {
        const std::uint64_t mask = 1ULL << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_) n += std::popcount(w);
        return n;
    }

    bool operator==(const Bitset&) const = default;

    std::vector<std::uint64_t>& words() { return words_; }
    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::vector<std::uint64_t> words_;
    std::size_t bits_ = 0;
};

}  // namespace fran
