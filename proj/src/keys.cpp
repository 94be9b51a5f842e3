#include "fran/keys.hpp"

#include <stdexcept>

namespace fran {

std::vector<FragmentKey> enumerate_fragment_keys(int kt, int kr) {
    if (kt < 1) throw std::invalid_argument("kt must be >= 1");
    if (kr < 1) throw std::invalid_argument("kr must be >= 1");
    if (kt + kr > 30) throw std::invalid_argument("kt + kr too large to enumerate");

    std::vector<FragmentKey> keys;
    keys.reserve(std::size_t{1} << (kt + kr));
    const std::uint32_t en_end = 1u << kt;
    const std::uint32_t user_end = 1u << kr;
    for (std::uint32_t en = 0; en < en_end; ++en)
        for (std::uint32_t user = 0; user < user_end; ++user)
            keys.push_back({en, user});
    return keys;
}

std::size_t fragment_key_index(const FragmentKey& key, int kt, int kr) {
    if (key.en_mask >= (1u << kt) || key.user_mask >= (1u << kr))
        throw std::invalid_argument("fragment key out of range");
    return (std::size_t{key.en_mask} << kr) | key.user_mask;
}

}  // namespace fran
