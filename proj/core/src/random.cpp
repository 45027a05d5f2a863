#include "fefs/random.hpp"

#include <utility>

namespace fefs {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t repeat_index,
                          std::uint64_t attempt) noexcept {
    return splitmix64(splitmix64(master_seed ^ splitmix64(repeat_index)) + attempt);
}

std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
    if (bound <= 1) return 0;
    // reject the low (2^64 mod bound) values so every residue is equally likely
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x = gen();
    while (x < threshold) x = gen();
    return x % bound;
}

void shuffle(std::span<std::size_t> items, std::mt19937_64& gen) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(gen, i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace fefs
