#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace fefs {

/// SplitMix64 finalizer. Used to derive independent per-repeat seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-based seed for repeat `repeat_index`, retry `attempt`. Depends only
/// on its arguments, so repeats can run in any order on any worker.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t repeat_index,
                          std::uint64_t attempt = 0) noexcept;

/// Uniform integer in [0, bound). std::uniform_int_distribution is
/// implementation-defined, this is not.
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound);

/// Fisher-Yates shuffle driven by uniform_below.
void shuffle(std::span<std::size_t> items, std::mt19937_64& gen);

}  // namespace fefs
