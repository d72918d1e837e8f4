#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace pgt {

/// 64-bit seed. Every randomized operation takes one explicitly so results are
/// a pure function of their inputs.
struct Seed {
    std::uint64_t value = 0;
    friend bool operator==(Seed, Seed) = default;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Independent sub-stream seed: mix64(seed ^ mix64(tag)).
Seed substream(Seed seed, std::uint64_t tag) noexcept;

// mt19937_64 output is fully specified by the standard; the draws below avoid
// std::*_distribution, whose algorithms are implementation-defined.
using Engine = std::mt19937_64;

Engine make_engine(Seed seed);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Engine& eng);

/// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
std::uint64_t uniform_below(Engine& eng, std::uint64_t bound);

/// Uniformly random subset of {0..n-1} of the given size, sorted ascending.
std::vector<std::size_t> random_subset(Engine& eng, std::size_t n, std::size_t size);

}  // namespace pgt
