#include "pgt/rng.hpp"

#include <algorithm>
#include <numeric>

#include "pgt/error.hpp"

namespace pgt {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Seed substream(Seed seed, std::uint64_t tag) noexcept {
    return Seed{mix64(seed.value ^ mix64(tag))};
}

Engine make_engine(Seed seed) { return Engine{seed.value}; }

double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("uniform_below: bound must be positive");
    u128 prod = static_cast<u128>(eng()) * bound;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            prod = static_cast<u128>(eng()) * bound;
            low = static_cast<std::uint64_t>(prod);
        }
    }
    return static_cast<std::uint64_t>(prod >> 64);
}

std::vector<std::size_t> random_subset(Engine& eng, std::size_t n, std::size_t size) {
    if (size > n) throw InvalidArgument("random_subset: size exceeds population");
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    // partial Fisher-Yates
    for (std::size_t i = 0; i < size; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_below(eng, n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(size);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace pgt
