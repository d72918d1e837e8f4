#pragma once

#include <cstddef>
#include <vector>

#include "pgt/core_model.hpp"
#include "pgt/rng.hpp"

namespace pgt::testing {

/// Contact matrix of the six-person, three-agent worked example.
inline ContactMatrix example_contact() { return ContactMatrix::from_rows({"101010", "010101", "011011"}); }

/// Random matrix with independent Bernoulli(density) entries.
inline ContactMatrix random_matrix(Engine& eng, std::size_t m, std::size_t n, double density) {
    BitMatrix bits(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (uniform01(eng) < density) bits.set(i, j);
    return ContactMatrix(std::move(bits));
}

/// All subsets of {0..n-1} with at most k members, by size then lexicographic.
inline std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out{{}};
    for (std::size_t size = 1; size <= k && size <= n; ++size) {
        std::vector<std::size_t> s(size);
        for (std::size_t i = 0; i < size; ++i) s[i] = i;
        while (true) {
            out.push_back(s);
            std::size_t pos = size;
            while (pos > 0 && s[pos - 1] == n - size + pos - 1) --pos;
            if (pos == 0) break;
            ++s[pos - 1];
            for (std::size_t i = pos; i < size; ++i) s[i] = s[i - 1] + 1;
        }
    }
    return out;
}

}  // namespace pgt::testing
