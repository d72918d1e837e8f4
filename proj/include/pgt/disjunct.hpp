#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pgt/core_model.hpp"

namespace pgt {

/// A counterexample to (k, e)-disjunctness: column i keeps only `leftover`
/// <= e support entries outside the union of the columns in S.
struct DisjunctWitness {
    std::vector<std::size_t> columns;  // S, 0-based ascending
    std::size_t column = 0;            // i, not in S
    std::size_t leftover = 0;
};

struct DisjunctReport {
    std::size_t k = 0;
    std::size_t e = 0;
    bool holds = true;
    std::optional<DisjunctWitness> witness;  // present iff !holds
};

/// |supp(M_i) \ union_{j in S} supp(M_j)|
std::size_t leftover_count(const ContactMatrix& mc, std::span<const std::size_t> columns, std::size_t column);

inline constexpr std::uint64_t kDisjunctGuard = 10'000'000;

/// Exhaustive (k, e)-disjunctness check. Leftover only shrinks as S grows, so
/// only |S| = min(k, n-1) is enumerated. Subsets are split across OpenMP
/// threads by their smallest member; the witness is the first violation in
/// lexicographic (S, i) order regardless of thread count. Throws
/// GuardExceeded when n C(n, k) > guard.
DisjunctReport verify_disjunct(const ContactMatrix& mc, std::size_t k, std::size_t e,
                               std::uint64_t guard = kDisjunctGuard);

/// Serial reference: every |S| <= k, no shortcut. The witness is the first
/// violation ordered by |S|, then S, then i.
DisjunctReport verify_disjunct_serial(const ContactMatrix& mc, std::size_t k, std::size_t e,
                                      std::uint64_t guard = kDisjunctGuard);

}  // namespace pgt
