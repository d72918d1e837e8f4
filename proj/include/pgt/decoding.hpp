#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pgt/core_model.hpp"

namespace pgt {

/// Claimed support, ascending and 0-based.
struct DecodeResult {
    std::vector<std::size_t> candidates;
    /// Set when a sparsity k was supplied and more than k columns passed.
    bool oversized = false;

    std::vector<std::size_t> one_based() const;
};

/// Declares column i present iff |supp(M_i) \ supp(y)| <= e. This is a
/// per-column threshold test, not a ranking: every passing column is
/// returned, never truncated to k. One AND-NOT/popcount pass per column,
/// columns split across OpenMP threads.
DecodeResult distance_decode(const ContactMatrix& mc, const Outcome& y, std::size_t e,
                             std::optional<std::size_t> k = std::nullopt);

/// Entry-by-entry serial version of distance_decode, kept as a reference.
DecodeResult distance_decode_serial(const ContactMatrix& mc, const Outcome& y, std::size_t e,
                                    std::optional<std::size_t> k = std::nullopt);

/// Every support S with |S| <= k such that supp(y) is covered by the contact
/// columns of S and each column of S misses at most e entries of supp(y):
/// exactly the supports that some pattern of <= e flips per column maps to y.
/// Brute force, lexicographic by size then members. Throws GuardExceeded when
/// sum_{j<=k} C(n, j) > guard.
std::vector<SparseSignal> oracle_consistent_supports(const ContactMatrix& mc, const Outcome& y, std::size_t k,
                                                     std::size_t e, std::size_t guard = 1'000'000);

/// Inclusion-minimal members of a support list.
std::vector<SparseSignal> minimal_supports(const std::vector<SparseSignal>& supports);

struct DecodeScore {
    bool exact = false;
    std::size_t false_pos = 0;
    std::size_t false_neg = 0;
};

DecodeScore evaluate_decode(const SparseSignal& truth, const DecodeResult& result);

}  // namespace pgt
