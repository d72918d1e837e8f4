#include "pgt/decoding.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "pgt/error.hpp"

namespace pgt {

std::vector<std::size_t> DecodeResult::one_based() const {
    std::vector<std::size_t> out(candidates);
    for (auto& c : out) ++c;
    return out;
}

namespace {

void check_rows(const ContactMatrix& mc, const Outcome& y) {
    if (mc.m() != y.size())
        throw InvalidArgument(fmt::format("dimension mismatch: matrix has {} rows, outcome has {}", mc.m(), y.size()));
}

DecodeResult finish(std::vector<std::size_t> candidates, std::optional<std::size_t> k) {
    DecodeResult r;
    r.oversized = k && candidates.size() > *k;
    r.candidates = std::move(candidates);
    return r;
}

}  // namespace

DecodeResult distance_decode(const ContactMatrix& mc, const Outcome& y, std::size_t e, std::optional<std::size_t> k) {
    check_rows(mc, y);
    const BitMatrix& bits = mc.bits();
    const auto ywords = y.bits.words();
    std::vector<unsigned char> pass(mc.n(), 0);
    const auto n = static_cast<std::ptrdiff_t>(mc.n());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j)
        pass[static_cast<std::size_t>(j)] = popcount_and_not(bits.column(static_cast<std::size_t>(j)), ywords) <= e;
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < mc.n(); ++j)
        if (pass[j]) candidates.push_back(j);
    return finish(std::move(candidates), k);
}

DecodeResult distance_decode_serial(const ContactMatrix& mc, const Outcome& y, std::size_t e,
                                    std::optional<std::size_t> k) {
    check_rows(mc, y);
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < mc.n(); ++j) {
        std::size_t missing = 0;
        for (std::size_t i = 0; i < mc.m(); ++i)
            if (mc.get(i, j) && !y.get(i)) ++missing;
        if (missing <= e) candidates.push_back(j);
    }
    return finish(std::move(candidates), k);
}

std::vector<SparseSignal> oracle_consistent_supports(const ContactMatrix& mc, const Outcome& y, std::size_t k,
                                                     std::size_t e, std::size_t guard) {
    check_rows(mc, y);
    const std::size_t n = mc.n();
    const std::size_t m = mc.m();
    const std::size_t kmax = std::min(k, n);

    double total = 0.0;
    for (std::size_t j = 0; j <= kmax; ++j)
        total += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0));
    if (total > static_cast<double>(guard) * (1.0 + 1e-9))
        throw GuardExceeded(fmt::format("oracle would enumerate ~{:.0f} supports (guard {})", total, guard));

    // Plain per-entry sets; deliberately does not share the packed kernels.
    std::vector<std::vector<bool>> cols(n, std::vector<bool>(m));
    std::vector<bool> admissible(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t missing = 0;
        for (std::size_t i = 0; i < m; ++i) {
            cols[j][i] = mc.get(i, j);
            if (cols[j][i] && !y.get(i)) ++missing;
        }
        admissible[j] = missing <= e;
    }

    std::vector<SparseSignal> out;
    std::vector<std::size_t> subset;
    for (std::size_t size = 0; size <= kmax; ++size) {
        subset.resize(size);
        for (std::size_t i = 0; i < size; ++i) subset[i] = i;
        while (true) {
            bool ok = std::all_of(subset.begin(), subset.end(), [&](std::size_t j) { return admissible[j]; });
            for (std::size_t i = 0; ok && i < m; ++i) {
                if (!y.get(i)) continue;
                ok = std::any_of(subset.begin(), subset.end(), [&](std::size_t j) { return cols[j][i]; });
            }
            if (ok) out.emplace_back(n, subset);
            // next combination
            std::size_t pos = size;
            while (pos > 0 && subset[pos - 1] == n - size + pos - 1) --pos;
            if (pos == 0) break;
            ++subset[pos - 1];
            for (std::size_t i = pos; i < size; ++i) subset[i] = subset[i - 1] + 1;
        }
    }
    return out;
}

std::vector<SparseSignal> minimal_supports(const std::vector<SparseSignal>& supports) {
    std::vector<SparseSignal> out;
    for (const auto& s : supports) {
        const bool has_proper_subset = std::any_of(supports.begin(), supports.end(), [&](const SparseSignal& t) {
            return t.sparsity() < s.sparsity() &&
                   std::includes(s.support().begin(), s.support().end(), t.support().begin(), t.support().end());
        });
        if (!has_proper_subset) out.push_back(s);
    }
    return out;
}

DecodeScore evaluate_decode(const SparseSignal& truth, const DecodeResult& result) {
    DecodeScore score;
    const auto& t = truth.support();
    const auto& c = result.candidates;
    std::vector<std::size_t> diff;
    std::set_difference(c.begin(), c.end(), t.begin(), t.end(), std::back_inserter(diff));
    score.false_pos = diff.size();
    diff.clear();
    std::set_difference(t.begin(), t.end(), c.begin(), c.end(), std::back_inserter(diff));
    score.false_neg = diff.size();
    score.exact = score.false_pos == 0 && score.false_neg == 0;
    return score;
}

}  // namespace pgt
