#include "pgt/disjunct.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "pgt/error.hpp"

namespace pgt {

std::size_t leftover_count(const ContactMatrix& mc, std::span<const std::size_t> columns, std::size_t column) {
    const BitMatrix& bits = mc.bits();
    std::vector<Word> cover(bits.words_per_column(), 0);
    for (std::size_t j : columns) or_into(cover, bits.column(j));
    return popcount_and_not(bits.column(column), cover);
}

namespace {

void check_guard(std::size_t n, std::size_t k, std::uint64_t guard) {
    const double log_work = std::log(static_cast<double>(n)) + std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(static_cast<double>(n - std::min(k, n)) + 1.0);
    if (log_work > std::log(static_cast<double>(guard)) + 1e-9)
        throw GuardExceeded(fmt::format("disjunctness check needs n*C(n,k) = ~{:.3g} tests, guard is {}",
                                        std::exp(log_work), guard));
}

bool in_subset(std::span<const std::size_t> subset, std::size_t i) {
    return std::find(subset.begin(), subset.end(), i) != subset.end();
}

// First violation among subsets whose smallest member is `first`, scanning the
// remaining members lexicographically.
std::optional<DisjunctWitness> scan_bucket(const BitMatrix& bits, std::size_t first, std::size_t size, std::size_t e) {
    const std::size_t n = bits.cols();
    const std::size_t wpc = bits.words_per_column();
    std::vector<std::size_t> subset(size);
    std::vector<std::vector<Word>> prefix(size, std::vector<Word>(wpc, 0));
    subset[0] = first;
    auto load = [&](std::size_t depth) {
        const auto col = bits.column(subset[depth]);
        if (depth == 0) std::copy(col.begin(), col.end(), prefix[0].begin());
        else
            for (std::size_t w = 0; w < wpc; ++w) prefix[depth][w] = prefix[depth - 1][w] | col[w];
    };
    for (std::size_t d = 1; d < size; ++d) subset[d] = first + d;
    for (std::size_t d = 0; d < size; ++d) load(d);
    while (true) {
        const auto& cover = prefix[size - 1];
        for (std::size_t i = 0; i < n; ++i) {
            if (in_subset(subset, i)) continue;
            const std::size_t left = popcount_and_not(bits.column(i), cover);
            if (left <= e) return DisjunctWitness{subset, i, left};
        }
        std::size_t pos = size;
        while (pos > 1 && subset[pos - 1] == n - size + pos - 1) --pos;
        if (pos == 1) return std::nullopt;
        ++subset[pos - 1];
        load(pos - 1);
        for (std::size_t d = pos; d < size; ++d) {
            subset[d] = subset[d - 1] + 1;
            load(d);
        }
    }
}

}  // namespace

DisjunctReport verify_disjunct(const ContactMatrix& mc, std::size_t k, std::size_t e, std::uint64_t guard) {
    const std::size_t n = mc.n();
    check_guard(n, k, guard);
    DisjunctReport report{k, e, true, std::nullopt};
    const BitMatrix& bits = mc.bits();
    const std::size_t size = std::min(k, n - 1);

    if (size == 0) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t w = bits.column_weight(i);
            if (w <= e) {
                report.holds = false;
                report.witness = DisjunctWitness{{}, i, w};
                return report;
            }
        }
        return report;
    }

    const std::size_t buckets = n - size + 1;
    std::vector<std::optional<DisjunctWitness>> found(buckets);
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    const auto nb = static_cast<std::ptrdiff_t>(buckets);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const auto first = static_cast<std::size_t>(b);
        if (first > best.load(std::memory_order_relaxed)) continue;
        found[first] = scan_bucket(bits, first, size, e);
        if (found[first]) {
            std::size_t cur = best.load();
            while (first < cur && !best.compare_exchange_weak(cur, first)) {
            }
        }
    }
    for (auto& w : found) {
        if (w) {
            report.holds = false;
            report.witness = std::move(w);
            break;
        }
    }
    return report;
}

DisjunctReport verify_disjunct_serial(const ContactMatrix& mc, std::size_t k, std::size_t e, std::uint64_t guard) {
    const std::size_t n = mc.n();
    check_guard(n, k, guard);
    DisjunctReport report{k, e, true, std::nullopt};
    std::vector<std::size_t> subset;
    for (std::size_t size = 0; size <= std::min(k, n - 1); ++size) {
        subset.resize(size);
        for (std::size_t d = 0; d < size; ++d) subset[d] = d;
        while (true) {
            for (std::size_t i = 0; i < n; ++i) {
                if (in_subset(subset, i)) continue;
                std::size_t left = 0;
                for (std::size_t r = 0; r < mc.m(); ++r) {
                    if (!mc.get(r, i)) continue;
                    const bool covered =
                        std::any_of(subset.begin(), subset.end(), [&](std::size_t j) { return mc.get(r, j); });
                    if (!covered) ++left;
                }
                if (left <= e) {
                    report.holds = false;
                    report.witness = DisjunctWitness{subset, i, left};
                    return report;
                }
            }
            std::size_t pos = size;
            while (pos > 0 && subset[pos - 1] == n - size + pos - 1) --pos;
            if (pos == 0) break;
            ++subset[pos - 1];
            for (std::size_t d = pos; d < size; ++d) subset[d] = subset[d - 1] + 1;
        }
    }
    return report;
}

}  // namespace pgt
