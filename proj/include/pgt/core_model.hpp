#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pgt/bitmatrix.hpp"
#include "pgt/rng.hpp"

namespace pgt {

/// How a contact matrix was produced. `kind` is the GTMAT header label, e.g.
/// `bernoulli(0.2,0.05,0.1)` or `ks(3,2,0.05)`.
struct DesignMeta {
    std::string kind;
    std::optional<std::uint64_t> seed;
    friend bool operator==(const DesignMeta&, const DesignMeta&) = default;
};

/// m x n boolean contact matrix: entry (i, j) is set iff agent i contacts
/// individual j. Immutable once built.
class ContactMatrix {
public:
    explicit ContactMatrix(BitMatrix bits, std::optional<DesignMeta> meta = std::nullopt);

    /// Builds from strings of '0'/'1', one per row. Handy for small fixtures.
    static ContactMatrix from_rows(std::span<const std::string_view> rows);
    static ContactMatrix from_rows(std::initializer_list<std::string_view> rows);
    static ContactMatrix identity(std::size_t n);

    std::size_t m() const { return bits_.rows(); }
    std::size_t n() const { return bits_.cols(); }
    bool get(std::size_t row, std::size_t col) const { return bits_.get(row, col); }
    const BitMatrix& bits() const { return bits_; }
    const std::optional<DesignMeta>& meta() const { return meta_; }

    std::size_t column_weight(std::size_t col) const { return bits_.column_weight(col); }
    std::vector<std::size_t> column_support(std::size_t col) const { return bits_.column_support(col); }

    friend bool operator==(const ContactMatrix&, const ContactMatrix&) = default;

private:
    BitMatrix bits_;
    std::optional<DesignMeta> meta_;
};

/// The realized matrix after channel corruption. Every column's support is
/// contained in the originating contact column (checked on construction).
class SamplingMatrix {
public:
    SamplingMatrix(const ContactMatrix& contact, BitMatrix realized);

    /// No corruption at all.
    static SamplingMatrix exact(const ContactMatrix& contact);

    std::size_t m() const { return bits_.rows(); }
    std::size_t n() const { return bits_.cols(); }
    bool get(std::size_t row, std::size_t col) const { return bits_.get(row, col); }
    const BitMatrix& bits() const { return bits_; }
    const std::vector<std::size_t>& flips_per_column() const { return flips_; }

    friend bool operator==(const SamplingMatrix&, const SamplingMatrix&) = default;

private:
    BitMatrix bits_;
    std::vector<std::size_t> flips_;
};

/// Support set of a sparse boolean vector. Indices are 0-based and strictly
/// increasing; user-facing I/O converts from/to 1-based.
class SparseSignal {
public:
    SparseSignal(std::size_t n, std::vector<std::size_t> support);
    static SparseSignal from_one_based(std::size_t n, std::span<const std::size_t> support);

    std::size_t n() const { return n_; }
    const std::vector<std::size_t>& support() const { return support_; }
    std::size_t sparsity() const { return support_.size(); }
    bool contains(std::size_t j) const;
    std::vector<std::size_t> one_based() const;

    friend bool operator==(const SparseSignal&, const SparseSignal&) = default;

private:
    std::size_t n_;
    std::vector<std::size_t> support_;
};

/// Test-result vector y, one bit per agent.
struct Outcome {
    BitVector bits;

    std::size_t size() const { return bits.size(); }
    bool get(std::size_t i) const { return bits.get(i); }
    static Outcome from_string(std::string_view zeros_and_ones);
    std::string to_string() const;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct Noiseless {};

/// Each 1-entry of the contact matrix survives independently with probability p.
struct Stochastic {
    double p = 1.0;
};

enum class AdversaryStrategy { none, random, max_random };

/// Up to e entries of each column support are flipped to 0.
struct Adversarial {
    std::size_t e = 0;
    AdversaryStrategy strategy = AdversaryStrategy::none;
};

using ChannelSpec = std::variant<Noiseless, Stochastic, Adversarial>;

void validate(const ChannelSpec& channel);
std::string to_string(AdversaryStrategy s);
AdversaryStrategy parse_strategy(std::string_view s);

/// Which columns go through the channel. Only signal columns affect the
/// outcome, so `signal_columns` passes the rest through unchanged.
enum class Materialize { full, signal_columns };

/// Boolean product y = M x: y_i is the OR of M_ij over j in supp(x).
Outcome measure(const SamplingMatrix& ms, const SparseSignal& x);
Outcome measure(const ContactMatrix& mc, const SparseSignal& x);

/// Channel randomness for column j is drawn from substream(seed, j), so the
/// realization of a column does not depend on which other columns are
/// materialized.
SamplingMatrix dilute(const ContactMatrix& mc, double p, Seed seed);
SamplingMatrix dilute_columns(const ContactMatrix& mc, double p, Seed seed, std::span<const std::size_t> columns);

SamplingMatrix adversarial_corrupt(const ContactMatrix& mc, const SparseSignal& x, std::size_t e,
                                   AdversaryStrategy strategy, Seed seed,
                                   Materialize materialize = Materialize::full);

/// A single 1 -> 0 flip at (row, col).
struct Erasure {
    std::size_t row;
    std::size_t col;
};

/// Explicit flip pattern; every erasure must hit a 1-entry of mc.
SamplingMatrix erase_entries(const ContactMatrix& mc, std::span<const Erasure> erasures);

struct Sample {
    SamplingMatrix sampling;
    Outcome outcome;
};

Sample end_to_end_sample(const ContactMatrix& mc, const SparseSignal& x, const ChannelSpec& channel, Seed seed,
                         Materialize materialize = Materialize::signal_columns);

/// Same outcome as end_to_end_sample for the same seed, without building the
/// sampling matrix: O(k m) work for a k-sparse signal.
Outcome sample_outcome(const ContactMatrix& mc, const SparseSignal& x, const ChannelSpec& channel, Seed seed);

}  // namespace pgt
