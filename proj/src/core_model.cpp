#include "pgt/core_model.hpp"

#include <algorithm>
#include <string>

#include <fmt/format.h>

#include "pgt/error.hpp"

namespace pgt {

ContactMatrix::ContactMatrix(BitMatrix bits, std::optional<DesignMeta> meta)
    : bits_(std::move(bits)), meta_(std::move(meta)) {
    if (bits_.rows() == 0 || bits_.cols() == 0)
        throw InvalidArgument(fmt::format("contact matrix must have positive dimensions, got {}x{}", bits_.rows(),
                                          bits_.cols()));
}

ContactMatrix ContactMatrix::from_rows(std::span<const std::string_view> rows) {
    if (rows.empty()) throw InvalidArgument("from_rows: no rows");
    const std::size_t n = rows.front().size();
    BitMatrix bits(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n) throw InvalidArgument(fmt::format("from_rows: row {} has ragged length", i + 1));
        for (std::size_t j = 0; j < n; ++j) {
            const char c = rows[i][j];
            if (c != '0' && c != '1') throw InvalidArgument(fmt::format("from_rows: bad character '{}'", c));
            if (c == '1') bits.set(i, j);
        }
    }
    return ContactMatrix(std::move(bits));
}

ContactMatrix ContactMatrix::from_rows(std::initializer_list<std::string_view> rows) {
    return from_rows(std::span<const std::string_view>(rows.begin(), rows.size()));
}

ContactMatrix ContactMatrix::identity(std::size_t n) {
    BitMatrix bits(n, n);
    for (std::size_t i = 0; i < n; ++i) bits.set(i, i);
    return ContactMatrix(std::move(bits));
}

SamplingMatrix::SamplingMatrix(const ContactMatrix& contact, BitMatrix realized)
    : bits_(std::move(realized)), flips_(contact.n(), 0) {
    if (bits_.rows() != contact.m() || bits_.cols() != contact.n())
        throw InvalidArgument("sampling matrix shape differs from contact matrix");
    const BitMatrix& c = contact.bits();
    for (std::size_t j = 0; j < contact.n(); ++j) {
        if (popcount_and_not(bits_.column(j), c.column(j)) != 0)
            throw InvalidArgument(fmt::format("sampling column {} is not contained in its contact column", j + 1));
        flips_[j] = c.column_weight(j) - bits_.column_weight(j);
    }
}

SamplingMatrix SamplingMatrix::exact(const ContactMatrix& contact) { return SamplingMatrix(contact, contact.bits()); }

SparseSignal::SparseSignal(std::size_t n, std::vector<std::size_t> support) : n_(n), support_(std::move(support)) {
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (support_[i] >= n_)
            throw InvalidArgument(fmt::format("signal index {} out of range 1..{}", support_[i] + 1, n_));
        if (i > 0 && support_[i] <= support_[i - 1])
            throw InvalidArgument("signal support must be strictly increasing");
    }
}

SparseSignal SparseSignal::from_one_based(std::size_t n, std::span<const std::size_t> support) {
    std::vector<std::size_t> s;
    s.reserve(support.size());
    for (std::size_t idx : support) {
        if (idx == 0 || idx > n) throw InvalidArgument(fmt::format("signal index {} out of range 1..{}", idx, n));
        s.push_back(idx - 1);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidArgument("duplicate signal index");
    return SparseSignal(n, std::move(s));
}

bool SparseSignal::contains(std::size_t j) const { return std::binary_search(support_.begin(), support_.end(), j); }

std::vector<std::size_t> SparseSignal::one_based() const {
    std::vector<std::size_t> out(support_);
    for (auto& i : out) ++i;
    return out;
}

Outcome Outcome::from_string(std::string_view s) {
    Outcome y{BitVector(s.size())};
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') y.bits.set(i);
        else if (s[i] != '0') throw ParseError(fmt::format("outcome: character '{}' at position {} is not 0/1", s[i], i + 1));
    }
    return y;
}

std::string Outcome::to_string() const {
    std::string s(size(), '0');
    for (std::size_t i = 0; i < size(); ++i)
        if (get(i)) s[i] = '1';
    return s;
}

void validate(const ChannelSpec& channel) {
    if (const auto* s = std::get_if<Stochastic>(&channel)) {
        if (!(s->p > 0.0 && s->p <= 1.0))
            throw InvalidArgument(fmt::format("contamination probability p={} outside (0,1]", s->p));
    }
}

std::string to_string(AdversaryStrategy s) {
    switch (s) {
        case AdversaryStrategy::none: return "none";
        case AdversaryStrategy::random: return "random";
        case AdversaryStrategy::max_random: return "max-random";
    }
    return "none";
}

AdversaryStrategy parse_strategy(std::string_view s) {
    if (s == "none") return AdversaryStrategy::none;
    if (s == "random") return AdversaryStrategy::random;
    if (s == "max-random") return AdversaryStrategy::max_random;
    throw InvalidArgument(fmt::format("unknown adversary strategy '{}'", s));
}

namespace {

void check_dims(const ContactMatrix& mc, const SparseSignal& x) {
    if (mc.n() != x.n())
        throw InvalidArgument(fmt::format("dimension mismatch: matrix has {} columns, signal has n={}", mc.n(), x.n()));
}

void check_p(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("contamination probability p={} outside (0,1]", p));
}

// Clears each set bit of `col` independently with probability 1-p.
void dilute_column(std::span<Word> col, double p, Seed seed, std::size_t j) {
    if (p >= 1.0) return;
    Engine eng = make_engine(substream(seed, j));
    for (std::size_t w = 0; w < col.size(); ++w) {
        Word bits = col[w];
        while (bits != 0) {
            const Word low = bits & (~bits + 1);
            if (uniform01(eng) >= p) col[w] &= ~low;
            bits &= bits - 1;
        }
    }
}

// Clears min(e, weight) uniformly chosen set bits of `col`.
void erase_random(std::span<Word> col, std::size_t e, Seed seed, std::size_t j) {
    if (e == 0) return;
    std::vector<std::size_t> rows;
    for (std::size_t w = 0; w < col.size(); ++w) {
        Word bits = col[w];
        while (bits != 0) {
            rows.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    Engine eng = make_engine(substream(seed, j));
    for (std::size_t pos : random_subset(eng, rows.size(), std::min(e, rows.size()))) {
        const std::size_t r = rows[pos];
        col[r / kWordBits] &= ~(Word{1} << (r % kWordBits));
    }
}

bool adversary_touches(AdversaryStrategy s, bool in_signal) {
    switch (s) {
        case AdversaryStrategy::none: return false;
        case AdversaryStrategy::random: return in_signal;
        case AdversaryStrategy::max_random: return true;
    }
    return false;
}

// Applies the channel to column j in place.
void corrupt_column(std::span<Word> col, const ChannelSpec& channel, Seed seed, std::size_t j, bool in_signal) {
    if (const auto* s = std::get_if<Stochastic>(&channel)) {
        dilute_column(col, s->p, seed, j);
    } else if (const auto* a = std::get_if<Adversarial>(&channel)) {
        if (adversary_touches(a->strategy, in_signal)) erase_random(col, a->e, seed, j);
    }
}

SamplingMatrix apply_channel(const ContactMatrix& mc, const SparseSignal* x, const ChannelSpec& channel, Seed seed,
                             Materialize materialize) {
    BitMatrix out = mc.bits();
    const auto n = static_cast<std::ptrdiff_t>(mc.n());
    if (materialize == Materialize::full) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < n; ++j) {
            const auto col = static_cast<std::size_t>(j);
            corrupt_column(out.column(col), channel, seed, col, x != nullptr && x->contains(col));
        }
    } else if (x != nullptr) {
        for (std::size_t j : x->support()) corrupt_column(out.column(j), channel, seed, j, true);
    }
    return SamplingMatrix(mc, std::move(out));
}

}  // namespace

Outcome measure(const SamplingMatrix& ms, const SparseSignal& x) {
    if (ms.n() != x.n())
        throw InvalidArgument(fmt::format("dimension mismatch: matrix has {} columns, signal has n={}", ms.n(), x.n()));
    Outcome y{BitVector(ms.m())};
    for (std::size_t j : x.support()) or_into(y.bits.words(), ms.bits().column(j));
    return y;
}

Outcome measure(const ContactMatrix& mc, const SparseSignal& x) {
    check_dims(mc, x);
    Outcome y{BitVector(mc.m())};
    for (std::size_t j : x.support()) or_into(y.bits.words(), mc.bits().column(j));
    return y;
}

SamplingMatrix dilute(const ContactMatrix& mc, double p, Seed seed) {
    check_p(p);
    return apply_channel(mc, nullptr, Stochastic{p}, seed, Materialize::full);
}

SamplingMatrix dilute_columns(const ContactMatrix& mc, double p, Seed seed, std::span<const std::size_t> columns) {
    check_p(p);
    BitMatrix out = mc.bits();
    for (std::size_t j : columns) {
        if (j >= mc.n()) throw InvalidArgument(fmt::format("column {} out of range", j + 1));
        dilute_column(out.column(j), p, seed, j);
    }
    return SamplingMatrix(mc, std::move(out));
}

SamplingMatrix adversarial_corrupt(const ContactMatrix& mc, const SparseSignal& x, std::size_t e,
                                   AdversaryStrategy strategy, Seed seed, Materialize materialize) {
    check_dims(mc, x);
    return apply_channel(mc, &x, Adversarial{e, strategy}, seed, materialize);
}

SamplingMatrix erase_entries(const ContactMatrix& mc, std::span<const Erasure> erasures) {
    BitMatrix out = mc.bits();
    for (const auto& er : erasures) {
        if (er.row >= mc.m() || er.col >= mc.n())
            throw InvalidArgument(fmt::format("erasure ({}, {}) out of range", er.row + 1, er.col + 1));
        if (!mc.get(er.row, er.col))
            throw InvalidArgument(fmt::format("erasure ({}, {}) hits a zero entry", er.row + 1, er.col + 1));
        out.set(er.row, er.col, false);
    }
    return SamplingMatrix(mc, std::move(out));
}

Sample end_to_end_sample(const ContactMatrix& mc, const SparseSignal& x, const ChannelSpec& channel, Seed seed,
                         Materialize materialize) {
    check_dims(mc, x);
    validate(channel);
    SamplingMatrix ms = apply_channel(mc, &x, channel, seed, materialize);
    Outcome y = measure(ms, x);
    return Sample{std::move(ms), std::move(y)};
}

Outcome sample_outcome(const ContactMatrix& mc, const SparseSignal& x, const ChannelSpec& channel, Seed seed) {
    check_dims(mc, x);
    validate(channel);
    Outcome y{BitVector(mc.m())};
    std::vector<Word> scratch(mc.bits().words_per_column());
    for (std::size_t j : x.support()) {
        const auto src = mc.bits().column(j);
        std::copy(src.begin(), src.end(), scratch.begin());
        corrupt_column(scratch, channel, seed, j, true);
        or_into(y.bits.words(), scratch);
    }
    return y;
}

}  // namespace pgt
