#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pgt {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Fixed-length packed bit vector. Bits past size() are always zero.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

    std::size_t size() const { return size_; }
    bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool v = true) {
        const Word mask = Word{1} << (i % kWordBits);
        if (v) words_[i / kWordBits] |= mask;
        else words_[i / kWordBits] &= ~mask;
    }

    std::size_t count() const;
    std::vector<std::size_t> ones() const;

    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

/// Column-major packed boolean matrix. Each column occupies words_per_column()
/// consecutive words, so column support operations are word-parallel.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpc_(words_for(rows)), words_(wpc_ * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_column() const { return wpc_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[c * wpc_ + r / kWordBits] >> (r % kWordBits)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool v = true) {
        Word& w = words_[c * wpc_ + r / kWordBits];
        const Word mask = Word{1} << (r % kWordBits);
        if (v) w |= mask;
        else w &= ~mask;
    }

    std::span<const Word> column(std::size_t c) const { return {words_.data() + c * wpc_, wpc_}; }
    std::span<Word> column(std::size_t c) { return {words_.data() + c * wpc_, wpc_}; }

    std::size_t column_weight(std::size_t c) const;
    std::vector<std::size_t> column_support(std::size_t c) const;
    std::size_t count() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpc_ = 0;
    std::vector<Word> words_;
};

inline std::size_t popcount(std::span<const Word> a) {
    std::size_t n = 0;
    for (Word w : a) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

/// |supp(a) \ supp(b)|
inline std::size_t popcount_and_not(std::span<const Word> a, std::span<const Word> b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & ~b[i]));
    return n;
}

inline void or_into(std::span<Word> acc, std::span<const Word> src) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] |= src[i];
}

}  // namespace pgt
