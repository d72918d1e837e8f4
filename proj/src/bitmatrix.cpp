#include "pgt/bitmatrix.hpp"

namespace pgt {

namespace {

void append_ones(std::span<const Word> words, std::vector<std::size_t>& out) {
    for (std::size_t w = 0; w < words.size(); ++w) {
        Word bits = words[w];
        while (bits != 0) {
            out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
}

}  // namespace

std::size_t BitVector::count() const { return popcount(words_); }

std::vector<std::size_t> BitVector::ones() const {
    std::vector<std::size_t> out;
    append_ones(words_, out);
    return out;
}

std::size_t BitMatrix::column_weight(std::size_t c) const { return popcount(column(c)); }

std::vector<std::size_t> BitMatrix::column_support(std::size_t c) const {
    std::vector<std::size_t> out;
    append_ones(column(c), out);
    return out;
}

std::size_t BitMatrix::count() const { return popcount(words_); }

}  // namespace pgt
