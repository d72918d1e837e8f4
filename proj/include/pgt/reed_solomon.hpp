#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pgt/galois_field.hpp"

namespace pgt {

/// Evaluation-form Reed-Solomon code over GF(q): length q (one coordinate per
/// field element, in canonical integer order), dimension k'. A message
/// (c_0, ..., c_{k'-1}) is the polynomial c_0 + c_1 x + ... + c_{k'-1} x^{k'-1}.
class ReedSolomonCode {
public:
    using Element = FiniteField::Element;

    ReedSolomonCode(FiniteField field, std::size_t dimension);

    const FiniteField& field() const { return field_; }
    std::size_t length() const { return field_.order(); }
    std::size_t dimension() const { return dimension_; }
    std::size_t min_distance() const { return length() - dimension_ + 1; }

    /// q^k' saturated at SIZE_MAX.
    std::size_t message_count() const;

    std::vector<Element> encode(std::span<const Element> message) const;

    /// The index-th message in lexicographic order, least-significant symbol last.
    std::vector<Element> message_at(std::size_t index) const;

    /// First `count` messages in lexicographic order.
    std::vector<std::vector<Element>> enumerate_messages(std::size_t count) const;

private:
    FiniteField field_;
    std::size_t dimension_;
};

}  // namespace pgt
