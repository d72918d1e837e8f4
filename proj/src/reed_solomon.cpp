#include "pgt/reed_solomon.hpp"

#include <limits>

#include <fmt/format.h>

#include "pgt/error.hpp"

namespace pgt {

ReedSolomonCode::ReedSolomonCode(FiniteField field, std::size_t dimension)
    : field_(std::move(field)), dimension_(dimension) {
    if (dimension_ < 1 || dimension_ > field_.order())
        throw InvalidArgument(fmt::format("RS dimension {} outside [1, {}]", dimension_, field_.order()));
}

std::size_t ReedSolomonCode::message_count() const {
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    std::size_t total = 1;
    for (std::size_t i = 0; i < dimension_; ++i) {
        if (total > kMax / field_.order()) return kMax;
        total *= field_.order();
    }
    return total;
}

std::vector<ReedSolomonCode::Element> ReedSolomonCode::encode(std::span<const Element> message) const {
    if (message.size() != dimension_)
        throw InvalidArgument(fmt::format("RS message has {} symbols, expected {}", message.size(), dimension_));
    std::vector<Element> codeword(length());
    for (Element point = 0; point < field_.order(); ++point) {
        // Horner
        Element acc = 0;
        for (std::size_t i = dimension_; i-- > 0;) acc = field_.add(field_.mul(acc, point), message[i]);
        codeword[point] = acc;
    }
    return codeword;
}

std::vector<ReedSolomonCode::Element> ReedSolomonCode::message_at(std::size_t index) const {
    if (index >= message_count())
        throw InvalidArgument(fmt::format("message index {} exceeds code size", index));
    std::vector<Element> msg(dimension_, 0);
    for (std::size_t i = dimension_; i-- > 0;) {
        msg[i] = static_cast<Element>(index % field_.order());
        index /= field_.order();
    }
    return msg;
}

std::vector<std::vector<ReedSolomonCode::Element>> ReedSolomonCode::enumerate_messages(std::size_t count) const {
    if (count > message_count())
        throw InvalidArgument(fmt::format("requested {} messages but the code has only {}", count, message_count()));
    std::vector<std::vector<Element>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(message_at(i));
    return out;
}

}  // namespace pgt
