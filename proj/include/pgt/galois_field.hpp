#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pgt {

bool is_prime(std::uint32_t v);

struct PrimePower {
    std::uint32_t prime;
    unsigned exponent;
};

/// q = p^s, or nullopt when q is not a prime power.
std::optional<PrimePower> factor_prime_power(std::uint32_t q);

/// All prime powers in [2, limit], ascending.
std::vector<std::uint32_t> prime_powers_up_to(std::uint32_t limit);

inline constexpr std::uint32_t kMaxFieldOrder = 1U << 16;

/// Polynomial over GF(p), coefficients lowest degree first.
using Polynomial = std::vector<std::uint32_t>;

/// Exhaustive trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(const Polynomial& poly, std::uint32_t p);

/// Monic irreducible polynomial of degree s with the smallest integer code
/// sum(c_i p^i).
Polynomial smallest_irreducible(std::uint32_t p, unsigned s);

/// GF(p^s) with elements canonically encoded as integers in [0, p^s): the
/// base-p digits of an element are its polynomial coefficients, lowest degree
/// first. Prime fields use modular arithmetic; extension fields use
/// log/antilog tables over a primitive element.
class FiniteField {
public:
    using Element = std::uint32_t;

    /// Field of order q with the default modulus.
    explicit FiniteField(std::uint32_t order);
    /// GF(p^s) with an explicit monic irreducible modulus of degree s.
    FiniteField(std::uint32_t p, unsigned s, Polynomial modulus);

    std::uint32_t order() const { return order_; }
    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return s_; }
    const Polynomial& modulus() const { return modulus_; }

    Element add(Element a, Element b) const;
    Element neg(Element a) const;
    Element sub(Element a, Element b) const { return add(a, neg(b)); }
    Element mul(Element a, Element b) const;
    Element inv(Element a) const;
    Element pow(Element a, std::uint64_t e) const;

    /// `GF(p^s)/c0,c1,...,cs`
    std::string to_string() const;

    friend bool operator==(const FiniteField& a, const FiniteField& b) {
        return a.p_ == b.p_ && a.s_ == b.s_ && a.modulus_ == b.modulus_;
    }

private:
    void check(Element a) const;
    void build_tables();

    std::uint32_t p_ = 2;
    unsigned s_ = 1;
    std::uint32_t order_ = 2;
    Polynomial modulus_;
    std::vector<std::uint32_t> exp_;  // 2(q-1) entries, avoids a modulo in mul
    std::vector<std::uint32_t> log_;
};

}  // namespace pgt
