#include "pgt/galois_field.hpp"

#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "pgt/error.hpp"

namespace pgt {

bool is_prime(std::uint32_t v) {
    if (v < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

std::optional<PrimePower> factor_prime_power(std::uint32_t q) {
    if (q < 2) return std::nullopt;
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    unsigned s = 0;
    while (q % p == 0) {
        q /= p;
        ++s;
    }
    if (q != 1) return std::nullopt;
    return PrimePower{p, s};
}

std::vector<std::uint32_t> prime_powers_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = 2; q <= limit; ++q)
        if (factor_prime_power(q)) out.push_back(q);
    return out;
}

namespace {

void trim(Polynomial& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over GF(p).
Polynomial poly_mod(Polynomial a, const Polynomial& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * static_cast<std::uint64_t>(b[i])) % p);
        trim(a);
    }
    return a;
}

Polynomial decode(std::uint32_t v, std::uint32_t p, unsigned s) {
    Polynomial out(s, 0);
    for (unsigned i = 0; i < s; ++i) {
        out[i] = v % p;
        v /= p;
    }
    return out;
}

std::uint32_t encode(const Polynomial& c, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
}

std::uint32_t ipow(std::uint32_t b, unsigned e) {
    std::uint32_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

bool is_irreducible(const Polynomial& poly, std::uint32_t p) {
    Polynomial f = poly;
    trim(f);
    if (f.size() < 2) return false;
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    if (deg == 1) return true;
    for (unsigned d = 1; d <= deg / 2; ++d) {
        const std::uint32_t count = ipow(p, d);
        for (std::uint32_t low = 0; low < count; ++low) {
            Polynomial g = decode(low, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

Polynomial smallest_irreducible(std::uint32_t p, unsigned s) {
    if (!is_prime(p) || s == 0) throw InvalidArgument(fmt::format("no field GF({}^{})", p, s));
    const std::uint32_t count = ipow(p, s);
    for (std::uint32_t low = 0; low < count; ++low) {
        Polynomial f = decode(low, p, s);
        f.push_back(1);
        if (is_irreducible(f, p)) return f;
    }
    throw InvalidArgument(fmt::format("no irreducible polynomial of degree {} over GF({})", s, p));
}

namespace {

PrimePower checked_order(std::uint32_t order) {
    if (order > kMaxFieldOrder) throw InvalidArgument(fmt::format("field order {} exceeds 2^16", order));
    auto pp = factor_prime_power(order);
    if (!pp) throw InvalidArgument(fmt::format("field order {} is not a prime power", order));
    return *pp;
}

}  // namespace

FiniteField::FiniteField(std::uint32_t order)
    : FiniteField(checked_order(order).prime, checked_order(order).exponent,
                  smallest_irreducible(checked_order(order).prime, checked_order(order).exponent)) {}

FiniteField::FiniteField(std::uint32_t p, unsigned s, Polynomial modulus)
    : p_(p), s_(s), modulus_(std::move(modulus)) {
    if (!is_prime(p) || s == 0) throw InvalidArgument(fmt::format("no field GF({}^{})", p, s));
    const double approx = std::pow(static_cast<double>(p), static_cast<double>(s));
    if (approx > kMaxFieldOrder) throw InvalidArgument(fmt::format("field order {}^{} exceeds 2^16", p, s));
    order_ = ipow(p, s);
    if (modulus_.size() != s + 1 || modulus_.back() != 1)
        throw InvalidArgument(fmt::format("modulus must be monic of degree {}", s));
    for (auto c : modulus_)
        if (c >= p) throw InvalidArgument("modulus coefficient outside GF(p)");
    if (!is_irreducible(modulus_, p)) throw InvalidArgument("modulus is not irreducible");
    if (s_ > 1) build_tables();
}

void FiniteField::build_tables() {
    const std::uint32_t q1 = order_ - 1;
    auto poly_mul = [&](std::uint32_t a, std::uint32_t b) {
        const Polynomial pa = decode(a, p_, s_);
        const Polynomial pb = decode(b, p_, s_);
        Polynomial prod(2 * s_ - 1, 0);
        for (unsigned i = 0; i < s_; ++i)
            for (unsigned j = 0; j < s_; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p_);
        return encode(poly_mod(prod, modulus_, p_), p_);
    };
    exp_.assign(2 * static_cast<std::size_t>(q1), 0);
    log_.assign(order_, 0);
    // search for a primitive element
    for (std::uint32_t g = 2; g < order_; ++g) {
        std::uint32_t x = 1;
        std::uint32_t period = 0;
        do {
            exp_[period] = x;
            x = poly_mul(x, g);
            ++period;
        } while (x != 1 && period < q1);
        if (x == 1 && period == q1) {
            for (std::uint32_t i = 0; i < q1; ++i) {
                exp_[q1 + i] = exp_[i];
                log_[exp_[i]] = i;
            }
            return;
        }
    }
    throw InvalidArgument("no primitive element found");  // unreachable for a field
}

void FiniteField::check(Element a) const {
    if (a >= order_) throw InvalidArgument(fmt::format("element {} outside GF({})", a, order_));
}

FiniteField::Element FiniteField::add(Element a, Element b) const {
    check(a);
    check(b);
    if (s_ == 1) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    Element r = 0;
    Element place = 1;
    for (unsigned i = 0; i < s_; ++i) {
        r += ((a % p_ + b % p_) % p_) * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return r;
}

FiniteField::Element FiniteField::neg(Element a) const {
    check(a);
    if (s_ == 1) return (p_ - a) % p_;
    if (p_ == 2) return a;
    Element r = 0;
    Element place = 1;
    for (unsigned i = 0; i < s_; ++i) {
        r += ((p_ - a % p_) % p_) * place;
        a /= p_;
        place *= p_;
    }
    return r;
}

FiniteField::Element FiniteField::mul(Element a, Element b) const {
    check(a);
    check(b);
    if (s_ == 1) return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
}

FiniteField::Element FiniteField::inv(Element a) const {
    check(a);
    if (a == 0) throw InvalidArgument("inverse of zero");
    if (s_ == 1) return pow(a, p_ - 2);
    return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
}

FiniteField::Element FiniteField::pow(Element a, std::uint64_t e) const {
    check(a);
    Element result = 1;
    Element base = a;
    while (e > 0) {
        if (e & 1U) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::string FiniteField::to_string() const {
    return fmt::format("GF({}^{})/{}", p_, s_, fmt::join(modulus_, ","));
}

}  // namespace pgt
