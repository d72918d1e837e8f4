#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "pgt/core_model.hpp"
#include "pgt/rng.hpp"

namespace pgt {

inline constexpr double kDefaultAlpha = 0.2;
inline constexpr double kDefaultDelta = 0.05;

/// ceil(x), ignoring floating-point residue below 1e-9 so that e.g.
/// ceil(0.1 * 1.15 * 100) is 12 and not 13 when the product lands at 11.5000000001.
std::size_t ceil_tolerant(double x);

/// Parameters of the Bernoulli design: entries are 1 with probability
/// q = alpha / k, the decoder tolerates e = ceil((1-p)(1+3 delta) q m) missing
/// entries per column.
struct ProbDesignParams {
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 1.0;
    double alpha = kDefaultAlpha;
    double delta = kDefaultDelta;
    double q = 0.0;
    std::size_t m = 0;
    std::size_t e = 0;
    double gamma = 0.0;

    std::string kind_label() const;
};

/// (3^-alpha - (1-p)(1+3 delta))^2 / 2^(1-alpha). Throws InfeasibleParameters
/// unless 3^-alpha > (1-p)(1+3 delta), the condition under which the
/// Chernoff step that produces gamma is valid.
double gamma_constant(double p, double alpha, double delta);

/// k^2 ln(n/k) / (alpha gamma), the real-valued number of rows beyond which
/// the union bound over (S, i) vanishes.
double prob_row_bound(std::size_t n, std::size_t k, double alpha, double gamma);

ProbDesignParams derive_prob_params(std::size_t n, std::size_t k, double p, double alpha = kDefaultAlpha,
                                    double delta = kDefaultDelta,
                                    std::optional<std::size_t> m_override = std::nullopt);

/// derive_prob_params with m = ceil(multiplier * prob_row_bound).
ProbDesignParams derive_prob_params_scaled(std::size_t n, std::size_t k, double p, double alpha, double delta,
                                           double multiplier);

/// i.i.d. Bernoulli(q) entries; column j draws from substream(seed, j).
ContactMatrix build_probabilistic(const ProbDesignParams& params, Seed seed);

/// Kautz-Singleton parameters: RS code of length and alphabet n' (a prime
/// power), dimension k', m = n'^2 rows, e = ceil((1-p)(1+delta) n').
struct KSDesignParams {
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 1.0;
    double delta = kDefaultDelta;
    std::uint32_t nprime = 0;
    std::size_t kprime = 0;
    std::size_t m = 0;
    std::size_t e = 0;

    std::string kind_label() const;
};

/// Smallest prime power n' <= 2^16 (with the smallest k' such that
/// n'^k' >= n) satisfying n' - k k' > e.
KSDesignParams derive_ks_params(std::size_t n, std::size_t k, double p, double delta = kDefaultDelta);

/// Column j is the RS codeword of the j-th lexicographic message with each
/// symbol c_i replaced by the basis vector e_{c_i} of length n'; row index
/// i * n' + c_i.
ContactMatrix build_kautz_singleton(const KSDesignParams& params);

}  // namespace pgt
