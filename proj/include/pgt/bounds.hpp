#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgt/core_model.hpp"
#include "pgt/designs.hpp"

namespace pgt {

struct BoundReport {
    std::string name;
    double value = 0.0;
    double log10_value = 0.0;  // log10(value), finite even when value underflows
    std::vector<std::pair<std::string, double>> inputs;
    /// prob_design_failure_bound only: n C(n,k) exp(-m q gamma), clamped to 1.
    std::optional<double> gamma_form;
    std::optional<double> gamma_form_log10;
};

/// ln C(n, k)
double log_binomial(std::size_t n, std::size_t k);

/// Union bound over n columns on the probability that dilution removes more
/// than (1-p)(1+delta) w entries from some column of weight w >= (1-delta) q m:
///   n exp(-delta^2 (1-delta) (1-p) q m / 4).
/// Not clamped: delta = 0 reports the vacuous value n.
BoundReport prop2_stochastic_error_bound(double q, std::size_t m, std::size_t n, double p, double delta);

/// Failure probability of the Bernoulli design, union bound over (S, i):
///   min(1, n C(n,k) exp(-(mu - e)^2 / (2 mu))),  mu = q (1-q)^k m,
/// and 1 when e >= mu. Computed in log space.
BoundReport prob_design_failure_bound(std::size_t n, std::size_t k, double q, std::size_t m, double e,
                                      std::optional<double> gamma = std::nullopt);

/// n' - k k' - e; the Kautz-Singleton matrix is guaranteed (k, e)-disjunct
/// when positive.
long long ks_guarantee_margin(const KSDesignParams& params, std::size_t k);

struct WeightStats {
    std::size_t min = 0;
    std::size_t max = 0;
    double mean = 0.0;
};

WeightStats column_weight_stats(const ContactMatrix& mc);

}  // namespace pgt
