#include "pgt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pgt/error.hpp"

namespace pgt {

namespace {

constexpr double kLn10 = std::numbers::ln10;

}  // namespace

double log_binomial(std::size_t n, std::size_t k) {
    if (k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0);
}

BoundReport prop2_stochastic_error_bound(double q, std::size_t m, std::size_t n, double p, double delta) {
    if (!(q > 0.0 && q <= 1.0)) throw InvalidArgument("q outside (0,1]");
    if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("p outside (0,1]");
    if (!(delta >= 0.0 && delta < 1.0)) throw InvalidArgument("delta outside [0,1)");
    const double qm = q * static_cast<double>(m);
    const double exponent = delta * delta * (1.0 - delta) * (1.0 - p) * qm / 4.0;
    const double log_value = std::log(static_cast<double>(n)) - exponent;
    BoundReport r;
    r.name = "prop2_stochastic_error";
    r.value = std::exp(log_value);
    r.log10_value = log_value / kLn10;
    r.inputs = {{"q", q}, {"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}, {"p", p}, {"delta", delta}};
    return r;
}

BoundReport prob_design_failure_bound(std::size_t n, std::size_t k, double q, std::size_t m, double e,
                                      std::optional<double> gamma) {
    if (!(q > 0.0 && q <= 1.0)) throw InvalidArgument("q outside (0,1]");
    if (e < 0.0) throw InvalidArgument("e must be non-negative");
    const double md = static_cast<double>(m);
    const double mu = q * std::pow(1.0 - q, static_cast<double>(k)) * md;
    const double log_union = std::log(static_cast<double>(n)) + log_binomial(n, k);
    BoundReport r;
    r.name = "prob_design_failure";
    r.inputs = {{"n", static_cast<double>(n)}, {"k", static_cast<double>(k)}, {"q", q}, {"m", md}, {"e", e}};
    if (e >= mu) {
        r.value = 1.0;
        r.log10_value = 0.0;
    } else {
        const double log_value = std::min(0.0, log_union - (mu - e) * (mu - e) / (2.0 * mu));
        r.value = std::exp(log_value);
        r.log10_value = log_value / kLn10;
    }
    if (gamma) {
        r.inputs.emplace_back("gamma", *gamma);
        const double log_g = std::min(0.0, log_union - md * q * *gamma);
        r.gamma_form = std::exp(log_g);
        r.gamma_form_log10 = log_g / kLn10;
    }
    return r;
}

long long ks_guarantee_margin(const KSDesignParams& params, std::size_t k) {
    return static_cast<long long>(params.nprime) - static_cast<long long>(k * params.kprime) -
           static_cast<long long>(params.e);
}

WeightStats column_weight_stats(const ContactMatrix& mc) {
    WeightStats s;
    s.min = std::numeric_limits<std::size_t>::max();
    std::size_t total = 0;
    for (std::size_t j = 0; j < mc.n(); ++j) {
        const std::size_t w = mc.column_weight(j);
        s.min = std::min(s.min, w);
        s.max = std::max(s.max, w);
        total += w;
    }
    s.mean = static_cast<double>(total) / static_cast<double>(mc.n());
    return s;
}

}  // namespace pgt
