#include "pgt/designs.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "pgt/error.hpp"
#include "pgt/galois_field.hpp"
#include "pgt/reed_solomon.hpp"

namespace pgt {

std::size_t ceil_tolerant(double x) {
    if (x <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

namespace {

void check_common(std::size_t n, std::size_t k, double p) {
    if (n == 0 || k == 0) throw InvalidArgument("n and k must be positive");
    if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("contamination probability p={} outside (0,1]", p));
}

}  // namespace

std::string ProbDesignParams::kind_label() const { return fmt::format("bernoulli({},{},{})", alpha, delta, q); }

std::string KSDesignParams::kind_label() const { return fmt::format("ks({},{},{})", nprime, kprime, delta); }

double gamma_constant(double p, double alpha, double delta) {
    const double base = std::pow(3.0, -alpha) - (1.0 - p) * (1.0 + 3.0 * delta);
    if (!(base > 0.0))
        throw InfeasibleParameters(fmt::format(
            "gamma undefined: need 3^-alpha > (1-p)(1+3 delta), got {:.6g} <= {:.6g} (alpha={}, delta={}, p={})",
            std::pow(3.0, -alpha), (1.0 - p) * (1.0 + 3.0 * delta), alpha, delta, p));
    return base * base / std::pow(2.0, 1.0 - alpha);
}

double prob_row_bound(std::size_t n, std::size_t k, double alpha, double gamma) {
    const double kk = static_cast<double>(k);
    return kk * kk * std::log(static_cast<double>(n) / kk) / (alpha * gamma);
}

ProbDesignParams derive_prob_params(std::size_t n, std::size_t k, double p, double alpha, double delta,
                                    std::optional<std::size_t> m_override) {
    check_common(n, k, p);
    if (k >= n) throw InvalidArgument(fmt::format("need k < n, got k={} n={}", k, n));
    if (!(alpha > 0.0) || !(delta > 0.0)) throw InvalidArgument("alpha and delta must be positive");
    ProbDesignParams out;
    out.n = n;
    out.k = k;
    out.p = p;
    out.alpha = alpha;
    out.delta = delta;
    out.q = alpha / static_cast<double>(k);
    if (out.q > 1.0) throw InvalidArgument(fmt::format("q = alpha/k = {} exceeds 1", out.q));
    out.gamma = gamma_constant(p, alpha, delta);
    if (m_override) {
        if (*m_override == 0) throw InvalidArgument("m must be positive");
        out.m = *m_override;
    } else {
        out.m = std::max<std::size_t>(1, ceil_tolerant(prob_row_bound(n, k, alpha, out.gamma)));
    }
    out.e = ceil_tolerant((1.0 - p) * (1.0 + 3.0 * delta) * out.q * static_cast<double>(out.m));
    return out;
}

ProbDesignParams derive_prob_params_scaled(std::size_t n, std::size_t k, double p, double alpha, double delta,
                                           double multiplier) {
    if (!(multiplier > 0.0)) throw InvalidArgument("row multiplier must be positive");
    const ProbDesignParams base = derive_prob_params(n, k, p, alpha, delta);
    const std::size_t m = std::max<std::size_t>(1, ceil_tolerant(multiplier * prob_row_bound(n, k, alpha, base.gamma)));
    return derive_prob_params(n, k, p, alpha, delta, m);
}

ContactMatrix build_probabilistic(const ProbDesignParams& params, Seed seed) {
    if (params.m == 0 || params.n == 0) throw InvalidArgument("design has empty dimensions");
    if (!(params.q > 0.0 && params.q <= 1.0)) throw InvalidArgument("q outside (0,1]");
    BitMatrix bits(params.m, params.n);
    const auto n = static_cast<std::ptrdiff_t>(params.n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < n; ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        Engine eng = make_engine(substream(seed, j));
        for (std::size_t i = 0; i < params.m; ++i)
            if (uniform01(eng) < params.q) bits.set(i, j);
    }
    return ContactMatrix(std::move(bits), DesignMeta{params.kind_label(), seed.value});
}

KSDesignParams derive_ks_params(std::size_t n, std::size_t k, double p, double delta) {
    check_common(n, k, p);
    if (!(delta >= 0.0)) throw InvalidArgument("delta must be non-negative");
    for (std::uint32_t q : prime_powers_up_to(kMaxFieldOrder)) {
        const std::size_t e = ceil_tolerant((1.0 - p) * (1.0 + delta) * q);
        std::size_t kprime = 1;
        for (std::size_t cols = q; cols < n; cols *= q) ++kprime;
        if (kprime > q) continue;
        if (static_cast<double>(q) > static_cast<double>(k * kprime + e)) {
            KSDesignParams out;
            out.n = n;
            out.k = k;
            out.p = p;
            out.delta = delta;
            out.nprime = q;
            out.kprime = kprime;
            out.m = static_cast<std::size_t>(q) * q;
            out.e = e;
            return out;
        }
    }
    throw InfeasibleParameters(fmt::format(
        "no prime power n' <= 2^16 satisfies n' - k k' > e with e = ceil((1-p)(1+delta) n') (n={}, k={}, p={}, delta={})",
        n, k, p, delta));
}

ContactMatrix build_kautz_singleton(const KSDesignParams& params) {
    const ReedSolomonCode code(FiniteField(params.nprime), params.kprime);
    if (params.m != static_cast<std::size_t>(params.nprime) * params.nprime)
        throw InvalidArgument(fmt::format("KS design needs m = n'^2 = {}, got {}",
                                          static_cast<std::size_t>(params.nprime) * params.nprime, params.m));
    if (params.n == 0 || params.n > code.message_count())
        throw InvalidArgument(fmt::format("KS design supports 1..{} columns, got {}", code.message_count(), params.n));
    const std::size_t q = params.nprime;
    BitMatrix bits(params.m, params.n);
    const auto n = static_cast<std::ptrdiff_t>(params.n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < n; ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        const auto codeword = code.encode(code.message_at(j));
        for (std::size_t i = 0; i < q; ++i) bits.set(i * q + codeword[i], j);
    }
    return ContactMatrix(std::move(bits), DesignMeta{params.kind_label(), std::nullopt});
}

}  // namespace pgt
