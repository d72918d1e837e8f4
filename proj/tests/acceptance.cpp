// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion 6   run one

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <omp.h>

#include "converse.hpp"
#include "fixtures.hpp"
#include "pgt/bounds.hpp"
#include "pgt/decoding.hpp"
#include "pgt/designs.hpp"
#include "pgt/disjunct.hpp"
#include "pgt/error.hpp"
#include "pgt/gtmat_io.hpp"
#include "pgt/harness.hpp"

using namespace pgt;
using pgt::testing::subsets_up_to;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

// ---------------------------------------------------------------------------
// shared small-scale suite for criteria 2, 3 and 5

struct SuiteMatrix {
    std::string name;
    ContactMatrix mc;
};

std::vector<SuiteMatrix> small_suite() {
    std::vector<SuiteMatrix> suite;
    for (std::size_t n = 4; n <= 10; n += 2) suite.push_back({fmt::format("identity{}", n), ContactMatrix::identity(n)});
    suite.push_back({"ks(3,1)", build_kautz_singleton(KSDesignParams{3, 2, 1.0, kDefaultDelta, 3, 1, 9, 0})});
    suite.push_back({"ks(3,2)", build_kautz_singleton(KSDesignParams{9, 1, 1.0, kDefaultDelta, 3, 2, 9, 0})});
    suite.push_back({"example", pgt::testing::example_contact()});
    for (std::uint64_t s = 0; s < 20; ++s) {
        const std::size_t n = 6 + s % 5;
        const std::size_t k = 1 + s % 2;
        const auto pp = derive_prob_params(n, k, 1.0, 0.6, kDefaultDelta, 15);
        suite.push_back({fmt::format("bernoulli#{}", s), build_probabilistic(pp, Seed{1000 + s})});
    }
    return suite;
}

struct Instance {
    const SuiteMatrix* matrix;
    std::size_t k;
    std::size_t e;
    DisjunctReport report;
};

std::vector<Instance> classify(const std::vector<SuiteMatrix>& suite) {
    std::vector<Instance> out;
    for (const auto& sm : suite)
        for (std::size_t k = 1; k <= 2; ++k)
            for (std::size_t e = 0; e <= 2; ++e) out.push_back({&sm, k, e, verify_disjunct(sm.mc, k, e)});
    return out;
}

struct Adversary {
    AdversaryStrategy strategy;
    std::uint64_t seed;
};

std::vector<Adversary> adversaries() {
    std::vector<Adversary> a{{AdversaryStrategy::none, 0}};
    for (std::uint64_t s = 1; s <= 5; ++s) a.push_back({AdversaryStrategy::random, s});
    for (std::uint64_t s = 1; s <= 5; ++s) a.push_back({AdversaryStrategy::max_random, s});
    return a;
}

// Runs every signal of size <= k against every adversary on certified
// instances. `check` returns false on a mismatch.
template <class Check>
std::pair<std::size_t, std::size_t> sweep_certified(const std::vector<Instance>& instances, Check check) {
    std::size_t runs = 0;
    std::size_t bad = 0;
    const auto advs = adversaries();
    for (const auto& inst : instances) {
        if (!inst.report.holds) continue;
        const ContactMatrix& mc = inst.matrix->mc;
        for (const auto& supp : subsets_up_to(mc.n(), inst.k)) {
            const SparseSignal x(mc.n(), supp);
            for (const auto& adv : advs) {
                const auto ms = adversarial_corrupt(mc, x, inst.e, adv.strategy, Seed{adv.seed});
                const Outcome y = measure(ms, x);
                ++runs;
                if (!check(inst, x, y)) ++bad;
            }
        }
    }
    return {runs, bad};
}

// ---------------------------------------------------------------------------

Verdict criterion1() {
    const ContactMatrix mc = pgt::testing::example_contact();
    const ContactMatrix realized = ContactMatrix::from_rows({"100010", "010101", "010011"});
    const SamplingMatrix ms(mc, realized.bits());
    const SparseSignal x = SparseSignal::from_one_based(6, std::vector<std::size_t>{3, 4});
    const std::string y = measure(ms, x).to_string();
    std::ostringstream out;
    write_gtmat(out, mc);
    std::string body = out.str();
    body = body.substr(body.find('\n') + 1);
    const bool ok = y == "010" && body == "101010\n010101\n011011\n";
    return {ok, fmt::format("y={} rows={}", y, body == "101010\n010101\n011011\n" ? "101010/010101/011011" : "mismatch")};
}

Verdict criterion2() {
    const auto suite = small_suite();
    const auto instances = classify(suite);
    std::size_t certified = 0;
    std::size_t bernoulli = 0;
    for (const auto& inst : instances) {
        certified += inst.report.holds;
        bernoulli += inst.report.holds && inst.matrix->name.rfind("bernoulli", 0) == 0;
    }
    const auto [runs, bad] = sweep_certified(instances, [](const Instance& inst, const SparseSignal& x, const Outcome& y) {
        return distance_decode(inst.matrix->mc, y, inst.e).candidates == x.support();
    });
    return {bad == 0 && runs > 0,
            fmt::format("{} certified (k,e) instances ({} from bernoulli matrices), {} decodes, {} mismatches", certified,
                        bernoulli, runs, bad)};
}

Verdict criterion3() {
    const auto suite = small_suite();
    std::size_t witnesses = 0;
    std::size_t bad = 0;
    for (const auto& inst : classify(suite)) {
        if (inst.report.holds) continue;
        ++witnesses;
        const auto c = pgt::testing::construct_converse(inst.matrix->mc, *inst.report.witness);
        if (!(c.y == c.y_prime) || c.flips.size() > inst.e || c.x == c.x_prime) ++bad;
    }
    return {bad == 0 && witnesses > 0, fmt::format("{} witnesses, {} failed to produce identical outcomes", witnesses, bad)};
}

Verdict criterion4() {
    Engine gen = make_engine(Seed{4});
    std::size_t violations = 0;
    const std::size_t trials = 10000;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t m = 3 + uniform_below(gen, 60);
        const std::size_t n = 2 + uniform_below(gen, 60);
        const ContactMatrix mc = pgt::testing::random_matrix(gen, m, n, 0.05 + 0.6 * uniform01(gen));
        const std::size_t k = uniform_below(gen, std::min<std::size_t>(n, 6) + 1);
        const SparseSignal x(n, random_subset(gen, n, k));
        const Seed seed{gen()};
        std::size_t e = 0;
        ChannelSpec channel;
        switch (t % 3) {
            case 0:
                channel = Stochastic{0.05 + 0.95 * uniform01(gen)};
                break;
            case 1:
                e = uniform_below(gen, 5);
                channel = Adversarial{e, AdversaryStrategy::random};
                break;
            default:
                e = uniform_below(gen, 5);
                channel = Adversarial{e, AdversaryStrategy::max_random};
                break;
        }
        const Sample s = end_to_end_sample(mc, x, channel, seed);
        // the decoder is told the largest number of flips any support column received
        for (std::size_t j : x.support()) e = std::max(e, s.sampling.flips_per_column()[j]);
        const auto r = distance_decode(mc, s.outcome, e);
        if (!std::includes(r.candidates.begin(), r.candidates.end(), x.support().begin(), x.support().end()))
            ++violations;
    }
    return {violations == 0, fmt::format("{} trials, {} violations", trials, violations)};
}

Verdict criterion5() {
    const auto suite = small_suite();
    const auto instances = classify(suite);
    const auto [runs, bad] = sweep_certified(instances, [](const Instance& inst, const SparseSignal&, const Outcome& y) {
        const auto decoded = distance_decode(inst.matrix->mc, y, inst.e);
        const auto minimal = minimal_supports(oracle_consistent_supports(inst.matrix->mc, y, inst.k, inst.e));
        return minimal.size() == 1 && minimal[0].support() == decoded.candidates;
    });
    return {bad == 0 && runs > 0, fmt::format("{} instances, {} without a unique matching minimal support", runs, bad)};
}

SweepSpec recovery_spec(std::vector<std::size_t> ns, double p) {
    SweepSpec spec;
    spec.design = DesignKind::bernoulli;
    spec.n_grid = std::move(ns);
    spec.k_grid = {2};
    spec.p_grid = {p};
    spec.trials = 500;
    spec.base_seed = Seed{20240601};
    spec.fresh_matrix_per_trial = true;
    return spec;
}

Verdict criterion6() {
    const std::vector<double> cs{0.5, 1.0, 2.0, 4.0};
    bool all = true;
    std::string detail;
    for (double p : {0.6, 0.8, 1.0}) {
        SweepSpec spec = recovery_spec({200}, p);
        spec.m_multipliers = cs;
        const auto cells = run_sweep(spec);
        std::optional<double> chosen;
        std::string rates;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            rates += fmt::format("{}c={}:m={}:{:.3f}", i ? " " : "", cs[i], cells[i].m, cells[i].success_rate());
            if (!chosen && cells[i].feasible && cells[i].success_rate() >= 0.95) chosen = cs[i];
        }
        all = all && chosen.has_value();
        detail += fmt::format("{}p={} [{}] smallest c={}", detail.empty() ? "" : "; ", p, rates,
                              chosen ? fmt::format("{}", *chosen) : "none");
    }
    return {all, detail};
}

Verdict criterion7() {
    const std::vector<std::size_t> ns{100, 200, 400, 800};
    const auto derived = run_sweep(recovery_spec(ns, 0.8));
    bool ok = true;
    std::string detail = "derived m:";
    for (const auto& c : derived) {
        ok = ok && c.success_rate() >= 0.9;
        detail += fmt::format(" n={}:m={}:{:.3f}", c.n, c.m, c.success_rate());
    }
    SweepSpec fixed = recovery_spec(ns, 0.8);
    fixed.m_grid = {derived.front().m};
    const auto cells = run_sweep(fixed);
    detail += fmt::format("; fixed m={}:", derived.front().m);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        detail += fmt::format(" n={}:{:.3f}", cells[i].n, cells[i].success_rate());
        if (i == 0) continue;
        const double a = cells[i - 1].success_rate();
        const double b = cells[i].success_rate();
        const double sigma = std::sqrt((a * (1 - a) + b * (1 - b)) / static_cast<double>(cells[i].trials));
        ok = ok && b <= a + 3 * sigma;
    }
    return {ok, detail};
}

Verdict criterion8() {
    auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
    const double r1 = rel(prop2_stochastic_error_bound(0.5, 1600, 1, 0.5, 0.1).value, 0.406569659740599102855794292485);
    const double r2 = rel(prob_design_failure_bound(1, 1, 0.5, 40, 5.0).value, 0.286504796860190100324885426648);
    const bool vacuous = rel(prop2_stochastic_error_bound(0.1, 100, 37, 0.5, 0.0).value, 37.0) <= 1e-12;
    const bool clamp = prob_design_failure_bound(1, 1, 0.5, 40, 10.0).value == 1.0;
    bool mono = true;
    double prev2 = INFINITY;
    double prevf = INFINITY;
    for (std::size_t i = 1; i <= 20; ++i) {
        const std::size_t m = 100 * i;
        const double b2 = prop2_stochastic_error_bound(0.1, m, 200, 0.8, 0.05).log10_value;
        const double bf = prob_design_failure_bound(200, 2, 0.1, m, 2.0).log10_value;
        mono = mono && b2 < prev2 && bf <= prevf;
        prev2 = b2;
        prevf = bf;
    }
    const double once = prop2_stochastic_error_bound(0.2, 300, 1, 0.6, 0.2).value;
    const double twice = prop2_stochastic_error_bound(0.2, 600, 1, 0.6, 0.2).value;
    const bool linear = rel(std::log(twice), 2 * std::log(once)) <= 1e-12;
    const bool ok = r1 <= 1e-12 && r2 <= 1e-12 && vacuous && clamp && mono && linear;
    return {ok, fmt::format("prop2 rel err {:.2e}, design bound rel err {:.2e}, vacuous={} clamp={} monotone={} "
                            "log-linear={}",
                            r1, r2, vacuous, clamp, mono, linear)};
}

Verdict criterion9() {
    std::size_t designs = 0;
    std::size_t verified = 0;
    std::size_t bad = 0;
    for (std::uint32_t q : {3u, 4u, 5u, 7u}) {
        for (std::size_t kp = 1; kp <= 2; ++kp) {
            const std::size_t n = kp == 1 ? q : q * q;
            const ContactMatrix mc = build_kautz_singleton(KSDesignParams{n, 1, 1.0, kDefaultDelta, q, kp, q * q, 0});
            ++designs;
            for (std::size_t j = 0; j < n; ++j) {
                if (mc.column_weight(j) != q) ++bad;
                for (std::size_t b = 0; b < q; ++b) {
                    std::size_t ones = 0;
                    for (std::size_t c = 0; c < q; ++c) ones += mc.get(b * q + c, j);
                    if (ones != 1) ++bad;
                }
                for (std::size_t l = j + 1; l < n; ++l)
                    if (q - popcount_and_not(mc.bits().column(j), mc.bits().column(l)) > kp - 1) ++bad;
            }
            for (std::size_t k = 1; k <= 4; ++k) {
                for (std::size_t e = 0; e <= q; ++e) {
                    const KSDesignParams params{n, k, 1.0, kDefaultDelta, q, kp, q * q, e};
                    if (ks_guarantee_margin(params, k) <= 0) continue;
                    try {
                        ++verified;
                        if (!verify_disjunct(mc, k, e).holds) ++bad;
                    } catch (const GuardExceeded&) {
                        --verified;
                    }
                }
            }
        }
    }
    return {bad == 0, fmt::format("{} designs, {} guaranteed (k,e) pairs verified, {} violations", designs, verified, bad)};
}

Verdict criterion10() {
    SweepSpec spec;
    spec.n_grid = {50, 100};
    spec.k_grid = {1, 2};
    spec.p_grid = {0.05, 0.7, 1.0};
    spec.m_multipliers = {0.5, 1.0};
    spec.trials = 50;
    spec.base_seed = Seed{99};
    spec.fresh_matrix_per_trial = true;
    auto csv = [&](int threads) {
        omp_set_num_threads(threads);
        std::ostringstream out;
        write_csv(out, run_sweep(spec));
        return out.str();
    };
    const std::string a = csv(1);
    const std::string b = csv(1);
    const std::string c = csv(4);
    omp_set_num_threads(omp_get_num_procs());

    const auto dir = std::filesystem::temp_directory_path() / fmt::format("pgt_accept_{}", ::getpid());
    std::filesystem::create_directories(dir);
    Engine gen = make_engine(Seed{10});
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        const std::size_t m = 1 + uniform_below(gen, 80);
        const std::size_t n = 1 + uniform_below(gen, 150);
        ContactMatrix mc = pgt::testing::random_matrix(gen, m, n, uniform01(gen));
        if (i % 2) mc = ContactMatrix(mc.bits(), DesignMeta{fmt::format("random({})", i), gen()});
        const auto path = dir / fmt::format("m{}.gtmat", i);
        save_matrix(mc, path);
        const ContactMatrix back = load_matrix(path);
        if (!(back == mc)) ++mismatches;
    }
    std::filesystem::remove_all(dir);
    const bool ok = a == b && a == c && mismatches == 0;
    return {ok, fmt::format("sweep CSV identical across runs={} across thread counts={}; 100 round trips, {} mismatches",
                            a == b, a == c, mismatches)};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<Verdict()>>> list{
        {"worked example regression", criterion1},
        {"disjunct matrices decode exactly", criterion2},
        {"witnesses give indistinguishable pairs", criterion3},
        {"superset guarantee", criterion4},
        {"oracle equivalence", criterion5},
        {"stochastic recovery at derived scale", criterion6},
        {"scaling shape", criterion7},
        {"bound calculators", criterion8},
        {"Kautz-Singleton structure", criterion9},
        {"reproducibility", criterion10},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    int failures = 0;
    for (std::size_t i = 0; i < criteria().size(); ++i) {
        if (only && static_cast<std::size_t>(only) != i + 1) continue;
        const auto& [name, fn] = criteria()[i];
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& ex) {
            v = {false, fmt::format("exception: {}", ex.what())};
        }
        fmt::print("[{}] criterion {}: {}: {}\n", v.pass ? "PASS" : "FAIL", i + 1, name, v.detail);
        std::fflush(stdout);
        failures += !v.pass;
    }
    return failures ? 1 : 0;
}
