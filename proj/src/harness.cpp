#include "pgt/harness.hpp"

#include <chrono>
#include <ostream>

#include <fmt/format.h>

#include "pgt/bounds.hpp"
#include "pgt/error.hpp"

namespace pgt {

namespace {

double channel_p(const ChannelSpec& channel) {
    if (const auto* s = std::get_if<Stochastic>(&channel)) return s->p;
    return 1.0;
}

}  // namespace

TrialRecord run_trial(const ContactMatrix& mc, std::size_t k, std::size_t e, const ChannelSpec& channel, Seed seed,
                      std::string design) {
    if (k > mc.n()) throw InvalidArgument(fmt::format("sparsity k={} exceeds n={}", k, mc.n()));
    Engine eng = make_engine(substream(seed, kSignalStream));
    SparseSignal x(mc.n(), random_subset(eng, mc.n(), k));
    TrialRecord rec = run_trial(mc, x, e, channel, seed, std::move(design));
    rec.k = k;
    return rec;
}

TrialRecord run_trial(const ContactMatrix& mc, const SparseSignal& x, std::size_t e, const ChannelSpec& channel,
                      Seed seed, std::string design) {
    const Outcome y = sample_outcome(mc, x, channel, substream(seed, kChannelStream));
    const auto start = std::chrono::steady_clock::now();
    DecodeResult decoded = distance_decode(mc, y, e, x.sparsity());
    const auto stop = std::chrono::steady_clock::now();
    const DecodeScore score = evaluate_decode(x, decoded);

    TrialRecord rec;
    rec.seed = seed.value;
    rec.design = std::move(design);
    rec.n = mc.n();
    rec.k = x.sparsity();
    rec.m = mc.m();
    rec.p = channel_p(channel);
    rec.e = e;
    rec.exact = score.exact;
    rec.false_pos = score.false_pos;
    rec.false_neg = score.false_neg;
    rec.decode_micros = std::chrono::duration<double, std::micro>(stop - start).count();
    rec.truth = x;
    rec.decoded = std::move(decoded);
    return rec;
}

std::string to_string(DesignKind d) { return d == DesignKind::bernoulli ? "bernoulli" : "ks"; }

DesignKind parse_design(std::string_view s) {
    if (s == "bernoulli") return DesignKind::bernoulli;
    if (s == "ks") return DesignKind::ks;
    throw InvalidArgument(fmt::format("unknown design '{}' (expected bernoulli or ks)", s));
}

void validate(const SweepSpec& spec) {
    if (spec.n_grid.empty() || spec.k_grid.empty() || spec.p_grid.empty())
        throw InvalidArgument("sweep grids over n, k and p must be non-empty");
    if (spec.design == DesignKind::bernoulli && spec.m_grid.empty() && spec.m_multipliers.empty())
        throw InvalidArgument("bernoulli sweep needs an m grid or m multipliers");
    if (spec.trials == 0) throw InvalidArgument("trials must be >= 1");
}

namespace {

// Everything a cell needs to build matrices and run trials.
struct CellPlan {
    CellResult result;
    std::optional<ProbDesignParams> prob;
    std::optional<KSDesignParams> ks;
};

std::vector<CellPlan> plan_cells(const SweepSpec& spec) {
    std::vector<CellPlan> plans;
    auto push_infeasible = [&](std::size_t n, std::size_t k, double p, const std::string& why) {
        CellPlan plan;
        plan.result.design = to_string(spec.design);
        plan.result.n = n;
        plan.result.k = k;
        plan.result.p = p;
        plan.result.trials = spec.trials;
        plan.result.feasible = false;
        plan.result.infeasible_reason = why;
        plans.push_back(std::move(plan));
    };
    for (std::size_t n : spec.n_grid) {
        for (std::size_t k : spec.k_grid) {
            for (double p : spec.p_grid) {
                if (spec.design == DesignKind::ks) {
                    try {
                        CellPlan plan;
                        plan.ks = derive_ks_params(n, k, p, spec.delta);
                        plan.result.design = "ks";
                        plans.push_back(std::move(plan));
                    } catch (const std::exception& ex) {
                        push_infeasible(n, k, p, ex.what());
                    }
                    continue;
                }
                const std::size_t inner = spec.m_grid.empty() ? spec.m_multipliers.size() : spec.m_grid.size();
                for (std::size_t t = 0; t < inner; ++t) {
                    try {
                        CellPlan plan;
                        plan.prob = spec.m_grid.empty()
                                        ? derive_prob_params_scaled(n, k, p, spec.alpha, spec.delta,
                                                                    spec.m_multipliers[t])
                                        : derive_prob_params(n, k, p, spec.alpha, spec.delta, spec.m_grid[t]);
                        plan.result.design = "bernoulli";
                        plans.push_back(std::move(plan));
                    } catch (const std::exception& ex) {
                        push_infeasible(n, k, p, ex.what());
                    }
                }
            }
        }
    }
    for (auto& plan : plans) {
        if (!plan.result.feasible) continue;
        CellResult& r = plan.result;
        r.trials = spec.trials;
        if (plan.prob) {
            const auto& pp = *plan.prob;
            r.n = pp.n;
            r.k = pp.k;
            r.m = pp.m;
            r.p = pp.p;
            r.e = pp.e;
            r.bound_prop2 = prop2_stochastic_error_bound(pp.q, pp.m, pp.n, pp.p, pp.delta).value;
            r.bound_pf = prob_design_failure_bound(pp.n, pp.k, pp.q, pp.m, static_cast<double>(pp.e)).value;
        } else {
            const auto& kp = *plan.ks;
            r.n = kp.n;
            r.k = kp.k;
            r.m = kp.m;
            r.p = kp.p;
            r.e = kp.e;
            r.bound_prop2 =
                prop2_stochastic_error_bound(1.0 / static_cast<double>(kp.nprime), kp.m, kp.n, kp.p, kp.delta).value;
            // deterministic design: certified whenever the margin is positive
            r.bound_pf = ks_guarantee_margin(kp, kp.k) > 0 ? 0.0 : 1.0;
        }
    }
    return plans;
}

ContactMatrix build_cell_matrix(const CellPlan& plan, Seed seed) {
    if (plan.prob) return build_probabilistic(*plan.prob, seed);
    return build_kautz_singleton(*plan.ks);
}

}  // namespace

std::vector<CellResult> run_sweep(const SweepSpec& spec) {
    validate(spec);
    std::vector<CellPlan> plans = plan_cells(spec);
    std::vector<CellResult> results;
    results.reserve(plans.size());
    for (std::size_t cell = 0; cell < plans.size(); ++cell) {
        CellPlan& plan = plans[cell];
        CellResult& r = plan.result;
        if (!r.feasible) {
            results.push_back(r);
            continue;
        }
        const Seed cell_seed = substream(spec.base_seed, cell);
        std::optional<ContactMatrix> shared;
        if (!spec.fresh_matrix_per_trial) shared = build_cell_matrix(plan, substream(cell_seed, kMatrixStream));

        ChannelSpec channel = Stochastic{r.p};
        if (spec.channel.kind == SweepChannel::Kind::adversarial) channel = Adversarial{r.e, spec.channel.strategy};

        std::size_t successes = 0;
        std::size_t total_fp = 0;
        std::size_t total_fn = 0;
        const auto trials = static_cast<std::ptrdiff_t>(spec.trials);
        const std::string design = r.design;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : successes, total_fp, total_fn)
        for (std::ptrdiff_t t = 0; t < trials; ++t) {
            const Seed trial_seed = substream(cell_seed, static_cast<std::uint64_t>(t));
            TrialRecord rec;
            if (shared) {
                rec = run_trial(*shared, r.k, r.e, channel, trial_seed, design);
            } else {
                const ContactMatrix mc = build_cell_matrix(plan, substream(trial_seed, kMatrixStream));
                rec = run_trial(mc, r.k, r.e, channel, trial_seed, design);
            }
            successes += rec.exact ? 1 : 0;
            total_fp += rec.false_pos;
            total_fn += rec.false_neg;
        }
        r.successes = successes;
        r.total_fp = total_fp;
        r.total_fn = total_fn;
        results.push_back(r);
    }
    return results;
}

void write_csv(std::ostream& out, const std::vector<CellResult>& cells) {
    out << kCsvHeader << '\n';
    for (const auto& c : cells) {
        if (!c.feasible) {
            out << fmt::format("{},{},{},,{},,{},infeasible,,,,\n", c.design, c.n, c.k, c.p, c.trials);
            continue;
        }
        out << fmt::format("{},{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6e},{:.6e}\n", c.design, c.n, c.k, c.m, c.p,
                           c.e, c.trials, c.success_rate(), c.mean_fp(), c.mean_fn(), c.bound_prop2, c.bound_pf);
    }
}

}  // namespace pgt
