// pgt: designs, verification, decoding and Monte Carlo sweeps from the shell.
// Exit codes: 0 ok, 1 infeasible parameters, 2 malformed input.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "pgt/bounds.hpp"
#include "pgt/decoding.hpp"
#include "pgt/designs.hpp"
#include "pgt/disjunct.hpp"
#include "pgt/error.hpp"
#include "pgt/gtmat_io.hpp"
#include "pgt/harness.hpp"

using json = nlohmann::json;
using namespace pgt;

namespace {

constexpr int kExitInfeasible = 1;
constexpr int kExitBadInput = 2;

struct DesignOpts {
    std::string design = "bernoulli";
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 1.0;
    std::optional<std::size_t> m;
    double alpha = kDefaultAlpha;
    double delta = kDefaultDelta;
    std::uint64_t seed = 0;
};

void add_design_flags(CLI::App* cmd, DesignOpts& o, bool with_seed = true) {
    cmd->add_option("--design", o.design, "bernoulli or ks")->check(CLI::IsMember({"bernoulli", "ks"}));
    cmd->add_option("--n", o.n, "number of individuals")->required();
    cmd->add_option("--k", o.k, "sparsity")->required();
    cmd->add_option("--p", o.p, "contamination probability");
    cmd->add_option("--m", o.m, "row count override (bernoulli)");
    cmd->add_option("--alpha", o.alpha, "density knob, q = alpha/k");
    cmd->add_option("--delta", o.delta, "slack");
    if (with_seed) cmd->add_option("--seed", o.seed, "RNG seed");
}

json to_json(const ProbDesignParams& pp) {
    return {{"design", "bernoulli"}, {"n", pp.n},         {"k", pp.k},         {"p", pp.p},
            {"alpha", pp.alpha},     {"delta", pp.delta}, {"q", pp.q},         {"m", pp.m},
            {"e", pp.e},             {"gamma", pp.gamma}, {"kind", pp.kind_label()}};
}

json to_json(const KSDesignParams& kp) {
    return {{"design", "ks"},        {"n", kp.n},          {"k", kp.k}, {"p", kp.p},
            {"delta", kp.delta},     {"nprime", kp.nprime}, {"kprime", kp.kprime},
            {"m", kp.m},             {"e", kp.e},          {"kind", kp.kind_label()}};
}

json to_json(const BoundReport& b) {
    json j{{"name", b.name}, {"value", b.value}, {"log10", b.log10_value}};
    json inputs = json::object();
    for (const auto& [key, v] : b.inputs) inputs[key] = v;
    j["inputs"] = inputs;
    if (b.gamma_form) {
        j["gamma_form"] = *b.gamma_form;
        j["gamma_form_log10"] = *b.gamma_form_log10;
    }
    return j;
}

struct Built {
    ContactMatrix mc;
    std::size_t e;
    json params;
};

Built build_design(const DesignOpts& o) {
    if (parse_design(o.design) == DesignKind::ks) {
        const auto kp = derive_ks_params(o.n, o.k, o.p, o.delta);
        return {build_kautz_singleton(kp), kp.e, to_json(kp)};
    }
    const auto pp = derive_prob_params(o.n, o.k, o.p, o.alpha, o.delta, o.m);
    return {build_probabilistic(pp, Seed{o.seed}), pp.e, to_json(pp)};
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

int cmd_design(const DesignOpts& o, const std::string& out) {
    Built b = build_design(o);
    if (out.empty() || out == "-") {
        write_gtmat(std::cout, b.mc);
        return 0;
    }
    save_matrix(b.mc, out);
    b.params["seed"] = o.seed;
    b.params["out"] = out;
    emit(b.params);
    return 0;
}

int cmd_verify(const std::string& matrix, std::size_t k, std::size_t e) {
    const ContactMatrix mc = load_matrix(matrix);
    const auto r = verify_disjunct(mc, k, e);
    json j{{"k", r.k}, {"e", r.e}, {"holds", r.holds}, {"m", mc.m()}, {"n", mc.n()}};
    if (r.witness) {
        std::vector<std::size_t> s;
        for (std::size_t c : r.witness->columns) s.push_back(c + 1);
        j["witness"] = {{"S", s}, {"i", r.witness->column + 1}, {"leftover", r.witness->leftover}};
    } else {
        j["witness"] = nullptr;
    }
    emit(j);
    return 0;
}

int cmd_decode(const std::string& matrix, const std::string& outcome, std::size_t e, std::optional<std::size_t> k) {
    const ContactMatrix mc = load_matrix(matrix);
    const Outcome y = Outcome::from_string(outcome);
    if (y.size() != mc.m())
        throw ParseError(fmt::format("outcome has {} entries but the matrix has {} rows", y.size(), mc.m()));
    const auto r = distance_decode(mc, y, e, k);
    emit({{"e", e}, {"candidates", r.one_based()}, {"oversized", r.oversized}});
    return 0;
}

struct SimulateOpts {
    std::string matrix;
    std::string signal;
    std::string adversary;
    std::optional<std::size_t> e;
};

int cmd_simulate(const DesignOpts& o, const SimulateOpts& s) {
    std::optional<Built> built;
    if (!s.matrix.empty()) {
        built = Built{load_matrix(s.matrix), 0, json{{"design", "external"}, {"matrix", s.matrix}}};
        if (built->mc.n() != o.n)
            throw ParseError(fmt::format("--n {} does not match the matrix ({} columns)", o.n, built->mc.n()));
    } else {
        built = build_design(o);
    }
    const std::size_t e = s.e.value_or(built->e);
    ChannelSpec channel = Stochastic{o.p};
    if (!s.adversary.empty()) channel = Adversarial{e, parse_strategy(s.adversary)};
    const std::string design = built->params.value("kind", std::string("external"));
    TrialRecord rec = s.signal.empty()
                          ? run_trial(built->mc, o.k, e, channel, Seed{o.seed}, design)
                          : run_trial(built->mc, parse_signal(s.signal, built->mc.n()), e, channel, Seed{o.seed}, design);
    const Outcome y = sample_outcome(built->mc, rec.truth, channel, substream(Seed{o.seed}, kChannelStream));
    emit({{"seed", rec.seed},
          {"design", rec.design},
          {"n", rec.n},
          {"k", rec.k},
          {"m", rec.m},
          {"p", rec.p},
          {"e", rec.e},
          {"channel", std::holds_alternative<Adversarial>(channel) ? s.adversary : "stochastic"},
          {"truth", rec.truth.one_based()},
          {"outcome", y.to_string()},
          {"candidates", rec.decoded.one_based()},
          {"oversized", rec.decoded.oversized},
          {"exact", rec.exact},
          {"false_pos", rec.false_pos},
          {"false_neg", rec.false_neg},
          {"decode_micros", rec.decode_micros}});
    return 0;
}

struct SweepOpts {
    std::string design = "bernoulli";
    std::vector<std::size_t> n, k, m;
    std::vector<double> p{1.0}, c;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::string adversary;
    bool fresh = false;
    double alpha = kDefaultAlpha;
    double delta = kDefaultDelta;
    std::string out;
};

int cmd_sweep(const SweepOpts& o) {
    SweepSpec spec;
    spec.design = parse_design(o.design);
    spec.n_grid = o.n;
    spec.k_grid = o.k;
    spec.p_grid = o.p;
    spec.m_grid = o.m;
    if (!o.c.empty()) spec.m_multipliers = o.c;
    if (!o.m.empty() && !o.c.empty()) throw InvalidArgument("--m and --c are mutually exclusive");
    spec.trials = o.trials;
    spec.base_seed = Seed{o.seed};
    if (!o.adversary.empty()) spec.channel = {SweepChannel::Kind::adversarial, parse_strategy(o.adversary)};
    spec.fresh_matrix_per_trial = o.fresh;
    spec.alpha = o.alpha;
    spec.delta = o.delta;
    const auto cells = run_sweep(spec);
    if (o.out.empty() || o.out == "-") {
        write_csv(std::cout, cells);
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw InvalidArgument(fmt::format("cannot open '{}' for writing", o.out));
        write_csv(f, cells);
    }
    return 0;
}

int cmd_bounds(const DesignOpts& o) {
    if (parse_design(o.design) == DesignKind::ks) {
        const auto kp = derive_ks_params(o.n, o.k, o.p, o.delta);
        emit({{"params", to_json(kp)},
              {"ks_margin", ks_guarantee_margin(kp, kp.k)},
              {"prop2", to_json(prop2_stochastic_error_bound(1.0 / kp.nprime, kp.m, kp.n, kp.p, kp.delta))}});
        return 0;
    }
    const auto pp = derive_prob_params(o.n, o.k, o.p, o.alpha, o.delta, o.m);
    emit({{"params", to_json(pp)},
          {"row_bound", prob_row_bound(pp.n, pp.k, pp.alpha, pp.gamma)},
          {"prop2", to_json(prop2_stochastic_error_bound(pp.q, pp.m, pp.n, pp.p, pp.delta))},
          {"design_failure",
           to_json(prob_design_failure_bound(pp.n, pp.k, pp.q, pp.m, static_cast<double>(pp.e), pp.gamma))}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Group testing under diluted measurements"};
    app.require_subcommand(1);

    DesignOpts dopt;
    std::string out;
    auto* design = app.add_subcommand("design", "build a contact matrix and write it as GTMAT");
    add_design_flags(design, dopt);
    design->add_option("--out", out, "output file (default stdout)");

    std::string matrix;
    std::size_t vk = 0;
    std::size_t ve = 0;
    auto* verify = app.add_subcommand("verify", "exhaustive (k,e)-disjunctness check");
    verify->add_option("--matrix", matrix, "GTMAT file")->required();
    verify->add_option("--k", vk, "sparsity")->required();
    verify->add_option("--e", ve, "tolerance")->required();

    std::string outcome;
    std::optional<std::size_t> dk;
    auto* decode = app.add_subcommand("decode", "distance decoder");
    decode->add_option("--matrix", matrix, "GTMAT file")->required();
    decode->add_option("--y,--outcome", outcome, "test outcomes as a 0/1 string")->required();
    decode->add_option("--e", ve, "tolerance")->required();
    decode->add_option("--k", dk, "sparsity, flags oversized results");

    DesignOpts sopt;
    SimulateOpts sim;
    auto* simulate = app.add_subcommand("simulate", "one seeded trial, verbose");
    add_design_flags(simulate, sopt);
    simulate->add_option("--matrix", sim.matrix, "use a GTMAT file instead of building a design");
    simulate->add_option("--signal", sim.signal, "fixed support, e.g. supp=3,4");
    simulate->add_option("--adversary", sim.adversary, "none, random or max-random instead of dilution");
    simulate->add_option("--e", sim.e, "decoder tolerance and adversary budget");

    SweepOpts wopt;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo grid, CSV output");
    sweep->add_option("--design", wopt.design, "bernoulli or ks")->check(CLI::IsMember({"bernoulli", "ks"}));
    sweep->add_option("--n", wopt.n, "grid")->required()->delimiter(',');
    sweep->add_option("--k", wopt.k, "grid")->required()->delimiter(',');
    sweep->add_option("--p", wopt.p, "grid")->delimiter(',');
    sweep->add_option("--m", wopt.m, "explicit row counts")->delimiter(',');
    sweep->add_option("--c", wopt.c, "multipliers on the derived row count")->delimiter(',');
    sweep->add_option("--trials", wopt.trials, "trials per cell");
    sweep->add_option("--seed", wopt.seed, "base seed");
    sweep->add_option("--adversary", wopt.adversary, "random or max-random instead of dilution");
    sweep->add_flag("--fresh-matrix", wopt.fresh, "new contact matrix for every trial");
    sweep->add_option("--alpha", wopt.alpha, "density knob");
    sweep->add_option("--delta", wopt.delta, "slack");
    sweep->add_option("--out", wopt.out, "CSV file (default stdout)");

    DesignOpts bopt;
    auto* bounds = app.add_subcommand("bounds", "derived parameters and analytic bounds");
    add_design_flags(bounds, bopt, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (*design) return cmd_design(dopt, out);
        if (*verify) return cmd_verify(matrix, vk, ve);
        if (*decode) return cmd_decode(matrix, outcome, ve, dk);
        if (*simulate) return cmd_simulate(sopt, sim);
        if (*sweep) return cmd_sweep(wopt);
        if (*bounds) return cmd_bounds(bopt);
    } catch (const InfeasibleParameters& ex) {
        std::cerr << "infeasible: " << ex.what() << '\n';
        return kExitInfeasible;
    } catch (const GuardExceeded& ex) {
        std::cerr << "too large: " << ex.what() << '\n';
        return kExitInfeasible;
    } catch (const ParseError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitBadInput;
    } catch (const InvalidArgument& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitBadInput;
    }
    return 0;
}
