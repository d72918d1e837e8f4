#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include <omp.h>

#include "fixtures.hpp"
#include "pgt/designs.hpp"
#include "pgt/error.hpp"
#include "pgt/gtmat_io.hpp"
#include "pgt/harness.hpp"

using namespace pgt;
using pgt::testing::example_contact;
using pgt::testing::random_matrix;

namespace {

std::string error_of(const std::string& text) {
    std::istringstream in(text);
    try {
        read_gtmat(in, "mem");
    } catch (const ParseError& ex) {
        return ex.what();
    }
    return "";
}

std::string csv_of(const SweepSpec& spec) {
    std::ostringstream out;
    write_csv(out, run_sweep(spec));
    return out.str();
}

}  // namespace

TEST_CASE("GTMAT serialization of the worked example") {
    std::ostringstream out;
    write_gtmat(out, example_contact());
    CHECK(out.str() == "GTMAT v1 m=3 n=6 kind=external seed=none\n101010\n010101\n011011\n");
    std::istringstream in(out.str());
    const ContactMatrix back = read_gtmat(in);
    CHECK(back == example_contact());
    CHECK_FALSE(back.meta().has_value());
}

TEST_CASE("GTMAT round trip keeps metadata") {
    const auto pp = derive_prob_params(40, 2, 0.9);
    const ContactMatrix mc = build_probabilistic(pp, Seed{12345});
    std::stringstream buf;
    write_gtmat(buf, mc);
    CHECK(buf.str().rfind("GTMAT v1 m=" + std::to_string(pp.m) + " n=40 kind=" + pp.kind_label() + " seed=12345\n", 0) ==
          0);
    const ContactMatrix back = read_gtmat(buf);
    CHECK(back == mc);
    REQUIRE(back.meta().has_value());
    CHECK(back.meta()->seed == std::optional<std::uint64_t>{12345});

    const auto path = std::filesystem::temp_directory_path() / "pgt_test_roundtrip.gtmat";
    const ContactMatrix ks = build_kautz_singleton(derive_ks_params(9, 1, 1.0));
    save_matrix(ks, path);
    CHECK(load_matrix(path) == ks);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_matrix(path), ParseError);
}

TEST_CASE("GTMAT diagnostics are distinct") {
    const std::string ragged = error_of("GTMAT v1 m=3 n=6 kind=x seed=none\n101010\n01010\n011011\n");
    CHECK(ragged.find("mem:3") != std::string::npos);
    CHECK(ragged.find("ragged row") != std::string::npos);

    const std::string badchar = error_of("GTMAT v1 m=3 n=6 kind=x seed=none\n101010\n010101\n0112x1\n");
    CHECK(badchar.find("mem:4:4") != std::string::npos);
    CHECK(badchar.find("invalid character") != std::string::npos);

    const std::string header = error_of("GTMAT v2 m=3 n=6 kind=x seed=none\n");
    CHECK(header.find("malformed header") != std::string::npos);
    CHECK(error_of("GTMAT v1 m=three n=6 kind=x seed=none\n").find("bad row count") != std::string::npos);
    CHECK(error_of("GTMAT v1 m=1 n=2 kind=x seed=-4\n10\n").find("bad seed") != std::string::npos);
    CHECK(error_of("GTMAT v1 m=3 n=2 kind=x seed=none\n10\n01\n").find("truncated") != std::string::npos);
    CHECK(error_of("GTMAT v1 m=1 n=2 kind=x seed=none\n10\n01\n").find("trailing") != std::string::npos);
    CHECK(error_of("").find("empty") != std::string::npos);
    CHECK(error_of("GTMAT v1 m=1 n=2 kind=x seed=none\n10\n") == "");
}

TEST_CASE("signal parsing") {
    CHECK(parse_signal("supp=3,4", 6).support() == std::vector<std::size_t>{2, 3});
    CHECK(parse_signal("supp=4,3\n", 6).support() == std::vector<std::size_t>{2, 3});
    CHECK(parse_signal("supp=", 6).sparsity() == 0);
    CHECK(format_signal(parse_signal("supp=1,6", 6)) == "supp=1,6");
    CHECK_THROWS_AS(parse_signal("supp=0", 6), ParseError);
    CHECK_THROWS_AS(parse_signal("supp=7", 6), ParseError);
    CHECK_THROWS_AS(parse_signal("supp=2,2", 6), ParseError);
    CHECK_THROWS_AS(parse_signal("supp=a", 6), ParseError);
    CHECK_THROWS_AS(parse_signal("x=1", 6), ParseError);
}

TEST_CASE("run_trial: noiseless identity is always exact") {
    const auto id = ContactMatrix::identity(12);
    for (std::size_t k = 0; k <= 12; ++k) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto rec = run_trial(id, k, 0, Noiseless{}, Seed{s});
            CHECK(rec.exact);
            CHECK(rec.truth.sparsity() == k);
            CHECK(rec.false_pos == 0);
            CHECK(rec.false_neg == 0);
        }
    }
    CHECK_THROWS_AS(run_trial(id, 13, 0, Noiseless{}, Seed{0}), InvalidArgument);
}

TEST_CASE("run_trial: worked example outcome gives a false negative") {
    const ContactMatrix mc = example_contact();
    const SparseSignal x(6, {2, 3});
    const ChannelSpec channel = Stochastic{0.5};
    std::optional<std::uint64_t> found;
    for (std::uint64_t s = 0; s < 1000 && !found; ++s)
        if (sample_outcome(mc, x, channel, substream(Seed{s}, kChannelStream)).to_string() == "010") found = s;
    REQUIRE(found.has_value());
    const auto rec = run_trial(mc, x, 0, channel, Seed{*found}, "example");
    CHECK_FALSE(rec.exact);
    CHECK(rec.false_neg == 1);
    CHECK(rec.false_pos == 0);
    CHECK(rec.decoded.one_based() == std::vector<std::size_t>{4});
    CHECK(rec.p == 0.5);
    CHECK(rec.design == "example");
}

TEST_CASE("run_trial is reproducible and exact iff no errors") {
    Engine gen = make_engine(Seed{4});
    const ContactMatrix mc = random_matrix(gen, 40, 30, 0.15);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const ChannelSpec ch = s % 2 ? ChannelSpec{Stochastic{0.7}} : ChannelSpec{Adversarial{2, AdversaryStrategy::max_random}};
        const auto a = run_trial(mc, 3, 2, ch, Seed{s});
        const auto b = run_trial(mc, 3, 2, ch, Seed{s});
        CHECK(a.truth == b.truth);
        CHECK(a.decoded.candidates == b.decoded.candidates);
        CHECK(a.exact == b.exact);
        CHECK(a.exact == (a.false_pos == 0 && a.false_neg == 0));
        CHECK(a.seed == s);
    }
}

TEST_CASE("design and strategy names") {
    CHECK(parse_design("ks") == DesignKind::ks);
    CHECK(to_string(parse_design("bernoulli")) == "bernoulli");
    CHECK_THROWS_AS(parse_design("rs"), InvalidArgument);
    CHECK(parse_strategy("max-random") == AdversaryStrategy::max_random);
    CHECK(to_string(AdversaryStrategy::random) == "random");
}

TEST_CASE("sweep: single cell and CSV layout") {
    SweepSpec spec;
    spec.n_grid = {30};
    spec.k_grid = {2};
    spec.p_grid = {0.9};
    spec.m_grid = {60};
    spec.trials = 1;
    spec.base_seed = Seed{1};
    const auto cells = run_sweep(spec);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].trials == 1);
    CHECK(cells[0].m == 60);
    CHECK((cells[0].success_rate() == 0.0 || cells[0].success_rate() == 1.0));

    const std::string csv = csv_of(spec);
    CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(std::count(csv.begin(), csv.end(), ',') == 22);

    spec.trials = 0;
    CHECK_THROWS_AS(run_sweep(spec), InvalidArgument);
    spec.trials = 1;
    spec.k_grid.clear();
    CHECK_THROWS_AS(run_sweep(spec), InvalidArgument);
}

TEST_CASE("sweep: infeasible cells are marked and the sweep continues") {
    SweepSpec spec;
    spec.n_grid = {30};
    spec.k_grid = {2};
    spec.p_grid = {0.1, 1.0};
    spec.trials = 5;
    const auto cells = run_sweep(spec);
    REQUIRE(cells.size() == 2);
    CHECK_FALSE(cells[0].feasible);
    CHECK(cells[0].infeasible_reason.find("3^-alpha") != std::string::npos);
    CHECK(cells[1].feasible);
    const std::string csv = csv_of(spec);
    CHECK(csv.find("bernoulli,30,2,,0.1,,5,infeasible,,,,\n") != std::string::npos);

    spec.design = DesignKind::ks;
    spec.p_grid = {0.001, 1.0};
    const auto ks = run_sweep(spec);
    REQUIRE(ks.size() == 2);
    CHECK_FALSE(ks[0].feasible);
    CHECK(ks[1].feasible);
    CHECK(ks[1].bound_pf == 0.0);
    CHECK(ks[1].success_rate() == 1.0);
}

TEST_CASE("sweep: byte-identical output independent of thread count") {
    SweepSpec spec;
    spec.n_grid = {40, 80};
    spec.k_grid = {2};
    spec.p_grid = {0.7, 0.9};
    spec.m_multipliers = {0.5, 1.0};
    spec.trials = 40;
    spec.base_seed = Seed{2024};
    spec.fresh_matrix_per_trial = true;
    omp_set_num_threads(1);
    const std::string a = csv_of(spec);
    omp_set_num_threads(3);
    const std::string b = csv_of(spec);
    CHECK(a == b);
    CHECK(a == csv_of(spec));
    spec.base_seed = Seed{2025};
    CHECK(a != csv_of(spec));
}

TEST_CASE("sweep: noiseless recovery at the derived row count") {
    SweepSpec spec;
    spec.n_grid = {30};
    spec.k_grid = {2};
    spec.p_grid = {1.0};
    spec.trials = 200;
    spec.fresh_matrix_per_trial = true;
    const auto cells = run_sweep(spec);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].e == 0);
    CHECK(cells[0].success_rate() >= 0.99);
}

TEST_CASE("sweep: success rate is nondecreasing in m") {
    SweepSpec spec;
    spec.n_grid = {50};
    spec.k_grid = {2};
    spec.p_grid = {0.9};
    spec.m_grid = {40, 80, 160, 320};
    spec.trials = 500;
    spec.base_seed = Seed{77};
    spec.fresh_matrix_per_trial = true;
    const auto cells = run_sweep(spec);
    REQUIRE(cells.size() == 4);
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
        const double a = cells[i].success_rate();
        const double b = cells[i + 1].success_rate();
        const double sigma = std::sqrt((a * (1 - a) + b * (1 - b)) / 500.0);
        MESSAGE("m=" << cells[i].m << " " << a << " -> m=" << cells[i + 1].m << " " << b);
        CHECK(b >= a - 3 * sigma);
    }
}

TEST_CASE("sweep: failure rate stays under the design bound") {
    SweepSpec spec;
    spec.n_grid = {20};
    spec.k_grid = {1};
    spec.p_grid = {1.0};
    spec.m_grid = {60, 100, 150};
    spec.trials = 400;
    spec.fresh_matrix_per_trial = true;
    std::size_t tested = 0;
    for (const auto& c : run_sweep(spec)) {
        if (c.bound_pf > 0.5) continue;
        ++tested;
        CHECK(1 - c.success_rate() <= c.bound_pf + 3 * std::sqrt(c.bound_pf / static_cast<double>(c.trials)));
    }
    CHECK(tested >= 2);
}

TEST_CASE("sweep: failure rate stays under the combined design and dilution bounds") {
    SweepSpec spec;
    spec.n_grid = {20};
    spec.k_grid = {2};
    spec.p_grid = {0.95};
    spec.m_grid = {24000};
    spec.delta = 0.5;
    spec.trials = 200;
    spec.fresh_matrix_per_trial = true;
    const auto cells = run_sweep(spec);
    REQUIRE(cells.size() == 1);
    const auto& c = cells[0];
    const double bound = c.bound_pf + c.bound_prop2;
    MESSAGE("failure " << 1 - c.success_rate() << " vs bound " << bound);
    REQUIRE(bound <= 0.5);
    CHECK(1 - c.success_rate() <= bound + 3 * std::sqrt(bound / static_cast<double>(c.trials)));
}
