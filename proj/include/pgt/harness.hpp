#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pgt/core_model.hpp"
#include "pgt/decoding.hpp"
#include "pgt/designs.hpp"
#include "pgt/rng.hpp"

namespace pgt {

// Sub-stream tags applied to a trial seed.
inline constexpr std::uint64_t kSignalStream = 1;
inline constexpr std::uint64_t kChannelStream = 2;
inline constexpr std::uint64_t kMatrixStream = 3;

struct TrialRecord {
    std::uint64_t seed = 0;
    std::string design;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t m = 0;
    double p = 1.0;
    std::size_t e = 0;
    bool exact = false;
    std::size_t false_pos = 0;
    std::size_t false_neg = 0;
    double decode_micros = 0.0;
    SparseSignal truth{1, {}};
    DecodeResult decoded;
};

/// Draws a uniformly random k-subset from substream(seed, kSignalStream),
/// samples the channel from substream(seed, kChannelStream), decodes with
/// tolerance e and scores the result.
TrialRecord run_trial(const ContactMatrix& mc, std::size_t k, std::size_t e, const ChannelSpec& channel, Seed seed,
                      std::string design = "external");

/// As above with a fixed signal.
TrialRecord run_trial(const ContactMatrix& mc, const SparseSignal& x, std::size_t e, const ChannelSpec& channel,
                      Seed seed, std::string design = "external");

enum class DesignKind { bernoulli, ks };

std::string to_string(DesignKind d);
DesignKind parse_design(std::string_view s);

/// Channel used by every trial of a sweep. Stochastic takes p from the grid
/// cell; adversarial uses the cell's design tolerance e as the flip budget.
struct SweepChannel {
    enum class Kind { stochastic, adversarial } kind = Kind::stochastic;
    AdversaryStrategy strategy = AdversaryStrategy::random;
};

struct SweepSpec {
    DesignKind design = DesignKind::bernoulli;
    std::vector<std::size_t> n_grid;
    std::vector<std::size_t> k_grid;
    std::vector<double> p_grid;
    /// Explicit row counts (Bernoulli only). When empty, m_multipliers scale
    /// the derived row bound instead.
    std::vector<std::size_t> m_grid;
    std::vector<double> m_multipliers{1.0};
    std::size_t trials = 1;
    Seed base_seed{};
    SweepChannel channel{};
    bool fresh_matrix_per_trial = false;
    double alpha = kDefaultAlpha;
    double delta = kDefaultDelta;
};

void validate(const SweepSpec& spec);

struct CellResult {
    std::string design;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t m = 0;
    double p = 1.0;
    std::size_t e = 0;
    std::size_t trials = 0;
    bool feasible = true;
    std::string infeasible_reason;
    std::size_t successes = 0;
    std::size_t total_fp = 0;
    std::size_t total_fn = 0;
    double bound_prop2 = 0.0;
    double bound_pf = 0.0;

    double success_rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
    double mean_fp() const { return trials ? static_cast<double>(total_fp) / static_cast<double>(trials) : 0.0; }
    double mean_fn() const { return trials ? static_cast<double>(total_fn) / static_cast<double>(trials) : 0.0; }
};

/// Cell seed = substream(base_seed, cell_index); trial seed =
/// substream(cell_seed, trial_index). Grid order is n, k, p, then m (or the
/// multiplier), outermost first. Trials run in parallel; only counts are
/// aggregated so the result does not depend on thread count.
std::vector<CellResult> run_sweep(const SweepSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "design,n,k,m,p,e,trials,success_rate,mean_fp,mean_fn,bound_prop2,bound_pf";

void write_csv(std::ostream& out, const std::vector<CellResult>& cells);

}  // namespace pgt
