#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "omega/automaton.hpp"
#include "omega/loops.hpp"

namespace omega {

/// Named reference automata plus a few hand-built language
/// fixtures. Human state labels are renumbered from 0 in the order listed
/// in each builder; omitted sinks are appended last. Throws UnknownFixture.
Acceptor fixture(std::string_view name);

/// Every name accepted by fixture(), in catalog order.
const std::vector<std::string>& fixture_names();

/// Wagner family over {a,b}: rows 0..m of states 0..n; state k of row l has
/// id l*(n+1)+k. Polarity Both puts a fresh initial state in front of the
/// Plus and Minus copies (a enters Plus, b enters Minus).
Acceptor wagner_family(int n, int m, Polarity polarity);

/// Seeded random state-Muller acceptor: uniform transitions, resampled
/// until every state is reachable, then `accepting_sets` distinct strongly
/// connected subsets drawn by rejection. Throws SamplingExhausted.
Acceptor random_dma(int states, std::uint64_t seed, int alphabet_size = 3, int accepting_sets = 2);

/// Draws before random_dma gives up on one sampling step.
inline constexpr int kSamplingRetries = 100000;

/// Mixes a base seed with extra coordinates (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

enum class ExperimentMode { Exact, Sampled };

struct ExperimentConfig {
    std::vector<int> sizes;
    int trials_per_size = 100;
    int alphabet_size = 3;
    int accepting_sets = 2;
    ExperimentMode mode = ExperimentMode::Exact;
    int samples = 100000;
    std::uint64_t seed = 1;
};

struct ExperimentRow {
    int size = 0;
    int trials = 0;
    int isomorphic = 0;
    int not_isomorphic = 0;
    int capacity_exceeded = 0;
};

struct ExperimentReport {
    ExperimentMode mode = ExperimentMode::Exact;
    std::uint64_t seed = 0;
    std::vector<ExperimentRow> rows;
};

/// Random lasso used by the sampled mode: spoke length geometric(1/2)
/// capped at 2n, cycle length uniform in 1..2n, uniform symbols.
LassoWord random_lasso(std::mt19937_64& rng, int states, int alphabet_size);

/// Exact mode: isomorphic iff the index equals the state count. Sampled
/// mode: isomorphic iff the sampled lassos separate every pair of states.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// `mode=` and `seed=` header lines then one `size=` line per size.
std::string format_report(const ExperimentReport& report);

}  // namespace omega
