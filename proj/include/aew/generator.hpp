#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "aew/task_model.hpp"

namespace aew {

using Rng = std::mt19937_64;

/// Independent generator for one (seed, stream...) coordinate. The same
/// coordinates always give the same sequence.
Rng make_rng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b = 0, std::uint64_t stream_c = 0);

enum class VictimPosition { High, Medium, Low };

std::string_view to_string(VictimPosition pos);
/// Accepts high, medium, low. Throws Error{ParseError}.
VictimPosition parse_victim_position(std::string_view name);

/// Index (0 = highest priority) where the victim is placed in a set of n.
std::size_t victim_index(VictimPosition pos, std::size_t n);

/// Every divisor of 1000, ascending.
const std::vector<Tick>& period_pool();

struct GenParams {
    int n_min = 2;
    int n_max = 10;
    double total_utilization = 0.5;
    double trusted_fraction = 0.2;
    VictimPosition victim_position = VictimPosition::High;
    double window_fraction = 0.1;
    std::uint64_t seed = 0;
    int max_attempts = 1000;
};

/// n utilizations summing to total_u.
std::vector<double> uunifast(int n, double total_u, Rng& rng);

/// One taskset drawn with the given random source. Returns nothing when the
/// rounded set is degenerate (some C > T or total utilization >= 1).
std::optional<TaskSet> try_gen_taskset(const GenParams& params, Rng& rng);

/// Retries with fresh substreams of params.seed until the set is usable.
/// Throws Error{Degenerate} after max_attempts, Error{ConfigInvalid}.
TaskSet gen_taskset(const GenParams& params);

/// Like gen_taskset, but also retries until the rounded utilization lies in
/// [lo, hi). The target utilization of each attempt is drawn from that range.
TaskSet gen_taskset_in_range(GenParams params, double lo, double hi);

struct HarmonicOptions {
    int trusted = 1;               // includes the victim, placed above untrusted tasks
    double window_fraction = 0.0;  // of the victim period
    bool random_offsets = false;
    Tick max_hyperperiod_factor = 24;  // hyperperiod <= base * factor
};

/// Periods form a divisibility chain starting at base_period, utilizations
/// come from uunifast. With trusted > 0 one trusted task is the victim and
/// priorities are criticality-monotonic, otherwise rate-monotonic.
/// Throws Error{Degenerate}, Error{ConfigInvalid}.
TaskSet gen_harmonic(int n, Tick base_period, double total_u, Rng& rng, const HarmonicOptions& opts = {});

}  // namespace aew
