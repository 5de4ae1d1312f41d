#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "aew/generator.hpp"
#include "aew/simulator.hpp"

namespace aew {

struct Bucket {
    double lo = 0.0;
    double hi = 0.1;
};

/// The ten utilization intervals [0, 0.1), ..., [0.9, 1.0).
std::vector<Bucket> default_buckets();

struct ExperimentConfig {
    int tasksets_per_bucket = 10000;
    std::vector<PolicyKind> policies;
    std::vector<VictimPosition> victims{VictimPosition::High, VictimPosition::Medium, VictimPosition::Low};
    std::vector<double> aew{0.1, 0.3, 0.5};
    std::vector<Bucket> buckets = default_buckets();
    double trusted_fraction = 0.2;
    std::uint64_t seed = 1;
};

/// key=value lines; '#' starts a comment. Keys: tasksets_per_bucket,
/// policies, victim, aew, seed, trusted_fraction, buckets (lower bounds,
/// each bucket 0.1 wide). Unknown keys and bad values throw
/// Error{ConfigInvalid}.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig defaults = {});
ExperimentConfig parse_config_file(const std::string& path, ExperimentConfig defaults = {});

enum class Execution { Serial, Parallel };

struct SchedRatioRow {
    Bucket bucket;
    PolicyKind policy = PolicyKind::Baseline;
    VictimPosition victim = VictimPosition::High;
    double aew_frac = 0.0;
    int n = 0;
    double schedulable_frac = 0.0;
};

struct CoverageRow {
    Bucket bucket;
    PolicyKind policy = PolicyKind::Baseline;
    double aew_frac = 0.0;
    int n = 0;
    double mean_untrusted_ratio = 0.0;
};

/// Taskset `index` of a bucket. Every policy of a cell sees the same set.
TaskSet experiment_taskset(const ExperimentConfig& cfg, std::size_t bucket, int index, VictimPosition victim,
                           double aew);

/// Per cell (victim, aew, bucket) and policy: fraction of generated sets
/// with no deadline miss over one hyperperiod. Policies must be a non-empty
/// subset of baseline, paranoid, trusted. Throws Error{ConfigInvalid}.
std::vector<SchedRatioRow> run_sched_ratio(const ExperimentConfig& cfg, Execution exec = Execution::Parallel,
                                           int jobs = 0);

/// High-priority victim. Only sets that meet all deadlines under plain
/// fixed priority are used; each is simulated for one hyperperiod under
/// every policy (baseline and/or co) and the untrusted share of window time
/// is averaged. Throws Error{ConfigInvalid}.
std::vector<CoverageRow> run_coverage(const ExperimentConfig& cfg, Execution exec = Execution::Parallel,
                                      int jobs = 0);

/// Policy label used in CSV output: baseline, paranoid, trusted, RM, CO.
std::string sched_label(PolicyKind p);
std::string coverage_label(PolicyKind p);

void write_sched_ratio_csv(std::ostream& out, const std::vector<SchedRatioRow>& rows);
void write_coverage_csv(std::ostream& out, const std::vector<CoverageRow>& rows);

}  // namespace aew
