#pragma once

#include <optional>
#include <span>

#include "aew/task_model.hpp"

namespace aew {

/// Outcome of a response-time recurrence. `value` is empty (diverged) when
/// the iterate exceeded the search limit, normally the task deadline.
struct FixedPointResult {
    std::optional<Tick> value;
    int iterations = 0;

    bool diverged() const noexcept { return !value.has_value(); }
};

/// Least t in [start, limit] with demand(t) <= t, for non-decreasing demand.
/// Jumps straight to demand(t), which is the usual fixed-point iteration.
template <typename Demand>
FixedPointResult solve_least_fixed_point(Tick start, Tick limit, Demand&& demand) {
    FixedPointResult res;
    Tick t = start;
    while (t <= limit) {
        ++res.iterations;
        const Tick next = demand(t);
        if (next <= t) {
            res.value = t;
            return res;
        }
        t = next;
    }
    return res;
}

/// Same contract as solve_least_fixed_point, but demand may decrease. Every
/// candidate is visited, so the first t satisfying demand(t) <= t is found.
template <typename Demand>
FixedPointResult solve_by_scan(Tick start, Tick limit, Demand&& demand) {
    FixedPointResult res;
    for (Tick t = start; t <= limit; ++t) {
        ++res.iterations;
        if (demand(t) <= t) {
            res.value = t;
            return res;
        }
    }
    return res;
}

/// sum over `ids` of ceil((t + shift) / T_j) * C_j, clamping each job count at 0.
Tick workload(const TaskSet& ts, std::span<const TaskId> ids, Tick t, Tick shift = 0);

/// Fixed-priority response time with no window: least R with
/// R = C_i + blocking + sum_{hp(i)} ceil(R/T_j) C_j.
FixedPointResult rta_baseline(const TaskSet& ts, TaskId id, Tick blocking = 0);

/// Largest blocking B >= 0 the task tolerates without exceeding its deadline.
/// Throws Error{NotSchedulable} when even B = 0 fails.
Tick max_tolerable_blocking(const TaskSet& ts, TaskId id);

RtaReport analyze_baseline(const TaskSet& ts);

TaskBound to_bound(const Task& t, const FixedPointResult& r);

}  // namespace aew
