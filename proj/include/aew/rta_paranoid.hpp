#pragma once

#include <vector>

#include "aew/rta_core.hpp"

namespace aew {

// Response-time analysis when nothing but the victim may run inside the
// attack effective window. The window behaves like a non-preemptive region
// appended to every victim job.

/// Tasks other than the victim. Tasks above the victim suffer one window of
/// blocking, tasks below it one window per victim release.
/// Throws Error{IsVictim} for the victim, Error{NoVictim} without a victim.
FixedPointResult rta_paranoid_nonvictim(const TaskSet& ts, TaskId id);

struct VictimBusyPeriod {
    FixedPointResult response;        // max over jobs of f_k - r_k
    std::optional<Tick> busy_period;  // L_v, empty when it diverged
    std::vector<Tick> finish_times;   // f_k for k = 1..ceil(L_v / T_v)
};

/// Victim analysis over its level-v busy period, reporting the per-job
/// finish times it examined.
VictimBusyPeriod rta_paranoid_victim_detail(const TaskSet& ts);

FixedPointResult rta_paranoid_victim(const TaskSet& ts);

RtaReport analyze_paranoid(const TaskSet& ts);

}  // namespace aew
