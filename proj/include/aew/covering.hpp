#pragma once

#include <optional>

#include "aew/task_model.hpp"

namespace aew {

// Window-covering decision for harmonic tasksets with constant execution
// times. Responses are taken from the concrete fixed-priority schedule in
// steady state: the schedule is simulated for four hyperperiods and jobs
// released in the third one are measured.

bool is_harmonic(const TaskSet& ts);

/// Response time of `id` in the concrete schedule. With `inflate`, one job
/// of the task runs for one extra tick and its response is reported.
/// Throws Error{NotHarmonic}, Error{Unschedulable} (a job misses its
/// deadline, including the inflated one).
Tick exact_response(const TaskSet& ts, TaskId id, bool inflate);

enum class CoverWitness { ByHp, ByLp, NotCovered };

std::string_view to_string(CoverWitness w);

struct CoverVerdict {
    bool covered = false;
    CoverWitness witness = CoverWitness::NotCovered;
    Tick exact_response = 0;     // R_v
    Tick inflated_response = 0;  // R_v+
    // Low-priority condition, present when it was evaluated.
    std::optional<TaskId> lowest_trusted;
    std::optional<Tick> lp_exact_response;     // R_l
    std::optional<Tick> lp_inflated_response;  // R_l+
    std::optional<Tick> lp_threshold;          // I_lv + T_l - T_v + R_v + Ω
};

/// Decides whether trusted tasks occupy every tick of every window.
/// Requires harmonic periods and all trusted tasks above all untrusted ones.
/// Throws Error{NotHarmonic}, Error{PriorityInterleaving}, Error{NoVictim},
/// Error{Unschedulable} when the uninflated schedule misses a deadline.
CoverVerdict fully_covered(const TaskSet& ts);

}  // namespace aew
