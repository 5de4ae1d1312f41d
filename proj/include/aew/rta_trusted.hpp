#pragma once

#include <optional>

#include "aew/rta_core.hpp"

namespace aew {

// Response-time analysis when trusted tasks (and the victim) may execute
// inside the attack effective window while untrusted tasks are held back.

/// Trusted tasks above the victim, and the victim itself. Untrusted hp
/// tasks are modelled with a release jitter of one window.
/// Throws Error{WrongClass} otherwise.
FixedPointResult rta_trusted_hp_trusted(const TaskSet& ts, TaskId id);

/// Untrusted tasks above the victim: one window of blocking, trusted hp
/// tasks released right after that window. Throws Error{WrongClass}.
FixedPointResult rta_trusted_hp_untrusted(const TaskSet& ts, TaskId id);

/// Guaranteed execution of trusted hp task `tj` inside any window of the
/// given length: max(0, ceil((Ω - 2T + C) / T)) * C.
Tick window_exec_min(const Task& tj, Tick window);

/// Part of one window that trusted tasks above `id` may leave uncovered.
Tick uncovered_window(const TaskSet& ts, TaskId id);

/// Untrusted tasks below the victim. Throws Error{WrongClass}.
FixedPointResult rta_trusted_lp_untrusted(const TaskSet& ts, TaskId id);

enum class BudgetRegime { NonOverlapping, Overlapping };

/// Lower bound on the trusted-only processor time alpha(t) that windows
/// provide in any interval of length t.
struct TrustedBudget {
    Tick victim_period = 0;
    Tick victim_response = 0;
    Tick window = 0;
    Tick delta = 0;  // T_v - Ω
    BudgetRegime regime = BudgetRegime::NonOverlapping;

    Tick alpha(Tick t) const;
    Tick alpha_odd(Tick t) const;
    Tick alpha_even(Tick t) const;
};

/// Chooses the regime by comparing Ω with T_v - R_v; equality counts as
/// non-overlapping. Throws Error{WindowTooLong} when Ω >= T_v.
TrustedBudget trusted_budget(const Task& victim, Tick window, Tick victim_response);

/// Budget for a taskset, using the victim bound from rta_trusted_hp_trusted.
/// Empty when that bound diverged.
std::optional<TrustedBudget> victim_budget(const TaskSet& ts);

enum class WindowRelation { HpOfVictim, LpOfVictim, VictimSelf };

/// Upper bound on the execution `tj` can place in a single window.
/// For VictimSelf, `tj` is the victim and `victim_response` its bound.
Tick window_exec_max(const Task& tj, Tick window, WindowRelation relation,
                     Tick victim_response = 0);

/// Trusted budget task `j` may take away over an interval of length t.
Tick budget_consumed(const TaskSet& ts, TaskId j, const TrustedBudget& budget, Tick t);

/// lambda_i(t): trusted window time left for trusted task `id` below the
/// victim. Throws Error{WrongClass}.
Tick available_trusted(const TaskSet& ts, TaskId id, const TrustedBudget& budget, Tick t);
Tick available_trusted(const TaskSet& ts, TaskId id, Tick t);

struct LpTrustedBound {
    FixedPointResult demand_bound;  // interference recurrence minus lambda
    FixedPointResult budget_bound;  // first t with lambda(t) >= C_i
    FixedPointResult result;        // the smaller of the two
};

LpTrustedBound rta_trusted_lp_trusted_detail(const TaskSet& ts, TaskId id);

/// Trusted tasks below the victim. Throws Error{WrongClass}.
FixedPointResult rta_trusted_lp_trusted(const TaskSet& ts, TaskId id);

RtaReport analyze_trusted(const TaskSet& ts);

}  // namespace aew
