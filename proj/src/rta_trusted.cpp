#include "aew/rta_trusted.hpp"

#include <algorithm>

namespace aew {

namespace {

struct Context {
    const Task& task;
    const Task& victim;
    Tick omega;
    TaskClasses classes;
};

Context context_for(const TaskSet& ts, TaskId id) {
    const VictimConfig& vc = ts.victim_config();
    return Context{ts.by_id(id), ts.by_id(vc.victim_id), vc.window, classify(ts, id)};
}

[[noreturn]] void wrong_class(TaskId id, const char* expected) {
    throw Error(ErrorKind::WrongClass, "task " + std::to_string(id) + " is not " + expected);
}

}  // namespace

FixedPointResult rta_trusted_hp_trusted(const TaskSet& ts, TaskId id) {
    const auto c = context_for(ts, id);
    const bool is_victim = id == c.victim.id;
    if (!is_victim && !(c.task.trusted() && c.task.priority < c.victim.priority))
        wrong_class(id, "the victim or a trusted task above it");
    return solve_least_fixed_point(c.task.wcet, c.task.deadline(), [&](Tick r) {
        return c.task.wcet + workload(ts, c.classes.thp, r) + workload(ts, c.classes.uhp, r, c.omega);
    });
}

FixedPointResult rta_trusted_hp_untrusted(const TaskSet& ts, TaskId id) {
    const auto c = context_for(ts, id);
    if (c.task.trusted() || c.task.priority > c.victim.priority)
        wrong_class(id, "an untrusted task above the victim");
    const Tick base = c.task.wcet + c.omega;
    return solve_least_fixed_point(base, c.task.deadline(), [&](Tick r) {
        return base + workload(ts, c.classes.thp, r, -c.omega) + workload(ts, c.classes.uhp, r);
    });
}

Tick window_exec_min(const Task& tj, Tick window) {
    const Tick jobs = ceil_div(window - 2 * tj.period + tj.wcet, tj.period);
    return std::max<Tick>(0, jobs) * tj.wcet;
}

Tick uncovered_window(const TaskSet& ts, TaskId id) {
    const auto c = context_for(ts, id);
    Tick covered = 0;
    for (TaskId j : c.classes.thp) covered += window_exec_min(ts.by_id(j), c.omega);
    return std::max<Tick>(0, c.omega - covered);
}

FixedPointResult rta_trusted_lp_untrusted(const TaskSet& ts, TaskId id) {
    const auto c = context_for(ts, id);
    if (c.task.trusted() || c.task.priority < c.victim.priority)
        wrong_class(id, "an untrusted task below the victim");
    const Tick uncovered = uncovered_window(ts, id);
    return solve_least_fixed_point(c.task.wcet, c.task.deadline(), [&](Tick r) {
        return c.task.wcet + workload(ts, c.classes.hp, r) + ceil_div(r, c.victim.period) * uncovered;
    });
}

Tick TrustedBudget::alpha_odd(Tick t) const {
    return std::max<Tick>(0, floor_div(t + victim_period - delta, 2 * victim_period)) *
           (victim_period - victim_response);
}

Tick TrustedBudget::alpha_even(Tick t) const {
    return std::max<Tick>(0, floor_div(t - delta, 2 * victim_period)) * window;
}

Tick TrustedBudget::alpha(Tick t) const {
    if (regime == BudgetRegime::NonOverlapping)
        return std::max<Tick>(0, floor_div(t - delta, victim_period)) * window;
    return alpha_even(t) + alpha_odd(t);
}

TrustedBudget trusted_budget(const Task& victim, Tick window, Tick victim_response) {
    if (window >= victim.period)
        throw Error(ErrorKind::WindowTooLong, "window must be shorter than the victim period");
    TrustedBudget b;
    b.victim_period = victim.period;
    b.victim_response = victim_response;
    b.window = window;
    b.delta = victim.period - window;
    b.regime = window <= victim.period - victim_response ? BudgetRegime::NonOverlapping
                                                         : BudgetRegime::Overlapping;
    return b;
}

std::optional<TrustedBudget> victim_budget(const TaskSet& ts) {
    const auto& vc = ts.victim_config();
    const auto rv = rta_trusted_hp_trusted(ts, vc.victim_id);
    if (rv.diverged()) return std::nullopt;
    return trusted_budget(ts.by_id(vc.victim_id), vc.window, *rv.value);
}

Tick window_exec_max(const Task& tj, Tick window, WindowRelation relation, Tick victim_response) {
    switch (relation) {
        case WindowRelation::HpOfVictim:
            return std::min(window, ceil_div(window, tj.period) * tj.wcet);
        case WindowRelation::LpOfVictim:
            return std::min(window, tj.wcet);
        case WindowRelation::VictimSelf:
            return std::max<Tick>(0, std::min(tj.wcet, victim_response + window - tj.period));
    }
    return 0;
}

Tick budget_consumed(const TaskSet& ts, TaskId j, const TrustedBudget& budget, Tick t) {
    const Task& tj = ts.by_id(j);
    const Task& tv = ts.victim_task();
    if (j == tv.id) {
        return ceil_div(t, tv.period) *
               window_exec_max(tv, budget.window, WindowRelation::VictimSelf, budget.victim_response);
    }
    if (tj.priority < tv.priority) {
        if (budget.window == 0) return 0;
        return ceil_div(budget.alpha(t), budget.window) *
               window_exec_max(tj, budget.window, WindowRelation::HpOfVictim);
    }
    return ceil_div(t + tj.period - tj.wcet, tj.period) *
           window_exec_max(tj, budget.window, WindowRelation::LpOfVictim);
}

Tick available_trusted(const TaskSet& ts, TaskId id, const TrustedBudget& budget, Tick t) {
    const auto c = context_for(ts, id);
    if (!c.task.trusted() || c.task.priority < c.victim.priority || id == c.victim.id)
        wrong_class(id, "a trusted task below the victim");
    Tick consumed = 0;
    for (TaskId j : c.classes.thp) consumed += budget_consumed(ts, j, budget, t);
    return std::max<Tick>(0, budget.alpha(t) - consumed);
}

Tick available_trusted(const TaskSet& ts, TaskId id, Tick t) {
    const auto budget = victim_budget(ts);
    if (!budget) {
        context_for(ts, id);
        return 0;
    }
    return available_trusted(ts, id, *budget, t);
}

LpTrustedBound rta_trusted_lp_trusted_detail(const TaskSet& ts, TaskId id) {
    const auto c = context_for(ts, id);
    if (!c.task.trusted() || c.task.priority < c.victim.priority || id == c.victim.id)
        wrong_class(id, "a trusted task below the victim");
    const auto budget = victim_budget(ts);
    auto lambda = [&](Tick t) -> Tick { return budget ? available_trusted(ts, id, *budget, t) : 0; };

    LpTrustedBound out;
    // lambda grows with t, so the demand below is not monotone: scan.
    out.demand_bound = solve_by_scan(c.task.wcet, c.task.deadline(), [&](Tick r) {
        return c.task.wcet + workload(ts, c.classes.thp, r) + workload(ts, c.classes.uhp, r, c.omega) -
               lambda(r);
    });
    out.budget_bound.value.reset();
    for (Tick t = 1; t <= c.task.deadline(); ++t) {
        ++out.budget_bound.iterations;
        if (c.task.wcet - lambda(t) <= 0) {
            out.budget_bound.value = t;
            break;
        }
    }
    out.result.iterations = out.demand_bound.iterations + out.budget_bound.iterations;
    if (out.demand_bound.value && out.budget_bound.value)
        out.result.value = std::min(*out.demand_bound.value, *out.budget_bound.value);
    else if (out.demand_bound.value)
        out.result.value = out.demand_bound.value;
    else
        out.result.value = out.budget_bound.value;
    return out;
}

FixedPointResult rta_trusted_lp_trusted(const TaskSet& ts, TaskId id) {
    return rta_trusted_lp_trusted_detail(ts, id).result;
}

RtaReport analyze_trusted(const TaskSet& ts) {
    const Task& tv = ts.victim_task();
    std::vector<TaskBound> bounds;
    for (const auto& t : ts.tasks()) {
        FixedPointResult r;
        if (t.id == tv.id || (t.trusted() && t.priority < tv.priority))
            r = rta_trusted_hp_trusted(ts, t.id);
        else if (t.priority < tv.priority)
            r = rta_trusted_hp_untrusted(ts, t.id);
        else if (t.trusted())
            r = rta_trusted_lp_trusted(ts, t.id);
        else
            r = rta_trusted_lp_untrusted(ts, t.id);
        bounds.push_back(to_bound(t, r));
    }
    return make_report(AnalysisMode::Trusted, std::move(bounds));
}

}  // namespace aew
