#include "aew/rta_paranoid.hpp"

#include <algorithm>

namespace aew {

FixedPointResult rta_paranoid_nonvictim(const TaskSet& ts, TaskId id) {
    const VictimConfig& vc = ts.victim_config();
    if (id == vc.victim_id)
        throw Error(ErrorKind::IsVictim, "use rta_paranoid_victim for the victim task");
    const Task& ti = ts.by_id(id);
    const Task& tv = ts.by_id(vc.victim_id);
    const Tick omega = vc.window;
    const auto hp = classify(ts, id).hp;

    if (ti.priority < tv.priority) {
        return solve_least_fixed_point(ti.wcet + omega, ti.deadline(), [&](Tick r) {
            return ti.wcet + omega + workload(ts, hp, r);
        });
    }
    // hp(i) already contains the victim's execution; the window adds Ω per release.
    return solve_least_fixed_point(ti.wcet, ti.deadline(), [&](Tick r) {
        return ti.wcet + workload(ts, hp, r) + ceil_div(r, tv.period) * omega;
    });
}

VictimBusyPeriod rta_paranoid_victim_detail(const TaskSet& ts) {
    const VictimConfig& vc = ts.victim_config();
    const Task& tv = ts.by_id(vc.victim_id);
    const Tick omega = vc.window;
    const auto hp = classify(ts, vc.victim_id).hp;

    Tick limit = 0;
    try {
        limit = hyperperiod(ts);
    } catch (const Error&) {
        limit = Tick{1} << 40;
    }
    limit = std::max(limit, tv.period);

    VictimBusyPeriod out;
    Tick hp_exec = 0;
    for (TaskId j : hp) hp_exec += ts.by_id(j).wcet;
    const auto busy = solve_least_fixed_point(hp_exec + tv.wcet + omega, limit, [&](Tick l) {
        return workload(ts, hp, l) + ceil_div(l, tv.period) * (tv.wcet + omega);
    });
    out.response.iterations = busy.iterations;
    if (busy.diverged()) return out;
    out.busy_period = busy.value;

    const Tick jobs = ceil_div(*busy.value, tv.period);
    Tick worst = 0;
    for (Tick k = 1; k <= jobs; ++k) {
        const Tick release = (k - 1) * tv.period;
        const Tick fixed = (k - 1) * omega + k * tv.wcet;
        const auto f = solve_least_fixed_point(fixed, release + tv.deadline(), [&](Tick t) {
            return workload(ts, hp, t) + fixed;
        });
        out.response.iterations += f.iterations;
        if (f.diverged()) return out;
        out.finish_times.push_back(*f.value);
        worst = std::max(worst, *f.value - release);
    }
    out.response.value = worst;
    return out;
}

FixedPointResult rta_paranoid_victim(const TaskSet& ts) { return rta_paranoid_victim_detail(ts).response; }

RtaReport analyze_paranoid(const TaskSet& ts) {
    const TaskId v = ts.victim_config().victim_id;
    std::vector<TaskBound> bounds;
    for (const auto& t : ts.tasks()) {
        const auto r = t.id == v ? rta_paranoid_victim(ts) : rta_paranoid_nonvictim(ts, t.id);
        bounds.push_back(to_bound(t, r));
    }
    return make_report(AnalysisMode::Paranoid, std::move(bounds));
}

}  // namespace aew
