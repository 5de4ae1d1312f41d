#include "aew/rta_core.hpp"

#include <algorithm>

namespace aew {

Tick workload(const TaskSet& ts, std::span<const TaskId> ids, Tick t, Tick shift) {
    Tick sum = 0;
    for (TaskId j : ids) {
        const Task& tj = ts.by_id(j);
        sum += std::max<Tick>(0, ceil_div(t + shift, tj.period)) * tj.wcet;
    }
    return sum;
}

FixedPointResult rta_baseline(const TaskSet& ts, TaskId id, Tick blocking) {
    const Task& ti = ts.by_id(id);
    const auto hp = classify(ts, id).hp;
    return solve_least_fixed_point(ti.wcet + blocking, ti.deadline(), [&](Tick r) {
        return ti.wcet + blocking + workload(ts, hp, r);
    });
}

Tick max_tolerable_blocking(const TaskSet& ts, TaskId id) {
    const Task& ti = ts.by_id(id);
    if (rta_baseline(ts, id, 0).diverged())
        throw Error(ErrorKind::NotSchedulable, "task " + std::to_string(id) + " misses its deadline");
    Tick best = 0;
    for (Tick b = 1; b <= ti.deadline() - ti.wcet; ++b) {
        if (rta_baseline(ts, id, b).diverged()) break;
        best = b;
    }
    return best;
}

TaskBound to_bound(const Task& t, const FixedPointResult& r) {
    return TaskBound{t.id, r.value, t.deadline()};
}

RtaReport analyze_baseline(const TaskSet& ts) {
    std::vector<TaskBound> bounds;
    for (const auto& t : ts.tasks()) bounds.push_back(to_bound(t, rta_baseline(ts, t.id)));
    return make_report(AnalysisMode::Baseline, std::move(bounds));
}

}  // namespace aew
