#include "aew/co_policy.hpp"

#include "aew/rta_core.hpp"

namespace aew {

const CoTaskState& CoState::of(TaskId id) const {
    for (const auto& t : tasks)
        if (t.id == id) return t;
    throw Error(ErrorKind::UnknownTask, "no task with id " + std::to_string(id));
}

CoTaskState& CoState::of(TaskId id) {
    return const_cast<CoTaskState&>(static_cast<const CoState&>(*this).of(id));
}

CoState co_init(const TaskSet& ts) {
    const int victim_prio = ts.has_victim() ? ts.victim_task().priority : 0;
    CoState s;
    for (const auto& t : ts.tasks()) {
        CoTaskState c;
        c.id = t.id;
        c.priority = t.priority;
        c.trusted = t.trusted();
        c.is_victim = ts.is_victim(t.id);
        c.above_victim = ts.has_victim() && t.priority < victim_prio;
        try {
            c.max_blocking = max_tolerable_blocking(ts, t.id);
        } catch (const Error&) {
            c.max_blocking = 0;
        }
        s.tasks.push_back(c);
    }
    return s;
}

TaskId co_select(const CoState& state) {
    // tasks are in priority order, so the first match is the top task
    for (const auto& t : state.tasks)
        if (t.ready && t.accumulated_blocking >= t.max_blocking) return t.id;

    const CoTaskState* victim = nullptr;
    for (const auto& t : state.tasks)
        if (t.is_victim) victim = &t;

    if (victim && victim->ready) {
        for (const auto& t : state.tasks)
            if (t.ready && t.above_victim && !t.trusted) return t.id;
        return victim->id;
    }
    for (const auto& t : state.tasks)
        if (t.ready && t.trusted) return t.id;
    return kIdle;
}

void co_release(CoState& state, TaskId id) {
    auto& t = state.of(id);
    t.ready = true;
    t.accumulated_blocking = 0;
}

void co_account_inplace(CoState& state, TaskId ran) {
    int ran_priority = 0;
    if (ran != kIdle) ran_priority = state.of(ran).priority;
    for (auto& t : state.tasks) {
        if (!t.ready || t.id == ran) continue;
        if (ran == kIdle || ran_priority > t.priority) ++t.accumulated_blocking;
    }
}

CoState co_account(CoState state, TaskId ran) {
    co_account_inplace(state, ran);
    return state;
}

}  // namespace aew
