#pragma once

#include <vector>

#include "aew/task_model.hpp"

namespace aew {

/// Per-task view used by the coverage-oriented policy.
struct CoTaskState {
    TaskId id = 0;
    int priority = 0;
    bool trusted = false;
    bool is_victim = false;
    bool above_victim = false;
    Tick max_blocking = 0;          // B_i
    bool ready = false;
    Tick accumulated_blocking = 0;  // of the current job, reset at release
};

struct CoState {
    std::vector<CoTaskState> tasks;  // priority order

    const CoTaskState& of(TaskId id) const;
    CoTaskState& of(TaskId id);
};

/// Builds the offline part of the state. B_i comes from exact fixed-priority
/// analysis; tasks that are not schedulable even without blocking get 0, so
/// they always count as saturated.
CoState co_init(const TaskSet& ts);

/// Selection at one scheduling instant:
///   1. a ready task whose blocking reached B_i (highest priority first)
///   2. victim ready: top ready untrusted task above the victim, else the victim
///   3. victim not ready: top ready trusted task, else idle
TaskId co_select(const CoState& state);

/// Called when a job of `id` is released.
void co_release(CoState& state, TaskId id);

/// One tick elapsed with `ran` executing (kIdle allowed). Every ready task
/// that waited while a lower-priority task or idle held the processor gets
/// one tick of blocking.
CoState co_account(CoState state, TaskId ran);
void co_account_inplace(CoState& state, TaskId ran);

}  // namespace aew
