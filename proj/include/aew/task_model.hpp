#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "aew/types.hpp"

namespace aew {

/// One periodic task with implicit deadline (deadline == period).
///
/// `priority` is 0 while unassigned; after validation priorities are dense,
/// 1 being the highest.
struct Task {
    TaskId id = 0;
    Tick wcet = 1;
    Tick period = 1;
    Tick offset = 0;
    int priority = 0;
    Trust trust = Trust::Untrusted;

    Tick deadline() const noexcept { return period; }
    bool trusted() const noexcept { return trust == Trust::Trusted; }

    friend bool operator==(const Task&, const Task&) = default;
};

/// Victim designation and attack effective window length.
struct VictimConfig {
    TaskId victim_id = 0;
    Tick window = 0;

    friend bool operator==(const VictimConfig&, const VictimConfig&) = default;
};

class TaskSet;

struct ValidationError {
    ErrorKind kind;
    std::string detail;
};

using ValidationResult = std::variant<TaskSet, std::vector<ValidationError>>;

/// A validated taskset. Tasks are kept sorted by priority (index 0 is the
/// highest priority) and priorities are exactly 1..n. Instances can only be
/// produced by `validate`, so every TaskSet satisfies the model constraints.
class TaskSet {
public:
    std::span<const Task> tasks() const noexcept { return tasks_; }
    std::size_t size() const noexcept { return tasks_.size(); }
    const Task& operator[](std::size_t idx) const { return tasks_[idx]; }

    const std::optional<VictimConfig>& victim() const noexcept { return victim_; }
    bool has_victim() const noexcept { return victim_.has_value(); }

    /// Throws Error{NoVictim} when no victim is configured.
    const VictimConfig& victim_config() const;
    const Task& victim_task() const;
    Tick window() const noexcept { return victim_ ? victim_->window : 0; }

    /// Throws Error{UnknownTask}.
    const Task& by_id(TaskId id) const;
    std::size_t index_of(TaskId id) const;
    bool contains(TaskId id) const noexcept;
    bool is_victim(TaskId id) const noexcept { return victim_ && victim_->victim_id == id; }

    /// Copy with a different window length; re-validated.
    TaskSet with_window(Tick window) const;
    /// Copy with the given task's wcet replaced; re-validated.
    TaskSet with_wcet(TaskId id, Tick wcet) const;

    friend bool operator==(const TaskSet&, const TaskSet&) = default;

private:
    TaskSet() = default;
    friend ValidationResult validate(std::vector<Task> tasks, std::optional<VictimConfig> victim);

    std::vector<Task> tasks_;
    std::optional<VictimConfig> victim_;
};

/// Checks every model constraint and canonicalizes the taskset. When no task
/// carries a priority, rate-monotonic priorities are assigned. Given
/// priorities must all be present and unique; they are compacted to 1..n.
ValidationResult validate(std::vector<Task> tasks, std::optional<VictimConfig> victim = {});

/// `validate` that throws Error (first violation, all listed in the message).
TaskSet make_taskset(std::vector<Task> tasks, std::optional<VictimConfig> victim = {});

/// Rate-monotonic priorities: shorter period first, ties by id, except that
/// the victim runs before any trusted task sharing its period.
std::vector<Task> assign_rm(std::vector<Task> tasks, std::optional<TaskId> victim = {});

/// Trusted tasks above untrusted ones, rate-monotonic within each class
/// (victim tie rule as in assign_rm).
std::vector<Task> assign_criticality_monotonic(std::vector<Task> tasks,
                                               std::optional<TaskId> victim = {});

/// Partition of the other tasks relative to a reference task. Each list is
/// ordered by priority.
struct TaskClasses {
    std::vector<TaskId> hp, lp, thp, tlp, uhp, ulp;
};

/// Throws Error{UnknownTask}.
TaskClasses classify(const TaskSet& ts, TaskId ref);

/// Least common multiple of all periods. Throws Error{Overflow} beyond
/// `limit`.
Tick hyperperiod(const TaskSet& ts, Tick limit = Tick{1} << 40);

double utilization(const TaskSet& ts);

enum class AnalysisMode { Baseline, Paranoid, Trusted };

std::string_view to_string(AnalysisMode mode);

/// Per-task outcome of a response-time analysis. `response_bound` is empty
/// when the recurrence exceeded the deadline.
struct TaskBound {
    TaskId id = 0;
    std::optional<Tick> response_bound;
    Tick deadline = 0;

    bool schedulable() const noexcept { return response_bound && *response_bound <= deadline; }
};

struct RtaReport {
    AnalysisMode mode = AnalysisMode::Baseline;
    std::vector<TaskBound> tasks;  // priority order
    bool taskset_schedulable = false;

    const TaskBound& bound_of(TaskId id) const;
};

RtaReport make_report(AnalysisMode mode, std::vector<TaskBound> bounds);

}  // namespace aew
