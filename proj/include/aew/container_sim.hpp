#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "aew/simulator.hpp"

namespace aew {

/// A group of tasks sharing one execution budget per global period.
struct Container {
    int id = 0;
    Tick budget = 0;
    std::optional<int> fixed_priority;  // lower value is more important
    std::vector<TaskId> members;
};

struct Slot {
    int container = 0;
    Interval span;
};

struct TwoLevelTrace {
    Trace trace;                     // task-level view, windows unused
    Tick period = 0;
    std::vector<int> container;      // holder per tick, -1 when none
    std::vector<Slot> slots;         // maximal runs of one holder
};

/// Checks that budgets fit the period and that containers partition the
/// taskset. Throws Error{BudgetOverflow}, Error{OrphanTask},
/// Error{UnknownTask}, Error{ConfigInvalid}.
void check_containers(const std::vector<Container>& containers, const TaskSet& ts, Tick period);

/// Level one: at each selection instant the eligible container with the best
/// priority (fixed, or that of its best ready member) gets a non-preemptive
/// slot. A slot ends when the budget is used up, at the period boundary, or
/// when the container has nothing ready and another container could run; in
/// that case the rest of the budget is lost for the period. Each container
/// holds at most one slot per period. Level two is preemptive fixed priority.
/// Throws as check_containers and Error{HorizonZero}.
TwoLevelTrace simulate_two_level(const std::vector<Container>& containers, const TaskSet& ts, Tick period,
                                 Tick horizon, const SimOptions& opts = {});

/// Ticks executed by members of `container_id` in each full period.
std::vector<Tick> allocation_per_period(const TwoLevelTrace& tl, const std::vector<Container>& containers,
                                        int container_id);

/// Reads `container_id,budget,fixed_priority_or_-,task_ids` rows with task
/// ids separated by ';'. Lines starting with '#' are skipped.
/// Throws Error{ParseError}.
std::vector<Container> read_containers(std::istream& in);
std::vector<Container> read_containers_file(const std::string& path);

}  // namespace aew
