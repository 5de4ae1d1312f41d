#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "aew/task_model.hpp"

namespace aew {

/// Scheduler behaviour with respect to the attack effective window.
///   Baseline          fixed priority, windows ignored
///   Paranoid          inside a window only the victim may run
///   Trusted           inside a window only trusted tasks may run
///   CoverageOriented  online coverage-oriented selection, no filtering
enum class PolicyKind { Baseline, Paranoid, Trusted, CoverageOriented };

std::string_view to_string(PolicyKind kind);
/// Accepts baseline|rm, paranoid, trusted, co. Throws Error{ParseError}.
PolicyKind parse_policy(std::string_view name);

struct Interval {
    Tick begin = 0;
    Tick end = 0;  // exclusive

    Tick length() const noexcept { return end - begin; }
    bool contains(Tick t) const noexcept { return t >= begin && t < end; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class EventKind { Release, Completion, DeadlineMiss };

struct TraceEvent {
    Tick tick = 0;
    EventKind kind = EventKind::Release;
    TaskId task = 0;
    long job = 0;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct JobRecord {
    TaskId task = 0;
    long index = 0;
    Tick release = 0;
    Tick deadline = 0;
    Tick exec = 0;
    std::optional<Tick> completion;

    std::optional<Tick> response() const {
        return completion ? std::optional<Tick>(*completion - release) : std::nullopt;
    }
    friend bool operator==(const JobRecord&, const JobRecord&) = default;
};

/// Tick-indexed record of one simulation run.
struct Trace {
    Tick horizon = 0;
    std::vector<TaskId> entity;         // task id or kIdle, one per tick
    std::vector<std::uint8_t> in_window;  // 1 when the tick lies in a window
    std::vector<TraceEvent> events;
    std::vector<JobRecord> jobs;
    std::vector<Tick> window_anchors;  // victim completion times
    std::vector<Interval> windows;     // union of [anchor, anchor + Ω)
};

struct SimOptions {
    /// Execution demand of a job; defaults to the task's wcet.
    std::function<Tick(const Task&, long job)> exec_time;
    bool record_events = true;
};

/// Throws Error{HorizonZero} when horizon <= 0.
Trace simulate(const TaskSet& ts, PolicyKind policy, Tick horizon, const SimOptions& opts = {});

/// True when no job with deadline <= horizon misses it. Event driven and
/// stops at the first miss; gives the same verdict as simulate + metrics.
/// CoverageOriented falls back to the tick simulation.
bool meets_deadlines(const TaskSet& ts, PolicyKind policy, Tick horizon);

struct WindowStat {
    Interval window;  // clipped to the horizon
    Tick untrusted = 0;
    Tick trusted = 0;
    Tick idle = 0;
};

struct TaskMetrics {
    TaskId id = 0;
    std::optional<Tick> worst_response;  // over jobs completed within the horizon
    int deadline_misses = 0;
    int incomplete_jobs = 0;  // released but not finished at the horizon
};

struct TraceMetrics {
    std::vector<TaskMetrics> tasks;  // priority order
    Tick untrusted_in_window = 0;
    Tick total_window = 0;
    double coverage_ratio_untrusted = 0.0;
    std::vector<WindowStat> per_window;

    bool no_deadline_miss() const noexcept;
    const TaskMetrics& of(TaskId id) const;
};

TraceMetrics metrics(const Trace& trace, const TaskSet& ts);

/// CSV `tick,entity,in_window`; idle ticks are written as `idle`.
void write_trace_csv(std::ostream& out, const Trace& trace);

}  // namespace aew
