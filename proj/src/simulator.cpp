#include "aew/simulator.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <ostream>

#include "aew/co_policy.hpp"

namespace aew {

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Baseline: return "baseline";
        case PolicyKind::Paranoid: return "paranoid";
        case PolicyKind::Trusted: return "trusted";
        case PolicyKind::CoverageOriented: return "co";
    }
    return "unknown";
}

PolicyKind parse_policy(std::string_view name) {
    if (name == "baseline" || name == "rm") return PolicyKind::Baseline;
    if (name == "paranoid") return PolicyKind::Paranoid;
    if (name == "trusted") return PolicyKind::Trusted;
    if (name == "co") return PolicyKind::CoverageOriented;
    throw Error(ErrorKind::ParseError, "unknown policy '" + std::string(name) + "'");
}

namespace {

struct PendingJob {
    std::size_t record;  // index into Trace::jobs
    Tick remaining;
};

struct TaskRuntime {
    Tick next_release;
    long released = 0;
    std::deque<PendingJob> pending;
};

}  // namespace

Trace simulate(const TaskSet& ts, PolicyKind policy, Tick horizon, const SimOptions& opts) {
    if (horizon <= 0) throw Error(ErrorKind::HorizonZero, "horizon must be positive");

    const std::size_t n = ts.size();
    const std::size_t victim = ts.has_victim() ? ts.index_of(ts.victim_config().victim_id) : n;  // n: none
    const Tick omega = ts.window();

    Trace trace;
    trace.horizon = horizon;
    trace.entity.assign(static_cast<std::size_t>(horizon), kIdle);
    trace.in_window.assign(static_cast<std::size_t>(horizon), 0);

    std::vector<TaskRuntime> rt(n);
    for (std::size_t i = 0; i < n; ++i) rt[i].next_release = ts[i].offset;

    CoState co;
    if (policy == PolicyKind::CoverageOriented) co = co_init(ts);

    Tick window_end = 0;  // windows are appended in time order
    auto event = [&](Tick t, EventKind k, std::size_t task_idx, long job) {
        if (opts.record_events) trace.events.push_back({t, k, ts[task_idx].id, job});
    };
    auto check_deadlines = [&](Tick t) {
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& pj : rt[i].pending)
                if (trace.jobs[pj.record].deadline == t)
                    event(t, EventKind::DeadlineMiss, i, trace.jobs[pj.record].index);
    };

    for (Tick t = 0; t < horizon; ++t) {
        check_deadlines(t);
        for (std::size_t i = 0; i < n; ++i) {
            if (rt[i].next_release != t) continue;
            const Task& task = ts[i];
            const long idx = rt[i].released++;
            const Tick exec = opts.exec_time ? opts.exec_time(task, idx) : task.wcet;
            trace.jobs.push_back({task.id, idx, t, t + task.deadline(), exec, std::nullopt});
            rt[i].pending.push_back({trace.jobs.size() - 1, exec});
            rt[i].next_release += task.period;
            event(t, EventKind::Release, i, idx);
            if (policy == PolicyKind::CoverageOriented) co_release(co, task.id);
        }

        const bool in_window = t < window_end;
        trace.in_window[static_cast<std::size_t>(t)] = in_window ? 1 : 0;

        std::optional<std::size_t> chosen;
        if (policy == PolicyKind::CoverageOriented) {
            const TaskId sel = co_select(co);
            if (sel != kIdle) chosen = ts.index_of(sel);
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                if (rt[i].pending.empty()) continue;
                if (in_window && policy == PolicyKind::Paranoid && i != victim) continue;
                if (in_window && policy == PolicyKind::Trusted && !ts[i].trusted()) continue;
                chosen = i;
                break;
            }
        }

        if (!chosen) {
            if (policy == PolicyKind::CoverageOriented) co_account_inplace(co, kIdle);
            continue;
        }
        const std::size_t i = *chosen;
        trace.entity[static_cast<std::size_t>(t)] = ts[i].id;
        if (policy == PolicyKind::CoverageOriented) co_account_inplace(co, ts[i].id);

        auto& head = rt[i].pending.front();
        if (--head.remaining > 0) continue;

        auto& rec = trace.jobs[head.record];
        rec.completion = t + 1;
        event(t + 1, EventKind::Completion, i, rec.index);
        rt[i].pending.pop_front();
        if (policy == PolicyKind::CoverageOriented && rt[i].pending.empty()) co.of(ts[i].id).ready = false;

        if (i == victim) {
            const Tick f = t + 1;
            trace.window_anchors.push_back(f);
            if (omega > 0) {
                if (!trace.windows.empty() && trace.windows.back().end >= f)
                    trace.windows.back().end = std::max(trace.windows.back().end, f + omega);
                else
                    trace.windows.push_back({f, f + omega});
                window_end = trace.windows.back().end;
            }
        }
    }
    check_deadlines(horizon);
    return trace;
}

bool meets_deadlines(const TaskSet& ts, PolicyKind policy, Tick horizon) {
    if (horizon <= 0) throw Error(ErrorKind::HorizonZero, "horizon must be positive");
    if (policy == PolicyKind::CoverageOriented) {
        SimOptions opts;
        opts.record_events = false;
        return metrics(simulate(ts, policy, horizon, opts), ts).no_deadline_miss();
    }

    const std::size_t n = ts.size();
    const std::size_t victim = ts.has_victim() ? ts.index_of(ts.victim_config().victim_id) : n;  // n: none
    const Tick omega = ts.window();
    constexpr Tick kNever = std::numeric_limits<Tick>::max();

    // With deadline == period a second pending job means the first one missed,
    // so one remaining counter per task is enough.
    std::vector<Tick> remaining(n, 0);
    std::vector<Tick> next_release(n);
    for (std::size_t i = 0; i < n; ++i) next_release[i] = ts[i].offset;
    Tick window_end = 0;

    Tick t = 0;
    while (t < horizon) {
        Tick upcoming = kNever;
        for (std::size_t i = 0; i < n; ++i) {
            if (next_release[i] == t) {
                if (remaining[i] > 0) return false;
                remaining[i] = ts[i].wcet;
                next_release[i] += ts[i].period;
            }
            upcoming = std::min(upcoming, next_release[i]);
        }

        const bool in_window = t < window_end;
        std::optional<std::size_t> chosen;
        for (std::size_t i = 0; i < n; ++i) {
            if (remaining[i] == 0) continue;
            if (in_window && policy == PolicyKind::Paranoid && i != victim) continue;
            if (in_window && policy == PolicyKind::Trusted && !ts[i].trusted()) continue;
            chosen = i;
            break;
        }

        Tick step = std::min(upcoming, horizon) - t;
        if (in_window) step = std::min(step, window_end - t);
        if (!chosen) {
            t += step;
            continue;
        }
        const std::size_t i = *chosen;
        step = std::min(step, remaining[i]);
        remaining[i] -= step;
        t += step;
        if (remaining[i] == 0 && i == victim && omega > 0) window_end = std::max(window_end, t + omega);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (remaining[i] > 0 && next_release[i] == horizon) return false;
    return true;
}

bool TraceMetrics::no_deadline_miss() const noexcept {
    return std::all_of(tasks.begin(), tasks.end(), [](const TaskMetrics& m) { return m.deadline_misses == 0; });
}

const TaskMetrics& TraceMetrics::of(TaskId id) const {
    for (const auto& m : tasks)
        if (m.id == id) return m;
    throw Error(ErrorKind::UnknownTask, "no metrics for task " + std::to_string(id));
}

TraceMetrics metrics(const Trace& trace, const TaskSet& ts) {
    TraceMetrics m;
    for (const auto& t : ts.tasks()) m.tasks.push_back({t.id, std::nullopt, 0, 0});
    auto slot = [&](TaskId id) -> TaskMetrics& { return m.tasks[ts.index_of(id)]; };

    for (const auto& job : trace.jobs) {
        auto& tm = slot(job.task);
        if (job.completion) {
            const Tick r = *job.completion - job.release;
            tm.worst_response = std::max(tm.worst_response.value_or(0), r);
            if (*job.completion > job.deadline) ++tm.deadline_misses;
        } else {
            ++tm.incomplete_jobs;
            if (job.deadline <= trace.horizon) ++tm.deadline_misses;
        }
    }

    for (const auto& w : trace.windows) {
        WindowStat ws;
        ws.window = {std::min(w.begin, trace.horizon), std::min(w.end, trace.horizon)};
        for (Tick t = ws.window.begin; t < ws.window.end; ++t) {
            const TaskId e = trace.entity[static_cast<std::size_t>(t)];
            if (e == kIdle)
                ++ws.idle;
            else if (ts.by_id(e).trusted())
                ++ws.trusted;
            else
                ++ws.untrusted;
        }
        if (ws.window.length() == 0) continue;
        m.untrusted_in_window += ws.untrusted;
        m.total_window += ws.window.length();
        m.per_window.push_back(ws);
    }
    m.coverage_ratio_untrusted =
        m.total_window == 0 ? 0.0
                            : static_cast<double>(m.untrusted_in_window) / static_cast<double>(m.total_window);
    return m;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << "tick,entity,in_window\n";
    for (Tick t = 0; t < trace.horizon; ++t) {
        const auto idx = static_cast<std::size_t>(t);
        out << t << ',';
        if (trace.entity[idx] == kIdle)
            out << "idle";
        else
            out << trace.entity[idx];
        out << ',' << static_cast<int>(trace.in_window[idx]) << '\n';
    }
}

}  // namespace aew
