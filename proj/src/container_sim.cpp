#include "aew/container_sim.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <map>

#include "text_util.hpp"

namespace aew {

void check_containers(const std::vector<Container>& containers, const TaskSet& ts, Tick period) {
    if (period <= 0) throw Error(ErrorKind::ConfigInvalid, "container period must be positive");
    if (containers.empty()) throw Error(ErrorKind::ConfigInvalid, "no containers");
    Tick total = 0;
    std::map<TaskId, int> owner;
    std::map<int, int> seen_ids;
    for (const auto& c : containers) {
        if (c.budget < 0) throw Error(ErrorKind::ConfigInvalid, "negative budget in container " + std::to_string(c.id));
        if (seen_ids[c.id]++ > 0) throw Error(ErrorKind::ConfigInvalid, "duplicate container " + std::to_string(c.id));
        total += c.budget;
        for (TaskId id : c.members) {
            if (!ts.contains(id)) throw Error(ErrorKind::UnknownTask, "container member " + std::to_string(id));
            if (owner.contains(id))
                throw Error(ErrorKind::OrphanTask, "task " + std::to_string(id) + " is in two containers");
            owner[id] = c.id;
        }
    }
    if (total > period)
        throw Error(ErrorKind::BudgetOverflow,
                    "budgets sum to " + std::to_string(total) + " > period " + std::to_string(period));
    for (const auto& t : ts.tasks())
        if (!owner.contains(t.id)) throw Error(ErrorKind::OrphanTask, "task " + std::to_string(t.id) + " has no container");
}

namespace {

struct PendingJob {
    std::size_t record;
    Tick remaining;
};

struct TaskRuntime {
    Tick next_release;
    long released = 0;
    std::deque<PendingJob> pending;
};

}  // namespace

TwoLevelTrace simulate_two_level(const std::vector<Container>& containers, const TaskSet& ts, Tick period,
                                 Tick horizon, const SimOptions& opts) {
    check_containers(containers, ts, period);
    if (horizon <= 0) throw Error(ErrorKind::HorizonZero, "horizon must be positive");

    const std::size_t n = ts.size();
    const std::size_t m = containers.size();
    std::vector<std::size_t> home(n);
    for (std::size_t c = 0; c < m; ++c)
        for (TaskId id : containers[c].members) home[ts.index_of(id)] = c;

    TwoLevelTrace out;
    out.period = period;
    Trace& trace = out.trace;
    trace.horizon = horizon;
    trace.entity.assign(static_cast<std::size_t>(horizon), kIdle);
    trace.in_window.assign(static_cast<std::size_t>(horizon), 0);
    out.container.assign(static_cast<std::size_t>(horizon), -1);

    std::vector<TaskRuntime> rt(n);
    for (std::size_t i = 0; i < n; ++i) rt[i].next_release = ts[i].offset;

    std::vector<Tick> budget(m, 0);
    std::vector<bool> chosen(m, false);
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::size_t holder = kNone;

    auto event = [&](Tick t, EventKind k, std::size_t i, long job) {
        if (opts.record_events) trace.events.push_back({t, k, ts[i].id, job});
    };
    // best ready member, tasks being in priority order
    auto top_ready = [&](std::size_t c) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < n; ++i)
            if (home[i] == c && !rt[i].pending.empty()) return i;
        return std::nullopt;
    };
    auto eligible = [&](std::size_t c) { return !chosen[c] && budget[c] > 0 && top_ready(c).has_value(); };
    auto rank = [&](std::size_t c) {
        if (containers[c].fixed_priority) return *containers[c].fixed_priority;
        return ts[*top_ready(c)].priority;
    };
    auto end_slot = [&] {
        chosen[holder] = true;
        budget[holder] = 0;
        holder = kNone;
    };

    for (Tick t = 0; t < horizon; ++t) {
        if (t % period == 0) {
            for (std::size_t c = 0; c < m; ++c) budget[c] = containers[c].budget;
            std::fill(chosen.begin(), chosen.end(), false);
            holder = kNone;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& pj : rt[i].pending)
                if (trace.jobs[pj.record].deadline == t) event(t, EventKind::DeadlineMiss, i, trace.jobs[pj.record].index);
        for (std::size_t i = 0; i < n; ++i) {
            if (rt[i].next_release != t) continue;
            const Task& task = ts[i];
            const long idx = rt[i].released++;
            const Tick exec = opts.exec_time ? opts.exec_time(task, idx) : task.wcet;
            trace.jobs.push_back({task.id, idx, t, t + task.deadline(), exec, std::nullopt});
            rt[i].pending.push_back({trace.jobs.size() - 1, exec});
            rt[i].next_release += task.period;
            event(t, EventKind::Release, i, idx);
        }

        if (holder != kNone && budget[holder] == 0) end_slot();
        if (holder != kNone && !top_ready(holder)) {
            bool other = false;
            for (std::size_t c = 0; c < m; ++c)
                if (c != holder && eligible(c)) other = true;
            if (other) end_slot();
        }
        if (holder == kNone) {
            for (std::size_t c = 0; c < m; ++c)
                if (eligible(c) && (holder == kNone || rank(c) < rank(holder))) holder = c;
        }
        if (holder == kNone) continue;

        const std::size_t c = holder;
        out.container[static_cast<std::size_t>(t)] = containers[c].id;
        if (out.slots.empty() || out.slots.back().container != containers[c].id || out.slots.back().span.end != t ||
            t % period == 0)
            out.slots.push_back({containers[c].id, {t, t + 1}});
        else
            out.slots.back().span.end = t + 1;

        const auto i = top_ready(c);
        if (!i) continue;
        trace.entity[static_cast<std::size_t>(t)] = ts[*i].id;
        --budget[c];
        auto& head = rt[*i].pending.front();
        if (--head.remaining > 0) continue;
        trace.jobs[head.record].completion = t + 1;
        event(t + 1, EventKind::Completion, *i, trace.jobs[head.record].index);
        rt[*i].pending.pop_front();
    }
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& pj : rt[i].pending)
            if (trace.jobs[pj.record].deadline == horizon)
                event(horizon, EventKind::DeadlineMiss, i, trace.jobs[pj.record].index);
    return out;
}

std::vector<Tick> allocation_per_period(const TwoLevelTrace& tl, const std::vector<Container>& containers,
                                        int container_id) {
    const auto it = std::find_if(containers.begin(), containers.end(),
                                 [&](const Container& c) { return c.id == container_id; });
    if (it == containers.end()) throw Error(ErrorKind::ConfigInvalid, "no container " + std::to_string(container_id));
    const auto& members = it->members;
    std::vector<Tick> out(static_cast<std::size_t>(tl.trace.horizon / tl.period), 0);
    for (std::size_t p = 0; p < out.size(); ++p)
        for (Tick t = static_cast<Tick>(p) * tl.period; t < static_cast<Tick>(p + 1) * tl.period; ++t) {
            const TaskId e = tl.trace.entity[static_cast<std::size_t>(t)];
            if (e != kIdle && std::find(members.begin(), members.end(), e) != members.end()) ++out[p];
        }
    return out;
}

std::vector<Container> read_containers(std::istream& in) {
    std::vector<Container> out;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto f = detail::split(line, ',');
        if (f.size() != 4)
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 4 fields");
        if (f[0] == "container_id") continue;
        Container c;
        c.id = detail::parse_int<int>(f[0], lineno, "container id");
        c.budget = detail::parse_int<Tick>(f[1], lineno, "budget");
        if (f[2] != "-") c.fixed_priority = detail::parse_int<int>(f[2], lineno, "priority");
        if (!f[3].empty())
            for (const auto& id : detail::split(f[3], ';')) c.members.push_back(detail::parse_int<TaskId>(id, lineno, "task id"));
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Container> read_containers_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return read_containers(in);
}

}  // namespace aew
