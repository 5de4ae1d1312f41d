#include "aew/covering.hpp"

#include <algorithm>

#include "aew/simulator.hpp"

namespace aew {

std::string_view to_string(CoverWitness w) {
    switch (w) {
        case CoverWitness::ByHp: return "by-hp";
        case CoverWitness::ByLp: return "by-lp";
        case CoverWitness::NotCovered: return "not-covered";
    }
    return "unknown";
}

bool is_harmonic(const TaskSet& ts) {
    for (const auto& a : ts.tasks())
        for (const auto& b : ts.tasks()) {
            const Tick lo = std::min(a.period, b.period);
            const Tick hi = std::max(a.period, b.period);
            if (hi % lo != 0) return false;
        }
    return true;
}

namespace {

struct SteadyResponse {
    Tick worst = 0;            // max response of jobs released in [2H, 3H)
    bool missed = false;       // any deadline miss in the whole run
    Tick probe_response = 0;   // response of the probe job (inflated when asked)
    Tick probe_deadline = 0;
};

SteadyResponse steady_response(const TaskSet& ts, TaskId id, bool inflate) {
    const Tick h = hyperperiod(ts);
    const Task& task = ts.by_id(id);
    const Tick horizon = 4 * h;
    const long probe = static_cast<long>(ceil_div(2 * h - task.offset, task.period));

    SimOptions opts;
    opts.record_events = false;
    if (inflate) {
        opts.exec_time = [&](const Task& t, long job) {
            return t.id == id && job == probe ? t.wcet + 1 : t.wcet;
        };
    }
    const Trace trace = simulate(ts, PolicyKind::Baseline, horizon, opts);

    SteadyResponse out;
    for (const auto& job : trace.jobs) {
        if (job.deadline <= horizon && (!job.completion || *job.completion > job.deadline)) out.missed = true;
        if (job.task != id) continue;
        if (job.index == probe) {
            // an inflated job that never finishes is reported past the horizon
            out.probe_response = job.completion ? *job.completion - job.release : horizon - job.release + 1;
            out.probe_deadline = job.deadline;
        }
        if (job.release >= 2 * h && job.release < 3 * h && job.completion)
            out.worst = std::max(out.worst, *job.completion - job.release);
    }
    return out;
}

void require_harmonic(const TaskSet& ts) {
    if (!is_harmonic(ts)) throw Error(ErrorKind::NotHarmonic, "periods do not pairwise divide");
}

}  // namespace

Tick exact_response(const TaskSet& ts, TaskId id, bool inflate) {
    require_harmonic(ts);
    const auto plain = steady_response(ts, id, false);
    if (plain.missed) throw Error(ErrorKind::Unschedulable, "the schedule misses a deadline");
    if (!inflate) return plain.worst;
    const auto inflated = steady_response(ts, id, true);
    if (inflated.probe_response > inflated.probe_deadline)
        throw Error(ErrorKind::Unschedulable, "inflated job of task " + std::to_string(id) + " misses its deadline");
    return inflated.probe_response;
}

CoverVerdict fully_covered(const TaskSet& ts) {
    require_harmonic(ts);
    const VictimConfig& vc = ts.victim_config();
    const Task& victim = ts.by_id(vc.victim_id);
    const Tick omega = vc.window;

    int lowest_trusted_prio = 0;
    int highest_untrusted_prio = static_cast<int>(ts.size()) + 1;
    for (const auto& t : ts.tasks()) {
        if (t.trusted())
            lowest_trusted_prio = std::max(lowest_trusted_prio, t.priority);
        else
            highest_untrusted_prio = std::min(highest_untrusted_prio, t.priority);
    }
    if (lowest_trusted_prio > highest_untrusted_prio)
        throw Error(ErrorKind::PriorityInterleaving, "a trusted task runs below an untrusted one");

    const auto plain = steady_response(ts, victim.id, false);
    if (plain.missed) throw Error(ErrorKind::Unschedulable, "the schedule misses a deadline");
    const auto inflated = steady_response(ts, victim.id, true);

    CoverVerdict v;
    v.exact_response = plain.worst;
    v.inflated_response = inflated.probe_response;

    // With ε = 1 tick the extra unit lands on the first tick after R_v that
    // no higher-priority task uses, so hp coverage of all Ω ticks means
    // R_v+ >= R_v + Ω + 1.
    if (omega == 0 || v.inflated_response > v.exact_response + omega) {
        v.covered = true;
        v.witness = CoverWitness::ByHp;
        return v;
    }

    const Task& lowest = ts[static_cast<std::size_t>(lowest_trusted_prio - 1)];
    if (lowest.id == victim.id) return v;

    const auto l_plain = steady_response(ts, lowest.id, false);
    const auto l_inflated = steady_response(ts, lowest.id, true);
    // Pair each window with the τ_l job released at or before its start:
    // the offset gap is chosen so that gap + R_v lies in [0, T_v).
    const Tick start_gap = ((victim.offset - lowest.offset + v.exact_response) % victim.period + victim.period) % victim.period;
    const Tick offset_gap = start_gap - v.exact_response;

    v.lowest_trusted = lowest.id;
    v.lp_exact_response = l_plain.worst;
    v.lp_inflated_response = l_inflated.probe_response;
    v.lp_threshold = offset_gap + lowest.period - victim.period + v.exact_response + omega;
    if (*v.lp_inflated_response > *v.lp_threshold) {
        v.covered = true;
        v.witness = CoverWitness::ByLp;
    }
    return v;
}

}  // namespace aew
