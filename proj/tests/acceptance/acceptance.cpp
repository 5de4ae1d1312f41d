// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "aew/container_sim.hpp"
#include "aew/covering.hpp"
#include "aew/experiment.hpp"
#include "aew/generator.hpp"
#include "aew/rta_paranoid.hpp"
#include "aew/rta_trusted.hpp"
#include "aew/simulator.hpp"
#include "oracle/brute.hpp"

using namespace aew;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Task task(TaskId id, Tick c, Tick t, Trust trust = Trust::Untrusted, Tick offset = 0) {
    Task k;
    k.id = id;
    k.wcet = c;
    k.period = t;
    k.offset = offset;
    k.trust = trust;
    return k;
}

constexpr Trust T = Trust::Trusted;

// Random sets spanning utilizations, victim positions, windows and trusted shares.
std::vector<TaskSet> random_sets(std::size_t count, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> util(0.05, 0.95);
    std::vector<TaskSet> out;
    while (out.size() < count) {
        GenParams gp;
        gp.total_utilization = util(rng);
        gp.victim_position = static_cast<VictimPosition>(out.size() % 3);
        gp.window_fraction = std::array{0.1, 0.3, 0.5}[(out.size() / 3) % 3];
        gp.trusted_fraction = std::array{0.2, 0.5}[(out.size() / 9) % 2];
        if (auto ts = try_gen_taskset(gp, rng)) out.push_back(std::move(*ts));
    }
    return out;
}

Outcome worked_examples() {
    Outcome o;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) {
            o.pass = false;
            o.detail += std::string(o.detail.empty() ? "" : "; ") + what;
        }
    };

    {
        const auto ts = make_taskset({task(1, 2, 6), task(2, 4, 9, T)}, VictimConfig{2, 2});
        const auto d = rta_paranoid_victim_detail(ts);
        expect(d.response.value == 7 && d.finish_times == std::vector<Tick>{6, 16}, "paranoid victim busy period");
    }
    {
        const auto ts = make_taskset({task(1, 1, 4), task(2, 2, 4, T), task(3, 2, 8, T)}, VictimConfig{3, 2});
        expect(rta_trusted_hp_trusted(ts, 2).value == 4, "trusted hp task with untrusted jitter");
    }
    {
        const auto ts =
            make_taskset({task(1, 2, 4, T, 1), task(2, 1, 4, T, 2), task(3, 2, 12, T, 0)}, VictimConfig{3, 3});
        const auto v = fully_covered(ts);
        expect(v.covered && v.witness == CoverWitness::ByHp && v.exact_response == 5 && v.inflated_response == 9,
               "hp covering");
    }
    {
        const auto ts = make_taskset({task(1, 1, 4, T), task(2, 2, 8, T), task(3, 9, 24, T)}, VictimConfig{2, 2});
        const auto v = fully_covered(ts);
        expect(v.covered && v.witness == CoverWitness::ByLp && v.lp_exact_response == 20 &&
                   v.lp_inflated_response == 22 && v.lp_threshold == 21,
               "lp covering");
    }
    {
        const auto ts = make_taskset({task(1, 10, 100), task(2, 100, 100), task(3, 10, 100)});
        const std::vector<Container> cs{{1, 20, std::nullopt, {1, 3}}, {2, 80, std::nullopt, {2}}};
        const auto tl = simulate_two_level(cs, ts, 100, 300);
        bool follows = true;
        for (Tick p = 0; p < 3; ++p)
            for (Tick t = 10; t < 20; ++t) follows = follows && tl.trace.entity[static_cast<std::size_t>(100 * p + t)] == 3;
        const auto flat = simulate(ts, PolicyKind::Baseline, 300);
        const bool starved = std::find(flat.entity.begin(), flat.entity.end(), 3) == flat.entity.end();
        expect(follows && starved, "container example");
    }
    if (o.pass) o.detail = "5 regressions exact";
    return o;
}

Outcome reductions() {
    const auto sets = random_sets(1000, 101);
    int analysis_mismatch = 0;
    int trace_mismatch = 0;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        const auto ts = sets[k].with_window(0);
        const auto base = analyze_baseline(ts);
        const auto par = analyze_paranoid(ts);
        const auto tru = analyze_trusted(ts);
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (par.tasks[i].response_bound != base.tasks[i].response_bound ||
                tru.tasks[i].response_bound != base.tasks[i].response_bound)
                ++analysis_mismatch;

        std::vector<TaskId> all;
        for (const auto& t : ts.tasks()) all.push_back(t.id);
        const Tick h = hyperperiod(ts);
        const Tick period = k % 2 ? h : ts[0].period;
        const auto tl = simulate_two_level({{1, period, std::nullopt, all}}, ts, period, h);
        const auto flat = simulate(ts, PolicyKind::Baseline, h);
        if (tl.trace.entity != flat.entity || tl.trace.jobs != flat.jobs) ++trace_mismatch;
    }
    return {analysis_mismatch == 0 && trace_mismatch == 0,
            fmt("1000 sets: %d task bounds differ from baseline, %d two-level traces differ", analysis_mismatch,
                trace_mismatch)};
}

struct ModeCase {
    AnalysisMode mode;
    oracle::Mode sim;
    std::function<RtaReport(const TaskSet&)> analyze;
};

const std::vector<ModeCase>& mode_cases() {
    static const std::vector<ModeCase> cases{
        {AnalysisMode::Baseline, oracle::Mode::Plain, analyze_baseline},
        {AnalysisMode::Paranoid, oracle::Mode::VictimOnly, analyze_paranoid},
        {AnalysisMode::Trusted, oracle::Mode::TrustedOnly, analyze_trusted},
    };
    return cases;
}

Outcome soundness() {
    constexpr int kWanted = 1000;
    Outcome o;
    std::string parts;
    Rng rng = make_rng(303, 0);
    for (const auto& mc : mode_cases()) {
        int checked = 0;
        int drawn = 0;
        int violations = 0;
        std::map<std::string, int> by_class;
        while (checked < kWanted && drawn < 50 * kWanted) {
            ++drawn;
            GenParams gp;
            gp.total_utilization = std::uniform_real_distribution<double>(0.05, 0.9)(rng);
            gp.victim_position = static_cast<VictimPosition>(drawn % 3);
            gp.window_fraction = std::array{0.1, 0.3, 0.5}[(drawn / 3) % 3];
            gp.trusted_fraction = std::array{0.2, 0.5}[(drawn / 9) % 2];
            const auto ts = try_gen_taskset(gp, rng);
            if (!ts) continue;
            const auto rep = mc.analyze(*ts);
            if (!rep.taskset_schedulable) continue;
            ++checked;
            const Tick h = oracle::lcm_periods(*ts);
            Tick max_t = 0;
            for (const auto& t : ts->tasks()) max_t = std::max(max_t, t.period);
            const auto run = oracle::run(*ts, mc.sim, h + max_t);
            const auto resp = oracle::responses(*ts, run, 0, h);
            const TaskId v = ts->victim_config().victim_id;
            for (std::size_t i = 0; i < ts->size(); ++i) {
                if (resp.worst[i] <= *rep.tasks[i].response_bound) continue;
                ++violations;
                const Task& t = (*ts)[i];
                std::string cls = t.id == v ? "victim" : t.priority < ts->victim_task().priority ? "hp" : "lp";
                ++by_class[cls + (t.id == v ? "" : t.trusted() ? "-trusted" : "-untrusted")];
            }
        }
        std::string classes;
        for (const auto& [cls, count] : by_class) classes += fmt(" %s=%d", cls.c_str(), count);
        parts += fmt("%s%s %d sets %d violations%s", parts.empty() ? "" : "; ", std::string(to_string(mc.mode)).c_str(),
                     checked, violations, classes.c_str());
        if (checked < kWanted || violations > 0) o.pass = false;
    }
    o.detail = parts;
    return o;
}

Outcome dominance() {
    const auto sets = random_sets(1000, 404);
    int compared = 0;
    std::map<std::string, int> violations;
    for (const auto& ts : sets) {
        const auto par = analyze_paranoid(ts);
        const auto tru = analyze_trusted(ts);
        const TaskId v = ts.victim_config().victim_id;
        const int vprio = ts.victim_task().priority;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            ++compared;
            constexpr Tick kInf = std::numeric_limits<Tick>::max();
            const Tick p = par.tasks[i].response_bound.value_or(kInf);
            const Tick t = tru.tasks[i].response_bound.value_or(kInf);
            if (t <= p) continue;
            const Task& k = ts[i];
            std::string cls = k.id == v ? "victim"
                              : k.priority < vprio ? (k.trusted() ? "thp" : "uhp")
                                                   : (k.trusted() ? "tlp" : "ulp");
            ++violations[cls];
        }
    }
    int total = 0;
    std::string classes;
    for (const auto& [cls, count] : violations) {
        total += count;
        classes += fmt(" %s=%d", cls.c_str(), count);
    }
    return {total == 0, fmt("1000 sets, %d task bounds, %d with trusted > paranoid%s", compared, total,
                            classes.c_str())};
}

Outcome covering_oracle() {
    constexpr int kWanted = 500;
    Rng rng = make_rng(505, 0);
    int checked = 0;
    int drawn = 0;
    int missed = 0;
    int false_cover = 0;
    int late = 0;
    std::map<int, std::pair<int, int>> by_trusted;  // trusted count -> (checked, disagreements)
    while (checked < kWanted * 4) {
        ++drawn;
        const int n = 2 + drawn % 5;
        HarmonicOptions opts;
        opts.trusted = 1 + (drawn / 5) % n;
        opts.window_fraction = 0.05 + 0.1 * (drawn % 9);
        opts.random_offsets = drawn % 2 == 1;
        const auto ts = gen_harmonic(n, 2 + drawn % 4, 0.2 + 0.06 * (drawn % 13), rng, opts);
        CoverVerdict v;
        try {
            v = fully_covered(ts);
        } catch (const Error&) {
            continue;
        }
        const auto brute = oracle::cover(ts);
        if (brute.late) {
            ++late;
            continue;
        }
        ++checked;
        auto& slot = by_trusted[opts.trusted];
        ++slot.first;
        if (v.covered == brute.covered) continue;
        ++slot.second;
        if (v.covered)
            ++false_cover;
        else
            ++missed;
    }
    std::string split;
    for (const auto& [k, c] : by_trusted) split += fmt(" trusted=%d:%d/%d", k, c.second, c.first);
    return {missed == 0 && false_cover == 0 && late == 0,
            fmt("%d sets: %d claimed covered but not, %d covered but not detected (by trusted count%s)", checked,
                false_cover, missed, split.c_str())};
}

ExperimentConfig sched_config() {
    ExperimentConfig cfg;
    cfg.tasksets_per_bucket = 10000;
    cfg.policies = {PolicyKind::Baseline, PolicyKind::Paranoid, PolicyKind::Trusted};
    cfg.seed = 606;
    return cfg;
}

Outcome sched_ratio() {
    const auto rows = run_sched_ratio(sched_config(), Execution::Parallel);
    using Cell = std::tuple<int, double, double>;  // victim, aew, bucket lo
    std::map<Cell, std::map<PolicyKind, double>> cells;
    std::map<std::tuple<int, double, PolicyKind>, std::vector<double>> curves;
    for (const auto& r : rows) {
        cells[{static_cast<int>(r.victim), r.aew_frac, r.bucket.lo}][r.policy] = r.schedulable_frac;
        curves[{static_cast<int>(r.victim), r.aew_frac, r.policy}].push_back(r.schedulable_frac);
    }
    int order_bad = 0;
    int low_bad = 0;
    for (const auto& [cell, f] : cells) {
        if (f.at(PolicyKind::Paranoid) > f.at(PolicyKind::Trusted) || f.at(PolicyKind::Trusted) > f.at(PolicyKind::Baseline))
            ++order_bad;
        if (std::get<2>(cell) < 0.3 - 1e-9 && f.at(PolicyKind::Baseline) != 1.0) ++low_bad;
    }
    int curve_bad = 0;
    double worst_rise = 0.0;
    for (const auto& [key, v] : curves) {
        int rises = 0;
        for (std::size_t i = 1; i < v.size(); ++i) {
            const double rise = v[i] - v[i - 1];
            if (rise <= 0) continue;
            worst_rise = std::max(worst_rise, rise);
            if (rise > 0.02)
                rises += 2;
            else
                ++rises;
        }
        if (rises > 1) ++curve_bad;
    }
    return {order_bad == 0 && low_bad == 0 && curve_bad == 0,
            fmt("%zu cells x 10000 sets: %d ordering breaks, %d low buckets below 1.0, %d curves not "
                "non-increasing (largest rise %.4f)",
                cells.size(), order_bad, low_bad, curve_bad, worst_rise)};
}

Outcome coverage_ratio() {
    ExperimentConfig cfg;
    cfg.tasksets_per_bucket = 1000;
    cfg.policies = {PolicyKind::Baseline, PolicyKind::CoverageOriented};
    cfg.trusted_fraction = 0.2;
    cfg.seed = 707;
    const auto rows = run_coverage(cfg, Execution::Parallel);
    std::map<std::pair<double, double>, std::map<PolicyKind, double>> cells;
    for (const auto& r : rows) cells[{r.aew_frac, r.bucket.lo}][r.policy] = r.mean_untrusted_ratio;
    int bad = 0;
    double gap_min = 1.0;
    for (const auto& [cell, f] : cells) {
        const double gap = f.at(PolicyKind::Baseline) - f.at(PolicyKind::CoverageOriented);
        gap_min = std::min(gap_min, gap);
        if (gap < 0) ++bad;
    }
    return {bad == 0, fmt("%zu cells x 1000 sets: %d with CO above RM (smallest RM-CO gap %.4f)", cells.size(), bad,
                          gap_min)};
}

Outcome co_schedulability() {
    constexpr int kWanted = 1000;
    Rng rng = make_rng(808, 0);
    int used = 0;
    int missing = 0;
    std::map<std::string, int> who;
    while (used < kWanted) {
        GenParams gp;
        gp.total_utilization = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
        gp.victim_position = static_cast<VictimPosition>(used % 3);
        const auto ts = try_gen_taskset(gp, rng);
        if (!ts) continue;
        const Tick h = hyperperiod(*ts);
        if (!meets_deadlines(*ts, PolicyKind::Baseline, h)) continue;
        ++used;
        SimOptions opts;
        opts.record_events = false;
        const auto m = metrics(simulate(*ts, PolicyKind::CoverageOriented, h, opts), *ts);
        if (m.no_deadline_miss()) continue;
        ++missing;
        for (const auto& tm : m.tasks)
            if (tm.deadline_misses > 0) ++who[ts->by_id(tm.id).trusted() ? "trusted" : "untrusted"];
    }
    return {missing == 0, fmt("%d RM-schedulable sets: %d with misses under CO (missing tasks: trusted=%d untrusted=%d)",
                              used, missing, who["trusted"], who["untrusted"])};
}

Outcome isolation() {
    Rng rng = make_rng(909, 0);
    int configs = 0;
    int short_periods = 0;
    for (int round = 0; round < 200; ++round) {
        const Tick period = std::uniform_int_distribution<Tick>(10, 100)(rng);
        const int groups = std::uniform_int_distribution<int>(2, 5)(rng);
        // budgets: random split of at most the whole period
        std::vector<Tick> budget(static_cast<std::size_t>(groups));
        Tick left = period;
        for (auto& b : budget) {
            b = std::uniform_int_distribution<Tick>(1, std::max<Tick>(1, left / 2))(rng);
            left -= b;
        }
        std::vector<Task> tasks;
        std::vector<Container> cs;
        TaskId next = 1;
        for (int g = 0; g < groups; ++g) {
            Container c;
            c.id = g + 1;
            c.budget = budget[static_cast<std::size_t>(g)];
            if (round % 2) c.fixed_priority = std::uniform_int_distribution<int>(1, 9)(rng);
            const int members = std::uniform_int_distribution<int>(1, 3)(rng);
            for (int m = 0; m < members; ++m) {
                // the first member always has work, the others are light
                const Tick t = m == 0 ? period : std::uniform_int_distribution<Tick>(2, 3 * period)(rng);
                tasks.push_back(task(next, m == 0 ? t : 1, t));
                c.members.push_back(next++);
            }
            cs.push_back(std::move(c));
        }
        const auto ts = make_taskset(tasks);
        const int runaway = std::uniform_int_distribution<int>(1, groups)(rng);
        const TaskId runaway_task = cs[static_cast<std::size_t>(runaway - 1)].members.back();
        SimOptions opts;
        opts.exec_time = [&](const Task& t, long) { return t.id == runaway_task ? Tick{1} << 40 : t.wcet; };
        const auto tl = simulate_two_level(cs, ts, period, 10 * period, opts);
        ++configs;
        for (const auto& c : cs) {
            if (c.id == runaway) continue;
            for (Tick used : allocation_per_period(tl, cs, c.id))
                if (used != c.budget) ++short_periods;
        }
    }
    return {short_periods == 0,
            fmt("%d configurations x 10 periods: %d container periods off budget", configs, short_periods)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"worked example regressions", worked_examples},
        {"zero-window and single-container reductions", reductions},
        {"analysis bounds cover simulated responses", soundness},
        {"trusted bounds never exceed paranoid bounds", dominance},
        {"covering verdict matches window inspection", covering_oracle},
        {"schedulable fraction ordering and trend", sched_ratio},
        {"co untrusted coverage not above rm", coverage_ratio},
        {"co keeps rm-schedulable sets schedulable", co_schedulability},
        {"container budget isolation", isolation},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("criterion %zu: %s  %s [%s] (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
