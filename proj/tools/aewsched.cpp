#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "aew/container_sim.hpp"
#include "aew/covering.hpp"
#include "aew/experiment.hpp"
#include "aew/generator.hpp"
#include "aew/rta_paranoid.hpp"
#include "aew/rta_trusted.hpp"
#include "aew/simulator.hpp"
#include "aew/taskset_io.hpp"

using namespace aew;

namespace {

constexpr const char* kFormats = R"(File formats:
  taskset     #window=<ticks>
              id,wcet,period,offset,priority,trust,victim
              trust T|U, victim 0|1, priority '-' for rate-monotonic order
  containers  container_id,budget,fixed_priority_or_-,task_ids (ids joined by ';')
  config      key=value lines: tasksets_per_bucket, policies, victim, aew,
              seed, trusted_fraction, buckets (lower bounds, 0.1 wide)

CSV output:
  analyze               id,trust,class,response_bound,deadline,schedulable
  simulate              id,worst_response,deadline_misses,incomplete_jobs
  --trace-out           tick,entity,in_window
  simulate-containers   container_id,period_index,allocated
  exp sched-ratio       bucket_lo,bucket_hi,policy,victim_pos,aew_frac,n,schedulable_frac
  exp coverage          bucket_lo,bucket_hi,policy,aew_frac,n,mean_untrusted_ratio
)";

struct Global {
    std::optional<std::uint64_t> seed;
    std::string out;
    int jobs = 0;
};

// stdout unless --out names a file
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw Error(ErrorKind::ParseError, "cannot write " + path);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string class_of(const TaskSet& ts, const Task& t) {
    if (!ts.has_victim()) return "-";
    if (ts.is_victim(t.id)) return "victim";
    const bool above = t.priority < ts.victim_task().priority;
    return std::string(t.trusted() ? "t" : "u") + (above ? "hp" : "lp");
}

void write_bound(std::ostream& out, const std::optional<Tick>& v) {
    if (v)
        out << *v;
    else
        out << '-';
}

void cmd_analyze(const Global& g, const std::string& path, const std::string& mode) {
    const auto ts = read_taskset_file(path);
    RtaReport rep;
    if (mode == "baseline")
        rep = analyze_baseline(ts);
    else if (mode == "paranoid")
        rep = analyze_paranoid(ts);
    else
        rep = analyze_trusted(ts);
    Output o(g.out);
    auto& out = o.stream();
    out << "id,trust,class,response_bound,deadline,schedulable\n";
    for (const auto& b : rep.tasks) {
        const Task& t = ts.by_id(b.id);
        out << b.id << ',' << (t.trusted() ? 'T' : 'U') << ',' << class_of(ts, t) << ',';
        write_bound(out, b.response_bound);
        out << ',' << b.deadline << ',' << (b.schedulable() ? 1 : 0) << '\n';
    }
    out << "# " << to_string(rep.mode) << (rep.taskset_schedulable ? " schedulable" : " not schedulable") << '\n';
}

void write_trace_file(const std::string& path, const Trace& trace) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::ParseError, "cannot write " + path);
    write_trace_csv(f, trace);
}

void cmd_simulate(const Global& g, const std::string& path, const std::string& policy, Tick horizon,
                  const std::string& trace_out) {
    const auto ts = read_taskset_file(path);
    if (horizon == 0) horizon = hyperperiod(ts);
    const auto trace = simulate(ts, parse_policy(policy), horizon);
    const auto m = metrics(trace, ts);
    Output o(g.out);
    auto& out = o.stream();
    out << "id,worst_response,deadline_misses,incomplete_jobs\n";
    for (const auto& tm : m.tasks) {
        out << tm.id << ',';
        write_bound(out, tm.worst_response);
        out << ',' << tm.deadline_misses << ',' << tm.incomplete_jobs << '\n';
    }
    out << "# windows " << m.per_window.size() << ", window ticks " << m.total_window << ", untrusted in window "
        << m.untrusted_in_window << ", ratio " << m.coverage_ratio_untrusted << '\n';
    if (!trace_out.empty()) write_trace_file(trace_out, trace);
}

void cmd_containers(const Global& g, const std::string& path, const std::string& containers_path, Tick period,
                    Tick horizon, const std::string& trace_out) {
    const auto ts = read_taskset_file(path);
    const auto cs = read_containers_file(containers_path);
    if (horizon == 0) horizon = 10 * period;
    const auto tl = simulate_two_level(cs, ts, period, horizon);
    Output o(g.out);
    auto& out = o.stream();
    out << "container_id,period_index,allocated\n";
    for (const auto& c : cs) {
        const auto alloc = allocation_per_period(tl, cs, c.id);
        for (std::size_t k = 0; k < alloc.size(); ++k) out << c.id << ',' << k << ',' << alloc[k] << '\n';
    }
    const auto m = metrics(tl.trace, ts);
    for (const auto& tm : m.tasks)
        if (tm.deadline_misses > 0) out << "# task " << tm.id << " missed " << tm.deadline_misses << " deadlines\n";
    if (!trace_out.empty()) write_trace_file(trace_out, tl.trace);
}

void cmd_cover(const Global& g, const std::string& path) {
    const auto ts = read_taskset_file(path);
    const auto v = fully_covered(ts);
    Output o(g.out);
    auto& out = o.stream();
    out << "covered=" << (v.covered ? "yes" : "no") << '\n'
        << "witness=" << to_string(v.witness) << '\n'
        << "R_v=" << v.exact_response << '\n'
        << "R_v+=" << v.inflated_response << '\n'
        << "window=" << ts.window() << '\n';
    if (v.lowest_trusted) {
        out << "lowest_trusted=" << *v.lowest_trusted << '\n'
            << "R_l=" << *v.lp_exact_response << '\n'
            << "R_l+=" << *v.lp_inflated_response << '\n'
            << "threshold=" << *v.lp_threshold << '\n';
    }
}

struct GenArgs {
    int n = 5;
    double u = 0.5;
    double trusted_fraction = 0.2;
    std::string victim = "high";
    double window_fraction = 0.1;
    Tick harmonic_base = 0;
};

void cmd_gen(const Global& g, const GenArgs& a) {
    TaskSet ts = [&] {
        if (a.harmonic_base > 0) {
            Rng rng = make_rng(g.seed.value_or(0), 0);
            HarmonicOptions opts;
            opts.trusted = std::max(1, static_cast<int>(std::ceil(a.trusted_fraction * a.n)));
            opts.window_fraction = a.window_fraction;
            return gen_harmonic(a.n, a.harmonic_base, a.u, rng, opts);
        }
        GenParams p;
        p.n_min = p.n_max = a.n;
        p.total_utilization = a.u;
        p.trusted_fraction = a.trusted_fraction;
        p.victim_position = parse_victim_position(a.victim);
        p.window_fraction = a.window_fraction;
        p.seed = g.seed.value_or(0);
        return gen_taskset(p);
    }();
    Output o(g.out);
    write_taskset(o.stream(), ts);
}

ExperimentConfig load_config(const Global& g, const std::string& path, std::vector<PolicyKind> default_policies) {
    ExperimentConfig defaults;
    defaults.policies = std::move(default_policies);
    ExperimentConfig cfg = path.empty() ? defaults : parse_config_file(path, defaults);
    if (g.seed) cfg.seed = *g.seed;
    return cfg;
}

Execution execution(const Global& g) { return g.jobs == 1 ? Execution::Serial : Execution::Parallel; }

void cmd_sched_ratio(const Global& g, const std::string& config) {
    const auto cfg = load_config(g, config, {PolicyKind::Baseline, PolicyKind::Paranoid, PolicyKind::Trusted});
    const auto rows = run_sched_ratio(cfg, execution(g), g.jobs);
    Output o(g.out);
    write_sched_ratio_csv(o.stream(), rows);
}

void cmd_coverage(const Global& g, const std::string& config) {
    const auto cfg = load_config(g, config, {PolicyKind::Baseline, PolicyKind::CoverageOriented});
    const auto rows = run_coverage(cfg, execution(g), g.jobs);
    Output o(g.out);
    write_coverage_csv(o.stream(), rows);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aewsched: attack effective window schedulability toolkit"};
    app.footer(kFormats);
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    app.add_option("--seed", g.seed, "Random seed (overrides the config file)");
    app.add_option("-o,--out", g.out, "Output file, stdout when omitted");
    app.add_option("--jobs", g.jobs, "Worker threads, 0 = all cores, 1 = serial")->check(CLI::NonNegativeNumber);

    std::string taskset;
    auto* gen = app.add_subcommand("gen", "Generate a random taskset");
    GenArgs ga;
    gen->add_option("--n", ga.n, "Number of tasks")->check(CLI::Range(2, 1000));
    gen->add_option("--u", ga.u, "Total utilization")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--trusted-fraction", ga.trusted_fraction, "Share of trusted tasks")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--victim", ga.victim, "Victim position")->check(CLI::IsMember({"high", "medium", "low"}));
    gen->add_option("--window-fraction", ga.window_fraction, "Window length as a share of the victim period")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--harmonic", ga.harmonic_base, "Harmonic periods from this base period");

    auto* analyze = app.add_subcommand("analyze", "Response-time bounds per task");
    std::string mode = "baseline";
    analyze->add_option("--taskset", taskset, "Taskset file")->required()->check(CLI::ExistingFile);
    analyze->add_option("--mode", mode, "Analysis")->check(CLI::IsMember({"baseline", "paranoid", "trusted"}));

    auto* sim = app.add_subcommand("simulate", "Tick simulation under one policy");
    std::string policy = "baseline";
    Tick horizon = 0;
    std::string trace_out;
    sim->add_option("--taskset", taskset, "Taskset file")->required()->check(CLI::ExistingFile);
    sim->add_option("--policy", policy, "Policy")->check(CLI::IsMember({"baseline", "rm", "paranoid", "trusted", "co"}));
    sim->add_option("--horizon", horizon, "Ticks to simulate, default one hyperperiod")->check(CLI::PositiveNumber);
    sim->add_option("--trace-out", trace_out, "Write the per-tick trace CSV here");

    auto* cont = app.add_subcommand("simulate-containers", "Two-level container simulation");
    std::string containers;
    Tick period = 0;
    cont->add_option("--taskset", taskset, "Taskset file")->required()->check(CLI::ExistingFile);
    cont->add_option("--containers", containers, "Container file")->required()->check(CLI::ExistingFile);
    cont->add_option("--period", period, "Budget replenishment period")->required()->check(CLI::PositiveNumber);
    cont->add_option("--horizon", horizon, "Ticks to simulate, default ten periods")->check(CLI::PositiveNumber);
    cont->add_option("--trace-out", trace_out, "Write the per-tick trace CSV here");

    auto* cover = app.add_subcommand("cover", "Window covering decision for a harmonic taskset");
    cover->add_option("--taskset", taskset, "Taskset file")->required()->check(CLI::ExistingFile);

    auto* exp = app.add_subcommand("exp", "Batch experiments");
    exp->require_subcommand(1);
    std::string config;
    auto* sr = exp->add_subcommand("sched-ratio", "Schedulable fraction per utilization bucket");
    sr->add_option("--config", config, "Config file")->check(CLI::ExistingFile);
    auto* cov = exp->add_subcommand("coverage", "Untrusted share of window time, RM against CO");
    cov->add_option("--config", config, "Config file")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen)
            cmd_gen(g, ga);
        else if (*analyze)
            cmd_analyze(g, taskset, mode);
        else if (*sim)
            cmd_simulate(g, taskset, policy, horizon, trace_out);
        else if (*cont)
            cmd_containers(g, taskset, containers, period, horizon, trace_out);
        else if (*cover)
            cmd_cover(g, taskset);
        else if (*sr)
            cmd_sched_ratio(g, config);
        else if (*cov)
            cmd_coverage(g, config);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
