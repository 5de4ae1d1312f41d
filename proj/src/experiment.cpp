#include "aew/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "text_util.hpp"

namespace aew {

std::vector<Bucket> default_buckets() {
    std::vector<Bucket> out;
    for (int k = 0; k < 10; ++k) out.push_back({k / 10.0, (k + 1) / 10.0});
    return out;
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); }

double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) invalid("bad number '" + s + "' for " + key);
        return v;
    } catch (const std::logic_error&) {
        invalid("bad number '" + s + "' for " + key);
    }
}

std::vector<std::string> list_of(const std::string& value) {
    std::vector<std::string> out;
    for (auto& item : detail::split(value, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void check(const ExperimentConfig& cfg) {
    if (cfg.tasksets_per_bucket < 1) invalid("tasksets_per_bucket must be positive");
    if (cfg.policies.empty()) invalid("no policies given");
    if (cfg.victims.empty()) invalid("no victim positions given");
    if (cfg.aew.empty()) invalid("no window fractions given");
    if (cfg.buckets.empty()) invalid("no utilization buckets given");
    for (double a : cfg.aew)
        if (!(a >= 0.0 && a < 1.0)) invalid("window fractions must lie in [0, 1)");
    for (const auto& b : cfg.buckets)
        if (!(b.lo >= 0.0 && b.hi > b.lo && b.hi <= 1.0)) invalid("bucket outside [0, 1]");
    if (!(cfg.trusted_fraction >= 0.0 && cfg.trusted_fraction <= 1.0)) invalid("trusted_fraction must lie in [0, 1]");
}

// Runs body(k) for k in [0, count) and stores results by index, so the
// reduction order never depends on scheduling.
template <typename T, typename F>
std::vector<T> map_indices(std::size_t count, Execution exec, int jobs, F&& body) {
    std::vector<T> out(count);
    const auto n = static_cast<long long>(count);
    if (exec == Execution::Serial) {
        for (long long k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = body(static_cast<std::size_t>(k));
        return out;
    }
#ifdef _OPENMP
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (long long k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = body(static_cast<std::size_t>(k));
#else
    (void)jobs;
    for (long long k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = body(static_cast<std::size_t>(k));
#endif
    return out;
}

std::string fmt(double v, const char* format) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, ExperimentConfig cfg) {
    std::string raw;
    while (std::getline(in, raw)) {
        const auto hash = raw.find('#');
        const std::string line = detail::trim(raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) invalid("expected key=value, got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key == "tasksets_per_bucket") {
            cfg.tasksets_per_bucket = static_cast<int>(parse_double(value, key));
        } else if (key == "policies") {
            cfg.policies.clear();
            for (const auto& p : list_of(value)) {
                try {
                    cfg.policies.push_back(parse_policy(p));
                } catch (const Error& e) {
                    invalid(e.what());
                }
            }
        } else if (key == "victim") {
            cfg.victims.clear();
            for (const auto& v : list_of(value)) {
                try {
                    cfg.victims.push_back(parse_victim_position(v));
                } catch (const Error& e) {
                    invalid(e.what());
                }
            }
        } else if (key == "aew") {
            cfg.aew.clear();
            for (const auto& a : list_of(value)) cfg.aew.push_back(parse_double(a, key));
        } else if (key == "seed") {
            try {
                cfg.seed = std::stoull(value);
            } catch (const std::logic_error&) {
                invalid("bad seed '" + value + "'");
            }
        } else if (key == "trusted_fraction") {
            cfg.trusted_fraction = parse_double(value, key);
        } else if (key == "buckets") {
            cfg.buckets.clear();
            for (const auto& b : list_of(value)) {
                const double lo = parse_double(b, key);
                cfg.buckets.push_back({lo, std::min(1.0, lo + 0.1)});
            }
        } else {
            invalid("unknown key '" + key + "'");
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path, ExperimentConfig defaults) {
    std::ifstream in(path);
    if (!in) invalid("cannot open " + path);
    return parse_config(in, std::move(defaults));
}

TaskSet experiment_taskset(const ExperimentConfig& cfg, std::size_t bucket, int index, VictimPosition victim,
                           double aew) {
    GenParams gp;
    gp.trusted_fraction = cfg.trusted_fraction;
    gp.victim_position = victim;
    gp.window_fraction = aew;
    gp.seed = make_rng(cfg.seed, bucket, static_cast<std::uint64_t>(index))();
    return gen_taskset_in_range(gp, cfg.buckets[bucket].lo, cfg.buckets[bucket].hi);
}

std::vector<SchedRatioRow> run_sched_ratio(const ExperimentConfig& cfg, Execution exec, int jobs) {
    check(cfg);
    for (auto p : cfg.policies)
        if (p == PolicyKind::CoverageOriented) invalid("co is not a schedulability policy");

    struct Cell {
        VictimPosition victim;
        double aew;
        std::size_t bucket;
    };
    std::vector<Cell> cells;
    for (auto v : cfg.victims)
        for (double a : cfg.aew)
            for (std::size_t b = 0; b < cfg.buckets.size(); ++b) cells.push_back({v, a, b});

    const auto per = static_cast<std::size_t>(cfg.tasksets_per_bucket);
    const auto np = cfg.policies.size();
    // one bit per policy
    const auto verdicts = map_indices<std::uint32_t>(cells.size() * per, exec, jobs, [&](std::size_t k) {
        const Cell& c = cells[k / per];
        const TaskSet ts = experiment_taskset(cfg, c.bucket, static_cast<int>(k % per), c.victim, c.aew);
        const Tick h = hyperperiod(ts);
        std::uint32_t bits = 0;
        for (std::size_t p = 0; p < np; ++p)
            if (meets_deadlines(ts, cfg.policies[p], h)) bits |= 1u << p;
        return bits;
    });

    std::vector<SchedRatioRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (std::size_t p = 0; p < np; ++p) {
            int ok = 0;
            for (std::size_t i = 0; i < per; ++i) ok += (verdicts[c * per + i] >> p) & 1u;
            rows.push_back({cfg.buckets[cells[c].bucket], cfg.policies[p], cells[c].victim, cells[c].aew,
                            static_cast<int>(per), static_cast<double>(ok) / static_cast<double>(per)});
        }
    return rows;
}

std::vector<CoverageRow> run_coverage(const ExperimentConfig& cfg, Execution exec, int jobs) {
    check(cfg);
    for (auto p : cfg.policies)
        if (p != PolicyKind::Baseline && p != PolicyKind::CoverageOriented)
            invalid("coverage runs compare rm and co only");

    struct Cell {
        double aew;
        std::size_t bucket;
    };
    std::vector<Cell> cells;
    for (double a : cfg.aew)
        for (std::size_t b = 0; b < cfg.buckets.size(); ++b) cells.push_back({a, b});

    struct Outcome {
        bool used = false;
        std::vector<double> ratio;
    };
    const auto per = static_cast<std::size_t>(cfg.tasksets_per_bucket);
    const auto outcomes = map_indices<Outcome>(cells.size() * per, exec, jobs, [&](std::size_t k) {
        const Cell& c = cells[k / per];
        const TaskSet ts = experiment_taskset(cfg, c.bucket, static_cast<int>(k % per), VictimPosition::High, c.aew);
        const Tick h = hyperperiod(ts);
        SimOptions opts;
        opts.record_events = false;
        Outcome o;
        const TraceMetrics rm = metrics(simulate(ts, PolicyKind::Baseline, h, opts), ts);
        if (!rm.no_deadline_miss()) return o;
        o.used = true;
        for (auto p : cfg.policies)
            o.ratio.push_back(p == PolicyKind::Baseline
                                  ? rm.coverage_ratio_untrusted
                                  : metrics(simulate(ts, p, h, opts), ts).coverage_ratio_untrusted);
        return o;
    });

    std::vector<CoverageRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
            int used = 0;
            double sum = 0.0;
            for (std::size_t i = 0; i < per; ++i) {
                const Outcome& o = outcomes[c * per + i];
                if (!o.used) continue;
                ++used;
                sum += o.ratio[p];
            }
            rows.push_back({cfg.buckets[cells[c].bucket], cfg.policies[p], cells[c].aew, used,
                            used == 0 ? 0.0 : sum / used});
        }
    return rows;
}

std::string sched_label(PolicyKind p) { return std::string(to_string(p)); }

std::string coverage_label(PolicyKind p) {
    return p == PolicyKind::CoverageOriented ? "CO" : p == PolicyKind::Baseline ? "RM" : std::string(to_string(p));
}

void write_sched_ratio_csv(std::ostream& out, const std::vector<SchedRatioRow>& rows) {
    out << "bucket_lo,bucket_hi,policy,victim_pos,aew_frac,n,schedulable_frac\n";
    for (const auto& r : rows)
        out << fmt(r.bucket.lo, "%.1f") << ',' << fmt(r.bucket.hi, "%.1f") << ',' << sched_label(r.policy) << ','
            << to_string(r.victim) << ',' << fmt(r.aew_frac, "%g") << ',' << r.n << ','
            << fmt(r.schedulable_frac, "%.6f") << '\n';
}

void write_coverage_csv(std::ostream& out, const std::vector<CoverageRow>& rows) {
    out << "bucket_lo,bucket_hi,policy,aew_frac,n,mean_untrusted_ratio\n";
    for (const auto& r : rows)
        out << fmt(r.bucket.lo, "%.1f") << ',' << fmt(r.bucket.hi, "%.1f") << ',' << coverage_label(r.policy) << ','
            << fmt(r.aew_frac, "%g") << ',' << r.n << ',' << fmt(r.mean_untrusted_ratio, "%.6f") << '\n';
}

}  // namespace aew
