#include "aew/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aew {

Rng make_rng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b, std::uint64_t stream_c) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed),     hi(seed),     lo(stream_a), hi(stream_a),
                      lo(stream_b), hi(stream_b), lo(stream_c), hi(stream_c)};
    return Rng(seq);
}

std::string_view to_string(VictimPosition pos) {
    switch (pos) {
        case VictimPosition::High: return "high";
        case VictimPosition::Medium: return "medium";
        case VictimPosition::Low: return "low";
    }
    return "unknown";
}

VictimPosition parse_victim_position(std::string_view name) {
    if (name == "high") return VictimPosition::High;
    if (name == "medium") return VictimPosition::Medium;
    if (name == "low") return VictimPosition::Low;
    throw Error(ErrorKind::ParseError, "unknown victim position '" + std::string(name) + "'");
}

std::size_t victim_index(VictimPosition pos, std::size_t n) {
    switch (pos) {
        case VictimPosition::High: return 0;
        case VictimPosition::Medium: return (n - 1) / 2;
        case VictimPosition::Low: return n >= 2 ? n - 2 : 0;  // second to lowest
    }
    return 0;
}

const std::vector<Tick>& period_pool() {
    static const std::vector<Tick> pool = [] {
        std::vector<Tick> v;
        for (Tick d = 1; d <= 1000; ++d)
            if (1000 % d == 0) v.push_back(d);
        return v;
    }();
    return pool;
}

std::vector<double> uunifast(int n, double total_u, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> u;
    u.reserve(static_cast<std::size_t>(n));
    double sum = total_u;
    for (int i = 1; i < n; ++i) {
        const double next = sum * std::pow(unit(rng), 1.0 / static_cast<double>(n - i));
        u.push_back(sum - next);
        sum = next;
    }
    u.push_back(sum);
    return u;
}

namespace {

void check_params(const GenParams& p) {
    if (p.n_min < 2 || p.n_max < p.n_min) throw Error(ErrorKind::ConfigInvalid, "task count range must satisfy 2 <= min <= max");
    if (!(p.total_utilization > 0.0 && p.total_utilization < 1.0))
        throw Error(ErrorKind::ConfigInvalid, "total utilization must lie in (0, 1)");
    if (!(p.trusted_fraction >= 0.0 && p.trusted_fraction <= 1.0))
        throw Error(ErrorKind::ConfigInvalid, "trusted fraction must lie in [0, 1]");
    if (!(p.window_fraction >= 0.0 && p.window_fraction < 1.0))
        throw Error(ErrorKind::ConfigInvalid, "window fraction must lie in [0, 1)");
    if (p.max_attempts < 1) throw Error(ErrorKind::ConfigInvalid, "max_attempts must be positive");
}

// Rounded execution times, or nothing when the set is not usable.
std::optional<std::vector<Tick>> round_wcets(const std::vector<double>& u, const std::vector<Tick>& periods) {
    std::vector<Tick> c(u.size());
    double total = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        c[i] = std::max<Tick>(1, std::llround(u[i] * static_cast<double>(periods[i])));
        if (c[i] > periods[i]) return std::nullopt;
        total += static_cast<double>(c[i]) / static_cast<double>(periods[i]);
    }
    if (total >= 1.0) return std::nullopt;
    return c;
}

}  // namespace

std::optional<TaskSet> try_gen_taskset(const GenParams& params, Rng& rng) {
    check_params(params);
    const int n = std::uniform_int_distribution<int>(params.n_min, params.n_max)(rng);
    const auto& pool = period_pool();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

    std::vector<Tick> periods(static_cast<std::size_t>(n));
    for (auto& p : periods) p = pool[pick(rng)];
    std::sort(periods.begin(), periods.end());
    const auto wcets = round_wcets(uunifast(n, params.total_utilization, rng), periods);
    if (!wcets) return std::nullopt;

    const auto un = static_cast<std::size_t>(n);
    const std::size_t v = victim_index(params.victim_position, un);
    const auto quota = static_cast<std::size_t>(std::ceil(params.trusted_fraction * static_cast<double>(n) - 1e-9));

    // the victim is one of the trusted tasks; the rest are drawn uniformly
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < un; ++i)
        if (i != v) others.push_back(i);
    std::shuffle(others.begin(), others.end(), rng);
    const std::size_t extra = quota > 0 ? std::min(quota - 1, others.size()) : 0;

    std::vector<Task> tasks(un);
    for (std::size_t i = 0; i < un; ++i) {
        tasks[i].id = static_cast<TaskId>(i + 1);
        tasks[i].period = periods[i];
        tasks[i].wcet = (*wcets)[i];
        tasks[i].priority = static_cast<int>(i + 1);  // sorted periods, so rate-monotonic
    }
    tasks[v].trust = Trust::Trusted;
    for (std::size_t k = 0; k < extra; ++k) tasks[others[k]].trust = Trust::Trusted;

    const auto window = static_cast<Tick>(std::floor(params.window_fraction * static_cast<double>(periods[v])));
    return make_taskset(std::move(tasks), VictimConfig{static_cast<TaskId>(v + 1), window});
}

TaskSet gen_taskset(const GenParams& params) {
    check_params(params);
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        Rng rng = make_rng(params.seed, static_cast<std::uint64_t>(attempt));
        if (auto ts = try_gen_taskset(params, rng)) return *std::move(ts);
    }
    throw Error(ErrorKind::Degenerate, "no usable taskset after " + std::to_string(params.max_attempts) + " attempts");
}

TaskSet gen_taskset_in_range(GenParams params, double lo, double hi) {
    if (!(lo >= 0.0 && hi > lo && hi <= 1.0)) throw Error(ErrorKind::ConfigInvalid, "bad utilization range");
    params.total_utilization = 0.5 * (lo + hi);
    check_params(params);
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        Rng rng = make_rng(params.seed, static_cast<std::uint64_t>(attempt));
        std::uniform_real_distribution<double> target(std::max(lo, 1e-6), std::min(hi, 1.0 - 1e-6));
        params.total_utilization = target(rng);
        auto ts = try_gen_taskset(params, rng);
        if (!ts) continue;
        const double u = utilization(*ts);
        if (u >= lo && u < hi) return *std::move(ts);
    }
    throw Error(ErrorKind::Degenerate, "no taskset in utilization range after " +
                                           std::to_string(params.max_attempts) + " attempts");
}

TaskSet gen_harmonic(int n, Tick base_period, double total_u, Rng& rng, const HarmonicOptions& opts) {
    if (n < 2) throw Error(ErrorKind::ConfigInvalid, "harmonic sets need at least two tasks");
    if (base_period < 1) throw Error(ErrorKind::ConfigInvalid, "base period must be positive");
    if (!(total_u > 0.0 && total_u < 1.0)) throw Error(ErrorKind::ConfigInvalid, "total utilization must lie in (0, 1)");
    if (opts.trusted < 0 || opts.trusted > n) throw Error(ErrorKind::ConfigInvalid, "trusted count out of range");
    if (!(opts.window_fraction >= 0.0 && opts.window_fraction < 1.0))
        throw Error(ErrorKind::ConfigInvalid, "window fraction must lie in [0, 1)");

    const auto un = static_cast<std::size_t>(n);
    std::uniform_int_distribution<int> mult(1, 3);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Tick> periods(un);
        Tick p = base_period;
        for (auto& period : periods) {
            const Tick next = p * mult(rng);
            if (next <= base_period * opts.max_hyperperiod_factor) p = next;
            period = p;
        }
        const auto wcets = round_wcets(uunifast(n, total_u, rng), periods);
        if (!wcets) continue;

        std::vector<Task> tasks(un);
        for (std::size_t i = 0; i < un; ++i) {
            tasks[i].id = static_cast<TaskId>(i + 1);
            tasks[i].period = periods[i];
            tasks[i].wcet = (*wcets)[i];
            if (opts.random_offsets)
                tasks[i].offset = std::uniform_int_distribution<Tick>(0, periods[i] - 1)(rng);
        }
        std::vector<std::size_t> order(un);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (int k = 0; k < opts.trusted; ++k) tasks[order[static_cast<std::size_t>(k)]].trust = Trust::Trusted;

        if (opts.trusted == 0) return make_taskset(std::move(tasks));
        const Task& victim = tasks[order[0]];
        const auto window = static_cast<Tick>(std::floor(opts.window_fraction * static_cast<double>(victim.period)));
        const TaskId vid = victim.id;
        return make_taskset(assign_criticality_monotonic(std::move(tasks), vid), VictimConfig{vid, window});
    }
    throw Error(ErrorKind::Degenerate, "no usable harmonic taskset");
}

}  // namespace aew
