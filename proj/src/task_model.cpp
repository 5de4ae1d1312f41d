#include "aew/task_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace aew {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptyTaskSet: return "EmptyTaskSet";
        case ErrorKind::InvalidTask: return "InvalidTask";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::DuplicatePriority: return "DuplicatePriority";
        case ErrorKind::MissingPriority: return "MissingPriority";
        case ErrorKind::WcetExceedsPeriod: return "WcetExceedsPeriod";
        case ErrorKind::WindowTooLong: return "WindowTooLong";
        case ErrorKind::VictimUntrusted: return "VictimUntrusted";
        case ErrorKind::UnknownVictim: return "UnknownVictim";
        case ErrorKind::UnknownTask: return "UnknownTask";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::NoVictim: return "NoVictim";
        case ErrorKind::IsVictim: return "IsVictim";
        case ErrorKind::WrongClass: return "WrongClass";
        case ErrorKind::NotSchedulable: return "NotSchedulable";
        case ErrorKind::NotHarmonic: return "NotHarmonic";
        case ErrorKind::Unschedulable: return "Unschedulable";
        case ErrorKind::PriorityInterleaving: return "PriorityInterleaving";
        case ErrorKind::HorizonZero: return "HorizonZero";
        case ErrorKind::BudgetOverflow: return "BudgetOverflow";
        case ErrorKind::OrphanTask: return "OrphanTask";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::ConfigInvalid: return "ConfigInvalid";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

const VictimConfig& TaskSet::victim_config() const {
    if (!victim_) throw Error(ErrorKind::NoVictim, "taskset has no victim");
    return *victim_;
}

const Task& TaskSet::victim_task() const { return by_id(victim_config().victim_id); }

std::size_t TaskSet::index_of(TaskId id) const {
    for (std::size_t i = 0; i < tasks_.size(); ++i)
        if (tasks_[i].id == id) return i;
    throw Error(ErrorKind::UnknownTask, "no task with id " + std::to_string(id));
}

const Task& TaskSet::by_id(TaskId id) const { return tasks_[index_of(id)]; }

bool TaskSet::contains(TaskId id) const noexcept {
    return std::any_of(tasks_.begin(), tasks_.end(), [id](const Task& t) { return t.id == id; });
}

TaskSet TaskSet::with_window(Tick window) const {
    auto v = victim_config();
    v.window = window;
    return make_taskset(tasks_, v);
}

TaskSet TaskSet::with_wcet(TaskId id, Tick wcet) const {
    auto tasks = tasks_;
    tasks[index_of(id)].wcet = wcet;
    return make_taskset(std::move(tasks), victim_);
}

namespace {

// Sort key for rate-monotonic ordering. The victim borrows the smallest id of
// the trusted tasks sharing its period so that it lands right above them
// while keeping the relation a strict weak order.
std::vector<Task> rm_sorted(std::vector<Task> tasks, std::optional<TaskId> victim) {
    std::optional<Tick> victim_period;
    TaskId victim_key = 0;
    if (victim) {
        for (const auto& t : tasks)
            if (t.id == *victim) victim_period = t.period;
        if (victim_period) {
            victim_key = *victim;
            for (const auto& t : tasks)
                if (t.id != *victim && t.trusted() && t.period == *victim_period)
                    victim_key = std::min(victim_key, t.id);
        }
    }
    auto key = [&](const Task& t) {
        const bool is_v = victim && t.id == *victim;
        return std::tuple{t.period, is_v ? victim_key : t.id, is_v ? 0 : 1};
    };
    std::stable_sort(tasks.begin(), tasks.end(),
                     [&](const Task& a, const Task& b) { return key(a) < key(b); });
    return tasks;
}

}  // namespace

std::vector<Task> assign_rm(std::vector<Task> tasks, std::optional<TaskId> victim) {
    tasks = rm_sorted(std::move(tasks), victim);
    for (std::size_t i = 0; i < tasks.size(); ++i) tasks[i].priority = static_cast<int>(i + 1);
    return tasks;
}

std::vector<Task> assign_criticality_monotonic(std::vector<Task> tasks,
                                               std::optional<TaskId> victim) {
    tasks = rm_sorted(std::move(tasks), victim);
    std::stable_partition(tasks.begin(), tasks.end(), [](const Task& t) { return t.trusted(); });
    for (std::size_t i = 0; i < tasks.size(); ++i) tasks[i].priority = static_cast<int>(i + 1);
    return tasks;
}

ValidationResult validate(std::vector<Task> tasks, std::optional<VictimConfig> victim) {
    std::vector<ValidationError> errors;
    auto fail = [&](ErrorKind k, std::string msg) { errors.push_back({k, std::move(msg)}); };

    if (tasks.empty()) fail(ErrorKind::EmptyTaskSet, "taskset has no tasks");

    std::set<TaskId> ids;
    for (const auto& t : tasks) {
        const std::string who = "task " + std::to_string(t.id);
        if (!ids.insert(t.id).second) fail(ErrorKind::DuplicateId, who + " appears twice");
        if (t.period < 1) fail(ErrorKind::InvalidTask, who + ": period must be >= 1");
        if (t.wcet < 1) fail(ErrorKind::InvalidTask, who + ": wcet must be >= 1");
        if (t.offset < 0 || (t.period >= 1 && t.offset >= t.period))
            fail(ErrorKind::InvalidTask, who + ": offset must lie in [0, period)");
        if (t.wcet > t.period) fail(ErrorKind::WcetExceedsPeriod, who + ": wcet exceeds period");
    }

    const auto given = std::count_if(tasks.begin(), tasks.end(),
                                     [](const Task& t) { return t.priority != 0; });
    if (given != 0 && given != static_cast<long>(tasks.size()))
        fail(ErrorKind::MissingPriority, "priorities must be given for all tasks or none");
    if (given != 0) {
        std::set<int> prios;
        for (const auto& t : tasks)
            if (t.priority != 0 && !prios.insert(t.priority).second)
                fail(ErrorKind::DuplicatePriority,
                     "priority " + std::to_string(t.priority) + " used twice");
    }

    if (victim) {
        auto it = std::find_if(tasks.begin(), tasks.end(),
                               [&](const Task& t) { return t.id == victim->victim_id; });
        if (it == tasks.end()) {
            fail(ErrorKind::UnknownVictim, "victim " + std::to_string(victim->victim_id) +
                                               " is not in the taskset");
        } else {
            if (!it->trusted()) fail(ErrorKind::VictimUntrusted, "victim must be trusted");
            if (victim->window < 0) fail(ErrorKind::WindowTooLong, "window must be >= 0");
            if (victim->window >= it->period)
                fail(ErrorKind::WindowTooLong, "window " + std::to_string(victim->window) +
                                                   " must be shorter than victim period " +
                                                   std::to_string(it->period));
        }
    }

    if (!errors.empty()) return errors;

    if (given == 0) {
        tasks = assign_rm(std::move(tasks), victim ? std::optional{victim->victim_id} : std::nullopt);
    } else {
        std::stable_sort(tasks.begin(), tasks.end(),
                         [](const Task& a, const Task& b) { return a.priority < b.priority; });
        for (std::size_t i = 0; i < tasks.size(); ++i) tasks[i].priority = static_cast<int>(i + 1);
    }

    TaskSet ts;
    ts.tasks_ = std::move(tasks);
    ts.victim_ = victim;
    return ts;
}

TaskSet make_taskset(std::vector<Task> tasks, std::optional<VictimConfig> victim) {
    auto res = validate(std::move(tasks), victim);
    if (auto* errs = std::get_if<std::vector<ValidationError>>(&res)) {
        std::ostringstream msg;
        for (std::size_t i = 0; i < errs->size(); ++i) {
            if (i) msg << "; ";
            msg << to_string((*errs)[i].kind) << " (" << (*errs)[i].detail << ")";
        }
        throw Error(errs->front().kind, msg.str());
    }
    return std::get<TaskSet>(std::move(res));
}

TaskClasses classify(const TaskSet& ts, TaskId ref) {
    const Task& r = ts.by_id(ref);
    TaskClasses c;
    for (const auto& t : ts.tasks()) {
        if (t.id == ref) continue;
        const bool higher = t.priority < r.priority;
        (higher ? c.hp : c.lp).push_back(t.id);
        if (higher)
            (t.trusted() ? c.thp : c.uhp).push_back(t.id);
        else
            (t.trusted() ? c.tlp : c.ulp).push_back(t.id);
    }
    return c;
}

Tick hyperperiod(const TaskSet& ts, Tick limit) {
    Tick h = 1;
    for (const auto& t : ts.tasks()) {
        const Tick g = std::gcd(h, t.period);
        Tick next = 0;
        if (__builtin_mul_overflow(h / g, t.period, &next) || next > limit)
            throw Error(ErrorKind::Overflow, "hyperperiod exceeds " + std::to_string(limit));
        h = next;
    }
    return h;
}

double utilization(const TaskSet& ts) {
    double u = 0.0;
    for (const auto& t : ts.tasks()) u += static_cast<double>(t.wcet) / static_cast<double>(t.period);
    return u;
}

std::string_view to_string(AnalysisMode mode) {
    switch (mode) {
        case AnalysisMode::Baseline: return "baseline";
        case AnalysisMode::Paranoid: return "paranoid";
        case AnalysisMode::Trusted: return "trusted";
    }
    return "unknown";
}

const TaskBound& RtaReport::bound_of(TaskId id) const {
    for (const auto& b : tasks)
        if (b.id == id) return b;
    throw Error(ErrorKind::UnknownTask, "no bound for task " + std::to_string(id));
}

RtaReport make_report(AnalysisMode mode, std::vector<TaskBound> bounds) {
    RtaReport r;
    r.mode = mode;
    r.tasks = std::move(bounds);
    r.taskset_schedulable =
        std::all_of(r.tasks.begin(), r.tasks.end(), [](const TaskBound& b) { return b.schedulable(); });
    return r;
}

}  // namespace aew
