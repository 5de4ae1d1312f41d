#include "aew/taskset_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "text_util.hpp"

namespace aew {

using detail::parse_int;
using detail::split;
using detail::trim;

TaskSet read_taskset(std::istream& in) {
    std::vector<Task> tasks;
    std::optional<Tick> window;
    std::optional<TaskId> victim;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.starts_with("#window=")) {
            window = parse_int<Tick>(trim(line.substr(8)), lineno, "window");
            continue;
        }
        if (line.front() == '#') continue;

        const auto f = split(line, ',');
        if (f.size() != 7)
            throw Error(ErrorKind::ParseError,
                        "line " + std::to_string(lineno) + ": expected 7 fields, got " +
                            std::to_string(f.size()));
        Task t;
        t.id = parse_int<TaskId>(f[0], lineno, "id");
        t.wcet = parse_int<Tick>(f[1], lineno, "wcet");
        t.period = parse_int<Tick>(f[2], lineno, "period");
        t.offset = parse_int<Tick>(f[3], lineno, "offset");
        t.priority = f[4] == "-" ? 0 : parse_int<int>(f[4], lineno, "priority");
        if (f[4] != "-" && t.priority < 1)
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": priority must be >= 1");
        if (f[5] == "T")
            t.trust = Trust::Trusted;
        else if (f[5] == "U")
            t.trust = Trust::Untrusted;
        else
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": trust must be T or U");
        if (f[6] == "1") {
            if (victim)
                throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": second victim");
            victim = t.id;
        } else if (f[6] != "0") {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": victim must be 0 or 1");
        }
        tasks.push_back(t);
    }
    std::optional<VictimConfig> cfg;
    if (victim) cfg = VictimConfig{*victim, window.value_or(0)};
    return make_taskset(std::move(tasks), cfg);
}

TaskSet read_taskset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return read_taskset(in);
}

void write_taskset(std::ostream& out, const TaskSet& ts) {
    out << "#window=" << ts.window() << '\n';
    out << "# id,wcet,period,offset,priority,trust,victim\n";
    for (const auto& t : ts.tasks()) {
        out << t.id << ',' << t.wcet << ',' << t.period << ',' << t.offset << ',' << t.priority
            << ',' << (t.trusted() ? 'T' : 'U') << ',' << (ts.is_victim(t.id) ? 1 : 0) << '\n';
    }
}

void write_taskset_file(const std::string& path, const TaskSet& ts) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    write_taskset(out, ts);
}

}  // namespace aew
