#pragma once

#include <iosfwd>
#include <string>

#include "aew/task_model.hpp"

namespace aew {

// Taskset text format, one task per line:
//
//   #window=<ticks>
//   id,wcet,period,offset,priority,trust,victim
//
// trust is T or U, victim is 0 or 1, priority may be '-' to request
// rate-monotonic assignment. Other lines starting with '#' are comments.

TaskSet read_taskset(std::istream& in);
TaskSet read_taskset_file(const std::string& path);

void write_taskset(std::ostream& out, const TaskSet& ts);
void write_taskset_file(const std::string& path, const TaskSet& ts);

}  // namespace aew
