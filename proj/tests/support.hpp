#pragma once

#include "aew/task_model.hpp"

namespace aew::test {

inline Task task(TaskId id, Tick c, Tick t, Trust trust = Trust::Untrusted, Tick offset = 0, int priority = 0) {
    Task out;
    out.id = id;
    out.wcet = c;
    out.period = t;
    out.offset = offset;
    out.priority = priority;
    out.trust = trust;
    return out;
}

inline constexpr Trust T = Trust::Trusted;
inline constexpr Trust U = Trust::Untrusted;

}  // namespace aew::test
