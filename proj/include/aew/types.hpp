#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aew {

/// Discrete time base. One tick is the smallest schedulable unit.
using Tick = std::int64_t;

/// Task identifier as given in the taskset file.
using TaskId = int;

/// Entity value used in traces for ticks where nothing runs.
inline constexpr TaskId kIdle = -1;

enum class Trust { Trusted, Untrusted };

enum class ErrorKind {
    EmptyTaskSet,
    InvalidTask,
    DuplicateId,
    DuplicatePriority,
    MissingPriority,
    WcetExceedsPeriod,
    WindowTooLong,
    VictimUntrusted,
    UnknownVictim,
    UnknownTask,
    Overflow,
    NoVictim,
    IsVictim,
    WrongClass,
    NotSchedulable,
    NotHarmonic,
    Unschedulable,
    PriorityInterleaving,
    HorizonZero,
    BudgetOverflow,
    OrphanTask,
    Degenerate,
    ConfigInvalid,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Floor division for possibly negative numerators, positive divisor.
constexpr Tick floor_div(Tick num, Tick den) {
    Tick q = num / den;
    if ((num % den != 0) && (num < 0)) --q;
    return q;
}

/// Ceiling division for possibly negative numerators, positive divisor.
constexpr Tick ceil_div(Tick num, Tick den) {
    Tick q = num / den;
    if ((num % den != 0) && (num > 0)) ++q;
    return q;
}

}  // namespace aew
