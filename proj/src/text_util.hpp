#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "aew/types.hpp"

namespace aew::detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(std::string_view(line).substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
T parse_int(const std::string& field, int lineno, const char* what) {
    T value{};
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end || field.empty())
        throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad " + what +
                                               " '" + field + "'");
    return value;
}

}  // namespace aew::detail
