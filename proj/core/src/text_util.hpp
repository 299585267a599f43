#ifndef LCPLAN_TEXT_UTIL_HPP
#define LCPLAN_TEXT_UTIL_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace lcplan::detail
{

// Shortest round-trip decimal form; keeps file output byte-deterministic.
inline std::string num_to_string(double value)
{
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

} // namespace lcplan::detail

#endif // LCPLAN_TEXT_UTIL_HPP
