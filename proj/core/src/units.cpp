#include "lcplan/units.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "lcplan/errors.hpp"

namespace lcplan
{

namespace
{

std::string_view trim(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    {
        text.remove_suffix(1);
    }
    return text;
}

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(),
                      [](unsigned char x, unsigned char y)
                      { return std::tolower(x) == std::tolower(y); });
}

// Strips the unit word (case-insensitive) from the end; returns false when
// the suffix does not end with it.
bool strip_unit(std::string_view& suffix, std::string_view unit)
{
    if (suffix.size() < unit.size())
    {
        return false;
    }
    const std::string_view tail = suffix.substr(suffix.size() - unit.size());
    if (!iequals(tail, unit))
    {
        return false;
    }
    suffix.remove_suffix(unit.size());
    return true;
}

// SI prefix scale; prefixes are case-sensitive so that m (milli) and M
// (mega) stay distinct. The micro sign U+00B5 is accepted alongside "u".
bool prefix_scale(std::string_view prefix, double& scale)
{
    if (prefix.empty())
    {
        scale = 1.0;
        return true;
    }
    if (prefix == "k" || prefix == "K")
    {
        scale = 1e3;
        return true;
    }
    if (prefix == "M")
    {
        scale = 1e6;
        return true;
    }
    if (prefix == "G")
    {
        scale = 1e9;
        return true;
    }
    if (prefix == "m")
    {
        scale = 1e-3;
        return true;
    }
    if (prefix == "u" || prefix == "\xc2\xb5")
    {
        scale = 1e-6;
        return true;
    }
    if (prefix == "n")
    {
        scale = 1e-9;
        return true;
    }
    if (prefix == "p")
    {
        scale = 1e-12;
        return true;
    }
    return false;
}

double parse_quantity(std::string_view text, std::string_view unit,
                      const char* quantity_name)
{
    const std::string_view trimmed = trim(text);
    if (trimmed.empty())
    {
        throw parse_error(std::string("empty ") + quantity_name);
    }

    double value = 0.0;
    const char* begin = trimmed.data();
    const char* end = begin + trimmed.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || !std::isfinite(value))
    {
        throw parse_error("cannot parse " + std::string(quantity_name) + ": '" +
                          std::string(text) + "'");
    }

    std::string_view suffix = trim(std::string_view(result.ptr, end - result.ptr));
    if (suffix.empty())
    {
        return value; // bare number: base SI
    }
    if (!strip_unit(suffix, unit))
    {
        throw parse_error("expected a " + std::string(unit) + " suffix in '" +
                          std::string(text) + "'");
    }
    double scale = 1.0;
    if (!prefix_scale(suffix, scale))
    {
        throw parse_error("unknown SI prefix '" + std::string(suffix) + "' in '" +
                          std::string(text) + "'");
    }
    return value * scale;
}

} // namespace

double parse_frequency(std::string_view text)
{
    return parse_quantity(text, "Hz", "frequency");
}

double parse_inductance(std::string_view text)
{
    return parse_quantity(text, "H", "inductance");
}

double parse_capacitance(std::string_view text)
{
    return parse_quantity(text, "F", "capacitance");
}

double parse_resistance(std::string_view text)
{
    return parse_quantity(text, "ohm", "resistance");
}

double parse_power(std::string_view text)
{
    return parse_quantity(text, "W", "power");
}

double parse_duration(std::string_view text)
{
    return parse_quantity(text, "s", "duration");
}

double parse_number(std::string_view text)
{
    const std::string_view trimmed = trim(text);
    double value = 0.0;
    const char* begin = trimmed.data();
    const char* end = begin + trimmed.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end || !std::isfinite(value))
    {
        throw parse_error("cannot parse number: '" + std::string(text) + "'");
    }
    return value;
}

std::pair<double, double> parse_frequency_range(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
    {
        throw parse_error("expected 'lo:hi' frequency range, got '" + std::string(text) + "'");
    }
    return {parse_frequency(text.substr(0, colon)), parse_frequency(text.substr(colon + 1))};
}

GridSpec parse_grid_spec(std::string_view text)
{
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos)
    {
        throw parse_error("expected 'lo:hi:step' grid, got '" + std::string(text) + "'");
    }
    GridSpec spec;
    spec.lo_hz = parse_frequency(text.substr(0, first));
    spec.hi_hz = parse_frequency(text.substr(first + 1, second - first - 1));
    spec.step_hz = parse_frequency(text.substr(second + 1));
    return spec;
}

std::vector<double> parse_list(std::string_view text, double (*parse)(std::string_view))
{
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto comma = text.find(',', start);
        const std::string_view item =
            comma == std::string_view::npos ? text.substr(start) : text.substr(start, comma - start);
        if (!trim(item).empty())
        {
            values.push_back(parse(item));
        }
        if (comma == std::string_view::npos)
        {
            break;
        }
        start = comma + 1;
    }
    return values;
}

std::string format_si(double value, std::string_view unit)
{
    static constexpr struct
    {
        double scale;
        const char* prefix;
    } kScales[] = {
        {1e9, "G"}, {1e6, "M"}, {1e3, "k"}, {1.0, ""},
        {1e-3, "m"}, {1e-6, "u"}, {1e-9, "n"}, {1e-12, "p"},
    };

    if (value == 0.0)
    {
        return "0 " + std::string(unit);
    }

    const double magnitude = std::fabs(value);
    for (const auto& entry : kScales)
    {
        if (magnitude >= entry.scale)
        {
            char buffer[48];
            std::snprintf(buffer, sizeof(buffer), "%.6g %s%.*s", value / entry.scale,
                          entry.prefix, static_cast<int>(unit.size()), unit.data());
            return buffer;
        }
    }

    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.6g %.*s", value, static_cast<int>(unit.size()),
                  unit.data());
    return buffer;
}

} // namespace lcplan
