#ifndef LCPLAN_UNITS_HPP
#define LCPLAN_UNITS_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lcplan
{

// Engineering-suffix parsing for CLI boundaries. The math core works in
// base SI; these helpers convert at the edges only. A bare number is taken
// as base SI. SI prefixes are case-sensitive (m vs M), the unit part is
// case-insensitive, and both "u" and the micro sign are accepted.
double parse_frequency(std::string_view text);   // Hz, kHz, MHz, GHz
double parse_inductance(std::string_view text);  // H, mH, uH, nH, pH
double parse_capacitance(std::string_view text); // F, mF, uF, nF, pF
double parse_resistance(std::string_view text);  // ohm, mohm, kohm
double parse_power(std::string_view text);       // W, mW, uW, kW
double parse_duration(std::string_view text);    // s, ms, us
double parse_number(std::string_view text);      // plain float

// `lo:hi` pair of frequencies.
std::pair<double, double> parse_frequency_range(std::string_view text);

struct GridSpec
{
    double lo_hz = 0.0;
    double hi_hz = 0.0;
    double step_hz = 0.0;
};

// `lo:hi:step` frequencies.
GridSpec parse_grid_spec(std::string_view text);

// Comma-separated list, each element parsed by the given parser.
std::vector<double> parse_list(std::string_view text, double (*parse)(std::string_view));

// Human-facing value with an engineering prefix, e.g. "734.128 kHz".
std::string format_si(double value, std::string_view unit);

} // namespace lcplan

#endif // LCPLAN_UNITS_HPP
