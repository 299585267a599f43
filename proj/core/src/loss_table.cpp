#include "lcplan/loss_table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "lcplan/errors.hpp"

namespace lcplan
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

LossTable::LossTable(std::vector<LossPoint> entries, LossKind kind,
                     double reference_inductance_h)
    : entries_(std::move(entries)), kind_(kind), reference_inductance_h_(reference_inductance_h)
{
    if (entries_.size() < 2)
    {
        throw domain_error("loss table needs at least 2 entries");
    }
    double previous = 0.0;
    for (const LossPoint& p : entries_)
    {
        if (!(p.frequency_hz > previous) || !std::isfinite(p.frequency_hz))
        {
            throw domain_error("loss table frequencies must be positive and strictly increasing");
        }
        if (!(p.value > 0.0) || !std::isfinite(p.value))
        {
            throw domain_error("loss table values must be positive");
        }
        previous = p.frequency_hz;
    }
    if (kind_ == LossKind::Q && !(reference_inductance_h_ > 0.0))
    {
        throw domain_error("Q-kind loss table requires a positive reference inductance");
    }
}

bool LossTable::covers(double lo_hz, double hi_hz) const noexcept
{
    return lo_hz >= span_lo_hz() && hi_hz <= span_hi_hz();
}

double LossTable::interpolate(double f_hz) const
{
    if (f_hz <= span_lo_hz())
    {
        return entries_.front().value;
    }
    if (f_hz >= span_hi_hz())
    {
        return entries_.back().value;
    }
    const auto upper = std::upper_bound(entries_.begin(), entries_.end(), f_hz,
                                        [](double f, const LossPoint& p)
                                        { return f < p.frequency_hz; });
    const LossPoint& hi = *upper;
    const LossPoint& lo = *(upper - 1);
    const double x = (std::log(f_hz) - std::log(lo.frequency_hz)) /
                     (std::log(hi.frequency_hz) - std::log(lo.frequency_hz));
    return lo.value + x * (hi.value - lo.value);
}

double LossTable::rs_at(double f_hz) const
{
    if (!(f_hz > 0.0) || !std::isfinite(f_hz))
    {
        throw domain_error("query frequency must be positive");
    }
    const double value = interpolate(f_hz);
    if (kind_ == LossKind::SeriesResistance)
    {
        return value;
    }
    return kTwoPi * f_hz * reference_inductance_h_ / value;
}

double LossTable::q_value_at(double f_hz, double inductance_h, double margin_ohm) const
{
    if (!(inductance_h > 0.0) || !std::isfinite(inductance_h))
    {
        throw domain_error("inductance must be positive");
    }
    if (margin_ohm < 0.0 || !std::isfinite(margin_ohm))
    {
        throw domain_error("loss margin must be non-negative");
    }
    return kTwoPi * f_hz * inductance_h / (rs_at(f_hz) + margin_ohm);
}

QualityFactor LossTable::q_at(double f_hz, double inductance_h, double margin_ohm) const
{
    return {q_value_at(f_hz, inductance_h, margin_ohm), f_hz};
}

LossTable constant_q_table(double q, double reference_inductance_h)
{
    if (!(q > 0.0) || !std::isfinite(q))
    {
        throw domain_error("Q must be positive");
    }
    return LossTable({{1.0, q}, {1e12, q}}, LossKind::Q, reference_inductance_h);
}

double composite_rs(const LossComponents& parts)
{
    const double values[] = {parts.inductor_loss_ohm, parts.capacitor_esr_ohm,
                             parts.interconnect_ohm};
    double sum = 0.0;
    for (double v : values)
    {
        if (v < 0.0 || !std::isfinite(v))
        {
            throw domain_error("loss components must be non-negative");
        }
        sum += v;
    }
    if (!(sum > 0.0))
    {
        throw domain_error("at least one loss component must be positive");
    }
    return sum;
}

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

// Splits on the first comma or whitespace run.
bool split_two(std::string_view line, std::string_view& first, std::string_view& second)
{
    const auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t'; };
    std::size_t pos = 0;
    while (pos < line.size() && !is_sep(line[pos]))
    {
        ++pos;
    }
    if (pos == 0 || pos == line.size())
    {
        return false;
    }
    first = line.substr(0, pos);
    while (pos < line.size() && is_sep(line[pos]))
    {
        ++pos;
    }
    if (pos == line.size())
    {
        return false;
    }
    second = trim(line.substr(pos));
    return !second.empty() && second.find_first_of(", \t") == std::string_view::npos;
}

bool parse_double(std::string_view text, double& out)
{
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end && std::isfinite(out);
}

std::string to_lower(std::string_view text)
{
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

LossTable load_loss_table(std::istream& in, double reference_inductance_h)
{
    std::vector<LossPoint> points;
    bool header_seen = false;
    LossKind kind = LossKind::Q;

    std::string raw;
    std::size_t line_number = 0;
    while (std::getline(in, raw))
    {
        ++line_number;
        if (!raw.empty() && raw.back() == '\r')
        {
            raw.pop_back();
        }
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#')
        {
            continue;
        }

        std::string_view first;
        std::string_view second;
        if (!split_two(line, first, second))
        {
            throw parse_error("expected two delimited columns", line_number);
        }

        if (!header_seen)
        {
            if (to_lower(first) != "frequency_hz")
            {
                throw parse_error("header must start with 'frequency_hz'", line_number);
            }
            const std::string kind_token = to_lower(second);
            if (kind_token == "q")
            {
                kind = LossKind::Q;
            }
            else if (kind_token == "rs_ohm")
            {
                kind = LossKind::SeriesResistance;
            }
            else
            {
                throw parse_error("value column must be 'q' or 'rs_ohm'", line_number);
            }
            header_seen = true;
            continue;
        }

        LossPoint point;
        if (!parse_double(first, point.frequency_hz) || !parse_double(second, point.value))
        {
            throw parse_error("malformed numeric row", line_number);
        }
        if (!(point.frequency_hz > 0.0) || !(point.value > 0.0))
        {
            throw parse_error("frequency and value must be positive", line_number);
        }
        if (!points.empty() && point.frequency_hz <= points.back().frequency_hz)
        {
            throw parse_error("frequencies must be strictly increasing", line_number);
        }
        points.push_back(point);
    }

    if (!header_seen)
    {
        throw parse_error("missing header line 'frequency_hz,<q|rs_ohm>'");
    }
    if (points.size() < 2)
    {
        throw parse_error("loss table needs at least 2 data rows");
    }
    return LossTable(std::move(points), kind,
                     kind == LossKind::Q ? reference_inductance_h : 0.0);
}

LossTable load_loss_table(std::istream& in, LossKind expected_kind,
                          double reference_inductance_h)
{
    LossTable table = load_loss_table(in, reference_inductance_h);
    if (table.kind() != expected_kind)
    {
        throw parse_error("loss table kind does not match the expected kind");
    }
    return table;
}

LossTable load_loss_table_file(const std::string& path, double reference_inductance_h)
{
    std::ifstream in(path);
    if (!in)
    {
        throw parse_error("cannot open loss table file: " + path);
    }
    return load_loss_table(in, reference_inductance_h);
}

} // namespace lcplan
