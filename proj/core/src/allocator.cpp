#include "lcplan/allocator.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "lcplan/errors.hpp"
#include "lcplan/resonance.hpp"
#include "text_util.hpp"

namespace lcplan
{

namespace
{

void validate_band(const BandSettings& band)
{
    if (!(band.f_min_hz > 0.0) || !(band.f_max_hz > band.f_min_hz) ||
        !std::isfinite(band.f_max_hz))
    {
        throw domain_error("band requires 0 < f_min < f_max");
    }
    if (band.guard_hz < 0.0 || !std::isfinite(band.guard_hz))
    {
        throw domain_error("guard band must be non-negative");
    }
    if (band.margin_ohm < 0.0 || !std::isfinite(band.margin_ohm))
    {
        throw domain_error("loss margin must be non-negative");
    }
    if (!(band.inductance_h > 0.0) || !std::isfinite(band.inductance_h))
    {
        throw domain_error("inductance must be positive");
    }
}

// Half-power bandwidth at f under the plan's effective Q. Returns a value
// larger than 2f when the effective Q falls to 0.5 or below, which makes the
// spacing deficit permanently negative and drives the search to saturation.
double bandwidth_at(const BandPlan& plan, double f_hz)
{
    return f_hz / plan.loss.q_value_at(f_hz, plan.band.inductance_h, plan.band.margin_ohm);
}

} // namespace

double next_center(double f_i, const BandPlan& plan)
{
    validate_band(plan.band);
    if (!(f_i >= plan.band.f_min_hz))
    {
        throw domain_error("current center must be at or above f_min");
    }

    const double half_bw_i = 0.5 * bandwidth_at(plan, f_i);
    const double guard = plan.band.guard_hz;

    // Spacing deficit; the wanted center is its smallest positive root.
    const auto g = [&](double f)
    { return (f - f_i) - half_bw_i - 0.5 * bandwidth_at(plan, f) - guard; };

    const double cap = 10.0 * plan.band.f_max_hz;

    // Bracket the smallest root by scanning at 1% geometric resolution, then
    // bisect. g(f_i) is strictly negative, so the first sign change brackets
    // the smallest root the scan can resolve.
    double lo = f_i;
    double hi = f_i;
    bool bracketed = false;
    while (hi < cap)
    {
        hi = std::min(hi * 1.01, cap);
        if (g(hi) >= 0.0)
        {
            bracketed = true;
            break;
        }
        lo = hi;
    }
    if (!bracketed)
    {
        throw saturation_error("no spacing-rule solution below 10 * f_max");
    }

    while (hi - lo > kSpacingToleranceHz)
    {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0)
        {
            lo = mid;
        }
        else
        {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

AllocationPlan allocate(const BandPlan& plan)
{
    validate_band(plan.band);
    const BandSettings& band = plan.band;

    const double seed_q = plan.loss.q_value_at(band.f_min_hz, band.inductance_h, band.margin_ohm);
    if (!(seed_q > 0.5))
    {
        throw domain_error("effective Q at f_min is at or below the 0.5 validity floor");
    }

    std::vector<double> centers{band.f_min_hz};
    while (true)
    {
        double next = 0.0;
        try
        {
            next = next_center(centers.back(), plan);
        }
        catch (const saturation_error&)
        {
            break;
        }
        if (next > band.f_max_hz)
        {
            break;
        }
        centers.push_back(next);
    }

    AllocationPlan result;
    result.band = band;
    result.tolerance_hz = kSpacingToleranceHz;
    result.loss_clamped = !plan.loss.covers(band.f_min_hz, band.f_max_hz);
    result.entries.reserve(centers.size());
    int index = 1;
    for (double f0 : centers)
    {
        AllocationEntry entry;
        entry.index = index++;
        entry.f0_hz = f0;
        entry.c_farad = capacitance_for(f0, band.inductance_h);
        entry.bw_hz = bandwidth_at(plan, f0);
        entry.lo_hz = f0 - 0.5 * entry.bw_hz;
        entry.hi_hz = f0 + 0.5 * entry.bw_hz;
        result.entries.push_back(entry);
    }
    result.count = static_cast<int>(result.entries.size());
    return result;
}

int constant_q_count(double f_min_hz, double f_max_hz, double q)
{
    if (!(q > 0.5) || !std::isfinite(q))
    {
        throw domain_error("constant-Q count requires Q > 0.5");
    }
    if (!(f_min_hz > 0.0) || !(f_max_hz > f_min_hz))
    {
        throw domain_error("band requires 0 < f_min < f_max");
    }
    const double step = std::log((2.0 * q + 1.0) / (2.0 * q - 1.0));
    return 1 + static_cast<int>(std::floor(std::log(f_max_hz / f_min_hz) / step));
}

std::vector<SweepRow> sweep(const BandPlan& base, SweepParameter parameter,
                            const std::vector<double>& values)
{
    if (values.empty())
    {
        throw domain_error("sweep requires at least one value");
    }

    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double value : values)
    {
        BandPlan plan = base;
        switch (parameter)
        {
        case SweepParameter::inductance:
            plan.band.inductance_h = value;
            break;
        case SweepParameter::guard_band:
            plan.band.guard_hz = value;
            break;
        case SweepParameter::loss_margin:
            plan.band.margin_ohm = value;
            break;
        case SweepParameter::f_max:
            plan.band.f_max_hz = value;
            break;
        }

        SweepRow row;
        row.value = value;
        try
        {
            row.count = allocate(plan).count;
        }
        catch (const std::exception& e)
        {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_plan_json(const AllocationPlan& plan, std::ostream& out)
{
    nlohmann::json doc;
    doc["band"] = {
        {"f_min_hz", plan.band.f_min_hz},   {"f_max_hz", plan.band.f_max_hz},
        {"guard_hz", plan.band.guard_hz},   {"margin_ohm", plan.band.margin_ohm},
        {"inductance_h", plan.band.inductance_h},
    };
    doc["entries"] = nlohmann::json::array();
    for (const AllocationEntry& e : plan.entries)
    {
        doc["entries"].push_back({
            {"i", e.index},
            {"f0_hz", e.f0_hz},
            {"c_farad", e.c_farad},
            {"bw_hz", e.bw_hz},
            {"lo_hz", e.lo_hz},
            {"hi_hz", e.hi_hz},
        });
    }
    doc["count"] = plan.count;
    doc["tolerance_hz"] = plan.tolerance_hz;
    doc["loss_clamped"] = plan.loss_clamped;
    out << doc.dump(2) << '\n';
}

AllocationPlan read_plan_json(std::istream& in)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::exception& e)
    {
        throw parse_error(std::string("invalid plan document: ") + e.what());
    }

    try
    {
        AllocationPlan plan;
        const auto& band = doc.at("band");
        plan.band.f_min_hz = band.at("f_min_hz").get<double>();
        plan.band.f_max_hz = band.at("f_max_hz").get<double>();
        plan.band.guard_hz = band.at("guard_hz").get<double>();
        plan.band.margin_ohm = band.at("margin_ohm").get<double>();
        plan.band.inductance_h = band.at("inductance_h").get<double>();
        for (const auto& item : doc.at("entries"))
        {
            AllocationEntry e;
            e.index = item.at("i").get<int>();
            e.f0_hz = item.at("f0_hz").get<double>();
            e.c_farad = item.at("c_farad").get<double>();
            e.bw_hz = item.at("bw_hz").get<double>();
            e.lo_hz = item.at("lo_hz").get<double>();
            e.hi_hz = item.at("hi_hz").get<double>();
            plan.entries.push_back(e);
        }
        plan.count = doc.at("count").get<int>();
        plan.tolerance_hz = doc.value("tolerance_hz", kSpacingToleranceHz);
        plan.loss_clamped = doc.value("loss_clamped", false);
        return plan;
    }
    catch (const nlohmann::json::exception& e)
    {
        throw parse_error(std::string("invalid plan document: ") + e.what());
    }
}

AllocationPlan read_plan_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw parse_error("cannot open plan file: " + path);
    }
    return read_plan_json(in);
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out)
{
    out << "param_value,count\n";
    for (const SweepRow& row : rows)
    {
        out << detail::num_to_string(row.value) << ',';
        if (row.count)
        {
            out << *row.count << '\n';
        }
        else
        {
            std::string message = row.error;
            for (char& c : message)
            {
                if (c == ',' || c == '\n')
                {
                    c = ';';
                }
            }
            out << ',' << message << '\n';
        }
    }
}

} // namespace lcplan
