#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcplan/allocator.hpp"
#include "lcplan/errors.hpp"
#include "lcplan/loss_table.hpp"
#include "lcplan/resonance.hpp"
#include "lcplan/selectivity.hpp"
#include "lcplan/units.hpp"

namespace
{

// Exit codes: 0 success, 1 computation error, 2 usage error.
class usage_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct PlanOptions
{
    std::string band;
    std::string inductance = "10uH";
    std::string loss_table;
    std::string table_inductance;
    std::string const_q;
    std::string guard = "0";
    std::string margin = "0";
};

// Unit mistakes on the command line are usage errors, not computation errors.
template <typename Fn>
auto parse_flag(Fn&& fn) -> decltype(fn())
{
    try
    {
        return fn();
    }
    catch (const lcplan::parse_error& e)
    {
        throw usage_error(e.what());
    }
}

lcplan::BandPlan build_plan(const PlanOptions& opt)
{
    const auto [f_min, f_max] = parse_flag([&] { return lcplan::parse_frequency_range(opt.band); });
    const double inductance = parse_flag([&] { return lcplan::parse_inductance(opt.inductance); });
    const double guard = parse_flag([&] { return lcplan::parse_frequency(opt.guard); });
    const double margin = parse_flag([&] { return lcplan::parse_resistance(opt.margin); });

    if (!opt.const_q.empty() && !opt.loss_table.empty())
    {
        throw usage_error("--const-q and --loss-table are mutually exclusive");
    }

    lcplan::LossTable loss = [&]() -> lcplan::LossTable
    {
        if (!opt.const_q.empty())
        {
            const double q = parse_flag([&] { return lcplan::parse_number(opt.const_q); });
            return lcplan::constant_q_table(q, inductance);
        }
        if (!opt.loss_table.empty())
        {
            const double reference =
                opt.table_inductance.empty()
                    ? inductance
                    : parse_flag([&] { return lcplan::parse_inductance(opt.table_inductance); });
            return lcplan::load_loss_table_file(opt.loss_table, reference);
        }
        throw usage_error("one of --loss-table or --const-q is required");
    }();

    return lcplan::BandPlan{{f_min, f_max, guard, margin, inductance}, std::move(loss)};
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return out;
}

void warn_if_clamped(const lcplan::AllocationPlan& plan)
{
    if (plan.loss_clamped)
    {
        std::cerr << "warning: band extends beyond the loss table span; "
                     "endpoint values were clamped\n";
    }
}

int run_allocate(const PlanOptions& opt, const std::string& out_path)
{
    const lcplan::BandPlan plan = build_plan(opt);
    const lcplan::AllocationPlan result = lcplan::allocate(plan);
    warn_if_clamped(result);

    if (!out_path.empty())
    {
        auto out = open_output(out_path);
        lcplan::write_plan_json(result, out);
    }

    std::cout << "N = " << result.count << '\n'
              << "band " << lcplan::format_si(result.band.f_min_hz, "Hz") << " .. "
              << lcplan::format_si(result.band.f_max_hz, "Hz") << ", guard "
              << lcplan::format_si(result.band.guard_hz, "Hz") << ", margin "
              << lcplan::format_si(result.band.margin_ohm, "ohm") << ", L "
              << lcplan::format_si(result.band.inductance_h, "H") << '\n';
    if (!result.entries.empty())
    {
        std::cout << "centers " << lcplan::format_si(result.entries.front().f0_hz, "Hz")
                  << " .. " << lcplan::format_si(result.entries.back().f0_hz, "Hz") << '\n';
    }
    return 0;
}

lcplan::SweepParameter sweep_parameter_from(const std::string& name)
{
    if (name == "inductance")
    {
        return lcplan::SweepParameter::inductance;
    }
    if (name == "guard")
    {
        return lcplan::SweepParameter::guard_band;
    }
    if (name == "margin")
    {
        return lcplan::SweepParameter::loss_margin;
    }
    if (name == "fmax")
    {
        return lcplan::SweepParameter::f_max;
    }
    throw usage_error("--param must be one of inductance, guard, margin, fmax");
}

int run_sweep(const PlanOptions& opt, const std::string& param_name,
              const std::string& values_text, const std::string& out_path)
{
    const lcplan::BandPlan base = build_plan(opt);
    const lcplan::SweepParameter parameter = sweep_parameter_from(param_name);

    const auto value_parser = [&]() -> double (*)(std::string_view)
    {
        switch (parameter)
        {
        case lcplan::SweepParameter::inductance:
            return lcplan::parse_inductance;
        case lcplan::SweepParameter::guard_band:
        case lcplan::SweepParameter::f_max:
            return lcplan::parse_frequency;
        case lcplan::SweepParameter::loss_margin:
            return lcplan::parse_resistance;
        }
        return lcplan::parse_number;
    }();

    const std::vector<double> values =
        parse_flag([&] { return lcplan::parse_list(values_text, value_parser); });
    if (values.empty())
    {
        throw usage_error("--values must contain at least one value");
    }

    const std::vector<lcplan::SweepRow> rows = lcplan::sweep(base, parameter, values);
    const auto succeeded = std::count_if(rows.begin(), rows.end(),
                                         [](const lcplan::SweepRow& r) { return r.count.has_value(); });
    if (succeeded == 0)
    {
        throw std::runtime_error("every sweep row failed: " + rows.front().error);
    }

    if (!out_path.empty())
    {
        auto out = open_output(out_path);
        lcplan::write_sweep_csv(rows, out);
        std::cout << "sweep " << param_name << ": " << rows.size() << " rows, "
                  << (rows.size() - static_cast<std::size_t>(succeeded)) << " failed\n";
    }
    else
    {
        lcplan::write_sweep_csv(rows, std::cout);
    }
    return 0;
}

struct ResonatorPoint
{
    double f0_hz = 0.0;
    double q = 0.0;
};

int run_response(const std::string& plan_path, const std::vector<std::string>& resonator_flags,
                 const std::string& grid_text, const std::string& out_path)
{
    if (plan_path.empty() == resonator_flags.empty())
    {
        throw usage_error("give exactly one of --plan or --resonator");
    }

    std::vector<ResonatorPoint> resonators;
    if (!plan_path.empty())
    {
        const lcplan::AllocationPlan plan = lcplan::read_plan_json_file(plan_path);
        for (const auto& entry : plan.entries)
        {
            resonators.push_back({entry.f0_hz, entry.f0_hz / entry.bw_hz});
        }
    }
    else
    {
        for (const std::string& flag : resonator_flags)
        {
            const auto colon = flag.find(':');
            if (colon == std::string::npos)
            {
                throw usage_error("--resonator expects f0:Q, got '" + flag + "'");
            }
            ResonatorPoint point;
            point.f0_hz = parse_flag([&] { return lcplan::parse_frequency(flag.substr(0, colon)); });
            point.q = parse_flag([&] { return lcplan::parse_number(flag.substr(colon + 1)); });
            resonators.push_back(point);
        }
    }
    if (resonators.empty())
    {
        throw std::runtime_error("no resonators to sample");
    }

    lcplan::GridSpec grid_spec;
    if (!grid_text.empty())
    {
        grid_spec = parse_flag([&] { return lcplan::parse_grid_spec(grid_text); });
    }
    else
    {
        const auto [min_it, max_it] =
            std::minmax_element(resonators.begin(), resonators.end(),
                                [](const ResonatorPoint& a, const ResonatorPoint& b)
                                { return a.f0_hz < b.f0_hz; });
        grid_spec = {0.8 * min_it->f0_hz, 1.2 * max_it->f0_hz, 1e3};
    }
    const std::vector<double> grid =
        lcplan::uniform_grid(grid_spec.lo_hz, grid_spec.hi_hz, grid_spec.step_hz);

    const bool covered = std::any_of(resonators.begin(), resonators.end(),
                                     [&](const ResonatorPoint& r)
                                     { return r.f0_hz >= grid.front() && r.f0_hz <= grid.back(); });

    std::ostringstream body;
    body << "resonator_index,frequency_hz,magnitude\n";
    if (covered)
    {
        int index = 1;
        for (const ResonatorPoint& r : resonators)
        {
            const lcplan::ResponseCurve curve = lcplan::sample_response(r.f0_hz, r.q, grid);
            for (const auto& sample : curve.samples)
            {
                body << index << ',' << sample.frequency_hz << ',' << sample.magnitude << '\n';
            }
            ++index;
        }
    }
    else
    {
        std::cerr << "warning: grid covers no resonance; writing empty output\n";
    }

    if (!out_path.empty())
    {
        auto out = open_output(out_path);
        out << body.str();
        std::cout << resonators.size() << " curves, " << grid.size() << " grid points\n";
    }
    else
    {
        std::cout << body.str();
    }
    return 0;
}

int run_triggers(const std::string& devices_path, const std::string& grid_text,
                 const std::string& threshold_text, const std::string& bands_path,
                 const std::string& overlaps_path)
{
    std::vector<lcplan::Device> devices = lcplan::load_devices_file(devices_path);
    if (!threshold_text.empty())
    {
        const double threshold = parse_flag([&] { return lcplan::parse_number(threshold_text); });
        if (!(threshold > 0.0) || !(threshold < 1.0))
        {
            throw usage_error("--threshold must lie in (0, 1)");
        }
        for (auto& device : devices)
        {
            device.trigger_threshold = threshold;
        }
    }

    lcplan::GridSpec grid_spec;
    if (!grid_text.empty())
    {
        grid_spec = parse_flag([&] { return lcplan::parse_grid_spec(grid_text); });
    }
    else
    {
        double lo = 0.0;
        double hi = 0.0;
        for (const auto& device : devices)
        {
            const double f0 = lcplan::resonant_frequency(device.trigger);
            lo = lo == 0.0 ? f0 : std::min(lo, f0);
            hi = std::max(hi, f0);
        }
        grid_spec = {0.8 * lo, 1.2 * hi, 1e3};
    }
    const std::vector<double> grid =
        lcplan::uniform_grid(grid_spec.lo_hz, grid_spec.hi_hz, grid_spec.step_hz);

    std::vector<lcplan::TriggerBand> bands;
    bands.reserve(devices.size());
    for (const auto& device : devices)
    {
        bands.push_back(lcplan::trigger_band(device, grid));
    }
    const std::vector<lcplan::BandOverlap> overlap_list = lcplan::overlaps(bands);

    std::size_t max_simultaneous = 0;
    for (double f : grid)
    {
        max_simultaneous = std::max(max_simultaneous, lcplan::triggered_set(devices, f).size());
    }

    for (const auto& band : bands)
    {
        std::cout << band.device_label << ": " << lcplan::format_si(band.lo_hz, "Hz") << " .. "
                  << lcplan::format_si(band.hi_hz, "Hz") << " (width "
                  << lcplan::format_si(band.hi_hz - band.lo_hz, "Hz") << ")\n";
    }
    for (const auto& overlap : overlap_list)
    {
        std::cout << "overlap " << overlap.first_label << '/' << overlap.second_label << ": "
                  << lcplan::format_si(overlap.lo_hz, "Hz") << " .. "
                  << lcplan::format_si(overlap.hi_hz, "Hz") << " (width "
                  << lcplan::format_si(overlap.width_hz, "Hz") << ")\n";
    }
    std::cout << "max simultaneous triggered = " << max_simultaneous << '\n';

    if (!bands_path.empty())
    {
        auto out = open_output(bands_path);
        lcplan::write_bands_csv(bands, out);
    }
    if (!overlaps_path.empty())
    {
        auto out = open_output(overlaps_path);
        lcplan::write_overlaps_csv(overlap_list, out);
    }
    return 0;
}

std::vector<lcplan::ScheduleSegment> parse_schedule(const std::string& text)
{
    std::vector<lcplan::ScheduleSegment> segments;
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto comma = text.find(',', start);
        const std::string item =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        if (!item.empty())
        {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
            {
                throw usage_error("--schedule expects duration:frequency pairs, got '" + item + "'");
            }
            lcplan::ScheduleSegment segment;
            segment.duration_s = parse_flag([&] { return lcplan::parse_duration(item.substr(0, colon)); });
            segment.excitation_hz =
                parse_flag([&] { return lcplan::parse_frequency(item.substr(colon + 1)); });
            segments.push_back(segment);
        }
        if (comma == std::string::npos)
        {
            break;
        }
        start = comma + 1;
    }
    if (segments.empty())
    {
        throw usage_error("--schedule must contain at least one duration:frequency pair");
    }
    return segments;
}

int run_cycle_cmd(const std::string& devices_path, const std::string& device_label,
                  const std::string& schedule_text, const std::string& power_text,
                  const std::string& step_text, const std::string& out_path)
{
    const std::vector<lcplan::Device> devices = lcplan::load_devices_file(devices_path);
    const lcplan::Device* device = nullptr;
    if (device_label.empty())
    {
        if (devices.size() != 1)
        {
            throw usage_error("--device LABEL is required when the file has several devices");
        }
        device = &devices.front();
    }
    else
    {
        for (const auto& d : devices)
        {
            if (d.label == device_label)
            {
                device = &d;
                break;
            }
        }
        if (device == nullptr)
        {
            throw std::runtime_error("no device labeled '" + device_label + "' in " + devices_path);
        }
    }

    const auto schedule = parse_schedule(schedule_text);
    const double power = parse_flag([&] { return lcplan::parse_power(power_text); });
    const double step = parse_flag([&] { return lcplan::parse_duration(step_text); });

    const lcplan::CycleTrace trace = lcplan::run_cycle(*device, schedule, power, step);

    if (!out_path.empty())
    {
        auto out = open_output(out_path);
        lcplan::write_trace_csv(trace, out);
    }
    else
    {
        lcplan::write_trace_csv(trace, std::cout);
    }

    const auto& last = trace.events.back();
    double peak_voltage = 0.0;
    for (const auto& event : trace.events)
    {
        peak_voltage = std::max(peak_voltage, event.bank_voltage_v);
    }
    std::cerr << "final state " << lcplan::to_string(last.state) << ", peak bank voltage "
              << lcplan::format_si(peak_voltage, "V") << ", final energy "
              << lcplan::format_si(last.bank_energy_j, "J") << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Frequency-selective LC resonator band planning toolkit"};
    app.require_subcommand(1);

    PlanOptions plan_opt;
    std::string out_path;

    auto add_plan_flags = [&](CLI::App* cmd, bool band_required)
    {
        auto* band = cmd->add_option("--band", plan_opt.band, "Frequency band lo:hi, e.g. 100kHz:1MHz");
        if (band_required)
        {
            band->required();
        }
        cmd->add_option("--inductance", plan_opt.inductance, "Shared inductor value (default 10uH)");
        cmd->add_option("--loss-table", plan_opt.loss_table, "Loss table file (frequency_hz,q|rs_ohm)");
        cmd->add_option("--table-inductance", plan_opt.table_inductance,
                        "Reference inductance of a Q-kind table (default: --inductance)");
        cmd->add_option("--const-q", plan_opt.const_q, "Constant Q instead of a loss table");
        cmd->add_option("--guard", plan_opt.guard, "Guard band between adjacent channels (default 0)");
        cmd->add_option("--margin", plan_opt.margin, "Worst-case series resistance margin (default 0)");
    };

    auto* cmd_allocate = app.add_subcommand("allocate", "Pack addressable resonators into a band");
    add_plan_flags(cmd_allocate, true);
    cmd_allocate->add_option("--out", out_path, "Write the plan document (JSON) here");

    auto* cmd_sweep = app.add_subcommand("sweep", "Re-run allocation over a parameter list");
    std::string sweep_param;
    std::string sweep_values;
    add_plan_flags(cmd_sweep, true);
    cmd_sweep->add_option("--param", sweep_param, "inductance | guard | margin | fmax")->required();
    cmd_sweep->add_option("--values", sweep_values, "Comma-separated parameter values")->required();
    cmd_sweep->add_option("--out", out_path, "Write the sweep CSV here (default stdout)");

    auto* cmd_response = app.add_subcommand("response", "Emit sampled normalized response curves");
    std::string plan_path;
    std::vector<std::string> resonator_flags;
    std::string grid_text;
    cmd_response->add_option("--plan", plan_path, "Plan document from 'allocate'");
    cmd_response->add_option("--resonator", resonator_flags, "Explicit resonator f0:Q (repeatable)");
    cmd_response->add_option("--grid", grid_text, "Sampling grid lo:hi:step (default auto, 1 kHz step)");
    cmd_response->add_option("--out", out_path, "Write the curves CSV here (default stdout)");

    auto* cmd_triggers = app.add_subcommand("triggers", "Trigger bands, overlaps, selectivity verdict");
    std::string devices_path;
    std::string threshold_text;
    std::string bands_path;
    std::string overlaps_path;
    cmd_triggers->add_option("--devices", devices_path, "Device set file (JSON)")->required();
    cmd_triggers->add_option("--grid", grid_text, "Sweep grid lo:hi:step (default auto, 1 kHz step)");
    cmd_triggers->add_option("--threshold", threshold_text, "Override every device's trigger threshold");
    cmd_triggers->add_option("--out-bands", bands_path, "Write per-device bands CSV here");
    cmd_triggers->add_option("--out-overlaps", overlaps_path, "Write pairwise overlaps CSV here");

    auto* cmd_cycle = app.add_subcommand("cycle", "Simulate a charge/trigger schedule");
    std::string device_label;
    std::string schedule_text;
    std::string power_text;
    std::string step_text = "10ms";
    cmd_cycle->add_option("--devices", devices_path, "Device set file (JSON)")->required();
    cmd_cycle->add_option("--device", device_label, "Device label (required for multi-device files)");
    cmd_cycle->add_option("--schedule", schedule_text, "duration:frequency pairs, e.g. 1s:1.14MHz,1s:734kHz")
        ->required();
    cmd_cycle->add_option("--charge-power", power_text, "Charging power while in the charger band")
        ->required();
    cmd_cycle->add_option("--step", step_text, "Trace sample step (default 10ms)");
    cmd_cycle->add_option("--out", out_path, "Write the trace CSV here (default stdout)");

    cmd_allocate->callback([&] { run_allocate(plan_opt, out_path); });
    cmd_sweep->callback([&] { run_sweep(plan_opt, sweep_param, sweep_values, out_path); });
    cmd_response->callback([&] { run_response(plan_path, resonator_flags, grid_text, out_path); });
    cmd_triggers->callback(
        [&] { run_triggers(devices_path, grid_text, threshold_text, bands_path, overlaps_path); });
    cmd_cycle->callback(
        [&]
        { run_cycle_cmd(devices_path, device_label, schedule_text, power_text, step_text, out_path); });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    catch (const usage_error& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
