#include "lcplan/selectivity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "lcplan/errors.hpp"
#include "text_util.hpp"

namespace lcplan
{

const char* to_string(CycleState state)
{
    switch (state)
    {
    case CycleState::Idle:
        return "Idle";
    case CycleState::Charging:
        return "Charging";
    case CycleState::Triggered:
        return "Triggered";
    }
    return "Idle";
}

void validate_device(const Device& device)
{
    const double charger_f0 = resonant_frequency(device.charger);
    const double trigger_f0 = resonant_frequency(device.trigger);
    if (charger_f0 == trigger_f0)
    {
        throw domain_error("charger and trigger resonant frequencies must differ");
    }
    if (!(device.charger_q.value > 0.0) || !(device.trigger_q.value > 0.0))
    {
        throw domain_error("device Q values must be positive");
    }
    if (!(device.trigger_threshold > 0.0) || !(device.trigger_threshold < 1.0))
    {
        throw domain_error("trigger threshold must lie in (0, 1)");
    }
    if (!(device.bank_capacitance_f > 0.0) || !(device.clamp_voltage_v > 0.0))
    {
        throw domain_error("bank capacitance and clamp voltage must be positive");
    }
}

std::vector<double> uniform_grid(double lo_hz, double hi_hz, double step_hz)
{
    if (!(lo_hz > 0.0) || !(hi_hz > lo_hz) || !(step_hz > 0.0))
    {
        throw domain_error("grid requires 0 < lo < hi and a positive step");
    }
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((hi_hz - lo_hz) / step_hz));
    grid.reserve(count + 2);
    for (std::size_t i = 0; i <= count; ++i)
    {
        grid.push_back(lo_hz + static_cast<double>(i) * step_hz);
    }
    if (grid.back() < hi_hz)
    {
        grid.push_back(hi_hz);
    }
    return grid;
}

namespace
{

double interpolate_threshold_crossing(double f_below, double m_below, double f_above,
                                      double m_above, double threshold)
{
    const double t = (threshold - m_below) / (m_above - m_below);
    return f_below + t * (f_above - f_below);
}

} // namespace

TriggerBand trigger_band(const Device& device, const std::vector<double>& grid_hz)
{
    validate_device(device);
    if (grid_hz.size() < 3)
    {
        throw domain_error("trigger band extraction needs at least 3 grid points");
    }

    const double f0 = resonant_frequency(device.trigger);
    const double q = device.trigger_q.value;
    const double threshold = device.trigger_threshold;

    std::vector<double> magnitude;
    magnitude.reserve(grid_hz.size());
    double previous = 0.0;
    for (double f : grid_hz)
    {
        if (!(f > previous))
        {
            throw domain_error("grid frequencies must be strictly increasing and positive");
        }
        magnitude.push_back(normalized_response(f, f0, q));
        previous = f;
    }

    // Triggering points form runs; the band is the run around the response
    // peak. More than one run means the grid caught a non-contiguous set.
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < grid_hz.size(); ++i)
    {
        if (magnitude[i] >= threshold)
        {
            if (runs.empty() || runs.back().second + 1 != i)
            {
                runs.push_back({i, i});
            }
            else
            {
                runs.back().second = i;
            }
        }
    }
    if (runs.empty())
    {
        throw no_band_error("no grid frequency triggers device " + device.label);
    }
    if (runs.size() > 1)
    {
        throw multi_band_error("triggering frequencies are not contiguous for device " +
                               device.label);
    }

    const auto [first, last] = runs.front();
    if (first == 0)
    {
        throw band_exceeds_grid_error("lower trigger band edge lies outside the grid");
    }
    if (last + 1 == grid_hz.size())
    {
        throw band_exceeds_grid_error("upper trigger band edge lies outside the grid");
    }

    TriggerBand band;
    band.device_label = device.label;
    band.lo_hz = interpolate_threshold_crossing(grid_hz[first - 1], magnitude[first - 1],
                                                grid_hz[first], magnitude[first], threshold);
    band.hi_hz = interpolate_threshold_crossing(grid_hz[last + 1], magnitude[last + 1],
                                                grid_hz[last], magnitude[last], threshold);
    band.tested_grid_hz = grid_hz;
    return band;
}

std::vector<BandOverlap> overlaps(const std::vector<TriggerBand>& bands)
{
    std::vector<BandOverlap> result;
    for (std::size_t i = 0; i + 1 < bands.size(); ++i)
    {
        for (std::size_t j = i + 1; j < bands.size(); ++j)
        {
            const double lo = std::max(bands[i].lo_hz, bands[j].lo_hz);
            const double hi = std::min(bands[i].hi_hz, bands[j].hi_hz);
            if (hi > lo)
            {
                result.push_back({bands[i].device_label, bands[j].device_label, lo, hi, hi - lo});
            }
        }
    }
    return result;
}

std::vector<std::string> triggered_set(const std::vector<Device>& devices,
                                       double excitation_hz)
{
    if (devices.empty())
    {
        throw domain_error("triggered_set requires at least one device");
    }
    std::vector<std::string> labels;
    for (const Device& device : devices)
    {
        validate_device(device);
        const double f0 = resonant_frequency(device.trigger);
        if (normalized_response(excitation_hz, f0, device.trigger_q.value) >=
            device.trigger_threshold)
        {
            labels.push_back(device.label);
        }
    }
    return labels;
}

CycleTrace run_cycle(const Device& device, const std::vector<ScheduleSegment>& schedule,
                     double charge_power_w, double sample_step_s)
{
    validate_device(device);
    if (schedule.empty())
    {
        throw domain_error("schedule must contain at least one segment");
    }
    if (!(charge_power_w > 0.0) || !(sample_step_s > 0.0))
    {
        throw domain_error("charge power and sample step must be positive");
    }
    for (const ScheduleSegment& segment : schedule)
    {
        if (!(segment.duration_s > 0.0) || !(segment.excitation_hz > 0.0))
        {
            throw domain_error("schedule segments need positive duration and excitation");
        }
    }

    const double charger_f0 = resonant_frequency(device.charger);
    const double trigger_f0 = resonant_frequency(device.trigger);
    const double bank_c = device.bank_capacitance_f;
    const double clamp_energy = stored_energy(bank_c, device.clamp_voltage_v);

    const auto in_trigger_band = [&](double f)
    { return normalized_response(f, trigger_f0, device.trigger_q.value) >= device.trigger_threshold; };
    const auto in_charger_band = [&](double f)
    { return normalized_response(f, charger_f0, device.charger_q.value) >= kHalfPower; };

    CycleTrace trace;
    double t = 0.0;
    double energy = 0.0;

    const auto emit = [&](double time, CycleState state, double e)
    {
        const double v = std::sqrt(2.0 * e / bank_c);
        trace.events.push_back({time, state, v, e});
    };

    for (const ScheduleSegment& segment : schedule)
    {
        CycleState state = CycleState::Idle;
        if (in_trigger_band(segment.excitation_hz))
        {
            state = CycleState::Triggered;
            energy = 0.0; // single clean dump at band entry
        }
        else if (in_charger_band(segment.excitation_hz))
        {
            state = CycleState::Charging;
        }

        emit(t, state, energy);

        const double t_end = t + segment.duration_s;
        const double segment_energy0 = energy;
        for (std::size_t k = 1;; ++k)
        {
            const double tk = t + static_cast<double>(k) * sample_step_s;
            if (tk >= t_end)
            {
                break;
            }
            if (state == CycleState::Charging)
            {
                energy = std::min(segment_energy0 + charge_power_w * (tk - t), clamp_energy);
            }
            emit(tk, state, energy);
        }
        if (state == CycleState::Charging)
        {
            energy = std::min(segment_energy0 + charge_power_w * segment.duration_s, clamp_energy);
        }
        emit(t_end, state, energy);
        t = t_end;
    }
    return trace;
}

std::vector<Device> load_devices(std::istream& in)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::exception& e)
    {
        throw parse_error(std::string("invalid device document: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
    {
        throw parse_error("device document must be a non-empty JSON array");
    }

    std::vector<Device> devices;
    try
    {
        for (const auto& item : doc)
        {
            Device device;
            device.label = item.at("label").get<std::string>();
            const auto& charger = item.at("charger");
            device.charger = {charger.at("l_h").get<double>(), charger.at("c_farad").get<double>(),
                              device.label + "/charger"};
            device.charger_q = {charger.at("q").get<double>(), resonant_frequency(device.charger)};
            const auto& trigger = item.at("trigger");
            device.trigger = {trigger.at("l_h").get<double>(), trigger.at("c_farad").get<double>(),
                              device.label + "/trigger"};
            device.trigger_q = {trigger.at("q").get<double>(), resonant_frequency(device.trigger)};
            device.bank_capacitance_f = item.at("bank_c_farad").get<double>();
            device.clamp_voltage_v = item.at("clamp_v").get<double>();
            device.trigger_threshold = item.at("threshold").get<double>();
            validate_device(device);
            devices.push_back(std::move(device));
        }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw parse_error(std::string("invalid device document: ") + e.what());
    }
    return devices;
}

std::vector<Device> load_devices_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw parse_error("cannot open device file: " + path);
    }
    return load_devices(in);
}

void write_bands_csv(const std::vector<TriggerBand>& bands, std::ostream& out)
{
    out << "label,lo_hz,hi_hz\n";
    for (const TriggerBand& band : bands)
    {
        out << band.device_label << ',' << detail::num_to_string(band.lo_hz) << ','
            << detail::num_to_string(band.hi_hz) << '\n';
    }
}

void write_overlaps_csv(const std::vector<BandOverlap>& list, std::ostream& out)
{
    out << "pair,lo_hz,hi_hz,width_hz\n";
    for (const BandOverlap& overlap : list)
    {
        out << overlap.first_label << '-' << overlap.second_label << ','
            << detail::num_to_string(overlap.lo_hz) << ',' << detail::num_to_string(overlap.hi_hz)
            << ',' << detail::num_to_string(overlap.width_hz) << '\n';
    }
}

void write_trace_csv(const CycleTrace& trace, std::ostream& out)
{
    out << "t_s,state,v_volt,e_joule\n";
    for (const CycleEvent& event : trace.events)
    {
        out << detail::num_to_string(event.time_s) << ',' << to_string(event.state) << ','
            << detail::num_to_string(event.bank_voltage_v) << ','
            << detail::num_to_string(event.bank_energy_j) << '\n';
    }
}

} // namespace lcplan
