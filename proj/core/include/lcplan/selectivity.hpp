#ifndef LCPLAN_SELECTIVITY_HPP
#define LCPLAN_SELECTIVITY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "lcplan/resonance.hpp"

namespace lcplan
{

// One wirelessly addressed actuator: a charging resonator feeding a clamped
// storage bank, and a trigger resonator that dumps the bank when driven at
// or above its threshold.
struct Device
{
    std::string label{};
    ResonatorSpec charger{};
    QualityFactor charger_q{};
    ResonatorSpec trigger{};
    QualityFactor trigger_q{};
    double bank_capacitance_f = 0.0;
    double clamp_voltage_v = 0.0;
    double trigger_threshold = kHalfPower;
};

// Contiguous excitation interval that triggers one device.
struct TriggerBand
{
    std::string device_label{};
    double lo_hz = 0.0;
    double hi_hz = 0.0;
    std::vector<double> tested_grid_hz{};
};

struct BandOverlap
{
    std::string first_label{};
    std::string second_label{};
    double lo_hz = 0.0;
    double hi_hz = 0.0;
    double width_hz = 0.0;
};

enum class CycleState
{
    Idle,
    Charging,
    Triggered,
};

const char* to_string(CycleState state);

struct CycleEvent
{
    double time_s = 0.0;
    CycleState state = CycleState::Idle;
    double bank_voltage_v = 0.0;
    double bank_energy_j = 0.0;
};

struct CycleTrace
{
    std::vector<CycleEvent> events{};
};

struct ScheduleSegment
{
    double duration_s = 0.0;
    double excitation_hz = 0.0;
};

void validate_device(const Device& device);

// Strictly increasing grid [lo, hi] in uniform steps; hi is always included.
std::vector<double> uniform_grid(double lo_hz, double hi_hz, double step_hz);

// Contiguous run of grid frequencies whose normalized trigger response meets
// the device threshold, edges refined by linear interpolation between grid
// points. Throws no_band_error when no grid point triggers and
// multi_band_error when the triggering set is not contiguous.
TriggerBand trigger_band(const Device& device, const std::vector<double>& grid_hz);

// Every pairwise intersection of positive width; empty intersections are
// omitted. Fewer than two bands yield an empty list.
std::vector<BandOverlap> overlaps(const std::vector<TriggerBand>& bands);

// Labels of all devices whose trigger response at the excitation frequency
// meets their threshold, in input order.
std::vector<std::string> triggered_set(const std::vector<Device>& devices,
                                       double excitation_hz);

// Charge/trigger protocol simulation. While the excitation sits inside the
// charger's half-power band the bank charges at constant power, clamped at
// the clamp voltage; when it enters the trigger band the bank dumps to zero
// in one step; otherwise the bank holds. The trace records an event at every
// segment boundary plus fixed-step samples inside each segment.
CycleTrace run_cycle(const Device& device, const std::vector<ScheduleSegment>& schedule,
                     double charge_power_w, double sample_step_s = 0.01);

// Device set document: JSON array of
//   {label, charger: {l_h, c_farad, q}, trigger: {l_h, c_farad, q},
//    bank_c_farad, clamp_v, threshold}
std::vector<Device> load_devices(std::istream& in);
std::vector<Device> load_devices_file(const std::string& path);

// Reports: `label,lo_hz,hi_hz` / `pair,lo_hz,hi_hz,width_hz` /
// `t_s,state,v_volt,e_joule`.
void write_bands_csv(const std::vector<TriggerBand>& bands, std::ostream& out);
void write_overlaps_csv(const std::vector<BandOverlap>& list, std::ostream& out);
void write_trace_csv(const CycleTrace& trace, std::ostream& out);

} // namespace lcplan

#endif // LCPLAN_SELECTIVITY_HPP
