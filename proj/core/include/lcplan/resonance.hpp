#ifndef LCPLAN_RESONANCE_HPP
#define LCPLAN_RESONANCE_HPP

#include <string>
#include <utility>
#include <vector>

namespace lcplan
{

// Magnitude level that defines the half-power (-3 dB) band, 1/sqrt(2).
inline constexpr double kHalfPower = 0.70710678118654752;

// An L-C pair; the unit of allocation and simulation. All values base SI.
struct ResonatorSpec
{
    double inductance_h = 0.0;
    double capacitance_f = 0.0;
    std::string label{};
};

// Dimensionless Q together with the frequency it was evaluated at.
// The half-power band of the canonical response is only defined for
// value > 0.5; operations that need the band enforce that floor.
struct QualityFactor
{
    double value = 0.0;
    double at_frequency_hz = 0.0;
};

// Transmitter/receiver coil pair with coupling coefficient k in [0, 1].
struct CouplingLink
{
    double coupling_coefficient = 0.0;
    double transmitter_inductance_h = 0.0;
    double receiver_inductance_h = 0.0;
};

// Capacitor charge state; energy is C*V^2/2.
struct EnergyState
{
    double capacitance_f = 0.0;
    double voltage_v = 0.0;
    double energy_j = 0.0;
};

struct ResponseSample
{
    double frequency_hz = 0.0;
    double magnitude = 0.0;
};

// Normalized magnitude response of one resonator sampled over a frequency
// grid. The underlying curve peaks at exactly 1 at the center frequency and
// is strictly monotone on either side of it.
struct ResponseCurve
{
    double center_frequency_hz = 0.0;
    double q = 0.0;
    std::vector<ResponseSample> samples{};
};

// Resonant frequency 1/(2*pi*sqrt(L*C)) of an L-C pair.
double resonant_frequency(const ResonatorSpec& spec);
double resonant_frequency(double inductance_h, double capacitance_f);

// Capacitance that resonates a given inductance at the target frequency.
// Round-trips through resonant_frequency to machine precision.
double capacitance_for(double target_f0_hz, double inductance_h);

// Half-power bandwidth f0/Q. Requires q > 0.5.
double half_power_bandwidth(double f0_hz, double q);

// Series-loss Q: 2*pi*f0*L / Rs.
QualityFactor series_q(double f0_hz, double inductance_h, double rs_ohm);

// Q de-rated by a worst-case additive series resistance:
// 2*pi*f*L / (Rs(f) + margin). Equals series_q when the margin is zero and
// is strictly decreasing in the margin.
QualityFactor effective_q(double f_hz, double inductance_h, double rs_at_f_ohm,
                          double margin_ohm);

// Canonical second-order bandpass magnitude,
//   |H(f)| = 1 / sqrt(1 + Q^2 * (f/f0 - f0/f)^2),
// normalized to 1 at f0. Its exact -3 dB width is f0/Q.
double normalized_response(double f_hz, double f0_hz, double q);

// Energy C*V^2/2 stored in a capacitor at a given voltage.
double stored_energy(double capacitance_f, double voltage_v);

// EnergyState assembled from capacitance and voltage.
EnergyState energy_state(double capacitance_f, double voltage_v);

// Mutual inductance k*sqrt(Lt*Lr); never exceeds sqrt(Lt*Lr).
double mutual_inductance(const CouplingLink& link);

// Exact half-power edges {lo, hi} of the canonical response:
//   f0 * (sqrt(1 + 1/(4Q^2)) -+ 1/(2Q)).
// hi - lo equals f0/Q. Requires q > 0.5 (below that the lower edge would
// not be positive).
std::pair<double, double> half_power_edges(double f0_hz, double q);

// Sample the canonical response over a strictly increasing positive grid.
ResponseCurve sample_response(double f0_hz, double q, const std::vector<double>& grid_hz);

// Width of the band where the sampled magnitude is >= threshold, each edge
// located by linear interpolation between the adjacent samples that bracket
// the threshold. Throws no_band_error when the peak sample is below the
// threshold and band_exceeds_grid_error when a crossing lies outside the
// grid.
double measured_bandwidth(const ResponseCurve& curve, double threshold);

} // namespace lcplan

#endif // LCPLAN_RESONANCE_HPP
