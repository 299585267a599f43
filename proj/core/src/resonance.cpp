#include "lcplan/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lcplan/errors.hpp"

namespace lcplan
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value))
    {
        throw domain_error(std::string(name) + " must be positive and finite");
    }
}

void require_band_valid_q(double q)
{
    if (!(q > 0.5) || !std::isfinite(q))
    {
        throw domain_error("half-power band undefined for Q <= 0.5");
    }
}

} // namespace

double resonant_frequency(double inductance_h, double capacitance_f)
{
    require_positive(inductance_h, "inductance");
    require_positive(capacitance_f, "capacitance");
    const double f0 = 1.0 / (kTwoPi * std::sqrt(inductance_h * capacitance_f));
    if (!std::isfinite(f0) || f0 <= 0.0)
    {
        throw domain_error("resonant frequency not representable for given L and C");
    }
    return f0;
}

double resonant_frequency(const ResonatorSpec& spec)
{
    return resonant_frequency(spec.inductance_h, spec.capacitance_f);
}

double capacitance_for(double target_f0_hz, double inductance_h)
{
    require_positive(target_f0_hz, "target frequency");
    require_positive(inductance_h, "inductance");
    const double omega = kTwoPi * target_f0_hz;
    return 1.0 / (omega * omega * inductance_h);
}

double half_power_bandwidth(double f0_hz, double q)
{
    require_positive(f0_hz, "frequency");
    require_band_valid_q(q);
    return f0_hz / q;
}

QualityFactor series_q(double f0_hz, double inductance_h, double rs_ohm)
{
    require_positive(f0_hz, "frequency");
    require_positive(inductance_h, "inductance");
    require_positive(rs_ohm, "series resistance");
    return {kTwoPi * f0_hz * inductance_h / rs_ohm, f0_hz};
}

QualityFactor effective_q(double f_hz, double inductance_h, double rs_at_f_ohm,
                          double margin_ohm)
{
    require_positive(f_hz, "frequency");
    require_positive(inductance_h, "inductance");
    require_positive(rs_at_f_ohm, "series resistance");
    if (margin_ohm < 0.0 || !std::isfinite(margin_ohm))
    {
        throw domain_error("loss margin must be non-negative");
    }
    return {kTwoPi * f_hz * inductance_h / (rs_at_f_ohm + margin_ohm), f_hz};
}

double normalized_response(double f_hz, double f0_hz, double q)
{
    require_positive(f_hz, "frequency");
    require_positive(f0_hz, "center frequency");
    require_positive(q, "Q");
    const double detuning = f_hz / f0_hz - f0_hz / f_hz;
    const double u = q * detuning;
    return 1.0 / std::sqrt(1.0 + u * u);
}

double stored_energy(double capacitance_f, double voltage_v)
{
    require_positive(capacitance_f, "capacitance");
    return 0.5 * capacitance_f * voltage_v * voltage_v;
}

EnergyState energy_state(double capacitance_f, double voltage_v)
{
    return {capacitance_f, voltage_v, stored_energy(capacitance_f, voltage_v)};
}

double mutual_inductance(const CouplingLink& link)
{
    if (link.coupling_coefficient < 0.0 || link.coupling_coefficient > 1.0 ||
        !std::isfinite(link.coupling_coefficient))
    {
        throw domain_error("coupling coefficient must lie in [0, 1]");
    }
    require_positive(link.transmitter_inductance_h, "transmitter inductance");
    require_positive(link.receiver_inductance_h, "receiver inductance");
    return link.coupling_coefficient *
           std::sqrt(link.transmitter_inductance_h * link.receiver_inductance_h);
}

std::pair<double, double> half_power_edges(double f0_hz, double q)
{
    require_positive(f0_hz, "center frequency");
    require_band_valid_q(q);
    const double a = 1.0 / (2.0 * q);
    const double s = std::sqrt(1.0 + a * a);
    return {f0_hz * (s - a), f0_hz * (s + a)};
}

ResponseCurve sample_response(double f0_hz, double q, const std::vector<double>& grid_hz)
{
    require_positive(f0_hz, "center frequency");
    require_positive(q, "Q");
    ResponseCurve curve{f0_hz, q, {}};
    curve.samples.reserve(grid_hz.size());
    double previous = 0.0;
    for (double f : grid_hz)
    {
        require_positive(f, "grid frequency");
        if (!curve.samples.empty() && f <= previous)
        {
            throw domain_error("grid frequencies must be strictly increasing");
        }
        curve.samples.push_back({f, normalized_response(f, f0_hz, q)});
        previous = f;
    }
    return curve;
}

namespace
{

// Frequency where the threshold is crossed, linearly interpolated between
// two adjacent samples.
double interpolate_crossing(const ResponseSample& below, const ResponseSample& above,
                            double threshold)
{
    const double dm = above.magnitude - below.magnitude;
    const double t = (threshold - below.magnitude) / dm;
    return below.frequency_hz + t * (above.frequency_hz - below.frequency_hz);
}

} // namespace

double measured_bandwidth(const ResponseCurve& curve, double threshold)
{
    const auto& samples = curve.samples;
    if (samples.size() < 3)
    {
        throw domain_error("bandwidth extraction needs at least 3 samples");
    }
    if (!(threshold > 0.0) || !(threshold < 1.0))
    {
        throw domain_error("threshold must lie in (0, 1)");
    }

    const auto peak = std::max_element(samples.begin(), samples.end(),
                                       [](const ResponseSample& a, const ResponseSample& b)
                                       { return a.magnitude < b.magnitude; });
    if (peak->magnitude < threshold)
    {
        throw no_band_error("peak magnitude below threshold; no band");
    }

    const auto peak_index = static_cast<std::size_t>(peak - samples.begin());

    // Walk outward from the peak to the samples bracketing the threshold.
    std::size_t lo_index = peak_index;
    while (lo_index > 0 && samples[lo_index - 1].magnitude >= threshold)
    {
        --lo_index;
    }
    if (lo_index == 0)
    {
        throw band_exceeds_grid_error("lower threshold crossing lies outside the grid");
    }

    std::size_t hi_index = peak_index;
    while (hi_index + 1 < samples.size() && samples[hi_index + 1].magnitude >= threshold)
    {
        ++hi_index;
    }
    if (hi_index + 1 == samples.size())
    {
        throw band_exceeds_grid_error("upper threshold crossing lies outside the grid");
    }

    const double lower = interpolate_crossing(samples[lo_index - 1], samples[lo_index], threshold);
    const double upper = interpolate_crossing(samples[hi_index + 1], samples[hi_index], threshold);
    return upper - lower;
}

} // namespace lcplan
