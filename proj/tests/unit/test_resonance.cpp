#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lcplan/errors.hpp"
#include "lcplan/resonance.hpp"

using namespace lcplan;

namespace
{

std::vector<double> linear_grid(double lo, double hi, std::size_t points)
{
    std::vector<double> grid;
    grid.reserve(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
    {
        grid.push_back(lo + static_cast<double>(i) * step);
    }
    return grid;
}

} // namespace

TEST_CASE("resonant_frequency matches the bench-measured L-C pairs")
{
    // 1/(2*pi*sqrt(LC)), cross-checked against an independent high-precision
    // evaluation.
    CHECK(resonant_frequency(1e-5, 2e-9) == doctest::Approx(1125395.3951963826).epsilon(1e-12));
    CHECK(resonant_frequency(1e-5, 4.7e-9) == doctest::Approx(734127.0095716733).epsilon(1e-12));
    CHECK(resonant_frequency(1e-5, 3.9e-9) == doctest::Approx(805912.3816756153).epsilon(1e-12));
    CHECK(resonant_frequency(1e-5, 3.3e-9) == doctest::Approx(876119.1269246237).epsilon(1e-12));

    // Nominal design targets hold to better than 0.5%.
    CHECK(resonant_frequency(1e-5, 2e-9) == doctest::Approx(1.125e6).epsilon(5e-3));
    CHECK(resonant_frequency(1e-5, 4.7e-9) == doctest::Approx(734e3).epsilon(5e-3));

    // f0 depends on L and C only through their product.
    const double base = resonant_frequency(1e-5, 2e-9);
    CHECK(resonant_frequency(1e-5 / 4.0, 4.0 * 2e-9) == doctest::Approx(base).epsilon(1e-14));

    const ResonatorSpec spec{1e-5, 2e-9, "charging"};
    CHECK(resonant_frequency(spec) == base);

    CHECK_THROWS_AS(resonant_frequency(0.0, 2e-9), domain_error);
    CHECK_THROWS_AS(resonant_frequency(1e-5, -1e-9), domain_error);
}

TEST_CASE("capacitance_for inverts the resonance relation")
{
    CHECK(capacitance_for(1.125e6, 1e-5) == doctest::Approx(2.0014060966387708e-9).epsilon(1e-12));
    CHECK(capacitance_for(876e3, 1e-5) == doctest::Approx(3.3008975926513786e-9).epsilon(1e-12));

    CHECK_THROWS_AS(capacitance_for(0.0, 1e-5), domain_error);
    CHECK_THROWS_AS(capacitance_for(1e6, 0.0), domain_error);
}

TEST_CASE("capacitance_for round-trips through resonant_frequency")
{
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> log_f(std::log(1e3), std::log(1e8));
    std::uniform_real_distribution<double> log_l(std::log(1e-9), std::log(1e-3));
    for (int i = 0; i < 500; ++i)
    {
        const double f = std::exp(log_f(rng));
        const double inductance = std::exp(log_l(rng));
        const double c = capacitance_for(f, inductance);
        CHECK(resonant_frequency(inductance, c) == doctest::Approx(f).epsilon(1e-12));
    }
}

TEST_CASE("half_power_bandwidth is f0 over Q")
{
    CHECK(half_power_bandwidth(1e6, 50.0) == 20e3);
    CHECK(half_power_bandwidth(1e7, 50.0) == 200e3);
    CHECK(half_power_bandwidth(1.140e6, 57.0) == doctest::Approx(20e3).epsilon(1e-12));

    CHECK_THROWS_AS(half_power_bandwidth(1e6, 0.5), domain_error);
    CHECK_THROWS_AS(half_power_bandwidth(1e6, -1.0), domain_error);
}

TEST_CASE("series_q follows the series-loss relation")
{
    // Rs values back-solved from the measured Q column, then verified forward.
    CHECK(series_q(734e3, 1e-5, 3.771).value == doctest::Approx(12.229801154786042).epsilon(1e-12));
    CHECK(series_q(1.140e6, 1e-5, 1.2567).value == doctest::Approx(56.997145302655595).epsilon(1e-12));
    CHECK(series_q(734e3, 1e-5, 3.771).at_frequency_hz == 734e3);

    // Rs equal to the reactance gives Q exactly 1.
    const double reactance = 2.0 * std::numbers::pi * 5e5 * 1e-5;
    CHECK(series_q(5e5, 1e-5, reactance).value == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(series_q(734e3, 1e-5, 0.0), domain_error);
}

TEST_CASE("effective_q de-rates by the loss margin")
{
    // Zero margin reduces to series_q.
    CHECK(effective_q(734e3, 1e-5, 3.771, 0.0).value ==
          doctest::Approx(series_q(734e3, 1e-5, 3.771).value).epsilon(1e-15));

    // Doubling the loss halves Q.
    CHECK(effective_q(734e3, 1e-5, 3.771, 3.771).value ==
          doctest::Approx(6.114900577393021).epsilon(1e-12));
    CHECK(effective_q(1e6, 1e-5, 1.2566, 1.2566).value ==
          doctest::Approx(25.000737335586449).epsilon(1e-12));

    // Strictly decreasing in the margin.
    double previous = effective_q(734e3, 1e-5, 3.771, 0.0).value;
    for (double margin : {0.5, 1.0, 2.0, 5.0})
    {
        const double q = effective_q(734e3, 1e-5, 3.771, margin).value;
        CHECK(q < previous);
        previous = q;
    }

    CHECK_THROWS_AS(effective_q(734e3, 1e-5, 3.771, -0.1), domain_error);
}

TEST_CASE("normalized_response peaks at 1 and is ratio-symmetric")
{
    CHECK(normalized_response(734e3, 734e3, 12.23) == 1.0);
    CHECK(normalized_response(764e3, 734e3, 12.23) ==
          doctest::Approx(0.71417736430766028).epsilon(1e-12));

    // Exact upper half-power edge evaluates to 1/sqrt(2).
    const double q = 12.23;
    const double f0 = 734e3;
    const double upper = f0 * (std::sqrt(1.0 + 1.0 / (4.0 * q * q)) + 1.0 / (2.0 * q));
    CHECK(normalized_response(upper, f0, q) == doctest::Approx(kHalfPower).epsilon(1e-12));

    // Same value at f and f0^2/f.
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> ratio(0.2, 0.99);
    for (int i = 0; i < 100; ++i)
    {
        const double f = f0 * ratio(rng);
        CHECK(normalized_response(f, f0, q) ==
              doctest::Approx(normalized_response(f0 * f0 / f, f0, q)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(normalized_response(0.0, 734e3, 12.23), domain_error);
}

TEST_CASE("normalized_response is below 1 away from f0 and strictly monotone per side")
{
    const double f0 = 8e5;
    const double q = 14.0;
    double previous = 0.0;
    for (double f = 4e5; f < f0; f += 5e3)
    {
        const double m = normalized_response(f, f0, q);
        CHECK(m < 1.0);
        CHECK(m > previous);
        previous = m;
    }
    previous = 1.0;
    for (double f = f0 + 5e3; f < 1.6e6; f += 5e3)
    {
        const double m = normalized_response(f, f0, q);
        CHECK(m < previous);
        previous = m;
    }
}

TEST_CASE("stored_energy follows C V^2 / 2")
{
    CHECK(stored_energy(330e-6, 24.0) == doctest::Approx(0.09504).epsilon(1e-15));
    // Peak voltage back-solved from the 14.89 nJ bench estimate.
    CHECK(stored_energy(2e-9, 3.859) == doctest::Approx(1.4891881e-8).epsilon(1e-12));
    CHECK(stored_energy(1e-6, 0.0) == 0.0);

    // Even in V, quadratic scaling.
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> volt(-50.0, 50.0);
    for (int i = 0; i < 100; ++i)
    {
        const double v = volt(rng);
        CHECK(stored_energy(2e-9, v) == stored_energy(2e-9, -v));
        CHECK(stored_energy(2e-9, 2.0 * v) == doctest::Approx(4.0 * stored_energy(2e-9, v)));
        CHECK(stored_energy(2e-9, v) >= 0.0);
    }

    const EnergyState state = energy_state(330e-6, 24.0);
    CHECK(state.energy_j == doctest::Approx(0.09504));
    CHECK_THROWS_AS(stored_energy(0.0, 1.0), domain_error);
}

TEST_CASE("mutual_inductance is k sqrt(Lt Lr)")
{
    CHECK(mutual_inductance({0.0, 1e-5, 1e-5}) == 0.0);
    CHECK(mutual_inductance({1.0, 1e-5, 1e-5}) == doctest::Approx(1e-5).epsilon(1e-15));
    // Transmitter coil measured at 10.5418 uH against a 10 uH receiver.
    CHECK(mutual_inductance({0.1, 10.5418e-6, 1e-5}) ==
          doctest::Approx(1.0267326818602786e-6).epsilon(1e-12));

    std::mt19937 rng(13u);
    std::uniform_real_distribution<double> coeff(0.0, 1.0);
    std::uniform_real_distribution<double> log_l(std::log(1e-8), std::log(1e-3));
    for (int i = 0; i < 200; ++i)
    {
        const CouplingLink link{coeff(rng), std::exp(log_l(rng)), std::exp(log_l(rng))};
        CHECK(mutual_inductance(link) <=
              std::sqrt(link.transmitter_inductance_h * link.receiver_inductance_h) *
                  (1.0 + 1e-15));
    }

    CHECK_THROWS_AS(mutual_inductance({1.1, 1e-5, 1e-5}), domain_error);
    CHECK_THROWS_AS(mutual_inductance({-0.1, 1e-5, 1e-5}), domain_error);
}

TEST_CASE("half_power_edges bracket f0 and span exactly f0/Q")
{
    std::mt19937 rng(17u);
    std::uniform_real_distribution<double> log_q(std::log(0.6), std::log(1e4));
    for (int i = 0; i < 200; ++i)
    {
        const double q = std::exp(log_q(rng));
        const auto [lo, hi] = half_power_edges(1e6, q);
        CHECK(lo > 0.0);
        CHECK(lo < 1e6);
        CHECK(hi > 1e6);
        CHECK(hi - lo == doctest::Approx(1e6 / q).epsilon(1e-12));
        CHECK(normalized_response(hi, 1e6, q) == doctest::Approx(kHalfPower).epsilon(1e-12));
        CHECK(normalized_response(lo, 1e6, q) == doctest::Approx(kHalfPower).epsilon(1e-11));
    }
    CHECK_THROWS_AS(half_power_edges(1e6, 0.5), domain_error);
}

TEST_CASE("measured_bandwidth interpolates the 15 kHz bench grid")
{
    // Device-2 style resonator on the coarse measurement grid.
    std::vector<double> grid;
    for (double f = 600e3; f <= 1.005e6; f += 15e3)
    {
        grid.push_back(f);
    }
    const ResponseCurve curve = sample_response(785e3, 14.27, grid);
    const double width = measured_bandwidth(curve, kHalfPower);
    CHECK(width == doctest::Approx(55e3).epsilon(2e3 / 55e3)); // +-2 kHz grid error
}

TEST_CASE("measured_bandwidth converges to f0/Q on a dense grid")
{
    const double f0 = 734e3;
    const double q = 12.23;
    const auto [lo, hi] = half_power_edges(f0, q);
    const double width = hi - lo;
    // 1 Hz grid across the band.
    std::vector<double> grid;
    for (double f = lo - 0.3 * width; f <= hi + 0.3 * width; f += 1.0)
    {
        grid.push_back(f);
    }
    const ResponseCurve curve = sample_response(f0, q, grid);
    CHECK(measured_bandwidth(curve, kHalfPower) == doctest::Approx(f0 / q).epsilon(1e-6));
}

TEST_CASE("measured_bandwidth error paths")
{
    // All samples below threshold: the curve tail far from resonance.
    const ResponseCurve faint = sample_response(1e5, 50.0, linear_grid(9e5, 1.1e6, 101));
    CHECK_THROWS_AS(measured_bandwidth(faint, kHalfPower), no_band_error);

    // Grid entirely inside the band: crossings lie outside the grid.
    const ResponseCurve inside = sample_response(1e6, 10.0, linear_grid(0.99e6, 1.01e6, 101));
    CHECK_THROWS_AS(measured_bandwidth(inside, kHalfPower), band_exceeds_grid_error);

    const ResponseCurve tiny = sample_response(1e6, 10.0, {9e5, 1e6});
    CHECK_THROWS_AS(measured_bandwidth(tiny, kHalfPower), domain_error);
    const ResponseCurve ok = sample_response(1e6, 10.0, linear_grid(5e5, 2e6, 301));
    CHECK_THROWS_AS(measured_bandwidth(ok, 0.0), domain_error);
    CHECK_THROWS_AS(measured_bandwidth(ok, 1.0), domain_error);
}

TEST_CASE("bench-table Q, f0 and bandwidth columns are mutually consistent")
{
    struct Row
    {
        double f0_hz;
        double bw_hz;
        double q;
    };
    const Row rows[] = {
        {1.140e6, 20e3, 57.00}, {1.104e6, 20e3, 55.20}, {1.120e6, 20e3, 56.00},
        {734e3, 60e3, 12.23},   {785e3, 55e3, 14.27},   {855e3, 60e3, 14.25},
    };
    for (const Row& row : rows)
    {
        CHECK(row.f0_hz / row.bw_hz == doctest::Approx(row.q).epsilon(5e-3));
    }
}
