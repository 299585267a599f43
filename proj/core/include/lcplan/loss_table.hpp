#ifndef LCPLAN_LOSS_TABLE_HPP
#define LCPLAN_LOSS_TABLE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "lcplan/resonance.hpp"

namespace lcplan
{

enum class LossKind
{
    Q,
    SeriesResistance,
};

struct LossPoint
{
    double frequency_hz = 0.0;
    double value = 0.0; // dimensionless Q or ohms, depending on the table kind
};

// Sampled frequency-dependent loss, either as Q(f) or as Rs(f), with
// piecewise-linear interpolation in (log f, value). Queries outside the
// sampled span clamp to the nearest endpoint; callers can detect that with
// covers(). A Q-kind table is interpreted as measured at its reference
// inductance: conversion to series resistance always happens at the
// reference, so querying Q at a different inductance scales it by L/Lref.
class LossTable
{
public:
    LossTable(std::vector<LossPoint> entries, LossKind kind,
              double reference_inductance_h = 0.0);

    LossKind kind() const noexcept { return kind_; }
    double reference_inductance_h() const noexcept { return reference_inductance_h_; }
    const std::vector<LossPoint>& entries() const noexcept { return entries_; }

    double span_lo_hz() const noexcept { return entries_.front().frequency_hz; }
    double span_hi_hz() const noexcept { return entries_.back().frequency_hz; }
    bool covers(double lo_hz, double hi_hz) const noexcept;

    // Series resistance at f. Q-kind tables convert via 2*pi*f*Lref/Q(f).
    double rs_at(double f_hz) const;

    // Effective Q value 2*pi*f*L / (rs_at(f) + margin), as a raw double.
    double q_value_at(double f_hz, double inductance_h, double margin_ohm = 0.0) const;

    // Same as q_value_at, wrapped with the query frequency.
    QualityFactor q_at(double f_hz, double inductance_h, double margin_ohm = 0.0) const;

private:
    double interpolate(double f_hz) const;

    std::vector<LossPoint> entries_;
    LossKind kind_ = LossKind::Q;
    double reference_inductance_h_ = 0.0;
};

// Flat table usable at any frequency; yields the given Q when queried at the
// reference inductance with zero margin.
LossTable constant_q_table(double q, double reference_inductance_h);

// Dominant series contributions of a practical LC tank.
struct LossComponents
{
    double inductor_loss_ohm = 0.0;
    double capacitor_esr_ohm = 0.0;
    double interconnect_ohm = 0.0;
};

// Sum of the series contributions. All parts must be non-negative and at
// least one positive.
double composite_rs(const LossComponents& parts);

// Loss-table text format: UTF-8, `#` starts a comment line, first
// non-comment line is the header `frequency_hz,<q|rs_ohm>`, then
// `float,float` rows with strictly increasing frequencies. Comma or
// whitespace delimited; LF or CRLF.
LossTable load_loss_table(std::istream& in, double reference_inductance_h = 0.0);
LossTable load_loss_table(std::istream& in, LossKind expected_kind,
                          double reference_inductance_h);
LossTable load_loss_table_file(const std::string& path, double reference_inductance_h = 0.0);

} // namespace lcplan

#endif // LCPLAN_LOSS_TABLE_HPP
