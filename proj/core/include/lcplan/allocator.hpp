#ifndef LCPLAN_ALLOCATOR_HPP
#define LCPLAN_ALLOCATOR_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lcplan/loss_table.hpp"

namespace lcplan
{

// Spacing-rule solver tolerance (absolute, Hz). Surfaced in every
// AllocationPlan so downstream checks use a consistent epsilon.
inline constexpr double kSpacingToleranceHz = 1e-4;

// Band limits and robustness knobs shared by every resonator in a plan.
struct BandSettings
{
    double f_min_hz = 0.0;
    double f_max_hz = 0.0;
    double guard_hz = 0.0;     // extra spectral gap between adjacent bands
    double margin_ohm = 0.0;   // worst-case additive series resistance
    double inductance_h = 0.0; // shared inductor value
};

struct BandPlan
{
    BandSettings band{};
    LossTable loss;
};

struct AllocationEntry
{
    int index = 0; // 1-based position in the plan
    double f0_hz = 0.0;
    double c_farad = 0.0;
    double bw_hz = 0.0;
    double lo_hz = 0.0;
    double hi_hz = 0.0;
};

struct AllocationPlan
{
    BandSettings band{};
    std::vector<AllocationEntry> entries{};
    int count = 0;
    double tolerance_hz = kSpacingToleranceHz;
    // Set when the requested band extends beyond the loss table span, in
    // which case endpoint values were clamped.
    bool loss_clamped = false;
};

// Smallest center above f_i whose half-power band clears f_i's band plus the
// guard band; the spacing rule solved at equality. Throws saturation_error
// when no solution exists below 10 * f_max.
double next_center(double f_i, const BandPlan& plan);

// Greedy packing: seeds the first center at f_min and advances with
// next_center until the next center would exceed f_max.
AllocationPlan allocate(const BandPlan& plan);

// Closed-form count for a constant Q and zero guard band, where centers form
// the geometric progression of ratio (2Q+1)/(2Q-1):
//   N = 1 + floor(ln(f_max/f_min) / ln((2Q+1)/(2Q-1))).
int constant_q_count(double f_min_hz, double f_max_hz, double q);

enum class SweepParameter
{
    inductance,
    guard_band,
    loss_margin,
    f_max,
};

struct SweepRow
{
    double value = 0.0;
    std::optional<int> count{}; // empty when the allocation failed
    std::string error{};        // failure message, empty on success
};

// Re-runs allocate with the parameter substituted per value; a failing row
// is flagged and the sweep continues. Rows keep input order.
std::vector<SweepRow> sweep(const BandPlan& base, SweepParameter parameter,
                            const std::vector<double>& values);

// Plan document, JSON shape:
//   {band: {f_min_hz, f_max_hz, guard_hz, margin_ohm, inductance_h},
//    entries: [{i, f0_hz, c_farad, bw_hz, lo_hz, hi_hz}],
//    count, tolerance_hz, loss_clamped}
void write_plan_json(const AllocationPlan& plan, std::ostream& out);
AllocationPlan read_plan_json(std::istream& in);
AllocationPlan read_plan_json_file(const std::string& path);

// Sweep rows as `param_value,count` CSV; failed rows carry the message in a
// third column.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

} // namespace lcplan

#endif // LCPLAN_ALLOCATOR_HPP
