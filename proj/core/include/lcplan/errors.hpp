#ifndef LCPLAN_ERRORS_HPP
#define LCPLAN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lcplan
{

// Numeric precondition violated (non-positive inductance, Q below the
// half-power validity floor, coupling coefficient outside [0,1], ...).
class domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Input text could not be parsed. Carries the 1-based line number when the
// source is line-oriented (0 when not applicable).
class parse_error : public std::runtime_error
{
public:
    explicit parse_error(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
          line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

// The sampled curve never reaches the requested threshold.
class no_band_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A threshold crossing falls outside the sampled grid, so the band edge
// cannot be located.
class band_exceeds_grid_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// The set of triggering grid points is not one contiguous run.
class multi_band_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// No spacing-rule solution exists below the search cap.
class saturation_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace lcplan

#endif // LCPLAN_ERRORS_HPP
