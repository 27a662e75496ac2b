#ifndef SLRF_TEST_PHANTOMS_HPP
#define SLRF_TEST_PHANTOMS_HPP

// Shared phantoms for tests and the acceptance suite. Corners are dyadic
// so edge coverage checks and annihilation residuals are exact.

#include "slrf/annihilation.hpp"
#include "slrf/phantom.hpp"

namespace slrf_test {

/// Two axis-aligned rectangles whose edges lie on only two distinct lines
/// per axis (0 and -1/2, the latter equal to +1/2 modulo 1), so the minimal
/// separable filter is genuinely 3x3. Both carry nonzero slopes.
inline slrf::PiecewiseLinear2D checker_phantom(double amplitude = 1.0)
{
    slrf::PiecewiseLinear2D m;
    m.patches.push_back({{-0.5, 0.0, -0.5, 0.0},
                         amplitude * 0.5,
                         0.0,
                         amplitude * 1.0});
    m.patches.push_back({{0.0, 0.5, 0.0, 0.5},
                         0.0,
                         amplitude * -0.25,
                         amplitude * 0.75});
    return m;
}

/// A generic piecewise linear phantom with several rectangles; edges on
/// assorted dyadic lines.
inline slrf::PiecewiseLinear2D rects_phantom(double amplitude = 1.0)
{
    slrf::PiecewiseLinear2D m;
    m.patches.push_back({{-0.375, -0.0625, -0.375, 0.125},
                         amplitude * 0.5,
                         amplitude * -0.25,
                         amplitude * 1.0});
    m.patches.push_back({{0.0625, 0.375, -0.25, 0.25},
                         amplitude * -0.5,
                         0.0,
                         amplitude * 0.75});
    m.patches.push_back({{-0.0625, 0.0625, 0.3125, 0.4375},
                         0.0,
                         0.0,
                         amplitude * 0.5});
    return m;
}

inline slrf::AnnihilatingFilter phantom_filter(const slrf::PiecewiseLinear2D& m)
{
    const slrf::EdgeLines lines = slrf::minimal_lines_for(m);
    slrf::validate_line_coverage(m, lines.x_lines, lines.y_lines);
    return slrf::separable_filter_2d(lines.x_lines, lines.y_lines);
}

} // namespace slrf_test

#endif // SLRF_TEST_PHANTOMS_HPP
