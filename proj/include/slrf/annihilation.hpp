#ifndef SLRF_ANNIHILATION_HPP
#define SLRF_ANNIHILATION_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

#include "slrf/field.hpp"
#include "slrf/grid.hpp"
#include "slrf/phantom.hpp"

namespace slrf {

///
/// A finite filter a(k) on a rectangular support whose trigonometric
/// polynomial phi(x) = sum_k a(k) exp(-2 pi i k . x) vanishes on the
/// singularity set it was built for. Coefficients are stored in the
/// support grid's storage order; the support is centered, which shifts
/// phi by a unimodular phase and leaves its zero set unchanged.
///
struct AnnihilatingFilter {
    CenteredGrid support;
    Eigen::VectorXcd coeffs;

    Complex eval_poly(double x, double y) const
    {
        Complex s = 0.0;
        for (int k1 = support.lo1(); k1 <= support.hi1(); ++k1)
        {
            for (int k2 = support.lo2(); k2 <= support.hi2(); ++k2)
            {
                const double phase =
                    -2.0 * std::numbers::pi * (k1 * x + k2 * y);
                s += coeffs(support.offset(k1, k2)) *
                     Complex(std::cos(phase), std::sin(phase));
            }
        }
        return s;
    }
};

namespace detail {

/// Coefficients of prod_j (z - exp(-2 pi i x_j)) in ascending powers of z.
inline Eigen::VectorXcd root_polynomial(const std::vector<double>& roots)
{
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(roots.size() + 1);
    c(0) = 1.0;
    int deg = 0;
    for (double x : roots)
    {
        const Complex r =
            std::exp(Complex(0.0, -2.0 * std::numbers::pi * x));
        for (int i = deg + 1; i >= 1; --i)
        {
            c(i) = (i <= deg ? c(i) : Complex(0.0)) * (-r) +
                   (i >= 1 ? c(i - 1) : Complex(0.0));
        }
        c(0) *= -r;
        ++deg;
    }
    return c;
}

/// Positions on the unit circle count as equal when their points coincide;
/// dyadic inputs make this an exact comparison after normalizing to [-1/2, 1/2).
inline double normalize_position(double x)
{
    double y = x - std::floor(x + 0.5);
    if (y >= 0.5)
    {
        y -= 1.0;
    }
    return y;
}

} // namespace detail

///
/// Minimal 1D annihilating filter for a breakpoint set: coefficients of
/// prod_j (exp(-2 pi i x) - exp(-2 pi i x_j)), length K + 1, leading
/// coefficient one. Stored in ascending polynomial order, which coincides
/// with the support grid's storage order.
///
inline AnnihilatingFilter minimal_filter_1d(const std::vector<double>& breakpoints)
{
    if (breakpoints.empty())
    {
        throw std::invalid_argument("minimal_filter_1d: no breakpoints");
    }
    std::vector<double> sorted = breakpoints;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 1; j < sorted.size(); ++j)
    {
        if (sorted[j] == sorted[j - 1])
        {
            throw std::invalid_argument("minimal_filter_1d: duplicate breakpoints");
        }
    }
    AnnihilatingFilter f;
    f.support = make_centered_grid(static_cast<int>(sorted.size()) + 1, 1);
    f.coeffs = detail::root_polynomial(sorted);
    return f;
}

///
/// Separable 2D filter vanishing on the union of lines {x = xi} and
/// {y = eta}: tensor product of the two 1D root polynomials. Line
/// positions are taken modulo 1 (a line at 1/2 equals the line at -1/2).
///
inline AnnihilatingFilter separable_filter_2d(const std::vector<double>& x_lines,
                                              const std::vector<double>& y_lines)
{
    if (x_lines.empty() || y_lines.empty())
    {
        throw std::invalid_argument("separable_filter_2d: empty line set");
    }
    auto normalize_unique = [](std::vector<double> v) {
        for (auto& x : v)
        {
            x = detail::normalize_position(x);
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    const auto xs = normalize_unique(x_lines);
    const auto ys = normalize_unique(y_lines);
    const Eigen::VectorXcd cx = detail::root_polynomial(xs);
    const Eigen::VectorXcd cy = detail::root_polynomial(ys);

    AnnihilatingFilter f;
    f.support = make_centered_grid(static_cast<int>(cx.size()),
                                   static_cast<int>(cy.size()));
    f.coeffs = Eigen::VectorXcd(f.support.size());
    for (int i = 0; i < cx.size(); ++i)
    {
        for (int j = 0; j < cy.size(); ++j)
        {
            f.coeffs(static_cast<std::int64_t>(i) * cy.size() + j) = cx(i) * cy(j);
        }
    }
    return f;
}

/// Collects the distinct edge lines of a rectangle phantom, normalized
/// modulo 1. The separable filter on these lines covers the phantom's
/// whole singularity set.
struct EdgeLines {
    std::vector<double> x_lines;
    std::vector<double> y_lines;
};

inline EdgeLines minimal_lines_for(const PiecewiseLinear2D& model)
{
    std::set<double> xs, ys;
    for (const auto& p : model.patches)
    {
        xs.insert(detail::normalize_position(p.box.x0));
        xs.insert(detail::normalize_position(p.box.x1));
        ys.insert(detail::normalize_position(p.box.y0));
        ys.insert(detail::normalize_position(p.box.y1));
    }
    return EdgeLines{{xs.begin(), xs.end()}, {ys.begin(), ys.end()}};
}

/// Throws unless every rectangle edge of the phantom lies on one of the
/// declared lines (modulo 1).
inline void validate_line_coverage(const PiecewiseLinear2D& model,
                                   const std::vector<double>& x_lines,
                                   const std::vector<double>& y_lines)
{
    auto covered = [](double edge, const std::vector<double>& lines) {
        const double e = detail::normalize_position(edge);
        for (double l : lines)
        {
            if (detail::normalize_position(l) == e)
            {
                return true;
            }
        }
        return false;
    };
    for (const auto& p : model.patches)
    {
        if (!covered(p.box.x0, x_lines) || !covered(p.box.x1, x_lines) ||
            !covered(p.box.y0, y_lines) || !covered(p.box.y1, y_lines))
        {
            throw std::invalid_argument(
                "separable filter: phantom edge not covered by a declared line");
        }
    }
}

///
/// Max annihilation residual
///     max over m in O:K and components of | sum_{k in K} field(m + k) a(k) |.
/// Zero (to rounding) exactly when the filter annihilates the field.
///
inline double verify_annihilation(const SampleField& field,
                                  const AnnihilatingFilter& filter)
{
    const GridDifference rows = grid_difference(field.grid(), filter.support);
    double worst = 0.0;
    for (int c = 0; c < field.components(); ++c)
    {
        for (int m1 = rows.lo1; m1 <= rows.hi1; ++m1)
        {
            for (int m2 = rows.lo2; m2 <= rows.hi2; ++m2)
            {
                Complex s = 0.0;
                for (int k1 = filter.support.lo1(); k1 <= filter.support.hi1(); ++k1)
                {
                    for (int k2 = filter.support.lo2(); k2 <= filter.support.hi2(); ++k2)
                    {
                        s += field.at(c, m1 + k1, m2 + k2) *
                             filter.coeffs(filter.support.offset(k1, k2));
                    }
                }
                worst = std::max(worst, std::abs(s));
            }
        }
    }
    return worst;
}

/// 1D convenience: wraps a sequence on the centered range into a field of
/// extents (n, 1) so the 2D machinery applies.
inline SampleField sequence_as_field(const Eigen::VectorXcd& seq)
{
    SampleField f(0, make_centered_grid(static_cast<int>(seq.size()), 1));
    f.comp(0) = seq;
    return f;
}

} // namespace slrf

#endif // SLRF_ANNIHILATION_HPP
