#ifndef SLRF_PHANTOM_HPP
#define SLRF_PHANTOM_HPP

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slrf/field.hpp"
#include "slrf/grid.hpp"

namespace slrf {

///
/// One dimensional piecewise linear model: K breakpoints
/// x_1 < ... < x_K strictly inside (-1/2, 1/2) and K-1 intervals
/// [x_j, x_{j+1}) carrying the affine piece slope[j] * x + intercept[j].
/// The function vanishes outside [x_1, x_K).
///
struct PiecewiseLinear1D {
    std::vector<double> breakpoints;
    std::vector<Complex> slopes;
    std::vector<Complex> intercepts;

    int breakpoint_count() const
    {
        return static_cast<int>(breakpoints.size());
    }

    void validate() const
    {
        const auto K = breakpoints.size();
        if (K < 1)
        {
            throw std::invalid_argument("PiecewiseLinear1D: needs at least one breakpoint");
        }
        if (slopes.size() + 1 != K || intercepts.size() + 1 != K)
        {
            throw std::invalid_argument(
                "PiecewiseLinear1D: expected exactly K-1 interval coefficients");
        }
        for (std::size_t j = 0; j < K; ++j)
        {
            if (!(breakpoints[j] > -0.5 && breakpoints[j] < 0.5))
            {
                throw std::invalid_argument(
                    "PiecewiseLinear1D: breakpoints must lie strictly inside (-1/2, 1/2)");
            }
            if (j > 0 && !(breakpoints[j] > breakpoints[j - 1]))
            {
                throw std::invalid_argument(
                    "PiecewiseLinear1D: breakpoints must be strictly increasing");
            }
        }
    }
};

namespace detail {

/// Integral of exp(-2 pi i k x) over [a, b); exact, with the k = 0 limit
/// handled by an explicit branch.
inline Complex segment_integral_const(double k, double a, double b)
{
    if (k == 0.0)
    {
        return b - a;
    }
    const Complex iw(0.0, -2.0 * std::numbers::pi * k);
    return (std::exp(iw * b) - std::exp(iw * a)) / iw;
}

/// Integral of x exp(-2 pi i k x) over [a, b); exact, k = 0 by limit branch.
inline Complex segment_integral_linear(double k, double a, double b)
{
    if (k == 0.0)
    {
        return 0.5 * (b * b - a * a);
    }
    const Complex iw(0.0, -2.0 * std::numbers::pi * k);
    const auto antiderivative = [&](double x) {
        return std::exp(iw * x) * (x / iw - 1.0 / (iw * iw));
    };
    return antiderivative(b) - antiderivative(a);
}

} // namespace detail

/// Exact Fourier samples of a 1D model on the centered range of length n:
/// u_hat(k) = sum_j integral over [x_j, x_{j+1}) of (a x + b) e^{-2 pi i k x}.
inline Eigen::VectorXcd fourier_samples_1d(const PiecewiseLinear1D& model,
                                           int n)
{
    model.validate();
    const CenteredGrid range = make_centered_grid(n, 1);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (int k = range.lo1(); k <= range.hi1(); ++k)
    {
        Complex s = 0.0;
        for (std::size_t j = 0; j + 1 < model.breakpoints.size(); ++j)
        {
            const double a = model.breakpoints[j];
            const double b = model.breakpoints[j + 1];
            s += model.slopes[j] * detail::segment_integral_linear(k, a, b) +
                 model.intercepts[j] * detail::segment_integral_const(k, a, b);
        }
        out(range.offset(k, 0)) = s;
    }
    return out;
}

///
/// Exact samples of the two sinusoid sums of the 1D framework:
///   F(u' - p)(k) = sum_j T_j exp(-2 pi i x_j k),
///     with T_j = (a_j - a_{j-1}) x_j + (b_j - b_{j-1}), a_0 = a_K = b_0 = b_K = 0,
///   F(p')(k)    = sum_j (a_j - a_{j-1}) exp(-2 pi i x_j k).
///
struct JumpSamples1D {
    Eigen::VectorXcd residual; // F(u' - p)
    Eigen::VectorXcd pprime;   // F(p')
    std::vector<Complex> residual_weights;
    std::vector<Complex> pprime_weights;
};

inline JumpSamples1D residual_and_pprime_samples_1d(
    const PiecewiseLinear1D& model, int n)
{
    model.validate();
    const auto K = model.breakpoints.size();
    const auto slope_at = [&](std::size_t j) -> Complex {
        return (j >= 1 && j <= K - 1) ? model.slopes[j - 1] : Complex(0.0);
    };
    const auto intercept_at = [&](std::size_t j) -> Complex {
        return (j >= 1 && j <= K - 1) ? model.intercepts[j - 1] : Complex(0.0);
    };

    JumpSamples1D out;
    out.residual_weights.resize(K);
    out.pprime_weights.resize(K);
    for (std::size_t j = 1; j <= K; ++j)
    {
        const Complex da = slope_at(j) - slope_at(j - 1);
        const Complex db = intercept_at(j) - intercept_at(j - 1);
        out.residual_weights[j - 1] = da * model.breakpoints[j - 1] + db;
        out.pprime_weights[j - 1] = da;
    }

    const CenteredGrid range = make_centered_grid(n, 1);
    out.residual = Eigen::VectorXcd::Zero(n);
    out.pprime = Eigen::VectorXcd::Zero(n);
    for (int k = range.lo1(); k <= range.hi1(); ++k)
    {
        Complex r = 0.0;
        Complex p = 0.0;
        for (std::size_t j = 0; j < K; ++j)
        {
            const Complex phase = std::exp(
                Complex(0.0, -2.0 * std::numbers::pi * model.breakpoints[j] * k));
            r += out.residual_weights[j] * phase;
            p += out.pprime_weights[j] * phase;
        }
        out.residual(range.offset(k, 0)) = r;
        out.pprime(range.offset(k, 0)) = p;
    }
    return out;
}

/// Half-open axis-aligned rectangle [x0, x1) x [y0, y1).
struct Rect {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

    bool valid() const { return x1 > x0 && y1 > y0; }

    bool overlaps(const Rect& o) const
    {
        return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1;
    }
};

/// One region carrying the affine piece a1 * x1 + a2 * x2 + b.
struct AffinePatch {
    Rect box;
    Complex a1{0.0}, a2{0.0}, b{0.0};
};

///
/// Two dimensional piecewise linear model: pairwise disjoint axis aligned
/// rectangles in [-1/2, 1/2]^2, each carrying an affine piece. Corner
/// coordinates are expected to be exact dyadic rationals so that edge
/// coverage checks and annihilation residuals stay at machine precision.
///
struct PiecewiseLinear2D {
    std::vector<AffinePatch> patches;

    void validate() const
    {
        if (patches.empty())
        {
            throw std::invalid_argument("PiecewiseLinear2D: no regions");
        }
        for (std::size_t i = 0; i < patches.size(); ++i)
        {
            const Rect& r = patches[i].box;
            if (!r.valid())
            {
                throw std::invalid_argument("PiecewiseLinear2D: degenerate rectangle");
            }
            if (r.x0 < -0.5 || r.x1 > 0.5 || r.y0 < -0.5 || r.y1 > 0.5)
            {
                throw std::invalid_argument(
                    "PiecewiseLinear2D: rectangle leaves [-1/2, 1/2]^2");
            }
            for (std::size_t j = i + 1; j < patches.size(); ++j)
            {
                if (r.overlaps(patches[j].box))
                {
                    throw std::invalid_argument(
                        "PiecewiseLinear2D: rectangles must be pairwise disjoint");
                }
            }
        }
    }

    /// Point evaluation (half-open membership); used for rasterized previews.
    Complex eval(double x, double y) const
    {
        for (const auto& p : patches)
        {
            if (x >= p.box.x0 && x < p.box.x1 && y >= p.box.y0 && y < p.box.y1)
            {
                return p.a1 * x + p.a2 * y + p.b;
            }
        }
        return 0.0;
    }
};

/// Exact Fourier samples u_hat(k) on the grid, by separable closed-form
/// integration of (a . x + b) over each rectangle.
inline SampleField fourier_samples_2d(const PiecewiseLinear2D& model,
                                      const CenteredGrid& grid)
{
    model.validate();
    SampleField out(0, grid, FieldSource::continuous);
    auto& v = out.comp(0);
    for (const auto& p : model.patches)
    {
        for (int k1 = grid.lo1(); k1 <= grid.hi1(); ++k1)
        {
            const Complex ax = detail::segment_integral_const(k1, p.box.x0, p.box.x1);
            const Complex bx = detail::segment_integral_linear(k1, p.box.x0, p.box.x1);
            for (int k2 = grid.lo2(); k2 <= grid.hi2(); ++k2)
            {
                const Complex ay =
                    detail::segment_integral_const(k2, p.box.y0, p.box.y1);
                const Complex by =
                    detail::segment_integral_linear(k2, p.box.y0, p.box.y1);
                v(grid.offset(k1, k2)) += p.a1 * bx * ay + p.a2 * ax * by + p.b * ax * ay;
            }
        }
    }
    return out;
}

/// Exact Fourier samples of the piecewise constant gradient part
/// p = sum_j alpha_j 1_{Omega_j}, as an order 1 field.
inline SampleField gradient_part_samples_2d(const PiecewiseLinear2D& model,
                                            const CenteredGrid& grid)
{
    model.validate();
    SampleField out(1, grid, FieldSource::continuous);
    for (const auto& p : model.patches)
    {
        for (int k1 = grid.lo1(); k1 <= grid.hi1(); ++k1)
        {
            const Complex ax = detail::segment_integral_const(k1, p.box.x0, p.box.x1);
            for (int k2 = grid.lo2(); k2 <= grid.hi2(); ++k2)
            {
                const Complex ay =
                    detail::segment_integral_const(k2, p.box.y0, p.box.y1);
                const auto off = grid.offset(k1, k2);
                out.comp(0)(off) += p.a1 * ax * ay;
                out.comp(1)(off) += p.a2 * ax * ay;
            }
        }
    }
    return out;
}

namespace detail {

/// Parses "p/q" or a plain decimal into a double. Rational corners are the
/// supported way to keep coordinates exactly representable.
inline double parse_rational(const std::string& tok, int line_no)
{
    const auto slash = tok.find('/');
    try
    {
        if (slash == std::string::npos)
        {
            return std::stod(tok);
        }
        const double num = std::stod(tok.substr(0, slash));
        const double den = std::stod(tok.substr(slash + 1));
        if (den == 0.0)
        {
            throw std::invalid_argument("zero denominator");
        }
        return num / den;
    }
    catch (const std::exception&)
    {
        throw std::invalid_argument("phantom file line " + std::to_string(line_no) +
                                    ": bad rational '" + tok + "'");
    }
}

/// Complex coefficient token: "re" or "re,im" with rational parts.
inline Complex parse_complex(const std::string& tok, int line_no)
{
    const auto comma = tok.find(',');
    if (comma == std::string::npos)
    {
        return Complex(parse_rational(tok, line_no), 0.0);
    }
    return Complex(parse_rational(tok.substr(0, comma), line_no),
                   parse_rational(tok.substr(comma + 1), line_no));
}

} // namespace detail

///
/// Phantom description file: one rectangle per line,
///
///     rect <x0> <x1> <y0> <y1> <a1> <a2> <b>
///
/// with rational corner coordinates ("p/q") and complex coefficients
/// ("re" or "re,im"). Blank lines and lines starting with '#' are ignored.
///
inline PiecewiseLinear2D parse_phantom_text(std::istream& is)
{
    PiecewiseLinear2D model;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line))
    {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#')
        {
            continue;
        }
        if (head != "rect")
        {
            throw std::invalid_argument("phantom file line " + std::to_string(line_no) +
                                        ": expected 'rect', got '" + head + "'");
        }
        std::string t[7];
        for (auto& tk : t)
        {
            if (!(ls >> tk))
            {
                throw std::invalid_argument("phantom file line " +
                                            std::to_string(line_no) +
                                            ": expected 7 fields after 'rect'");
            }
        }
        AffinePatch p;
        p.box.x0 = detail::parse_rational(t[0], line_no);
        p.box.x1 = detail::parse_rational(t[1], line_no);
        p.box.y0 = detail::parse_rational(t[2], line_no);
        p.box.y1 = detail::parse_rational(t[3], line_no);
        p.a1 = detail::parse_complex(t[4], line_no);
        p.a2 = detail::parse_complex(t[5], line_no);
        p.b = detail::parse_complex(t[6], line_no);
        model.patches.push_back(p);
    }
    model.validate();
    return model;
}

inline PiecewiseLinear2D parse_phantom_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
    {
        throw std::invalid_argument("cannot open phantom file: " + path);
    }
    return parse_phantom_text(is);
}

} // namespace slrf

#endif // SLRF_PHANTOM_HPP
