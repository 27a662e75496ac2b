#ifndef SLRF_TEST_ORACLES_HPP
#define SLRF_TEST_ORACLES_HPP

// Independent reference computations used only by tests. Everything here
// deliberately avoids the library's closed forms and fast paths: sums are
// evaluated by quadrature, convolutions by double loops, singular values by
// a Gram eigendecomposition, and the annihilated fields by boundary-measure
// integrals over rectangle edges.

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "slrf/field.hpp"
#include "slrf/grid.hpp"
#include "slrf/phantom.hpp"
#include "slrf/sampling.hpp"

namespace slrf_test {

using slrf::CenteredGrid;
using slrf::Complex;
using slrf::PiecewiseLinear1D;
using slrf::PiecewiseLinear2D;
using slrf::SampleField;

/// Composite Simpson rule on [a, b] with n (even) subintervals.
inline Complex simpson(const std::function<Complex(double)>& f, double a,
                       double b, int n)
{
    const double h = (b - a) / n;
    Complex acc = f(a) + f(b);
    for (int i = 1; i < n; ++i)
    {
        acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * (h / 3.0);
}

/// Quadrature evaluation of the 1D Fourier samples (10^4-point composite
/// rule per interval).
inline Complex fourier_sample_1d_quadrature(const PiecewiseLinear1D& model,
                                            double k, int points = 10000)
{
    Complex acc = 0.0;
    for (std::size_t j = 0; j + 1 < model.breakpoints.size(); ++j)
    {
        const Complex slope = model.slopes[j];
        const Complex intercept = model.intercepts[j];
        acc += simpson(
            [&](double x) {
                return (slope * x + intercept) *
                       std::exp(Complex(0.0, -2.0 * std::numbers::pi * k * x));
            },
            model.breakpoints[j], model.breakpoints[j + 1], points);
    }
    return acc;
}

/// 2D tensor quadrature of the phantom's Fourier integral at one frequency.
inline Complex fourier_sample_2d_quadrature(const PiecewiseLinear2D& model,
                                            double k1, double k2,
                                            int points_per_axis = 512)
{
    Complex acc = 0.0;
    for (const auto& p : model.patches)
    {
        const auto inner = [&](double x) {
            return simpson(
                [&](double y) {
                    return (p.a1 * x + p.a2 * y + p.b) *
                           std::exp(Complex(0.0, -2.0 * std::numbers::pi *
                                                     (k1 * x + k2 * y)));
                },
                p.box.y0, p.box.y1, points_per_axis);
        };
        acc += simpson(inner, p.box.x0, p.box.x1, points_per_axis);
    }
    return acc;
}

namespace detail {

inline Complex segment_const(double k, double a, double b)
{
    if (k == 0.0)
    {
        return b - a;
    }
    const Complex iw(0.0, -2.0 * std::numbers::pi * k);
    return (std::exp(iw * b) - std::exp(iw * a)) / iw;
}

inline Complex segment_linear(double k, double a, double b)
{
    if (k == 0.0)
    {
        return 0.5 * (b * b - a * a);
    }
    const Complex iw(0.0, -2.0 * std::numbers::pi * k);
    const auto anti = [&](double x) {
        return std::exp(iw * x) * (x / iw - 1.0 / (iw * iw));
    };
    return anti(b) - anti(a);
}

} // namespace detail

///
/// Boundary-measure route to F(grad u - p): for each rectangle, the excess
/// of the gradient over its interior constant is the surface measure
/// (a . x + b) n dsigma on the four edges, so its Fourier transform is a
/// sum of exact edge integrals. Completely independent of the pointwise
/// derivative symbols.
///
inline SampleField grad_residual_by_edges(const PiecewiseLinear2D& model,
                                          const CenteredGrid& grid)
{
    SampleField out(1, grid);
    for (const auto& patch : model.patches)
    {
        const auto& r = patch.box;
        for (int k1 = grid.lo1(); k1 <= grid.hi1(); ++k1)
        {
            for (int k2 = grid.lo2(); k2 <= grid.hi2(); ++k2)
            {
                const auto off = grid.offset(k1, k2);
                // vertical edges x = r.x0 (normal -e1) and x = r.x1 (+e1)
                for (const auto [x, n1] : {std::pair{r.x0, -1.0}, std::pair{r.x1, 1.0}})
                {
                    const Complex phase =
                        std::exp(Complex(0.0, -2.0 * std::numbers::pi * k1 * x));
                    const Complex line =
                        (patch.a1 * x + patch.b) * detail::segment_const(k2, r.y0, r.y1) +
                        patch.a2 * detail::segment_linear(k2, r.y0, r.y1);
                    out.comp(0)(off) += n1 * phase * line;
                }
                // horizontal edges y = r.y0 (normal -e2) and y = r.y1 (+e2)
                for (const auto [y, n2] : {std::pair{r.y0, -1.0}, std::pair{r.y1, 1.0}})
                {
                    const Complex phase =
                        std::exp(Complex(0.0, -2.0 * std::numbers::pi * k2 * y));
                    const Complex line =
                        (patch.a2 * y + patch.b) * detail::segment_const(k1, r.x0, r.x1) +
                        patch.a1 * detail::segment_linear(k1, r.x0, r.x1);
                    out.comp(1)(off) += n2 * phase * line;
                }
            }
        }
    }
    return out;
}

///
/// Boundary-measure route to F(symgrad p): the symmetric gradient of the
/// piecewise constant field p = sum alpha_j 1_Omega is minus the symmetric
/// outer product of alpha with the outward normal, carried by the edge
/// measure.
///
inline SampleField symgrad_p_by_edges(const PiecewiseLinear2D& model,
                                      const CenteredGrid& grid)
{
    SampleField out(2, grid);
    for (const auto& patch : model.patches)
    {
        const auto& r = patch.box;
        const Complex a1 = patch.a1;
        const Complex a2 = patch.a2;
        for (int k1 = grid.lo1(); k1 <= grid.hi1(); ++k1)
        {
            for (int k2 = grid.lo2(); k2 <= grid.hi2(); ++k2)
            {
                const auto off = grid.offset(k1, k2);
                for (const auto [x, n1] : {std::pair{r.x0, -1.0}, std::pair{r.x1, 1.0}})
                {
                    const Complex edge =
                        std::exp(Complex(0.0, -2.0 * std::numbers::pi * k1 * x)) *
                        detail::segment_const(k2, r.y0, r.y1);
                    out.comp(0)(off) += -a1 * n1 * edge;
                    out.comp(1)(off) += -0.5 * a2 * n1 * edge;
                    out.comp(2)(off) += -0.5 * a2 * n1 * edge;
                }
                for (const auto [y, n2] : {std::pair{r.y0, -1.0}, std::pair{r.y1, 1.0}})
                {
                    const Complex edge =
                        std::exp(Complex(0.0, -2.0 * std::numbers::pi * k2 * y)) *
                        detail::segment_const(k1, r.x0, r.x1);
                    out.comp(1)(off) += -0.5 * a1 * n2 * edge;
                    out.comp(2)(off) += -0.5 * a1 * n2 * edge;
                    out.comp(3)(off) += -a2 * n2 * edge;
                }
            }
        }
    }
    return out;
}

/// Brute force periodic convolution c(k) = sum_m a(m) v(k + m) with the
/// filter enumerated over its support and the field wrapped.
inline SampleField naive_analysis_one_filter(const SampleField& field,
                                             const CenteredGrid& support,
                                             const Eigen::VectorXcd& coeffs)
{
    SampleField out(field.order(), field.grid());
    const auto& grid = field.grid();
    for (int c = 0; c < field.components(); ++c)
    {
        for (int k1 = grid.lo1(); k1 <= grid.hi1(); ++k1)
        {
            for (int k2 = grid.lo2(); k2 <= grid.hi2(); ++k2)
            {
                Complex acc = 0.0;
                for (int m1 = support.lo1(); m1 <= support.hi1(); ++m1)
                {
                    for (int m2 = support.lo2(); m2 <= support.hi2(); ++m2)
                    {
                        acc += coeffs(support.offset(m1, m2)) *
                               field.at_wrapped(c, k1 + m1, k2 + m2);
                    }
                }
                out.at(c, k1, k2) = acc;
            }
        }
    }
    return out;
}

/// Naive synthesis sum_l conj(a_l) * c_l with (a*b)(k) = sum_m a(m) b(k-m).
inline SampleField naive_synthesis(const std::vector<SampleField>& coeffs,
                                   const CenteredGrid& support,
                                   const std::vector<Eigen::VectorXcd>& filters)
{
    const auto& grid = coeffs.front().grid();
    SampleField out(coeffs.front().order(), grid);
    for (std::size_t l = 0; l < filters.size(); ++l)
    {
        for (int c = 0; c < out.components(); ++c)
        {
            for (int k1 = grid.lo1(); k1 <= grid.hi1(); ++k1)
            {
                for (int k2 = grid.lo2(); k2 <= grid.hi2(); ++k2)
                {
                    Complex acc = 0.0;
                    for (int m1 = support.lo1(); m1 <= support.hi1(); ++m1)
                    {
                        for (int m2 = support.lo2(); m2 <= support.hi2(); ++m2)
                        {
                            acc += std::conj(filters[l](support.offset(m1, m2))) *
                                   coeffs[l].at_wrapped(c, k1 - m1, k2 - m2);
                        }
                    }
                    out.at(c, k1, k2) += acc;
                }
            }
        }
    }
    return out;
}

/// Independent route to singular values: eigenvalues of the Gram matrix.
inline Eigen::VectorXd gram_singular_values(const Eigen::MatrixXcd& m)
{
    const Eigen::MatrixXcd gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    Eigen::VectorXd values = eig.eigenvalues().reverse();
    for (Eigen::Index i = 0; i < values.size(); ++i)
    {
        values(i) = std::sqrt(std::max(values(i), 0.0));
    }
    return values;
}

/// Dense LU route for the 3x3 per-frequency systems.
inline std::array<Complex, 3> dense_solve3(
    const std::array<std::array<Complex, 3>, 3>& a,
    const std::array<Complex, 3>& rhs)
{
    Eigen::Matrix3cd m;
    Eigen::Vector3cd b;
    for (int i = 0; i < 3; ++i)
    {
        b(i) = rhs[static_cast<std::size_t>(i)];
        for (int j = 0; j < 3; ++j)
        {
            m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    const Eigen::Vector3cd x = m.fullPivLu().solve(b);
    return {x(0), x(1), x(2)};
}

/// Deterministic random fields for property tests.
inline SampleField random_field(int order, const CenteredGrid& grid,
                                std::uint64_t seed)
{
    slrf::detail::SeededRng rng(seed);
    SampleField f(order, grid);
    for (int c = 0; c < f.components(); ++c)
    {
        for (std::int64_t i = 0; i < grid.size(); ++i)
        {
            f.comp(c)(i) = Complex(rng.normal(), rng.normal());
        }
    }
    return f;
}

inline Eigen::MatrixXcd random_matrix(std::int64_t rows, std::int64_t cols,
                                      std::uint64_t seed)
{
    slrf::detail::SeededRng rng(seed);
    Eigen::MatrixXcd m(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i)
    {
        for (std::int64_t j = 0; j < cols; ++j)
        {
            m(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    return m;
}

} // namespace slrf_test

#endif // SLRF_TEST_ORACLES_HPP
