#ifndef SLRF_DIFFOPS_HPP
#define SLRF_DIFFOPS_HPP

#include <Eigen/Core>

#include <numbers>
#include <stdexcept>

#include "slrf/field.hpp"
#include "slrf/grid.hpp"

namespace slrf {

///
/// Per-index derivative symbols (g1(k), g2(k)). All derivative operators
/// here act pointwise over indices:
///
///   grad:     v        -> (g1 v, g2 v)
///   symgrad:  (q1, q2) -> (g1 q1, (g2 q1 + g1 q2)/2, (g2 q1 + g1 q2)/2, g2 q2)
///
/// The continuous symbols g_j(k) = 2 pi i k_j realize the frequency domain
/// operators acting on samples of the continuous Fourier transform; the
/// forward difference symbols g_j(k) = exp(2 pi i k_j / N_j) - 1 realize
/// periodic discrete differences diagonalized by the DFT.
///
struct GradSymbols {
    CenteredGrid grid;
    Eigen::VectorXcd g1;
    Eigen::VectorXcd g2;
};

inline GradSymbols continuous_symbols(const CenteredGrid& grid)
{
    GradSymbols s{grid, Eigen::VectorXcd(grid.size()), Eigen::VectorXcd(grid.size())};
    for (int k1 = grid.lo1(); k1 <= grid.hi1(); ++k1)
    {
        for (int k2 = grid.lo2(); k2 <= grid.hi2(); ++k2)
        {
            const auto off = grid.offset(k1, k2);
            s.g1(off) = Complex(0.0, 2.0 * std::numbers::pi * k1);
            s.g2(off) = Complex(0.0, 2.0 * std::numbers::pi * k2);
        }
    }
    return s;
}

inline GradSymbols forward_difference_symbols(const CenteredGrid& grid)
{
    GradSymbols s{grid, Eigen::VectorXcd(grid.size()), Eigen::VectorXcd(grid.size())};
    for (int k1 = grid.lo1(); k1 <= grid.hi1(); ++k1)
    {
        for (int k2 = grid.lo2(); k2 <= grid.hi2(); ++k2)
        {
            const auto off = grid.offset(k1, k2);
            s.g1(off) = std::exp(Complex(0.0, 2.0 * std::numbers::pi * k1 / grid.n1)) -
                        1.0;
            s.g2(off) = std::exp(Complex(0.0, 2.0 * std::numbers::pi * k2 / grid.n2)) -
                        1.0;
        }
    }
    return s;
}

namespace detail {

inline void require_order(const SampleField& f, int order, const char* where)
{
    if (f.order() != order)
    {
        throw std::invalid_argument(std::string(where) + ": expected order " +
                                    std::to_string(order) + ", got " +
                                    std::to_string(f.order()));
    }
}

} // namespace detail

inline SampleField apply_grad(const GradSymbols& s, const SampleField& v)
{
    detail::require_order(v, 0, "apply_grad");
    SampleField out(1, v.grid(), v.source(), v.domain());
    out.comp(0) = s.g1.cwiseProduct(v.comp(0));
    out.comp(1) = s.g2.cwiseProduct(v.comp(0));
    return out;
}

inline SampleField apply_symgrad(const GradSymbols& s, const SampleField& q)
{
    detail::require_order(q, 1, "apply_symgrad");
    SampleField out(2, q.grid(), q.source(), q.domain());
    out.comp(0) = s.g1.cwiseProduct(q.comp(0));
    const Eigen::VectorXcd cross =
        0.5 * (s.g2.cwiseProduct(q.comp(0)) + s.g1.cwiseProduct(q.comp(1)));
    out.comp(1) = cross;
    out.comp(2) = cross;
    out.comp(3) = s.g2.cwiseProduct(q.comp(1));
    return out;
}

inline SampleField adjoint_grad(const GradSymbols& s, const SampleField& g)
{
    detail::require_order(g, 1, "adjoint_grad");
    SampleField out(0, g.grid(), g.source(), g.domain());
    out.comp(0) =
        s.g1.conjugate().cwiseProduct(g.comp(0)) +
        s.g2.conjugate().cwiseProduct(g.comp(1));
    return out;
}

inline SampleField adjoint_symgrad(const GradSymbols& s, const SampleField& t)
{
    detail::require_order(t, 2, "adjoint_symgrad");
    SampleField out(1, t.grid(), t.source(), t.domain());
    const Eigen::VectorXcd c1 = s.g1.conjugate();
    const Eigen::VectorXcd c2 = s.g2.conjugate();
    out.comp(0) = c1.cwiseProduct(t.comp(0)) +
                  0.5 * c2.cwiseProduct(t.comp(1) + t.comp(2));
    out.comp(1) = 0.5 * c1.cwiseProduct(t.comp(1) + t.comp(2)) +
                  c2.cwiseProduct(t.comp(3));
    return out;
}

enum class DiffOp { D, E, D2 };

/// D: order 0 -> 1, pointwise (2 pi i k1 v, 2 pi i k2 v).
inline SampleField apply_D(const SampleField& v)
{
    return apply_grad(continuous_symbols(v.grid()), v);
}

/// E: order 1 -> 2, the symmetrized gradient in the frequency domain.
inline SampleField apply_E(const SampleField& q)
{
    return apply_symgrad(continuous_symbols(q.grid()), q);
}

/// D2 = E o D: order 0 -> 2. Implemented literally as the composition, so
/// the identity E(D v) == D2 v holds bit for bit.
inline SampleField apply_D2(const SampleField& v)
{
    const GradSymbols s = continuous_symbols(v.grid());
    return apply_symgrad(s, apply_grad(s, v));
}

/// Adjoint of the named operator, mapping back to the lower order.
inline SampleField adjoint_of(DiffOp op, const SampleField& field)
{
    const GradSymbols s = continuous_symbols(field.grid());
    switch (op)
    {
    case DiffOp::D:
        return adjoint_grad(s, field);
    case DiffOp::E:
        return adjoint_symgrad(s, field);
    case DiffOp::D2:
        return adjoint_grad(s, adjoint_symgrad(s, field));
    }
    throw std::invalid_argument("adjoint_of: unknown operator");
}

} // namespace slrf

#endif // SLRF_DIFFOPS_HPP
