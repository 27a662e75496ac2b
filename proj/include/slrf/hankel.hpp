#ifndef SLRF_HANKEL_HPP
#define SLRF_HANKEL_HPP

#include <Eigen/Core>
#include <Eigen/SVD>

#include <stdexcept>

#include "slrf/constants.hpp"
#include "slrf/field.hpp"
#include "slrf/grid.hpp"

namespace slrf {

///
/// Dense multi-fold Hankel matrix of a sample field. Rows are grouped by
/// component in component order (fold stacking is fixed: component c
/// occupies rows [c*M1, (c+1)*M1)); within a fold, row r enumerates
/// O:K in storage order and column j enumerates K in storage order, with
/// entry field_c(m_r + k_j).
///
struct HankelLift {
    Eigen::MatrixXcd matrix;
    int order = 0;
    CenteredGrid grid;
    CenteredGrid support;
    GridDifference rows;

    std::int64_t fold_rows() const { return rows.size(); }
};

inline HankelLift lift(const SampleField& field, const CenteredGrid& support)
{
    HankelLift h;
    h.order = field.order();
    h.grid = field.grid();
    h.support = support;
    h.rows = grid_difference(field.grid(), support);

    const std::int64_t m1 = h.rows.size();
    const std::int64_t m2 = support.size();
    h.matrix.resize(m1 * field.components(), m2);
    for (int c = 0; c < field.components(); ++c)
    {
        const std::int64_t base = static_cast<std::int64_t>(c) * m1;
        for (std::int64_t r = 0; r < m1; ++r)
        {
            const auto [r1, r2] = h.rows.index_at(r);
            for (std::int64_t j = 0; j < m2; ++j)
            {
                const auto [k1, k2] = support.index_at(j);
                h.matrix(base + r, j) = field.at(c, r1 + k1, r2 + k2);
            }
        }
    }
    return h;
}

/// Adjoint of lift under the standard inner products: every matrix entry
/// is accumulated back onto the field index it was read from. The lift has
/// real 0/1 coefficients, so no conjugation appears.
inline SampleField lift_adjoint(const Eigen::MatrixXcd& matrix, int order,
                                const CenteredGrid& grid,
                                const CenteredGrid& support)
{
    const GridDifference rows = grid_difference(grid, support);
    const std::int64_t m1 = rows.size();
    const std::int64_t m2 = support.size();
    const int comps = 1 << order;
    if (matrix.rows() != m1 * comps || matrix.cols() != m2)
    {
        throw std::invalid_argument("lift_adjoint: matrix dimensions inconsistent "
                                    "with field shape and support");
    }
    SampleField out(order, grid);
    for (int c = 0; c < comps; ++c)
    {
        const std::int64_t base = static_cast<std::int64_t>(c) * m1;
        auto& comp = out.comp(c);
        for (std::int64_t r = 0; r < m1; ++r)
        {
            const auto [r1, r2] = rows.index_at(r);
            for (std::int64_t j = 0; j < m2; ++j)
            {
                const auto [k1, k2] = support.index_at(j);
                comp(grid.offset(r1 + k1, r2 + k2)) += matrix(base + r, j);
            }
        }
    }
    return out;
}

struct SvdResult {
    Eigen::MatrixXcd left;    // thin U
    Eigen::VectorXd values;   // nonincreasing
    Eigen::MatrixXcd right;   // full V (n x n)
};

/// Full SVD (thin left factor, full right factor). Throws on non-finite
/// entries.
inline SvdResult svd(const Eigen::MatrixXcd& m)
{
    if (!m.allFinite())
    {
        throw std::invalid_argument("svd: matrix has non-finite entries");
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> solver(m,
                                           Eigen::ComputeThinU | Eigen::ComputeFullV);
    return SvdResult{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

inline SvdResult svd(const HankelLift& h) { return svd(h.matrix); }

/// Count of singular values above tol_rel times the largest one. A zero
/// (or empty) spectrum has rank 0.
inline int numerical_rank(const Eigen::VectorXd& values,
                          double tol_rel = constants::kRankTol)
{
    if (values.size() == 0 || values(0) <= 0.0)
    {
        return 0;
    }
    const double cut = tol_rel * values(0);
    int r = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i)
    {
        if (values(i) > cut)
        {
            ++r;
        }
    }
    return r;
}

} // namespace slrf

#endif // SLRF_HANKEL_HPP
