#ifndef SLRF_SOLVER_CORE_HPP
#define SLRF_SOLVER_CORE_HPP

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "slrf/constants.hpp"
#include "slrf/field.hpp"
#include "slrf/grid.hpp"
#include "slrf/sampling.hpp"

namespace slrf {

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

///
/// ### RestorationProblem
///
/// Partial noisy Fourier sampling: observed(i) corresponds to the mask's
/// i-th kept index (sorted storage order). The support grid is the patch /
/// filter size shared by the structured low rank machinery.
///
struct RestorationProblem {
    CenteredGrid grid;
    SamplingMask mask;
    Eigen::VectorXcd observed;
    CenteredGrid support;

    void validate() const
    {
        if (!(mask.grid == grid))
        {
            throw std::invalid_argument("RestorationProblem: mask grid mismatch");
        }
        if (observed.size() != mask.count())
        {
            throw std::invalid_argument(
                "RestorationProblem: observed values must align with the mask");
        }
        if (support.n1 > grid.n1 || support.n2 > grid.n2)
        {
            throw std::invalid_argument("RestorationProblem: support exceeds grid");
        }
    }

    /// R* f: the observations placed at their indices, zero elsewhere.
    SampleField adjoint_observed() const
    {
        SampleField out(0, grid);
        for (std::int64_t i = 0; i < mask.count(); ++i)
        {
            out.comp(0)(mask.kept[static_cast<std::size_t>(i)]) = observed(i);
        }
        return out;
    }

    /// R v: restriction of an order 0 field to the mask.
    Eigen::VectorXcd restrict_to_mask(const SampleField& v) const
    {
        Eigen::VectorXcd out(mask.count());
        for (std::int64_t i = 0; i < mask.count(); ++i)
        {
            out(i) = v.comp(0)(mask.kept[static_cast<std::size_t>(i)]);
        }
        return out;
    }

    double data_misfit(const SampleField& v) const
    {
        return 0.5 * (restrict_to_mask(v) - observed).squaredNorm();
    }
};

/// Soft thresholding max(|c| - t, 0) c / |c|, with the convention 0/0 = 0.
inline Complex soft_threshold(Complex c, double t)
{
    const double mag = std::abs(c);
    if (mag <= t)
    {
        return Complex(0.0, 0.0);
    }
    return c * ((mag - t) / mag);
}

/// Componentwise soft threshold of a whole field.
inline void soft_threshold_field(SampleField& f, double t)
{
    for (int c = 0; c < f.components(); ++c)
    {
        auto& v = f.comp(c);
        for (Eigen::Index i = 0; i < v.size(); ++i)
        {
            v(i) = soft_threshold(v(i), t);
        }
    }
}

///
/// The per-frequency 3x3 Hermitian system of the coupled (v, q) quadratic
/// subproblem. With mask indicator m, derivative symbols (g1, g2) and
/// penalty beta, the block reads
///
///   [ m + b(|g1|^2+|g2|^2)   -b conj(g1)            -b conj(g2)          ]
///   [ -b g1                  b(1+|g1|^2+|g2|^2/2)   b conj(g2) g1 / 2    ]
///   [ -b g2                  b conj(g1) g2 / 2      b(1+|g2|^2+|g1|^2/2) ]
///
/// which is Hermitian positive definite for b > 0 except at an unmasked
/// zero frequency; a small diagonal floor keeps that case solvable.
///
struct FreqBlock3 {
    std::array<std::array<Complex, 3>, 3> a;

    static FreqBlock3 assemble(double mask_indicator, double beta, Complex g1,
                               Complex g2,
                               double floor = constants::kTikhonovFloor)
    {
        const double n1 = std::norm(g1);
        const double n2 = std::norm(g2);
        FreqBlock3 blk;
        blk.a[0] = {Complex(mask_indicator + beta * (n1 + n2) + floor),
                    -beta * std::conj(g1), -beta * std::conj(g2)};
        blk.a[1] = {-beta * g1, Complex(beta * (1.0 + n1 + 0.5 * n2) + floor),
                    0.5 * beta * std::conj(g2) * g1};
        blk.a[2] = {-beta * g2, 0.5 * beta * std::conj(g1) * g2,
                    Complex(beta * (1.0 + n2 + 0.5 * n1) + floor)};
        return blk;
    }

    /// Cramer's rule; the assembled blocks are well conditioned so this is
    /// both exact enough and branch-free.
    std::array<Complex, 3> solve(const std::array<Complex, 3>& rhs) const
    {
        const auto det3 = [](const std::array<std::array<Complex, 3>, 3>& m) {
            return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        };
        const Complex det = det3(a);
        std::array<Complex, 3> out;
        for (int col = 0; col < 3; ++col)
        {
            auto m = a;
            for (int r = 0; r < 3; ++r)
            {
                m[r][static_cast<std::size_t>(col)] = rhs[static_cast<std::size_t>(r)];
            }
            out[static_cast<std::size_t>(col)] = det3(m) / det;
        }
        return out;
    }
};

/// 2x2 analogue for the two-layer decomposition subproblem:
///   [ m + b w1 + floor, m; m, m + b w2 + floor ]
/// with w_i the squared symbol magnitudes of the two penalties.
inline std::array<Complex, 2> solve_block2(double mask_indicator, double beta,
                                           double w1, double w2, Complex rhs0,
                                           Complex rhs1,
                                           double floor = constants::kTikhonovFloor)
{
    const double a00 = mask_indicator + beta * w1 + floor;
    const double a11 = mask_indicator + beta * w2 + floor;
    const double a01 = mask_indicator;
    const double det = a00 * a11 - a01 * a01;
    return {(rhs0 * a11 - rhs1 * a01) / det, (rhs1 * a00 - rhs0 * a01) / det};
}

/// One diagnostics row shared by the iterative solvers.
struct IterationRecord {
    int iteration = 0;
    double objective = 0.0;
    double constraint1 = 0.0;
    double constraint2 = 0.0;
    double rel_change = 0.0;
};

struct SolveDiagnostics {
    std::vector<IterationRecord> history;
    bool converged = false;
    int iterations = 0;

    void push(int it, double obj, double c1, double c2, double rel)
    {
        history.push_back(IterationRecord{it, obj, c1, c2, rel});
    }
};

} // namespace slrf

#endif // SLRF_SOLVER_CORE_HPP
