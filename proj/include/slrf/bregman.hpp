#ifndef SLRF_BREGMAN_HPP
#define SLRF_BREGMAN_HPP

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "slrf/constants.hpp"
#include "slrf/diffops.hpp"
#include "slrf/field.hpp"
#include "slrf/frame.hpp"
#include "slrf/solver_core.hpp"

namespace slrf {

struct ProposedParams {
    double beta = 1.0;
    int max_iters = 500;
    double tol = 1e-6;
    double floor = constants::kTikhonovFloor;
};

struct ProposedResult {
    SampleField v;
    SampleField q;
    SolveDiagnostics diagnostics;
};

///
/// Split Bregman solver for
///
///   min over (v, q) of  1/2 || R v - f ||^2
///                      + || gamma_1 . W1 (D v - q) ||_1
///                      + || gamma_2 . W2 (E q) ||_1
///
/// with tight frame transforms W1 (order 1) and W2 (order 2). Each sweep
/// consists of (1) the coupled quadratic (v, q) update, solved pointwise
/// over frequencies by Cramer's rule on the 3x3 Hermitian blocks (W* W = I
/// collapses the frame terms to plain squared norms), (2) per-filter soft
/// thresholding of the coefficient stacks with thresholds gamma_l / beta,
/// and (3) dual ascent. Stops when the relative change of (v, q) drops
/// below tol or at the iteration cap.
///
/// gamma_l are the stack weights. Stacks failing the unitary extension
/// principle gate are rejected.
///
inline ProposedResult solve_proposed(const RestorationProblem& problem,
                                     const FilterStack& w1_stack,
                                     const FilterStack& w2_stack,
                                     const ProposedParams& params = {})
{
    problem.validate();
    if (params.beta <= 0.0)
    {
        throw std::invalid_argument("solve_proposed: beta must be positive");
    }
    if (w1_stack.uep_residual() > constants::kUepGate ||
        w2_stack.uep_residual() > constants::kUepGate)
    {
        throw std::invalid_argument("solve_proposed: filter stack fails the UEP gate");
    }

    const CenteredGrid& grid = problem.grid;
    const double beta = params.beta;
    const GradSymbols symbols = continuous_symbols(grid);
    const FrameTransform w1(w1_stack, grid);
    const FrameTransform w2(w2_stack, grid);

    const SampleField rstar_f = problem.adjoint_observed();

    SampleField v = rstar_f; // zero-filled start
    SampleField q(1, grid);

    const int m2 = w1_stack.count();
    std::vector<SampleField> c1(static_cast<std::size_t>(m2), SampleField(1, grid));
    std::vector<SampleField> d1 = c1;
    std::vector<SampleField> c2(static_cast<std::size_t>(m2), SampleField(2, grid));
    std::vector<SampleField> d2 = c2;

    // Per-frequency blocks depend only on (mask, beta, symbols); factor the
    // assembly out of the loop by precomputing the blocks once.
    std::vector<FreqBlock3> blocks(static_cast<std::size_t>(grid.size()));
    for (std::int64_t off = 0; off < grid.size(); ++off)
    {
        blocks[static_cast<std::size_t>(off)] =
            FreqBlock3::assemble(problem.mask.indicator(off), beta,
                                 symbols.g1(off), symbols.g2(off), params.floor);
    }

    ProposedResult result{v, q, {}};
    double c1_initial = -1.0;
    double c2_initial = -1.0;

    std::vector<SampleField> z1(static_cast<std::size_t>(m2), SampleField(1, grid));
    std::vector<SampleField> z2(static_cast<std::size_t>(m2), SampleField(2, grid));

    for (int iter = 1; iter <= params.max_iters; ++iter)
    {
        // (1) quadratic (v, q) update
        for (int l = 0; l < m2; ++l)
        {
            z1[static_cast<std::size_t>(l)] =
                c1[static_cast<std::size_t>(l)] - d1[static_cast<std::size_t>(l)];
            z2[static_cast<std::size_t>(l)] =
                c2[static_cast<std::size_t>(l)] - d2[static_cast<std::size_t>(l)];
        }
        const SampleField w1z = w1.synthesis(z1);
        const SampleField w2z = w2.synthesis(z2);
        const SampleField dstar_w1z = adjoint_grad(symbols, w1z);
        const SampleField estar_w2z = adjoint_symgrad(symbols, w2z);

        SampleField v_new(0, grid);
        SampleField q_new(1, grid);
        for (std::int64_t off = 0; off < grid.size(); ++off)
        {
            const Complex f1 = rstar_f.comp(0)(off) + beta * dstar_w1z.comp(0)(off);
            const Complex f2a = -beta * w1z.comp(0)(off) + beta * estar_w2z.comp(0)(off);
            const Complex f2b = -beta * w1z.comp(1)(off) + beta * estar_w2z.comp(1)(off);
            const auto sol = blocks[static_cast<std::size_t>(off)].solve({f1, f2a, f2b});
            v_new.comp(0)(off) = sol[0];
            q_new.comp(0)(off) = sol[1];
            q_new.comp(1)(off) = sol[2];
        }

        const double denom = std::sqrt(v.squared_norm() + q.squared_norm());
        const double delta = std::sqrt((v_new - v).squared_norm() +
                                       (q_new - q).squared_norm());
        const double rel_change = delta / std::max(denom, 1e-30);
        v = v_new;
        q = q_new;

        // (2) shrinkage of the coefficient stacks
        const SampleField dv_minus_q = apply_grad(symbols, v) - q;
        const SampleField eq = apply_symgrad(symbols, q);
        const std::vector<SampleField> r1 = w1.analysis(dv_minus_q);
        const std::vector<SampleField> r2 = w2.analysis(eq);

        double l1_term = 0.0;
        for (int l = 0; l < m2; ++l)
        {
            const auto li = static_cast<std::size_t>(l);
            SampleField t1 = r1[li] + d1[li];
            soft_threshold_field(t1, w1_stack.weight(l) / beta);
            c1[li] = std::move(t1);
            SampleField t2 = r2[li] + d2[li];
            soft_threshold_field(t2, w2_stack.weight(l) / beta);
            c2[li] = std::move(t2);

            for (int c = 0; c < r1[li].components(); ++c)
            {
                l1_term += w1_stack.weight(l) * r1[li].comp(c).cwiseAbs().sum();
            }
            for (int c = 0; c < r2[li].components(); ++c)
            {
                l1_term += w2_stack.weight(l) * r2[li].comp(c).cwiseAbs().sum();
            }
        }

        // (3) dual ascent, tracking the constraint residuals
        double c1_res_sq = 0.0;
        double c2_res_sq = 0.0;
        for (int l = 0; l < m2; ++l)
        {
            const auto li = static_cast<std::size_t>(l);
            const SampleField g1 = r1[li] - c1[li];
            const SampleField g2 = r2[li] - c2[li];
            c1_res_sq += g1.squared_norm();
            c2_res_sq += g2.squared_norm();
            d1[li] += g1;
            d2[li] += g2;
        }
        const double c1_res = std::sqrt(c1_res_sq);
        const double c2_res = std::sqrt(c2_res_sq);
        if (c1_initial < 0.0)
        {
            c1_initial = c1_res;
            c2_initial = c2_res;
        }

        const double objective = problem.data_misfit(v) + l1_term;
        result.diagnostics.push(iter, objective, c1_res, c2_res, rel_change);
        result.diagnostics.iterations = iter;

        if (rel_change < params.tol && iter > 1)
        {
            result.diagnostics.converged = true;
            break;
        }
    }

    result.v = std::move(v);
    result.q = std::move(q);
    return result;
}

} // namespace slrf

#endif // SLRF_BREGMAN_HPP
