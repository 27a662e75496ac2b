#ifndef SLRF_BASELINES_HPP
#define SLRF_BASELINES_HPP

#include <Eigen/Core>

#include <cmath>
#include <vector>

#include "slrf/constants.hpp"
#include "slrf/dft.hpp"
#include "slrf/diffops.hpp"
#include "slrf/field.hpp"
#include "slrf/frame.hpp"
#include "slrf/solver_core.hpp"

namespace slrf {

///
/// The discrete baselines share one pattern: the unknown image lives in
/// the frequency domain (where the data term and the periodic forward
/// differences are diagonal), while the l1 shrinkage acts on spatial
/// difference fields. Split Bregman alternates the two.
///

struct TgvParams {
    double gamma1 = 1e-3;
    double gamma2 = 2e-3;
    double beta = 0.1;
    int max_iters = 200;
    double tol = 1e-6;
};

struct TgvResult {
    SpatialImage u;
    SampleField p_spatial;  // converged auxiliary vector field, pixel domain
    SampleField v_hat;      // restored Fourier samples of u
    SampleField p_hat;      // Fourier samples of the auxiliary field
    SolveDiagnostics diagnostics;
};

/// Split Bregman for
///   min over (u, p) of 1/2 ||R F u - f||^2 + g1 ||grad u - p||_1 + g2 ||symgrad p||_1
/// with periodic forward differences. Componentwise (anisotropic) l1.
inline TgvResult solve_tgv_discrete(const RestorationProblem& problem,
                                    const TgvParams& params = {})
{
    problem.validate();
    const CenteredGrid& grid = problem.grid;
    const double beta = params.beta;
    const GradSymbols symbols = forward_difference_symbols(grid);
    const SampleField rstar_f = problem.adjoint_observed();

    std::vector<FreqBlock3> blocks(static_cast<std::size_t>(grid.size()));
    for (std::int64_t off = 0; off < grid.size(); ++off)
    {
        blocks[static_cast<std::size_t>(off)] =
            FreqBlock3::assemble(problem.mask.indicator(off), beta,
                                 symbols.g1(off), symbols.g2(off));
    }

    SampleField v = rstar_f;
    SampleField p(1, grid);
    SampleField c1(1, grid, FieldSource::unknown, Domain::spatial);
    SampleField d1 = c1;
    SampleField c2(2, grid, FieldSource::unknown, Domain::spatial);
    SampleField d2 = c2;

    TgvResult result;
    for (int iter = 1; iter <= params.max_iters; ++iter)
    {
        const SampleField z1_hat = dft_field(c1 - d1, true);
        const SampleField z2_hat = dft_field(c2 - d2, true);
        const SampleField dstar_z1 = adjoint_grad(symbols, z1_hat);
        const SampleField estar_z2 = adjoint_symgrad(symbols, z2_hat);

        SampleField v_new(0, grid);
        SampleField p_new(1, grid);
        for (std::int64_t off = 0; off < grid.size(); ++off)
        {
            const Complex f1 = rstar_f.comp(0)(off) + beta * dstar_z1.comp(0)(off);
            const Complex f2a = -beta * z1_hat.comp(0)(off) + beta * estar_z2.comp(0)(off);
            const Complex f2b = -beta * z1_hat.comp(1)(off) + beta * estar_z2.comp(1)(off);
            const auto sol = blocks[static_cast<std::size_t>(off)].solve({f1, f2a, f2b});
            v_new.comp(0)(off) = sol[0];
            p_new.comp(0)(off) = sol[1];
            p_new.comp(1)(off) = sol[2];
        }
        const double denom = std::sqrt(v.squared_norm() + p.squared_norm());
        const double rel_change =
            std::sqrt((v_new - v).squared_norm() + (p_new - p).squared_norm()) /
            std::max(denom, 1e-30);
        v = v_new;
        p = p_new;

        const SampleField r1 = dft_field(apply_grad(symbols, v) - p, false);
        const SampleField r2 = dft_field(apply_symgrad(symbols, p), false);

        double l1 = 0.0;
        for (int c = 0; c < 2; ++c)
        {
            l1 += params.gamma1 * r1.comp(c).cwiseAbs().sum();
        }
        for (int c = 0; c < 4; ++c)
        {
            l1 += params.gamma2 * r2.comp(c).cwiseAbs().sum();
        }

        c1 = r1 + d1;
        soft_threshold_field(c1, params.gamma1 / beta);
        c2 = r2 + d2;
        soft_threshold_field(c2, params.gamma2 / beta);
        const SampleField g1 = r1 - c1;
        const SampleField g2 = r2 - c2;
        d1 += g1;
        d2 += g2;

        result.diagnostics.push(iter, problem.data_misfit(v) + l1,
                                std::sqrt(g1.squared_norm()),
                                std::sqrt(g2.squared_norm()), rel_change);
        result.diagnostics.iterations = iter;
        if (rel_change < params.tol && iter > 1)
        {
            result.diagnostics.converged = true;
            break;
        }
    }

    result.u = dft_inverse(v);
    result.p_spatial = dft_field(p, false);
    result.v_hat = std::move(v);
    result.p_hat = std::move(p);
    return result;
}

struct InfconvParams {
    double gamma1 = 1e-3;
    double gamma2 = 2e-3;
    double beta = 0.1;
    int max_iters = 200;
    double tol = 1e-6;
};

struct InfconvResult {
    SpatialImage u;
    SampleField v1_hat; // first layer (first differences penalized)
    SampleField v2_hat; // second layer (second differences penalized)
    SolveDiagnostics diagnostics;
};

/// Split Bregman for the two-layer decomposition
///   min over (u1, u2) of 1/2 ||R F (u1 + u2) - f||^2
///                        + g1 ||grad u1||_1 + g2 ||grad^2 u2||_1.
inline InfconvResult solve_infconv_discrete(const RestorationProblem& problem,
                                            const InfconvParams& params = {})
{
    problem.validate();
    const CenteredGrid& grid = problem.grid;
    const double beta = params.beta;
    const GradSymbols symbols = forward_difference_symbols(grid);
    const SampleField rstar_f = problem.adjoint_observed();

    Eigen::VectorXd w1(grid.size()), w2(grid.size());
    for (std::int64_t off = 0; off < grid.size(); ++off)
    {
        const double a = std::norm(symbols.g1(off)) + std::norm(symbols.g2(off));
        w1(off) = a;
        w2(off) = a * a;
    }

    SampleField v1 = rstar_f;
    SampleField v2(0, grid);
    SampleField c1(1, grid, FieldSource::unknown, Domain::spatial);
    SampleField d1 = c1;
    SampleField c2(2, grid, FieldSource::unknown, Domain::spatial);
    SampleField d2 = c2;

    InfconvResult result;
    for (int iter = 1; iter <= params.max_iters; ++iter)
    {
        const SampleField z1_hat = dft_field(c1 - d1, true);
        const SampleField z2_hat = dft_field(c2 - d2, true);
        const SampleField dstar_z1 = adjoint_grad(symbols, z1_hat);
        const SampleField d2star_z2 =
            adjoint_grad(symbols, adjoint_symgrad(symbols, z2_hat));

        SampleField v1_new(0, grid);
        SampleField v2_new(0, grid);
        for (std::int64_t off = 0; off < grid.size(); ++off)
        {
            const Complex rhs0 = rstar_f.comp(0)(off) + beta * dstar_z1.comp(0)(off);
            const Complex rhs1 = rstar_f.comp(0)(off) + beta * d2star_z2.comp(0)(off);
            const auto sol = solve_block2(problem.mask.indicator(off), beta,
                                          w1(off), w2(off), rhs0, rhs1);
            v1_new.comp(0)(off) = sol[0];
            v2_new.comp(0)(off) = sol[1];
        }
        const double denom = std::sqrt(v1.squared_norm() + v2.squared_norm());
        const double rel_change =
            std::sqrt((v1_new - v1).squared_norm() + (v2_new - v2).squared_norm()) /
            std::max(denom, 1e-30);
        v1 = v1_new;
        v2 = v2_new;

        const SampleField r1 = dft_field(apply_grad(symbols, v1), false);
        const SampleField r2 =
            dft_field(apply_symgrad(symbols, apply_grad(symbols, v2)), false);

        double l1 = 0.0;
        for (int c = 0; c < 2; ++c)
        {
            l1 += params.gamma1 * r1.comp(c).cwiseAbs().sum();
        }
        for (int c = 0; c < 4; ++c)
        {
            l1 += params.gamma2 * r2.comp(c).cwiseAbs().sum();
        }

        c1 = r1 + d1;
        soft_threshold_field(c1, params.gamma1 / beta);
        c2 = r2 + d2;
        soft_threshold_field(c2, params.gamma2 / beta);
        const SampleField g1 = r1 - c1;
        const SampleField g2 = r2 - c2;
        d1 += g1;
        d2 += g2;

        SampleField sum = v1;
        sum += v2;
        result.diagnostics.push(iter, problem.data_misfit(sum) + l1,
                                std::sqrt(g1.squared_norm()),
                                std::sqrt(g2.squared_norm()), rel_change);
        result.diagnostics.iterations = iter;
        if (rel_change < params.tol && iter > 1)
        {
            result.diagnostics.converged = true;
            break;
        }
    }

    SampleField sum = v1;
    sum += v2;
    result.u = dft_inverse(sum);
    result.v1_hat = std::move(v1);
    result.v2_hat = std::move(v2);
    return result;
}

struct FrameletParams {
    double gamma = 1e-3;
    double beta = 0.1;
    int max_iters = 200;
    double tol = 1e-6;
};

struct FrameletResult {
    SpatialImage u;
    SampleField v_hat;
    SolveDiagnostics diagnostics;
};

/// Split Bregman for the framelet analysis model
///   min over u of 1/2 ||R F u - f||^2 + ||gamma . W u||_1
/// with the built-in 9-filter bank at one decomposition level. The
/// lowpass x lowpass channel carries weight zero and is never shrunk.
inline FrameletResult solve_framelet_analysis(const RestorationProblem& problem,
                                              const FrameletParams& params = {})
{
    problem.validate();
    const CenteredGrid& grid = problem.grid;
    const double beta = params.beta;
    const FilterStack stack = builtin_framelet_stack();
    const FrameTransform w(stack, grid);
    const SampleField rstar_f = problem.adjoint_observed();
    const int m2 = stack.count();

    SampleField v = rstar_f;
    std::vector<SampleField> c(static_cast<std::size_t>(m2),
                               SampleField(0, grid, FieldSource::unknown,
                                           Domain::spatial));
    std::vector<SampleField> d = c;
    std::vector<SampleField> z = c;

    FrameletResult result;
    for (int iter = 1; iter <= params.max_iters; ++iter)
    {
        for (int l = 0; l < m2; ++l)
        {
            z[static_cast<std::size_t>(l)] =
                c[static_cast<std::size_t>(l)] - d[static_cast<std::size_t>(l)];
        }
        const SampleField wz_hat = dft_field(w.synthesis(z), true);

        SampleField v_new(0, grid);
        for (std::int64_t off = 0; off < grid.size(); ++off)
        {
            const double m = problem.mask.indicator(off);
            v_new.comp(0)(off) =
                (rstar_f.comp(0)(off) + beta * wz_hat.comp(0)(off)) / (m + beta);
        }
        const double rel_change = std::sqrt((v_new - v).squared_norm()) /
                                  std::max(std::sqrt(v.squared_norm()), 1e-30);
        v = v_new;

        SampleField u_spatial(0, grid, FieldSource::unknown, Domain::spatial);
        u_spatial.comp(0) = dft2(grid, v.comp(0), false);
        const std::vector<SampleField> r = w.analysis(u_spatial);

        double l1 = 0.0;
        double res_sq = 0.0;
        for (int l = 0; l < m2; ++l)
        {
            const auto li = static_cast<std::size_t>(l);
            l1 += params.gamma * stack.weight(l) * r[li].comp(0).cwiseAbs().sum();
            SampleField t = r[li] + d[li];
            soft_threshold_field(t, params.gamma * stack.weight(l) / beta);
            c[li] = std::move(t);
            const SampleField g = r[li] - c[li];
            res_sq += g.squared_norm();
            d[li] += g;
        }

        result.diagnostics.push(iter, problem.data_misfit(v) + l1,
                                std::sqrt(res_sq), 0.0, rel_change);
        result.diagnostics.iterations = iter;
        if (rel_change < params.tol && iter > 1)
        {
            result.diagnostics.converged = true;
            break;
        }
    }

    result.u = dft_inverse(v);
    result.v_hat = std::move(v);
    return result;
}

/// Zero-filled reconstruction, the no-regularization reference point.
inline SpatialImage zero_fill_image(const RestorationProblem& problem)
{
    return dft_inverse(problem.adjoint_observed());
}

} // namespace slrf

#endif // SLRF_BASELINES_HPP
