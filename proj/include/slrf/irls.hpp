#ifndef SLRF_IRLS_HPP
#define SLRF_IRLS_HPP

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "slrf/diffops.hpp"
#include "slrf/field.hpp"
#include "slrf/hankel.hpp"
#include "slrf/solver_core.hpp"

namespace slrf {

struct IrlsParams {
    double gamma1 = 1e-6;
    double gamma2 = 1e-6;
    int outer_iters = 20;
    double tol = 1e-6;
    /// Smoothing schedule, in units of squared singular values relative to
    /// the largest eigenvalue of the initial Gram matrices.
    double eps0_rel = 1e-2;
    double eps_min_rel = 1e-10;
    double eps_factor = 0.5;
    int cg_max = 500;
    double cg_tol = 1e-10;
    /// Residual gate above which hitting the CG cap counts as failure.
    double cg_fail_tol = 1e-4;
    bool freeze_second = false;
};

struct IrlsResult {
    SampleField first;
    SampleField second;
    /// Smoothed log-det objective per outer iteration, evaluated with the
    /// iteration's own smoothing constants before the update.
    std::vector<double> objective_history;
    SolveDiagnostics diagnostics;
};

namespace detail {

struct PairState {
    SampleField a;
    SampleField b;

    PairState& operator+=(const PairState& o)
    {
        a += o.a;
        b += o.b;
        return *this;
    }
    PairState& operator-=(const PairState& o)
    {
        a -= o.a;
        b -= o.b;
        return *this;
    }
    PairState& operator*=(double s)
    {
        a *= Complex(s, 0.0);
        b *= Complex(s, 0.0);
        return *this;
    }
    double squared_norm() const { return a.squared_norm() + b.squared_norm(); }
    Complex dot(const PairState& o) const { return a.dot(o.a) + b.dot(o.b); }
};

inline PairState axpy(double alpha, const PairState& x, PairState y)
{
    PairState scaled = x;
    scaled *= alpha;
    y += scaled;
    return y;
}

/// Conjugate gradient on a Hermitian positive semidefinite operator,
/// warm-started. Returns the final relative residual. The quadratic form is
/// monotonically nonincreasing across CG iterations, which is what the
/// surrounding majorize-minimize loop relies on.
inline double conjugate_gradient(
    const std::function<PairState(const PairState&)>& apply, const PairState& rhs,
    PairState& x, double tol, int max_iters)
{
    const double bnorm = std::sqrt(rhs.squared_norm());
    if (bnorm == 0.0)
    {
        x *= 0.0;
        return 0.0;
    }
    PairState r = rhs;
    r -= apply(x);
    PairState p = r;
    double rs = r.squared_norm();
    double rel = std::sqrt(rs) / bnorm;
    for (int it = 0; it < max_iters && rel > tol; ++it)
    {
        const PairState ap = apply(p);
        const double p_ap = std::real(p.dot(ap));
        if (p_ap <= 0.0)
        {
            break; // numerically flat direction; accepted iterate is still valid
        }
        const double alpha = rs / p_ap;
        x = axpy(alpha, p, std::move(x));
        r = axpy(-alpha, ap, std::move(r));
        const double rs_new = r.squared_norm();
        rel = std::sqrt(rs_new) / bnorm;
        p = axpy(rs_new / rs, p, r);
        rs = rs_new;
    }
    return rel;
}

struct GramInfo {
    Eigen::VectorXd eigenvalues; // ascending
    Eigen::MatrixXcd vectors;
    double logdet(double eps) const
    {
        double s = 0.0;
        for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        {
            s += std::log(std::max(eigenvalues(i), 0.0) + eps);
        }
        return s;
    }
    Eigen::MatrixXcd inverse_shifted(double eps) const
    {
        Eigen::VectorXd inv(eigenvalues.size());
        for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        {
            inv(i) = 1.0 / (std::max(eigenvalues(i), 0.0) + eps);
        }
        return vectors * inv.asDiagonal() * vectors.adjoint();
    }
};

inline GramInfo gram_eig(const Eigen::MatrixXcd& h)
{
    const Eigen::MatrixXcd gram = h.adjoint() * h;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    return GramInfo{eig.eigenvalues(), eig.eigenvectors()};
}

///
/// Shared IRLS driver. The two lift maps T1, T2 and their adjoints define
/// the structured penalties; the data map couples the state to the mask.
/// Each outer iteration majorizes the smoothed log-det penalties at the
/// current Gram matrices and solves the resulting quadratic by CG, warm
/// started at the current state, so the tracked objective
///
///   1/2 || data misfit ||^2 + gamma_i / 2 * ln det (H_i* H_i + eps_i I)
///
/// never increases, including across the epsilon halving steps.
///
struct IrlsMaps {
    std::function<SampleField(const PairState&)> t1;      // state -> lifted field 1
    std::function<SampleField(const PairState&)> t2;      // state -> lifted field 2
    std::function<PairState(const SampleField&, const SampleField&)> adjoints;
    std::function<Eigen::VectorXcd(const PairState&)> data_forward;
    std::function<PairState(const Eigen::VectorXcd&)> data_adjoint;
};

inline IrlsResult irls_driver(const RestorationProblem& problem,
                              PairState state, const IrlsMaps& maps,
                              const IrlsParams& params)
{
    problem.validate();
    const CenteredGrid& support = problem.support;

    IrlsResult result{state.a, state.b, {}, {}};
    double eps1 = 0.0, eps2 = 0.0, eps1_min = 0.0, eps2_min = 0.0;

    const auto lift_field = [&](const SampleField& f) { return lift(f, support); };

    for (int iter = 1; iter <= params.outer_iters; ++iter)
    {
        const HankelLift h1 = lift_field(maps.t1(state));
        const HankelLift h2 = lift_field(maps.t2(state));
        const GramInfo g1 = gram_eig(h1.matrix);
        const GramInfo g2 = gram_eig(h2.matrix);

        if (iter == 1)
        {
            const double top1 = std::max(g1.eigenvalues.maxCoeff(), 0.0);
            const double top2 = std::max(g2.eigenvalues.maxCoeff(), 0.0);
            eps1 = top1 > 0.0 ? params.eps0_rel * top1 : 1.0;
            eps2 = top2 > 0.0 ? params.eps0_rel * top2 : 1.0;
            eps1_min = top1 > 0.0 ? params.eps_min_rel * top1 : 1.0;
            eps2_min = top2 > 0.0 ? params.eps_min_rel * top2 : 1.0;
        }
        else
        {
            eps1 = std::max(eps1 * params.eps_factor, eps1_min);
            eps2 = std::max(eps2 * params.eps_factor, eps2_min);
        }

        const Eigen::VectorXcd misfit = maps.data_forward(state) - problem.observed;
        const double objective = 0.5 * misfit.squaredNorm() +
                                 0.5 * params.gamma1 * g1.logdet(eps1) +
                                 0.5 * params.gamma2 * g2.logdet(eps2);
        result.objective_history.push_back(objective);

        const Eigen::MatrixXcd w1 = g1.inverse_shifted(eps1);
        const Eigen::MatrixXcd w2 = g2.inverse_shifted(eps2);

        const auto apply_normal = [&](const PairState& x) {
            PairState out = maps.data_adjoint(maps.data_forward(x));
            const HankelLift l1 = lift_field(maps.t1(x));
            const HankelLift l2 = lift_field(maps.t2(x));
            const SampleField back1 = lift_adjoint(
                (params.gamma1 * (l1.matrix * w1)).eval(), l1.order,
                problem.grid, support);
            const SampleField back2 = lift_adjoint(
                (params.gamma2 * (l2.matrix * w2)).eval(), l2.order,
                problem.grid, support);
            PairState penalty = maps.adjoints(back1, back2);
            out += penalty;
            if (params.freeze_second)
            {
                out.b *= 0.0;
            }
            return out;
        };

        PairState rhs = maps.data_adjoint(problem.observed);
        if (params.freeze_second)
        {
            rhs.b *= 0.0;
        }

        PairState next = state;
        if (params.freeze_second)
        {
            // keep the frozen part out of the Krylov space entirely
            PairState frozen_part = state;
            frozen_part.a *= 0.0;
            PairState moving = state;
            moving.b *= 0.0;
            // rhs must account for the frozen contribution
            PairState frozen_effect = apply_normal(frozen_part);
            frozen_effect.b *= 0.0;
            rhs -= frozen_effect;
            const double rel = conjugate_gradient(apply_normal, rhs, moving,
                                                  params.cg_tol, params.cg_max);
            if (rel > params.cg_fail_tol)
            {
                throw numerical_error("IRLS inner CG failed to converge");
            }
            next = moving;
            next.b = state.b;
        }
        else
        {
            const double rel = conjugate_gradient(apply_normal, rhs, next,
                                                  params.cg_tol, params.cg_max);
            if (rel > params.cg_fail_tol)
            {
                throw numerical_error("IRLS inner CG failed to converge");
            }
        }

        PairState diff = next;
        diff -= state;
        const double rel_change = std::sqrt(diff.squared_norm()) /
                                  std::max(std::sqrt(state.squared_norm()), 1e-30);
        state = std::move(next);

        result.diagnostics.push(iter, objective, 0.0, 0.0, rel_change);
        result.diagnostics.iterations = iter;
        if (rel_change < params.tol && iter > 1)
        {
            result.diagnostics.converged = true;
            break;
        }
    }

    result.first = std::move(state.a);
    result.second = std::move(state.b);
    return result;
}

} // namespace detail

///
/// IRLS solver for the structured low rank model with state (v, q),
/// penalizing the smoothed Schatten surrogates of H(D v - q) and H(E q).
/// init_v / init_q come from a pre-restoration.
///
inline IrlsResult solve_irls_slrm(const RestorationProblem& problem,
                                  const SampleField& init_v,
                                  const SampleField& init_q,
                                  const IrlsParams& params = {})
{
    const GradSymbols symbols = continuous_symbols(problem.grid);
    detail::IrlsMaps maps;
    maps.t1 = [&](const detail::PairState& x) {
        return apply_grad(symbols, x.a) - x.b;
    };
    maps.t2 = [&](const detail::PairState& x) { return apply_symgrad(symbols, x.b); };
    maps.adjoints = [&](const SampleField& b1, const SampleField& b2) {
        detail::PairState out{adjoint_grad(symbols, b1),
                              adjoint_symgrad(symbols, b2) - b1};
        return out;
    };
    maps.data_forward = [&](const detail::PairState& x) {
        return problem.restrict_to_mask(x.a);
    };
    maps.data_adjoint = [&](const Eigen::VectorXcd& y) {
        SampleField v(0, problem.grid);
        for (std::int64_t i = 0; i < problem.mask.count(); ++i)
        {
            v.comp(0)(problem.mask.kept[static_cast<std::size_t>(i)]) = y(i);
        }
        return detail::PairState{std::move(v), SampleField(1, problem.grid)};
    };
    return detail::irls_driver(problem, detail::PairState{init_v, init_q}, maps,
                               params);
}

///
/// IRLS solver for the two-layer decomposition v = v1 + v2 with penalties
/// on H(D v1) and H(D2 v2) and the data term on the sum.
///
inline IrlsResult solve_irls_gslr(const RestorationProblem& problem,
                                  const SampleField& init_v1,
                                  const SampleField& init_v2,
                                  const IrlsParams& params = {})
{
    const GradSymbols symbols = continuous_symbols(problem.grid);
    detail::IrlsMaps maps;
    maps.t1 = [&](const detail::PairState& x) { return apply_grad(symbols, x.a); };
    maps.t2 = [&](const detail::PairState& x) {
        return apply_symgrad(symbols, apply_grad(symbols, x.b));
    };
    maps.adjoints = [&](const SampleField& b1, const SampleField& b2) {
        detail::PairState out{adjoint_grad(symbols, b1),
                              adjoint_grad(symbols, adjoint_symgrad(symbols, b2))};
        return out;
    };
    maps.data_forward = [&](const detail::PairState& x) {
        SampleField sum = x.a;
        sum += x.b;
        return problem.restrict_to_mask(sum);
    };
    maps.data_adjoint = [&](const Eigen::VectorXcd& y) {
        SampleField v(0, problem.grid);
        for (std::int64_t i = 0; i < problem.mask.count(); ++i)
        {
            v.comp(0)(problem.mask.kept[static_cast<std::size_t>(i)]) = y(i);
        }
        return detail::PairState{v, v};
    };
    return detail::irls_driver(problem, detail::PairState{init_v1, init_v2}, maps,
                               params);
}

} // namespace slrf

#endif // SLRF_IRLS_HPP
