#ifndef SLRF_PIPELINE_HPP
#define SLRF_PIPELINE_HPP

#include <utility>

#include "slrf/baselines.hpp"
#include "slrf/bregman.hpp"
#include "slrf/dft.hpp"
#include "slrf/diffops.hpp"
#include "slrf/frame.hpp"
#include "slrf/hankel.hpp"
#include "slrf/irls.hpp"
#include "slrf/solver_core.hpp"

namespace slrf {

/// How the pre-restored auxiliary field feeding the second Hankel lift is
/// obtained: the converged TGV vector field, or the frequency gradient of
/// the pre-restored samples.
enum class QtildeSource { tgv_p, grad_of_vtilde };

struct PipelineParams {
    TgvParams pre;                 // TGV pre-restoration
    double nu1 = 1e-3;             // weight scale for W1
    double nu2 = 1e-3;             // weight scale for W2
    double eps_rel = 1e-3;         // eps = eps_rel * sigma_max per stack
    ProposedParams solve;
    QtildeSource qtilde = QtildeSource::tgv_p;
};

struct PipelineResult {
    SpatialImage image;
    SampleField v;
    SampleField q;
    SampleField v_tilde;
    SampleField q_tilde;
    Eigen::VectorXd spectrum1; // singular values of the pre-restored lifts
    Eigen::VectorXd spectrum2;
    SolveDiagnostics pre_diagnostics;
    SolveDiagnostics diagnostics;
};

/// Weight denominator floor: eps_rel relative to the top singular value,
/// falling back to an absolute 1 when the lift vanishes.
inline double weight_eps(const Eigen::VectorXd& values, double eps_rel)
{
    const double top = values.size() > 0 ? values(0) : 0.0;
    return top > 0.0 ? eps_rel * top : 1.0;
}

/// Derives both filter stacks from the SVDs of the lifts of a given
/// (v, q) estimate. Exposed separately so oracle stacks can be produced
/// from exact fields in tests and demos.
inline std::pair<FilterStack, FilterStack> stacks_from_estimate(
    const SampleField& v_tilde, const SampleField& q_tilde,
    const CenteredGrid& support, double nu1, double nu2, double eps_rel,
    Eigen::VectorXd* spectrum1 = nullptr, Eigen::VectorXd* spectrum2 = nullptr)
{
    const GradSymbols symbols = continuous_symbols(v_tilde.grid());
    const SampleField resid = apply_grad(symbols, v_tilde) - q_tilde;
    const SampleField tensor = apply_symgrad(symbols, q_tilde);
    const SvdResult s1 = svd(lift(resid, support));
    const SvdResult s2 = svd(lift(tensor, support));
    if (spectrum1 != nullptr)
    {
        *spectrum1 = s1.values;
    }
    if (spectrum2 != nullptr)
    {
        *spectrum2 = s2.values;
    }
    FilterStack w1 = filters_from_svd(s1.right, s1.values, support, nu1,
                                      weight_eps(s1.values, eps_rel));
    FilterStack w2 = filters_from_svd(s2.right, s2.values, support, nu2,
                                      weight_eps(s2.values, eps_rel));
    return {std::move(w1), std::move(w2)};
}

///
/// End-to-end restoration: TGV pre-restoration, filter stacks from the
/// SVDs of the pre-restored lifts, split Bregman solve, inverse DFT.
///
inline PipelineResult pipeline_proposed(const RestorationProblem& problem,
                                        const PipelineParams& params = {})
{
    problem.validate();

    TgvResult pre = solve_tgv_discrete(problem, params.pre);
    SampleField v_tilde = std::move(pre.v_hat);
    SampleField q_tilde =
        params.qtilde == QtildeSource::tgv_p
            ? std::move(pre.p_hat)
            : apply_grad(continuous_symbols(problem.grid), v_tilde);

    PipelineResult result;
    auto [w1, w2] = stacks_from_estimate(v_tilde, q_tilde, problem.support,
                                         params.nu1, params.nu2, params.eps_rel,
                                         &result.spectrum1, &result.spectrum2);

    ProposedResult solved = solve_proposed(problem, w1, w2, params.solve);

    result.image = dft_inverse(solved.v);
    result.v = std::move(solved.v);
    result.q = std::move(solved.q);
    result.v_tilde = std::move(v_tilde);
    result.q_tilde = std::move(q_tilde);
    result.pre_diagnostics = std::move(pre.diagnostics);
    result.diagnostics = std::move(solved.diagnostics);
    return result;
}

} // namespace slrf

#endif // SLRF_PIPELINE_HPP
