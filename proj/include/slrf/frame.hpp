#ifndef SLRF_FRAME_HPP
#define SLRF_FRAME_HPP

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "slrf/constants.hpp"
#include "slrf/dft.hpp"
#include "slrf/field.hpp"
#include "slrf/grid.hpp"

namespace slrf {

enum class StackOrigin { svd_derived, builtin_framelet };

///
/// ### FilterStack
///
/// An ordered bank of M2 complex filters on a common rectangular support,
/// each with a nonnegative weight. Valid stacks satisfy the unitary
/// extension principle
///
///     sum_l sum_m a_l(k + m) conj(a_l(m)) = delta(k),
///
/// which makes the associated analysis/synthesis pair a tight frame
/// (W* W = I). `uep_residual` evaluates that identity; solvers gate on it.
///
class FilterStack {
public:
    FilterStack(const CenteredGrid& support,
                std::vector<Eigen::VectorXcd> filters, Eigen::VectorXd weights,
                StackOrigin origin)
        : support_(support), filters_(std::move(filters)),
          weights_(std::move(weights)), origin_(origin)
    {
        for (const auto& f : filters_)
        {
            if (f.size() != support_.size())
            {
                throw std::invalid_argument("FilterStack: filter size mismatch");
            }
        }
        if (weights_.size() != static_cast<Eigen::Index>(filters_.size()))
        {
            throw std::invalid_argument("FilterStack: weight count mismatch");
        }
    }

    const CenteredGrid& support() const { return support_; }
    int count() const { return static_cast<int>(filters_.size()); }
    const Eigen::VectorXcd& filter(int l) const
    {
        return filters_[static_cast<std::size_t>(l)];
    }
    double weight(int l) const { return weights_(l); }
    const Eigen::VectorXd& weights() const { return weights_; }
    StackOrigin origin() const { return origin_; }

    /// Max deviation of the UEP sum from a delta over all index offsets.
    /// Computed from the M2 x M2 Gram of filter rows, which carries exactly
    /// the same sums arranged by diagonal.
    double uep_residual() const
    {
        const std::int64_t m2 = support_.size();
        Eigen::MatrixXcd f(m2, static_cast<Eigen::Index>(filters_.size()));
        for (std::size_t l = 0; l < filters_.size(); ++l)
        {
            f.col(static_cast<Eigen::Index>(l)) = filters_[l];
        }
        const Eigen::MatrixXcd gram = f * f.adjoint();
        // bucket(k) = sum over m with m, m+k in support of gram(m+k, m)
        const int dn1 = 2 * support_.n1 - 1;
        const int dn2 = 2 * support_.n2 - 1;
        Eigen::MatrixXcd buckets = Eigen::MatrixXcd::Zero(dn1, dn2);
        for (std::int64_t i = 0; i < m2; ++i)
        {
            const auto [i1, i2] = support_.index_at(i);
            for (std::int64_t j = 0; j < m2; ++j)
            {
                const auto [j1, j2] = support_.index_at(j);
                buckets(i1 - j1 + support_.n1 - 1, i2 - j2 + support_.n2 - 1) +=
                    gram(i, j);
            }
        }
        double worst = 0.0;
        for (int a = 0; a < dn1; ++a)
        {
            for (int b = 0; b < dn2; ++b)
            {
                Complex expect = 0.0;
                if (a == support_.n1 - 1 && b == support_.n2 - 1)
                {
                    expect = 1.0;
                }
                worst = std::max(worst, std::abs(buckets(a, b) - expect));
            }
        }
        return worst;
    }

private:
    CenteredGrid support_;
    std::vector<Eigen::VectorXcd> filters_;
    Eigen::VectorXd weights_;
    StackOrigin origin_;
};

///
/// Builds the SVD-derived stack: filter l is the l-th right singular
/// vector scaled by M2^{-1/2} and reshaped onto the support using the same
/// storage order as the Hankel lift's columns. Weights follow the rule
/// gamma_l = nu / (sigma_l + eps).
///
/// Throws if the columns are not orthonormal (Gram deviation above 1e-8)
/// or if the shapes disagree.
///
inline FilterStack filters_from_svd(const Eigen::MatrixXcd& right_vectors,
                                    const Eigen::VectorXd& singular_values,
                                    const CenteredGrid& support, double nu,
                                    double eps)
{
    const std::int64_t m2 = support.size();
    if (right_vectors.rows() != m2 || right_vectors.cols() != m2)
    {
        throw std::invalid_argument("filters_from_svd: need |K| orthonormal columns");
    }
    if (eps <= 0.0 || nu < 0.0)
    {
        throw std::invalid_argument("filters_from_svd: need eps > 0 and nu >= 0");
    }
    const Eigen::MatrixXcd gram =
        right_vectors.adjoint() * right_vectors -
        Eigen::MatrixXcd::Identity(m2, m2);
    if (gram.cwiseAbs().maxCoeff() > constants::kGramGate)
    {
        throw std::invalid_argument("filters_from_svd: right vectors are not orthonormal");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(m2));
    std::vector<Eigen::VectorXcd> filters(static_cast<std::size_t>(m2));
    Eigen::VectorXd weights(m2);
    for (std::int64_t l = 0; l < m2; ++l)
    {
        filters[static_cast<std::size_t>(l)] = scale * right_vectors.col(l);
        const double sigma = l < singular_values.size() ? singular_values(l) : 0.0;
        weights(l) = nu / (sigma + eps);
    }
    return FilterStack(support, std::move(filters), std::move(weights),
                       StackOrigin::svd_derived);
}

///
/// The fixed 9-filter bank of tensor products of the univariate masks
/// (1/4, 1/2, 1/4), (sqrt2/4, 0, -sqrt2/4), (-1/4, 1/2, -1/4) on a 3x3
/// support. The lowpass x lowpass filter gets weight 0, every other filter
/// weight 1; solvers scale these by their own regularization parameter.
///
inline FilterStack builtin_framelet_stack()
{
    const double s = std::sqrt(2.0) / 4.0;
    const double masks[3][3] = {
        {0.25, 0.5, 0.25},
        {s, 0.0, -s},
        {-0.25, 0.5, -0.25},
    };
    const CenteredGrid support = make_centered_grid(3, 3);
    std::vector<Eigen::VectorXcd> filters;
    Eigen::VectorXd weights(9);
    int l = 0;
    for (int i = 0; i < 3; ++i)
    {
        for (int j = 0; j < 3; ++j)
        {
            Eigen::VectorXcd f(9);
            for (int a = 0; a < 3; ++a)
            {
                for (int b = 0; b < 3; ++b)
                {
                    f(3 * a + b) = masks[i][a] * masks[j][b];
                }
            }
            filters.push_back(std::move(f));
            weights(l) = (i == 0 && j == 0) ? 0.0 : 1.0;
            ++l;
        }
    }
    return FilterStack(support, std::move(filters), std::move(weights),
                       StackOrigin::builtin_framelet);
}

///
/// ### FrameTransform
///
/// Analysis and synthesis for a FilterStack on a fixed grid, as
/// concatenations of periodic discrete convolutions:
///
///   analysis_l  = a_l(-.) * field   (componentwise)
///   synthesis   = sum_l conj(a_l) * c_l
///
/// Convolutions are evaluated in the transform domain against cached
/// filter spectra; on a grid of extents N the spectrum of filter l is
/// S_l(w) = sum_{m in K} a_l(m) exp(+2 pi i w.m / N), so that
/// analysis_l = IDFT(S_l . DFT(field)).
///
class FrameTransform {
public:
    FrameTransform(const FilterStack& stack, const CenteredGrid& grid)
        : stack_(&stack), grid_(grid)
    {
        if (stack.support().n1 > grid.n1 || stack.support().n2 > grid.n2)
        {
            throw std::invalid_argument("FrameTransform: filter support exceeds grid");
        }
        spectra_.reserve(static_cast<std::size_t>(stack.count()));
        const CenteredGrid& sup = stack.support();
        for (int l = 0; l < stack.count(); ++l)
        {
            Eigen::VectorXcd spec(grid.size());
            for (int w1 = grid.lo1(); w1 <= grid.hi1(); ++w1)
            {
                for (int w2 = grid.lo2(); w2 <= grid.hi2(); ++w2)
                {
                    Complex s = 0.0;
                    for (int m1 = sup.lo1(); m1 <= sup.hi1(); ++m1)
                    {
                        for (int m2 = sup.lo2(); m2 <= sup.hi2(); ++m2)
                        {
                            const double phase =
                                2.0 * std::numbers::pi *
                                (static_cast<double>(w1) * m1 / grid.n1 +
                                 static_cast<double>(w2) * m2 / grid.n2);
                            s += stack.filter(l)(sup.offset(m1, m2)) *
                                 Complex(std::cos(phase), std::sin(phase));
                        }
                    }
                    spec(grid.offset(w1, w2)) = s;
                }
            }
            spectra_.push_back(std::move(spec));
        }
    }

    const FilterStack& stack() const { return *stack_; }
    const CenteredGrid& grid() const { return grid_; }

    /// M2 coefficient fields, same order as the input.
    std::vector<SampleField> analysis(const SampleField& field) const
    {
        if (!(field.grid() == grid_))
        {
            throw std::invalid_argument("FrameTransform::analysis: grid mismatch");
        }
        std::vector<Eigen::VectorXcd> hat(static_cast<std::size_t>(field.components()));
        for (int c = 0; c < field.components(); ++c)
        {
            hat[static_cast<std::size_t>(c)] = dft2(grid_, field.comp(c), true);
        }
        std::vector<SampleField> out;
        out.reserve(spectra_.size());
        for (const auto& spec : spectra_)
        {
            SampleField coeff(field.order(), grid_, field.source(), field.domain());
            for (int c = 0; c < field.components(); ++c)
            {
                coeff.comp(c) = dft2(
                    grid_, spec.cwiseProduct(hat[static_cast<std::size_t>(c)]).eval(),
                    false);
            }
            out.push_back(std::move(coeff));
        }
        return out;
    }

    SampleField synthesis(const std::vector<SampleField>& coeffs) const
    {
        if (static_cast<int>(coeffs.size()) != stack_->count())
        {
            throw std::invalid_argument("FrameTransform::synthesis: coefficient count "
                                        "mismatch");
        }
        const int order = coeffs.front().order();
        const int comps = coeffs.front().components();
        std::vector<Eigen::VectorXcd> acc(static_cast<std::size_t>(comps),
                                          Eigen::VectorXcd::Zero(grid_.size()));
        for (std::size_t l = 0; l < spectra_.size(); ++l)
        {
            if (coeffs[l].order() != order || !(coeffs[l].grid() == grid_))
            {
                throw std::invalid_argument("FrameTransform::synthesis: coefficient "
                                            "shape mismatch");
            }
            for (int c = 0; c < comps; ++c)
            {
                acc[static_cast<std::size_t>(c)] += spectra_[l].conjugate().cwiseProduct(
                    dft2(grid_, coeffs[l].comp(c), true));
            }
        }
        SampleField out(order, grid_, coeffs.front().source(),
                        coeffs.front().domain());
        for (int c = 0; c < comps; ++c)
        {
            out.comp(c) = dft2(grid_, acc[static_cast<std::size_t>(c)], false);
        }
        return out;
    }

private:
    const FilterStack* stack_;
    CenteredGrid grid_;
    std::vector<Eigen::VectorXcd> spectra_;
};

/// One-shot conveniences for the transform pair.
inline std::vector<SampleField> analysis(const FilterStack& stack,
                                         const SampleField& field)
{
    return FrameTransform(stack, field.grid()).analysis(field);
}

inline SampleField synthesis(const FilterStack& stack,
                             const std::vector<SampleField>& coeffs)
{
    if (coeffs.empty())
    {
        throw std::invalid_argument("synthesis: no coefficients");
    }
    return FrameTransform(stack, coeffs.front().grid()).synthesis(coeffs);
}

} // namespace slrf

#endif // SLRF_FRAME_HPP
