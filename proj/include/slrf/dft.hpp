#ifndef SLRF_DFT_HPP
#define SLRF_DFT_HPP

#include <fftw3.h>

#include <Eigen/Core>

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "slrf/field.hpp"
#include "slrf/grid.hpp"

namespace slrf {

namespace detail {

/// Process-wide cache of FFTW plans, one per (n1, n2, direction). Plans are
/// created with FFTW_ESTIMATE | FFTW_UNALIGNED so they can be executed on
/// any buffer via the new-array interface. Planning is serialized; execution
/// is thread-safe.
class FftPlanCache {
public:
    static FftPlanCache& instance()
    {
        static FftPlanCache cache;
        return cache;
    }

    fftw_plan get(int n1, int n2, int sign)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_tuple(n1, n2, sign);
        auto it = plans_.find(key);
        if (it != plans_.end())
        {
            return it->second;
        }
        Eigen::VectorXcd dummy(static_cast<std::int64_t>(n1) * n2);
        auto* ptr = reinterpret_cast<fftw_complex*>(dummy.data());
        fftw_plan plan = fftw_plan_dft_2d(n1, n2, ptr, ptr, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr)
        {
            throw std::runtime_error("FFTW planning failed");
        }
        plans_.emplace(key, plan);
        return plan;
    }

private:
    FftPlanCache() = default;
    ~FftPlanCache()
    {
        for (auto& [key, plan] : plans_)
        {
            fftw_destroy_plan(plan);
        }
    }
    FftPlanCache(const FftPlanCache&) = delete;

    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

/// Rotate a centered-layout array so its origin lands at storage (0,0)
/// (shift = +center) or back (shift = -center).
inline void rotate_centered(const CenteredGrid& g, const Complex* in,
                            Complex* out, bool to_fftw_layout)
{
    const int s1 = to_fftw_layout ? g.center1() : g.n1 - g.center1();
    const int s2 = to_fftw_layout ? g.center2() : g.n2 - g.center2();
    for (int i = 0; i < g.n1; ++i)
    {
        const int ti = (i + s1) % g.n1;
        const Complex* src = in + static_cast<std::int64_t>(i) * g.n2;
        Complex* dst = out + static_cast<std::int64_t>(ti) * g.n2;
        for (int j = 0; j < g.n2; ++j)
        {
            dst[(j + s2) % g.n2] = src[j];
        }
    }
}

} // namespace detail

///
/// Unitary DFT between two centered-index arrays of the same extents.
/// Forward: X(w) = (N1 N2)^{-1/2} sum_k x(k) exp(-2 pi i w.k / N), with
/// both k and w centered. The centered indexing is realized by pure index
/// rotations around the FFT, so Parseval holds to rounding error.
///
inline Eigen::VectorXcd dft2(const CenteredGrid& grid,
                             const Eigen::VectorXcd& in, bool forward)
{
    if (in.size() != grid.size())
    {
        throw std::invalid_argument("dft2: extent mismatch");
    }
    Eigen::VectorXcd buf(grid.size());
    detail::rotate_centered(grid, in.data(), buf.data(), true);
    fftw_plan plan = detail::FftPlanCache::instance().get(
        grid.n1, grid.n2, forward ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, ptr, ptr);
    Eigen::VectorXcd out(grid.size());
    detail::rotate_centered(grid, buf.data(), out.data(), false);
    out *= 1.0 / std::sqrt(static_cast<double>(grid.size()));
    return out;
}

/// Image -> field of Fourier samples (order 0, tagged as DFT-sourced).
inline SampleField dft_forward(const SpatialImage& image)
{
    SampleField field(0, image.grid, FieldSource::dft, Domain::frequency);
    field.comp(0) = dft2(image.grid, image.values, true);
    return field;
}

/// Field of Fourier samples (order 0) -> image.
inline SpatialImage dft_inverse(const SampleField& field)
{
    if (field.order() != 0)
    {
        throw std::invalid_argument("dft_inverse: expected an order 0 field");
    }
    SpatialImage image(field.grid());
    image.values = dft2(field.grid(), field.comp(0), false);
    return image;
}

/// Componentwise unitary DFT of any field, preserving order.
inline SampleField dft_field(const SampleField& field, bool forward)
{
    SampleField out(field.order(), field.grid(), FieldSource::dft,
                    forward ? Domain::frequency : Domain::spatial);
    for (int c = 0; c < field.components(); ++c)
    {
        out.comp(c) = dft2(field.grid(), field.comp(c), forward);
    }
    return out;
}

} // namespace slrf

#endif // SLRF_DFT_HPP
