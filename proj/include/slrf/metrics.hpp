#ifndef SLRF_METRICS_HPP
#define SLRF_METRICS_HPP

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "slrf/constants.hpp"
#include "slrf/field.hpp"
#include "slrf/grid.hpp"

namespace slrf {

struct MetricReport {
    double snr_db = 0.0;
    double hfen = 0.0;
    double ssim = 0.0;
};

namespace detail {

/// Periodic convolution of a real image with a small centered kernel.
/// All metric filters use the library's periodic boundary convention.
inline Eigen::VectorXd periodic_filter(const CenteredGrid& grid,
                                       const Eigen::VectorXd& img,
                                       const Eigen::MatrixXd& kernel)
{
    const int half1 = static_cast<int>(kernel.rows()) / 2;
    const int half2 = static_cast<int>(kernel.cols()) / 2;
    Eigen::VectorXd out(grid.size());
    for (int i = grid.lo1(); i <= grid.hi1(); ++i)
    {
        for (int j = grid.lo2(); j <= grid.hi2(); ++j)
        {
            double acc = 0.0;
            for (int a = -half1; a <= half1; ++a)
            {
                for (int b = -half2; b <= half2; ++b)
                {
                    const auto [w1, w2] = grid.wrap(i - a, j - b);
                    acc += kernel(a + half1, b + half2) *
                           img(grid.offset(w1, w2));
                }
            }
            out(grid.offset(i, j)) = acc;
        }
    }
    return out;
}

/// Laplacian-of-Gaussian kernel, zero-sum normalized: a Gaussian is built
/// and normalized to unit mass, multiplied by (r^2 - 2 sigma^2) / sigma^4,
/// then shifted to zero mean.
inline Eigen::MatrixXd log_kernel(int size, double sigma)
{
    const int half = size / 2;
    Eigen::MatrixXd gauss(size, size);
    for (int a = -half; a <= half; ++a)
    {
        for (int b = -half; b <= half; ++b)
        {
            gauss(a + half, b + half) =
                std::exp(-(a * a + b * b) / (2.0 * sigma * sigma));
        }
    }
    gauss /= gauss.sum();
    Eigen::MatrixXd kernel(size, size);
    for (int a = -half; a <= half; ++a)
    {
        for (int b = -half; b <= half; ++b)
        {
            kernel(a + half, b + half) =
                gauss(a + half, b + half) *
                (a * a + b * b - 2.0 * sigma * sigma) / (sigma * sigma * sigma * sigma);
        }
    }
    kernel.array() -= kernel.sum() / (size * size);
    return kernel;
}

inline Eigen::MatrixXd gaussian_kernel(int size, double sigma)
{
    const int half = size / 2;
    Eigen::MatrixXd k(size, size);
    for (int a = -half; a <= half; ++a)
    {
        for (int b = -half; b <= half; ++b)
        {
            k(a + half, b + half) =
                std::exp(-(a * a + b * b) / (2.0 * sigma * sigma));
        }
    }
    k /= k.sum();
    return k;
}

inline void require_same_extents(const SpatialImage& u, const SpatialImage& ref,
                                 const char* where)
{
    if (!(u.grid == ref.grid))
    {
        throw std::invalid_argument(std::string(where) + ": extent mismatch");
    }
}

} // namespace detail

/// 20 log10(||ref|| / ||u - ref||) on real parts. Identical images give
/// +infinity; an all-zero reference is rejected.
inline double snr_db(const SpatialImage& u, const SpatialImage& ref)
{
    detail::require_same_extents(u, ref, "snr_db");
    const Eigen::VectorXd a = u.real_part();
    const Eigen::VectorXd b = ref.real_part();
    const double ref_norm = b.norm();
    if (ref_norm == 0.0)
    {
        throw std::invalid_argument("snr_db: reference is identically zero");
    }
    const double err = (a - b).norm();
    if (err == 0.0)
    {
        return std::numeric_limits<double>::infinity();
    }
    return 20.0 * std::log10(ref_norm / err);
}

/// Relative l2 distance of Laplacian-of-Gaussian filtered real parts,
/// 15x15 kernel with sigma 1.5.
inline double hfen(const SpatialImage& u, const SpatialImage& ref)
{
    detail::require_same_extents(u, ref, "hfen");
    const Eigen::MatrixXd kernel = detail::log_kernel(
        constants::kHfenKernelSize, constants::kHfenSigma);
    const Eigen::VectorXd lu =
        detail::periodic_filter(u.grid, u.real_part(), kernel);
    const Eigen::VectorXd lr =
        detail::periodic_filter(ref.grid, ref.real_part(), kernel);
    const double denom = lr.norm();
    if (denom == 0.0)
    {
        throw std::invalid_argument("hfen: reference has no high frequency content");
    }
    return (lu - lr).norm() / denom;
}

/// Mean structural similarity with an 11x11 Gaussian window (sigma 1.5),
/// C1 = (0.01 L)^2, C2 = (0.03 L)^2, dynamic range L = 1, on real parts.
inline double ssim(const SpatialImage& u, const SpatialImage& ref)
{
    detail::require_same_extents(u, ref, "ssim");
    const Eigen::MatrixXd window = detail::gaussian_kernel(
        constants::kSsimWindowSize, constants::kSsimSigma);
    const Eigen::VectorXd x = u.real_part();
    const Eigen::VectorXd y = ref.real_part();
    const auto& grid = u.grid;

    const Eigen::VectorXd mu_x = detail::periodic_filter(grid, x, window);
    const Eigen::VectorXd mu_y = detail::periodic_filter(grid, y, window);
    const Eigen::VectorXd xx =
        detail::periodic_filter(grid, x.cwiseProduct(x), window);
    const Eigen::VectorXd yy =
        detail::periodic_filter(grid, y.cwiseProduct(y), window);
    const Eigen::VectorXd xy =
        detail::periodic_filter(grid, x.cwiseProduct(y), window);

    const double l = constants::kSsimDynamicRange;
    const double c1 = (constants::kSsimK1 * l) * (constants::kSsimK1 * l);
    const double c2 = (constants::kSsimK2 * l) * (constants::kSsimK2 * l);

    double acc = 0.0;
    for (std::int64_t i = 0; i < grid.size(); ++i)
    {
        const double sxx = xx(i) - mu_x(i) * mu_x(i);
        const double syy = yy(i) - mu_y(i) * mu_y(i);
        const double sxy = xy(i) - mu_x(i) * mu_y(i);
        acc += ((2.0 * mu_x(i) * mu_y(i) + c1) * (2.0 * sxy + c2)) /
               ((mu_x(i) * mu_x(i) + mu_y(i) * mu_y(i) + c1) * (sxx + syy + c2));
    }
    return acc / static_cast<double>(grid.size());
}

inline MetricReport evaluate_metrics(const SpatialImage& u,
                                     const SpatialImage& ref)
{
    return MetricReport{snr_db(u, ref), hfen(u, ref), ssim(u, ref)};
}

} // namespace slrf

#endif // SLRF_METRICS_HPP
