#ifndef SLRF_SAMPLING_HPP
#define SLRF_SAMPLING_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "slrf/constants.hpp"
#include "slrf/field.hpp"
#include "slrf/grid.hpp"

namespace slrf {

namespace detail {

/// All randomness in the library flows through this: mt19937_64 plus
/// explicit Box-Muller, so outputs depend only on the seed.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    double uniform()
    {
        // 53-bit mantissa uniform in [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal()
    {
        if (have_spare_)
        {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
        {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace detail

///
/// ### SamplingMask
///
/// A kept subset of grid indices, stored as sorted storage offsets plus a
/// 0/1 indicator. Construction is deterministic given (grid, fraction,
/// seed, decay, center radius).
///
struct SamplingMask {
    CenteredGrid grid;
    std::vector<std::int64_t> kept;
    Eigen::VectorXd indicator;
    double fraction = 1.0;
    std::uint64_t seed = 0;

    std::int64_t count() const { return static_cast<std::int64_t>(kept.size()); }

    bool contains_offset(std::int64_t off) const { return indicator(off) > 0.5; }

    std::vector<std::uint8_t> bytes() const
    {
        std::vector<std::uint8_t> out(static_cast<std::size_t>(grid.size()), 0);
        for (auto off : kept)
        {
            out[static_cast<std::size_t>(off)] = 1;
        }
        return out;
    }

    static SamplingMask from_bytes(const CenteredGrid& grid,
                                   const std::vector<std::uint8_t>& bytes)
    {
        SamplingMask m;
        m.grid = grid;
        m.indicator = Eigen::VectorXd::Zero(grid.size());
        for (std::int64_t i = 0; i < grid.size(); ++i)
        {
            if (bytes[static_cast<std::size_t>(i)] != 0)
            {
                m.kept.push_back(i);
                m.indicator(i) = 1.0;
            }
        }
        m.fraction =
            static_cast<double>(m.kept.size()) / static_cast<double>(grid.size());
        return m;
    }
};

///
/// Variable density sampling: the disk |k| <= center_radius is always kept;
/// the remaining budget is drawn without replacement with probability
/// proportional to (1 + |k|/N)^{-decay_power}. The draw uses exponential
/// keys (-log u / w, smallest first), which realizes sequential weighted
/// sampling without replacement in one deterministic pass.
///
inline SamplingMask variable_density_mask(
    const CenteredGrid& grid, double fraction, std::uint64_t seed,
    double decay_power = constants::kMaskDecayPower,
    int center_radius = constants::kMaskCenterRadius)
{
    if (!(fraction > 0.0 && fraction <= 1.0))
    {
        throw std::invalid_argument("variable_density_mask: fraction must be in (0, 1]");
    }
    const std::int64_t target =
        static_cast<std::int64_t>(std::llround(fraction * grid.size()));

    std::vector<std::int64_t> center;
    std::vector<std::int64_t> rest;
    std::vector<double> weight;
    const double n = static_cast<double>(std::max(grid.n1, grid.n2));
    for (std::int64_t off = 0; off < grid.size(); ++off)
    {
        const auto [k1, k2] = grid.index_at(off);
        const double radius = std::hypot(static_cast<double>(k1),
                                         static_cast<double>(k2));
        if (radius <= static_cast<double>(center_radius))
        {
            center.push_back(off);
        }
        else
        {
            rest.push_back(off);
            weight.push_back(std::pow(1.0 + radius / n, -decay_power));
        }
    }
    if (target < static_cast<std::int64_t>(center.size()))
    {
        throw std::invalid_argument(
            "variable_density_mask: fraction too small for the fully sampled "
            "center disk");
    }

    SamplingMask mask;
    mask.grid = grid;
    mask.fraction = fraction;
    mask.seed = seed;
    mask.kept = center;

    const std::int64_t draws =
        std::min<std::int64_t>(target - static_cast<std::int64_t>(center.size()),
                               static_cast<std::int64_t>(rest.size()));
    if (draws > 0)
    {
        detail::SeededRng rng(seed);
        std::vector<std::pair<double, std::int64_t>> keyed(rest.size());
        for (std::size_t i = 0; i < rest.size(); ++i)
        {
            double u = rng.uniform();
            while (u <= 0.0)
            {
                u = rng.uniform();
            }
            keyed[i] = {-std::log(u) / weight[i], rest[i]};
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::int64_t i = 0; i < draws; ++i)
        {
            mask.kept.push_back(keyed[static_cast<std::size_t>(i)].second);
        }
    }
    std::sort(mask.kept.begin(), mask.kept.end());
    mask.indicator = Eigen::VectorXd::Zero(grid.size());
    for (auto off : mask.kept)
    {
        mask.indicator(off) = 1.0;
    }
    return mask;
}

///
/// Restriction of a field to the mask plus i.i.d. complex Gaussian noise
/// with standard deviation sigma per real and imaginary component. Noise
/// draws follow the mask's sorted offset order, so the result is a pure
/// function of (field, mask, sigma, seed).
///
inline Eigen::VectorXcd degrade(const SampleField& field,
                                const SamplingMask& mask, double sigma,
                                std::uint64_t seed)
{
    if (field.order() != 0 || !(field.grid() == mask.grid))
    {
        throw std::invalid_argument("degrade: expected an order 0 field on the mask grid");
    }
    Eigen::VectorXcd out(mask.count());
    detail::SeededRng rng(seed);
    for (std::int64_t i = 0; i < mask.count(); ++i)
    {
        Complex noise(0.0, 0.0);
        if (sigma > 0.0)
        {
            noise = Complex(sigma * rng.normal(), sigma * rng.normal());
        }
        out(i) = field.comp(0)(mask.kept[static_cast<std::size_t>(i)]) + noise;
    }
    return out;
}

} // namespace slrf

#endif // SLRF_SAMPLING_HPP
