#ifndef SLRF_GRID_HPP
#define SLRF_GRID_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace slrf {

///
/// ### CenteredGrid
///
/// Rectangular symmetric set of integer frequency indices. The range per
/// axis of extent `N` is `{-floor(N/2), ..., floor((N-1)/2)}`, so the
/// origin is always a member. Storage offsets are obtained by the
/// bijection `k -> k + floor(N/2)` per axis, laid out row-major with the
/// first axis slowest. This bijection is the single indexing convention
/// used across the whole library (fields, Hankel lifts, filter reshaping,
/// file payloads).
///
struct CenteredGrid {
    int n1 = 0;
    int n2 = 0;

    constexpr int center1() const { return n1 / 2; }
    constexpr int center2() const { return n2 / 2; }

    constexpr int lo1() const { return -center1(); }
    constexpr int hi1() const { return (n1 - 1) / 2; }
    constexpr int lo2() const { return -center2(); }
    constexpr int hi2() const { return (n2 - 1) / 2; }

    constexpr std::int64_t size() const
    {
        return static_cast<std::int64_t>(n1) * n2;
    }

    constexpr bool contains(int k1, int k2) const
    {
        return k1 >= lo1() && k1 <= hi1() && k2 >= lo2() && k2 <= hi2();
    }

    /// Storage offset of a centered index. No range check.
    constexpr std::int64_t offset(int k1, int k2) const
    {
        return static_cast<std::int64_t>(k1 + center1()) * n2 +
               (k2 + center2());
    }

    /// Centered index of a storage offset.
    constexpr std::pair<int, int> index_at(std::int64_t off) const
    {
        const int i = static_cast<int>(off / n2);
        const int j = static_cast<int>(off % n2);
        return {i - center1(), j - center2()};
    }

    /// Wraps an arbitrary integer pair into the grid periodically.
    constexpr std::pair<int, int> wrap(int k1, int k2) const
    {
        int a = (k1 + center1()) % n1;
        if (a < 0)
        {
            a += n1;
        }
        int b = (k2 + center2()) % n2;
        if (b < 0)
        {
            b += n2;
        }
        return {a - center1(), b - center2()};
    }

    bool operator==(const CenteredGrid&) const = default;
};

inline CenteredGrid make_centered_grid(int n1, int n2)
{
    if (n1 < 1 || n2 < 1)
    {
        throw std::invalid_argument("make_centered_grid: extents must be >= 1, got " +
                                    std::to_string(n1) + "x" + std::to_string(n2));
    }
    return CenteredGrid{n1, n2};
}

///
/// ### GridDifference
///
/// The set `outer : inner = { k in outer : k + inner is a subset of outer }`.
/// For rectangular centered grids the members form a box of
/// `(N1-K1+1) x (N2-K2+1)` indices, stored here by its corner bounds.
/// Enumeration order is the same row-major, first-axis-slowest convention
/// as CenteredGrid.
///
struct GridDifference {
    CenteredGrid outer;
    CenteredGrid inner;
    int lo1 = 0, hi1 = 0, lo2 = 0, hi2 = 0;

    constexpr int extent1() const { return hi1 - lo1 + 1; }
    constexpr int extent2() const { return hi2 - lo2 + 1; }

    constexpr std::int64_t size() const
    {
        return static_cast<std::int64_t>(extent1()) * extent2();
    }

    constexpr bool contains(int k1, int k2) const
    {
        return k1 >= lo1 && k1 <= hi1 && k2 >= lo2 && k2 <= hi2;
    }

    constexpr std::int64_t offset(int k1, int k2) const
    {
        return static_cast<std::int64_t>(k1 - lo1) * extent2() + (k2 - lo2);
    }

    constexpr std::pair<int, int> index_at(std::int64_t off) const
    {
        const int i = static_cast<int>(off / extent2());
        const int j = static_cast<int>(off % extent2());
        return {i + lo1, j + lo2};
    }
};

inline GridDifference grid_difference(const CenteredGrid& outer,
                                      const CenteredGrid& inner)
{
    if (inner.n1 > outer.n1 || inner.n2 > outer.n2)
    {
        throw std::invalid_argument(
            "grid_difference: inner grid " + std::to_string(inner.n1) + "x" +
            std::to_string(inner.n2) + " exceeds outer " +
            std::to_string(outer.n1) + "x" + std::to_string(outer.n2));
    }
    GridDifference d;
    d.outer = outer;
    d.inner = inner;
    d.lo1 = outer.lo1() - inner.lo1();
    d.hi1 = outer.hi1() - inner.hi1();
    d.lo2 = outer.lo2() - inner.lo2();
    d.hi2 = outer.hi2() - inner.hi2();
    return d;
}

} // namespace slrf

#endif // SLRF_GRID_HPP
