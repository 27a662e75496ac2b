#include <catch_amalgamated.hpp>

#include "slrf/grid.hpp"

using namespace slrf;

TEST_CASE("centered grid axis ranges")
{
    const CenteredGrid g44 = make_centered_grid(4, 4);
    CHECK(g44.lo1() == -2);
    CHECK(g44.hi1() == 1);
    CHECK(g44.lo2() == -2);
    CHECK(g44.hi2() == 1);
    CHECK(g44.size() == 16);

    const CenteredGrid g11 = make_centered_grid(1, 1);
    CHECK(g11.lo1() == 0);
    CHECK(g11.hi1() == 0);
    CHECK(g11.size() == 1);
    CHECK(g11.contains(0, 0));

    const CenteredGrid g53 = make_centered_grid(5, 3);
    CHECK(g53.lo1() == -2);
    CHECK(g53.hi1() == 2);
    CHECK(g53.lo2() == -1);
    CHECK(g53.hi2() == 1);

    CHECK_THROWS_AS(make_centered_grid(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_centered_grid(4, 0), std::invalid_argument);
}

TEST_CASE("offset bijection round trips")
{
    const CenteredGrid g = make_centered_grid(6, 5);
    std::int64_t expected = 0;
    for (int k1 = g.lo1(); k1 <= g.hi1(); ++k1)
    {
        for (int k2 = g.lo2(); k2 <= g.hi2(); ++k2)
        {
            const auto off = g.offset(k1, k2);
            CHECK(off == expected++);
            const auto [b1, b2] = g.index_at(off);
            CHECK(b1 == k1);
            CHECK(b2 == k2);
        }
    }
}

TEST_CASE("periodic wrap lands inside the grid")
{
    const CenteredGrid g = make_centered_grid(4, 5);
    for (int k1 = -9; k1 <= 9; ++k1)
    {
        for (int k2 = -9; k2 <= 9; ++k2)
        {
            const auto [w1, w2] = g.wrap(k1, k2);
            CHECK(g.contains(w1, w2));
            CHECK((w1 - k1) % g.n1 == 0);
            CHECK((w2 - k2) % g.n2 == 0);
        }
    }
}

TEST_CASE("grid difference cardinalities")
{
    const auto d = grid_difference(make_centered_grid(6, 6), make_centered_grid(3, 3));
    CHECK(d.size() == 16); // (6-3+1)^2

    const auto same =
        grid_difference(make_centered_grid(4, 4), make_centered_grid(4, 4));
    CHECK(same.size() == 1);
    CHECK(same.contains(0, 0));

    CHECK_THROWS_AS(
        grid_difference(make_centered_grid(3, 3), make_centered_grid(4, 3)),
        std::invalid_argument);
}

namespace {

bool brute_force_member(const CenteredGrid& outer, const CenteredGrid& inner,
                        int k1, int k2)
{
    if (!outer.contains(k1, k2))
    {
        return false;
    }
    for (int m1 = inner.lo1(); m1 <= inner.hi1(); ++m1)
    {
        for (int m2 = inner.lo2(); m2 <= inner.hi2(); ++m2)
        {
            if (!outer.contains(k1 + m1, k2 + m2))
            {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("grid difference agrees with exhaustive enumeration up to 8x8")
{
    for (int n1 = 1; n1 <= 8; ++n1)
    {
        for (int n2 = 1; n2 <= 8; ++n2)
        {
            const CenteredGrid outer = make_centered_grid(n1, n2);
            for (int kk1 = 1; kk1 <= n1; ++kk1)
            {
                for (int kk2 = 1; kk2 <= n2; ++kk2)
                {
                    const CenteredGrid inner = make_centered_grid(kk1, kk2);
                    const GridDifference d = grid_difference(outer, inner);
                    std::int64_t members = 0;
                    for (int k1 = outer.lo1(); k1 <= outer.hi1(); ++k1)
                    {
                        for (int k2 = outer.lo2(); k2 <= outer.hi2(); ++k2)
                        {
                            const bool expect =
                                brute_force_member(outer, inner, k1, k2);
                            CHECK(d.contains(k1, k2) == expect);
                            members += expect ? 1 : 0;
                        }
                    }
                    CHECK(members == d.size());
                    CHECK(d.size() == static_cast<std::int64_t>(n1 - kk1 + 1) *
                                          (n2 - kk2 + 1));
                }
            }
        }
    }
}

TEST_CASE("grid difference on the experiment-sized pair")
{
    const CenteredGrid outer = make_centered_grid(256, 256);
    const CenteredGrid inner = make_centered_grid(31, 31);
    const GridDifference d = grid_difference(outer, inner);
    CHECK(d.size() == 226LL * 226LL);

    // spot check membership against brute force on a subgrid
    for (int k1 = -120; k1 <= 120; k1 += 17)
    {
        for (int k2 = -120; k2 <= 120; k2 += 17)
        {
            CHECK(d.contains(k1, k2) == brute_force_member(outer, inner, k1, k2));
        }
    }
}
