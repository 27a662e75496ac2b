#include <catch_amalgamated.hpp>

#include "slrf/arrayio.hpp"
#include "slrf/dft.hpp"
#include "support/oracles.hpp"

#include <cstdio>
#include <filesystem>

using namespace slrf;

TEST_CASE("all-ones frequency field transforms to a scaled delta")
{
    const CenteredGrid grid = make_centered_grid(8, 8);
    SampleField field(0, grid);
    field.comp(0).setOnes();
    const SpatialImage image = dft_inverse(field);
    const double scale = std::sqrt(static_cast<double>(grid.size()));
    for (int n1 = grid.lo1(); n1 <= grid.hi1(); ++n1)
    {
        for (int n2 = grid.lo2(); n2 <= grid.hi2(); ++n2)
        {
            const Complex expect = (n1 == 0 && n2 == 0) ? Complex(scale) : Complex(0);
            CHECK(std::abs(image.at(n1, n2) - expect) < 1e-12);
        }
    }
}

TEST_CASE("forward then inverse is the identity")
{
    const CenteredGrid grid = make_centered_grid(12, 10);
    const SampleField f = slrf_test::random_field(0, grid, 7);
    SpatialImage img(grid);
    img.values = f.comp(0);
    const SpatialImage round = dft_inverse(dft_forward(img));
    CHECK((round.values - img.values).norm() < 1e-12 * img.values.norm());
}

TEST_CASE("transform is unitary")
{
    const CenteredGrid grid = make_centered_grid(16, 16);
    const SampleField x = slrf_test::random_field(0, grid, 11);
    const SampleField y = slrf_test::random_field(0, grid, 13);
    const Eigen::VectorXcd fx = dft2(grid, x.comp(0), true);
    const Eigen::VectorXcd fy = dft2(grid, y.comp(0), true);
    const Complex lhs = fx.dot(fy);
    const Complex rhs = x.comp(0).dot(y.comp(0));
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
    CHECK(std::abs(fx.squaredNorm() - x.comp(0).squaredNorm()) <
          1e-10 * x.comp(0).squaredNorm());
}

TEST_CASE("extent mismatch is rejected")
{
    const CenteredGrid grid = make_centered_grid(4, 4);
    Eigen::VectorXcd wrong(10);
    CHECK_THROWS_AS(dft2(grid, wrong, true), std::invalid_argument);
}

TEST_CASE("binary array format round trips fields and masks")
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "slrf_io_test";
    fs::create_directories(dir);

    const CenteredGrid grid = make_centered_grid(6, 4);
    SampleField f = slrf_test::random_field(1, grid, 3);
    f.set_source(FieldSource::continuous);
    const std::string path = (dir / "field.bin").string();
    write_field(path, f);
    const SampleField g = read_field(path);
    REQUIRE(g.order() == 1);
    REQUIRE(g.grid() == grid);
    CHECK(g.source() == FieldSource::continuous);
    CHECK((g.comp(0) - f.comp(0)).norm() == 0.0);
    CHECK((g.comp(1) - f.comp(1)).norm() == 0.0);

    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(grid.size()), 0);
    bytes[3] = 1;
    bytes[17] = 1;
    const std::string mpath = (dir / "mask.bin").string();
    write_mask_bytes(mpath, grid, bytes);
    CenteredGrid read_grid;
    CHECK(read_mask_bytes(mpath, read_grid) == bytes);
    CHECK(read_grid == grid);

    CHECK_THROWS_AS(read_field((dir / "missing.bin").string()), io_error);
    fs::remove_all(dir);
}
