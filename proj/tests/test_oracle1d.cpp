#include <catch_amalgamated.hpp>

#include "slrf/annihilation.hpp"
#include "slrf/hankel.hpp"
#include "slrf/phantom.hpp"
#include "support/oracles.hpp"

#include <numbers>

using namespace slrf;

namespace {

// continuous tent over [-1/4, 1/4) sitting on a pedestal of height 1
PiecewiseLinear1D tent_model()
{
    return PiecewiseLinear1D{{-0.25, 0.0, 0.25}, {1.0, -1.0}, {1.25, 1.25}};
}

// the odd ramp x restricted to [-1/4, 1/4)
PiecewiseLinear1D ramp_model()
{
    return PiecewiseLinear1D{{-0.25, 0.25}, {1.0}, {0.0}};
}

PiecewiseLinear1D box_model()
{
    return PiecewiseLinear1D{{-0.25, 0.25}, {0.0}, {1.0}};
}

} // namespace

TEST_CASE("minimal 1D filters")
{
    SECTION("three symmetric breakpoints")
    {
        const AnnihilatingFilter f = minimal_filter_1d({-0.25, 0.0, 0.25});
        REQUIRE(f.coeffs.size() == 4);
        const Complex expect[4] = {{-1, 0}, {1, 0}, {-1, 0}, {1, 0}};
        for (int i = 0; i < 4; ++i)
        {
            CHECK(std::abs(f.coeffs(i) - expect[i]) < 1e-14);
        }
    }
    SECTION("single breakpoint at the origin")
    {
        const AnnihilatingFilter f = minimal_filter_1d({0.0});
        REQUIRE(f.coeffs.size() == 2);
        CHECK(std::abs(f.coeffs(0) - Complex(-1, 0)) < 1e-15);
        CHECK(std::abs(f.coeffs(1) - Complex(1, 0)) < 1e-15);
    }
    SECTION("symmetric pair")
    {
        const AnnihilatingFilter f = minimal_filter_1d({-0.25, 0.25});
        REQUIRE(f.coeffs.size() == 3);
        CHECK(std::abs(f.coeffs(0) - Complex(1, 0)) < 1e-14);
        CHECK(std::abs(f.coeffs(1)) < 1e-14);
        CHECK(std::abs(f.coeffs(2) - Complex(1, 0)) < 1e-14);
    }
    SECTION("duplicates rejected")
    {
        CHECK_THROWS_AS(minimal_filter_1d({0.25, 0.25}), std::invalid_argument);
    }
}

TEST_CASE("exact 1D Fourier samples")
{
    const PiecewiseLinear1D box = box_model();
    const Eigen::VectorXcd samples = fourier_samples_1d(box, 8);
    const CenteredGrid range = make_centered_grid(8, 1);
    CHECK(std::abs(samples(range.offset(0, 0)) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(samples(range.offset(1, 0)) - Complex(1.0 / std::numbers::pi)) <
          1e-15);

    // quadrature oracle on a nontrivial model
    const PiecewiseLinear1D tent = tent_model();
    const Eigen::VectorXcd exact = fourier_samples_1d(tent, 16);
    const CenteredGrid range16 = make_centered_grid(16, 1);
    for (int k = range16.lo1(); k <= range16.hi1(); ++k)
    {
        const Complex quad = slrf_test::fourier_sample_1d_quadrature(tent, k);
        CHECK(std::abs(exact(range16.offset(k, 0)) - quad) < 1e-8);
    }
}

TEST_CASE("jump weights of the worked examples")
{
    SECTION("tent: value-continuous, slope jumps")
    {
        const JumpSamples1D s = residual_and_pprime_samples_1d(tent_model(), 8);
        REQUIRE(s.residual_weights.size() == 3);
        CHECK(std::abs(s.residual_weights[0] - Complex(1.0)) < 1e-15);
        CHECK(std::abs(s.residual_weights[1]) < 1e-15);
        CHECK(std::abs(s.residual_weights[2] - Complex(-1.0)) < 1e-15);
        CHECK(std::abs(s.pprime_weights[0] - Complex(1.0)) < 1e-15);
        CHECK(std::abs(s.pprime_weights[1] - Complex(-2.0)) < 1e-15);
        CHECK(std::abs(s.pprime_weights[2] - Complex(1.0)) < 1e-15);
    }
    SECTION("ramp: value jumps of size 1/4 at both ends")
    {
        const JumpSamples1D s = residual_and_pprime_samples_1d(ramp_model(), 8);
        REQUIRE(s.residual_weights.size() == 2);
        CHECK(std::abs(s.residual_weights[0] - Complex(-0.25)) < 1e-15);
        CHECK(std::abs(s.residual_weights[1] - Complex(-0.25)) < 1e-15);
        CHECK(std::abs(s.pprime_weights[0] - Complex(1.0)) < 1e-15);
        CHECK(std::abs(s.pprime_weights[1] - Complex(-1.0)) < 1e-15);
    }
}

TEST_CASE("differentiation identity ties the sample routes together")
{
    // 2 pi i k u_hat(k) - p_hat(k) equals the residual sinusoid sum for k != 0
    for (const auto& model : {tent_model(), ramp_model()})
    {
        const int n = 32;
        const CenteredGrid range = make_centered_grid(n, 1);
        const Eigen::VectorXcd u_hat = fourier_samples_1d(model, n);
        PiecewiseLinear1D constant_part = model;
        for (std::size_t j = 0; j < constant_part.slopes.size(); ++j)
        {
            constant_part.intercepts[j] = model.slopes[j];
            constant_part.slopes[j] = 0.0;
        }
        const Eigen::VectorXcd p_hat = fourier_samples_1d(constant_part, n);
        const JumpSamples1D s = residual_and_pprime_samples_1d(model, n);
        for (int k = range.lo1(); k <= range.hi1(); ++k)
        {
            if (k == 0)
            {
                continue;
            }
            const auto off = range.offset(k, 0);
            const Complex lhs =
                Complex(0.0, 2.0 * std::numbers::pi * k) * u_hat(off) - p_hat(off);
            CHECK(std::abs(lhs - s.residual(off)) < 1e-10);
        }
    }
}

TEST_CASE("annihilation of the worked examples")
{
    for (const auto& model : {tent_model(), ramp_model()})
    {
        const AnnihilatingFilter filter = minimal_filter_1d(model.breakpoints);
        const JumpSamples1D s = residual_and_pprime_samples_1d(model, 64);
        CHECK(verify_annihilation(sequence_as_field(s.residual), filter) < 1e-10);
        CHECK(verify_annihilation(sequence_as_field(s.pprime), filter) < 1e-10);
    }
}

TEST_CASE("verify_annihilation basics")
{
    SECTION("zero field gives zero residual")
    {
        SampleField zero(0, make_centered_grid(16, 1));
        AnnihilatingFilter f = minimal_filter_1d({0.0});
        CHECK(verify_annihilation(zero, f) == 0.0);
    }
    SECTION("random field matches the brute force double loop")
    {
        const SampleField field = slrf_test::random_field(0, make_centered_grid(12, 1), 5);
        AnnihilatingFilter f;
        f.support = make_centered_grid(4, 1);
        f.coeffs = slrf_test::random_matrix(4, 1, 9).col(0);
        const double fast = verify_annihilation(field, f);
        double brute = 0.0;
        const auto rows = grid_difference(field.grid(), f.support);
        for (int m = rows.lo1; m <= rows.hi1; ++m)
        {
            Complex acc = 0.0;
            for (int k = f.support.lo1(); k <= f.support.hi1(); ++k)
            {
                acc += field.at(0, m + k, 0) * f.coeffs(f.support.offset(k, 0));
            }
            brute = std::max(brute, std::abs(acc));
        }
        CHECK(std::abs(fast - brute) < 1e-14);
    }
    SECTION("oversized support is rejected")
    {
        SampleField small(0, make_centered_grid(3, 1));
        AnnihilatingFilter f;
        f.support = make_centered_grid(4, 1);
        f.coeffs = Eigen::VectorXcd::Ones(4);
        CHECK_THROWS_AS(verify_annihilation(small, f), std::invalid_argument);
    }
}

TEST_CASE("hankel lifts of both sequences are annihilated and rank deficient")
{
    const int n = 64;
    const int window = 8;
    const CenteredGrid support = make_centered_grid(window, 1);
    struct Expect {
        PiecewiseLinear1D model;
        int rank_bound;
    };
    for (const auto& [model, bound] :
         {Expect{tent_model(), 3}, Expect{ramp_model(), 2}})
    {
        const JumpSamples1D s = residual_and_pprime_samples_1d(model, n);
        const AnnihilatingFilter filter = minimal_filter_1d(model.breakpoints);
        for (const auto* seq : {&s.residual, &s.pprime})
        {
            const SampleField field = sequence_as_field(*seq);
            const HankelLift h = lift(field, support);

            // the lift times the embedded filter vector vanishes
            Eigen::VectorXcd a = Eigen::VectorXcd::Zero(window);
            a.head(filter.coeffs.size()) = filter.coeffs;
            CHECK((h.matrix * a).cwiseAbs().maxCoeff() < 1e-10);

            // and so do all translates within the window
            for (int shift = 1; shift + filter.coeffs.size() <= window; ++shift)
            {
                Eigen::VectorXcd at = Eigen::VectorXcd::Zero(window);
                at.segment(shift, filter.coeffs.size()) = filter.coeffs;
                CHECK((h.matrix * at).cwiseAbs().maxCoeff() < 1e-10);
            }

            CHECK(numerical_rank(svd(h).values) <= bound);
        }
    }
}
