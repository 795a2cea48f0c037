#include <gtest/gtest.h>

#include <cmath>

#include "hardy/model.hpp"
#include "support.hpp"

using namespace hardy;
using namespace hardy::testing;

namespace {

FactoredFunction make(std::vector<cplx> zeros, Poly numerator, std::vector<cplx> dens = {}) {
    FactoredFunction f;
    f.inner.zeros = std::move(zeros);
    f.outer.numerator = std::move(numerator);
    f.outer.denominator_parameters = std::move(dens);
    return f;
}

void expect_coefficients(const CoefficientSequence& c, std::vector<cplx> expected, double tol = 1e-15) {
    for (std::size_t k = 0; k < expected.size(); ++k)
        EXPECT_NEAR(std::abs(c[static_cast<long>(k)] - expected[k]), 0.0, tol) << "k = " << k;
}

}  // namespace

TEST(PuncturedSpace, Validation) {
    EXPECT_NO_THROW(PuncturedSpace({1, 3, 7}));
    EXPECT_NO_THROW(PuncturedSpace(std::vector<long>{}));
    EXPECT_THROW(PuncturedSpace({0, 2}), std::invalid_argument);
    EXPECT_THROW(PuncturedSpace({3, 2}), std::invalid_argument);
    EXPECT_THROW(PuncturedSpace({2, 2}), std::invalid_argument);
    EXPECT_THROW(PuncturedSpace({-1}), std::invalid_argument);
    const PuncturedSpace K({2, 5});
    EXPECT_EQ(K.M(), 2u);
    EXPECT_EQ(K.max_hole(), 5);
    EXPECT_EQ(PuncturedSpace().max_hole(), 0);
}

TEST(TaylorOfF, Examples) {
    expect_coefficients(taylor_of_f(make({0.0}, {1.0}), 2), {0.0, 1.0, 0.0});
    expect_coefficients(taylor_of_f(make({0.5}, {1.0}), 2), {-0.5, 0.75, 0.375});
    expect_coefficients(taylor_of_f(make({}, {1.0, 0.0, 1.0}), 2), {1.0, 0.0, 1.0});
    EXPECT_EQ(taylor_of_f(make({0.5}, {1.0}), 2)[-1], cplx{});
}

TEST(TaylorOfF, EqualsConvolutionOfFactors) {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const FactoredFunction f = make(disk_points(rng, static_cast<std::size_t>(uniform_int(rng, 0, 4)), 0.9),
                                        outer_numerator(rng, static_cast<std::size_t>(uniform_int(rng, 0, 4))),
                                        disk_points(rng, static_cast<std::size_t>(uniform_int(rng, 0, 3)), 0.8));
        const long up_to = 25;
        const CoefficientSequence direct = taylor_of_f(f, up_to);
        const CoefficientSequence conv =
            convolve(expand_rational(f.inner.as_rational(), up_to), expand_rational(f.outer.as_rational(), up_to), up_to);
        const double scale = conv.max_abs(0, up_to);
        for (long k = 0; k <= up_to; ++k) EXPECT_LE(std::abs(direct[k] - conv[k]), 1e-12 * scale) << "k = " << k;
    }
}

TEST(Blaschke, UnimodularOnTheCircle) {
    Rng rng(32);
    const CircleGrid grid(4096);
    for (int trial = 0; trial < 50; ++trial) {
        const BlaschkeProduct I{disk_points(rng, static_cast<std::size_t>(uniform_int(rng, 0, 6)), 0.98),
                                std::polar(1.0, uniform(rng, 0.0, 6.0))};
        double worst = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) worst = std::max(worst, std::abs(std::abs(I(grid.node(j))) - 1.0));
        EXPECT_LE(worst, 1e-12);
    }
}

TEST(Blaschke, RejectsZerosOutsideTheDisk) {
    EXPECT_THROW((BlaschkeProduct{{1.2}, 1.0}).validate(), std::exception);
    EXPECT_NO_THROW((BlaschkeProduct{{0.5}, 1.0}).validate());
}

TEST(CheckMembership, AcceptsZPlusHalfZCubedOnHoleTwo) {
    const MembershipReport r = check_membership(make({0.0}, {1.0, 0.0, 0.5}), PuncturedSpace({2}), 1e-9);
    EXPECT_TRUE(r.accepted);
    ASSERT_EQ(r.holes.size(), 1u);
    EXPECT_EQ(r.holes[0].k, 2);
    EXPECT_LE(r.holes[0].residual, 1e-15);
}

TEST(CheckMembership, RejectsWithTheHoleAndResidual) {
    // (z - a)/(1 - a z) with a = 1/2 has coefficient (3/4)(1/2)^2 at z^3.
    const MembershipReport r = check_membership(make({0.5}, {1.0}), PuncturedSpace({3}), 1e-9);
    EXPECT_FALSE(r.accepted);
    ASSERT_EQ(r.holes.size(), 1u);
    EXPECT_NEAR(r.holes[0].residual, 0.1875, 1e-15);
    try {
        require_membership(r);
        FAIL() << "expected NotInSpaceError";
    } catch (const NotInSpaceError& e) {
        EXPECT_EQ(e.hole(), 3);
        EXPECT_NEAR(e.residual(), 0.1875, 1e-15);
    }
}

TEST(CheckMembership, EmptyHoleSetAlwaysAccepts) {
    Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const FactoredFunction f = make(disk_points(rng, 2, 0.9), outer_numerator(rng, 3));
        EXPECT_TRUE(check_membership(f, PuncturedSpace(), 1e-9).accepted);
    }
}

TEST(CheckMembership, ToleranceIsRelativeToTheLeadingCoefficients) {
    const CoefficientSequence c({1e6, 0.0, 1e-4});
    EXPECT_TRUE(check_membership(c, PuncturedSpace({2}), 1e-9).accepted);
    EXPECT_FALSE(check_membership(c, PuncturedSpace({2}), 1e-12).accepted);
}

TEST(CheckOuter, Examples) {
    const OuterCheck circle = check_outer(OuterRational{{1.0, 0.0, 1.0}, {}});
    EXPECT_TRUE(circle.is_outer());
    EXPECT_EQ(circle.circle_roots.size(), 2u);

    const OuterCheck z = check_outer(OuterRational{{0.0, 1.0}, {}});
    EXPECT_FALSE(z.is_outer());
    ASSERT_EQ(z.inside_roots.size(), 1u);
    EXPECT_LE(std::abs(z.inside_roots[0]), 1e-15);

    const OuterCheck half = check_outer(OuterRational{{1.0, -0.5}, {}});
    EXPECT_TRUE(half.is_outer());
    EXPECT_TRUE(half.cross_checked);
    EXPECT_NEAR(half.log_mean, half.log_at_zero, 1e-8);
    EXPECT_NEAR(half.log_mean, 0.0, 1e-8);
}

TEST(CheckOuter, JensenGapMatchesInsideRoots) {
    Rng rng(34);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<cplx> roots = disk_points(rng, static_cast<std::size_t>(uniform_int(rng, 1, 3)), 0.9);
        for (int i = 0; i < 2; ++i) roots.push_back(std::polar(uniform(rng, 1.2, 3.0), uniform(rng, 0.0, 6.3)));
        const OuterCheck r = check_outer(OuterRational{poly_from_roots(roots), disk_points(rng, 1, 0.5)});
        EXPECT_FALSE(r.is_outer());
        double gap = 0.0;
        for (const cplx& a : r.inside_roots) gap -= std::log(std::abs(a));
        EXPECT_NEAR(r.expected_gap, gap, 1e-10);
    }
}

TEST(CheckOuter, ZeroNumeratorIsRejected) {
    EXPECT_THROW(check_outer(OuterRational{{0.0}, {}}), std::exception);
}

TEST(Normalize, Examples) {
    const Normalized n = normalize(make({}, {1.0, 0.0, 1.0}), Tolerances{}.quadrature());
    EXPECT_NEAR(n.norm, 4.0 / M_PI, 1e-10);
    EXPECT_NEAR(std::abs(n.function.outer.numerator[0] - M_PI / 4.0), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(n.function.outer.numerator[2] - M_PI / 4.0), 0.0, 1e-10);

    const Normalized one = normalize(make({}, {1.0}), Tolerances{}.quadrature());
    EXPECT_NEAR(std::abs(one.function.outer.numerator[0] - 1.0), 0.0, 1e-15);

    EXPECT_THROW(normalize(make({}, {0.0}), Tolerances{}.quadrature()), std::invalid_argument);
}

TEST(Normalize, IsIdempotent) {
    Rng rng(35);
    for (int trial = 0; trial < 30; ++trial) {
        const FactoredFunction f = make(disk_points(rng, 2, 0.9), outer_numerator(rng, 3), disk_points(rng, 1, 0.6));
        const Normalized once = normalize(f, Tolerances{}.quadrature());
        const Normalized twice = normalize(once.function, Tolerances{}.quadrature());
        EXPECT_NEAR(twice.norm, 1.0, 1e-10);
        for (std::size_t i = 0; i < once.function.outer.numerator.size(); ++i)
            EXPECT_LE(std::abs(once.function.outer.numerator[i] - twice.function.outer.numerator[i]),
                      1e-10 * std::abs(once.function.outer.numerator[i]) + 1e-15);
    }
}

TEST(SampleMember, NoHoles) {
    SampleRequest req;
    req.numerator_degree = 2;
    req.seed = 1;
    const FactoredFunction f = sample_member(req);
    EXPECT_TRUE(f.inner.zeros.empty());
    EXPECT_EQ(f.outer.numerator.size(), 3u);
    EXPECT_TRUE(check_outer(f.outer).is_outer());
    EXPECT_NEAR(adaptive_l1_norm(f.evaluator(), {}).value, 1.0, 1e-10);
}

TEST(SampleMember, HoleTwoWithZeroAtOriginKillsTheLinearCoefficient) {
    SampleRequest req;
    req.space = PuncturedSpace({2});
    req.zeros = {0.0};
    req.numerator_degree = 2;
    req.seed = 5;
    const FactoredFunction f = sample_member(req);
    const double scale = std::abs(f.outer.numerator[0]);
    EXPECT_LE(std::abs(f.outer.numerator[1]), 1e-12 * scale);
    EXPECT_LE(std::abs(taylor_of_f(f, 2)[2]), 1e-12 * scale);
}

TEST(SampleMember, HoleOneWithZeroAtOriginIsInfeasible) {
    SampleRequest req;
    req.space = PuncturedSpace({1});
    req.zeros = {0.0};
    req.numerator_degree = 2;
    req.seed = 5;
    req.max_retries = 50;
    EXPECT_THROW(sample_member(req), MaxRetriesExceeded);
}

TEST(SampleMember, RejectsTooFewCoefficients) {
    SampleRequest req;
    req.space = PuncturedSpace({1, 2, 3});
    req.numerator_degree = 1;
    EXPECT_THROW(sample_member(req), std::invalid_argument);
}

TEST(SampleMember, DeterministicPerSeed) {
    SampleRequest req;
    req.space = PuncturedSpace({3});
    req.zeros = {cplx(0.3, 0.1)};
    req.numerator_degree = 3;
    req.seed = 77;
    const FactoredFunction a = sample_member(req);
    const FactoredFunction b = sample_member(req);
    ASSERT_EQ(a.outer.numerator.size(), b.outer.numerator.size());
    for (std::size_t i = 0; i < a.outer.numerator.size(); ++i) EXPECT_EQ(a.outer.numerator[i], b.outer.numerator[i]);
    req.seed = 78;
    EXPECT_NE(sample_member(req).outer.numerator[0], a.outer.numerator[0]);
}

TEST(SampleMember, OutputsAreNormalizedOuterMembers) {
    Rng rng(36);
    int produced = 0;
    for (int trial = 0; trial < 60; ++trial) {
        SampleRequest req;
        req.space = random_holes(rng, static_cast<std::size_t>(uniform_int(rng, 0, 2)), 5);
        req.zeros = disk_points(rng, static_cast<std::size_t>(uniform_int(rng, 0, 2)), 0.8);
        req.denominator_parameters = disk_points(rng, static_cast<std::size_t>(uniform_int(rng, 0, 1)), 0.5);
        req.numerator_degree = req.space.M() + 2;
        req.seed = rng();
        req.max_retries = 200;
        FactoredFunction f;
        try {
            f = sample_member(req);
        } catch (const MaxRetriesExceeded&) {
            continue;
        }
        ++produced;
        EXPECT_TRUE(check_membership(f, req.space, 1e-9).accepted);
        EXPECT_TRUE(check_outer(f.outer).is_outer());
        EXPECT_NEAR(adaptive_l1_norm(f.evaluator(), {}).value, 1.0, 1e-10);
    }
    EXPECT_GE(produced, 30);
}
