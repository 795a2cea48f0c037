#include <gtest/gtest.h>

#include <cmath>

#include "hardy/certificates.hpp"
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

FactoredFunction unit(const FactoredFunction& f) { return normalize(f, Tolerances{}.quadrature()).function; }

bool has_failure(const WitnessReport& r, const std::string& needle) {
    for (const std::string& s : r.failures)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST(MakeWitness, ZTimesOnePlusZSquared) {
    const PuncturedSpace K({2});
    const FactoredFunction f = unit(make({0.0}, {1.0, 0.0, 1.0}));
    const ExtremalityVerdict v = decide_extreme(f, K);
    ASSERT_EQ(v.status, VerdictStatus::non_extreme);
    const PerturbationWitness w = make_witness(f, K, v);
    EXPECT_EQ(w.provenance, Provenance::kernel_path);
    EXPECT_EQ(w.p.N(), 1u);
    EXPECT_EQ(w.kernel_dimension, 2u);
    EXPECT_TRUE(w.phi2_zeros.empty());
    // Orthogonal to (1, 0, 0) inside span{(1,0,0), (0,0,1)}.
    EXPECT_NEAR(w.p.vector()[0], 0.0, 1e-12);
    EXPECT_NEAR(w.p.vector()[1], 0.0, 1e-12);
    EXPECT_NEAR(std::abs(w.p.vector()[2]), 1.0, 1e-12);
    EXPECT_NEAR(w.recenter_c, 0.0, 1e-12);
    EXPECT_NEAR(w.epsilon, 0.25, 1e-12);

    const WitnessReport r = verify_witness(f, K, w);
    EXPECT_TRUE(r.verifies()) << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_LE(r.h_realness_residual, 1e-12);
    EXPECT_NEAR(r.norm_plus, 1.0, 1e-9);
    EXPECT_NEAR(r.norm_minus, 1.0, 1e-9);
}

TEST(MakeWitness, NormsBeforeNormalization) {
    const PuncturedSpace K({2});
    const FactoredFunction f = make({0.0}, {1.0, 0.0, 1.0});
    const PerturbationWitness w = make_witness(f, K, decide_extreme(f, K));
    const WitnessReport r = verify_witness(f, K, w);
    EXPECT_TRUE(r.verifies());
    EXPECT_NEAR(r.norm_f, 4.0 / M_PI, 1e-9);
    EXPECT_NEAR(r.norm_plus, 4.0 / M_PI, 1e-9);
    EXPECT_NEAR(r.norm_minus, 4.0 / M_PI, 1e-9);
}

TEST(MakeWitness, RefusesExtremeVerdicts) {
    const FactoredFunction outer = unit(make({}, {1.0, 0.0, 0.0, 1.0}));
    const PuncturedSpace K12({1, 2});
    EXPECT_THROW(make_witness(outer, K12, decide_extreme(outer, K12)), PreconditionError);

    const FactoredFunction f = unit(make({0.0}, {1.0, 0.0, 0.5}));
    const PuncturedSpace K({2});
    EXPECT_THROW(make_witness(f, K, decide_extreme(f, K)), PreconditionError);
}

TEST(MakeWitness, DegenerateKernelIsReported) {
    const PuncturedSpace K({2});
    const FactoredFunction f = unit(make({0.0}, {1.0, 0.0, 0.5}));
    ExtremalityVerdict v = decide_extreme(f, K);
    v.status = VerdictStatus::non_extreme;
    v.rank = 1;
    v.kernel_basis = {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
    EXPECT_THROW(make_witness(f, K, v), DegenerateKernel);
}

TEST(VerifyWitness, DoubledEpsilonFails) {
    const PuncturedSpace K({2});
    const FactoredFunction f = unit(make({0.0}, {1.0, 0.0, 1.0}));
    PerturbationWitness w = make_witness(f, K, decide_extreme(f, K));
    w.epsilon *= 2.0;
    const WitnessReport r = verify_witness(f, K, w);
    EXPECT_FALSE(r.verifies());
    EXPECT_LE(r.min_multiplier, 1e-12);
    EXPECT_TRUE(has_failure(r, "bounded away from zero"));
}

TEST(VerifyWitness, WrongHoleSetFails) {
    // f = z + z^3 lies in both spaces; g = f h has g^(4) != 0.
    const FactoredFunction f = unit(make({0.0}, {1.0, 0.0, 1.0}));
    const PuncturedSpace K({2});
    const PerturbationWitness w = make_witness(f, K, decide_extreme(f, K));
    const WitnessReport r = verify_witness(f, PuncturedSpace({4}), w);
    EXPECT_FALSE(r.verifies());
    EXPECT_TRUE(has_failure(r, "hole coefficients"));
}

TEST(VerifyWitness, ConstantPerturbationFails) {
    // p = z for a zero at the origin gives h = 1.
    const PuncturedSpace K({2});
    const FactoredFunction f = unit(make({0.0}, {1.0, 0.0, 1.0}));
    PerturbationWitness w;
    w.p = MSymmetricPolynomial(1, {0.5, 0.0, 0.0});
    w.epsilon = 0.25;
    w.recenter_c = 1.0;
    const WitnessReport r = verify_witness(f, K, w);
    EXPECT_FALSE(r.verifies());
    EXPECT_LE(r.h_variation, 1e-12);
}

TEST(VerifyWitness, MismatchedShapeIsRecordedNotThrown) {
    const PuncturedSpace K({2});
    const FactoredFunction f = unit(make({0.0}, {1.0, 0.0, 1.0}));
    PerturbationWitness w;
    w.p = MSymmetricPolynomial(3, std::vector<double>(7, 0.1));
    w.epsilon = 0.1;
    WitnessReport r;
    EXPECT_NO_THROW(r = verify_witness(f, K, w));
    EXPECT_FALSE(r.verifies());
    EXPECT_FALSE(r.shape_ok);
}

TEST(VerifyWitness, EndpointsAreUnitNormMembers) {
    const PuncturedSpace K({2});
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const cplx c = std::polar(1.0, uniform(rng, 0.0, 2.0 * M_PI));
        const FactoredFunction f = unit(make({0.0}, {1.0, 0.0, c}));
        const ExtremalityVerdict v = decide_extreme(f, K);
        ASSERT_EQ(v.status, VerdictStatus::non_extreme);
        const WitnessReport r = verify_witness(f, K, make_witness(f, K, v));
        EXPECT_TRUE(r.verifies());
        EXPECT_TRUE(r.membership_plus.accepted);
        EXPECT_TRUE(r.membership_minus.accepted);
        EXPECT_NEAR(r.norm_plus, 1.0, 1e-9);
        EXPECT_NEAR(r.norm_minus, 1.0, 1e-9);
        EXPECT_LE(r.midpoint_residual, 1e-12);
    }
}

TEST(OverflowWitness, EmptyHoleSetAndFIsZ) {
    const FactoredFunction f = make({0.0}, {1.0});
    const PuncturedSpace K;
    const OverflowOperator op = overflow_operator(f, K);
    EXPECT_EQ(op.N, 1u);
    EXPECT_EQ(op.T.assembled.rows(), 0);
    EXPECT_EQ(op.T.assembled.cols(), 3);
    EXPECT_EQ(op.rank.kernel_basis.size(), 3u);
    const PerturbationWitness w = make_degree_overflow_witness(f, K);
    EXPECT_EQ(w.provenance, Provenance::degree_overflow_path);
    const WitnessReport r = verify_witness(f, K, w);
    EXPECT_TRUE(r.verifies()) << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_GT(r.h_variation, 1e-6);
}

TEST(OverflowWitness, DoubleZeroOnOneHole) {
    // With I = z^2 the hole k = 2 would force F(0) = 0, so k = 3 is used.
    SampleRequest req;
    req.space = PuncturedSpace({3});
    req.zeros = {0.0, 0.0};
    req.numerator_degree = 3;
    req.seed = 9;
    const FactoredFunction f = sample_member(req);
    const ExtremalityVerdict v = decide_extreme(f, req.space);
    EXPECT_FALSE(v.condition_a);
    const OverflowOperator op = overflow_operator(f, req.space);
    EXPECT_EQ(op.N, 2u);
    EXPECT_GE(op.rank.kernel_basis.size(), 3u);
    const PerturbationWitness w = make_degree_overflow_witness(f, req.space);
    EXPECT_EQ(w.p.N(), 2u);
    EXPECT_TRUE(verify_witness(f, req.space, w).verifies());
}

TEST(OverflowWitness, RefusesWhenConditionAHolds) {
    const FactoredFunction f = unit(make({0.0}, {1.0, 0.0, 1.0}));
    EXPECT_THROW(make_degree_overflow_witness(f, PuncturedSpace({2})), PreconditionError);
}

TEST(OverflowWitness, RandomInstancesVerify) {
    Rng rng(62);
    int verified = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto M = static_cast<std::size_t>(uniform_int(rng, 0, 2));
        const auto m = M + static_cast<std::size_t>(uniform_int(rng, 1, 2));
        const PuncturedSpace K = random_holes(rng, M, 5);
        const auto f = random_member(rng, K, disk_points(rng, m, 0.7), {}, M + 2, 1.05);
        if (!f) continue;
        const FactoredFunction g = unit(*f);
        const OverflowOperator op = overflow_operator(g, K);
        EXPECT_GE(op.rank.kernel_basis.size(), 3u);
        const WitnessReport r = verify_witness(g, K, make_degree_overflow_witness(g, K));
        EXPECT_TRUE(r.verifies()) << (r.failures.empty() ? "" : r.failures.front());
        ++verified;
    }
    EXPECT_GE(verified, 25);
}

TEST(CheckExposed, Examples) {
    const PuncturedSpace K2({2});
    const FactoredFunction a = unit(make({0.0}, {1.0, 0.0, 0.5}));
    const ExposednessResult ra = check_exposed(a, K2, decide_extreme(a, K2));
    EXPECT_EQ(ra.status, ExposednessResult::Status::exposed);
    EXPECT_TRUE(ra.circle_roots_of_F.empty());

    const PuncturedSpace K1({1});
    const FactoredFunction b = unit(make({}, {1.0, 0.0, 1.0}));
    const ExtremalityVerdict vb = decide_extreme(b, K1);
    ASSERT_EQ(vb.status, VerdictStatus::extreme);
    const ExposednessResult rb = check_exposed(b, K1, vb);
    EXPECT_EQ(rb.status, ExposednessResult::Status::unknown);
    EXPECT_EQ(rb.circle_roots_of_F.size(), 2u);

    const FactoredFunction c = unit(make({0.0}, {1.0, 0.0, 1.0}));
    EXPECT_EQ(check_exposed(c, K2, decide_extreme(c, K2)).status, ExposednessResult::Status::not_extreme);
}

TEST(CheckExposed, NeverExposedWithoutAnExtremeVerdict) {
    const PuncturedSpace K({2});
    const FactoredFunction f = unit(make({0.0}, {1.0, 0.0, 0.5}));
    ExtremalityVerdict v = decide_extreme(f, K);
    for (VerdictStatus s : {VerdictStatus::non_extreme, VerdictStatus::borderline}) {
        v.status = s;
        EXPECT_NE(check_exposed(f, K, v).status, ExposednessResult::Status::exposed);
    }
}
