#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "hardy/roots.hpp"
#include "support.hpp"

using namespace hardy;
using namespace hardy::testing;

namespace {

// Greedy matching distance between two root multisets.
double match_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0.0;
    for (const cplx& x : a) {
        auto it = std::min_element(b.begin(), b.end(), [&x](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

std::vector<cplx> companion_eigenvalues(const Poly& p) {
    const auto n = static_cast<Eigen::Index>(p.size()) - 1;
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) C(i, n - 1) = -p[static_cast<std::size_t>(i)] / p.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

}  // namespace

TEST(PolynomialRoots, Quadratic) {
    const auto r = polynomial_roots(Poly{1.0, 0.0, 1.0});
    EXPECT_LE(match_distance(r, {cplx(0, 1), cplx(0, -1)}), 1e-14);
}

TEST(PolynomialRoots, ConstantAndLinear) {
    EXPECT_TRUE(polynomial_roots(Poly{3.0}).empty());
    const auto r = polynomial_roots(Poly{-1.0, 2.0});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(std::abs(r[0] - 0.5), 0.0, 1e-15);
}

TEST(PolynomialRoots, TrailingZerosTrimmedAndOriginSplitOff) {
    const auto r = polynomial_roots(Poly{0.0, 0.0, 1.0, 1.0, 0.0, 0.0});
    EXPECT_LE(match_distance(r, {0.0, 0.0, -1.0}), 1e-15);
}

TEST(PolynomialRoots, ZeroPolynomialThrows) {
    EXPECT_THROW(polynomial_roots(Poly{0.0, 0.0}), RootFinderError);
    EXPECT_THROW(polynomial_roots(Poly{}), RootFinderError);
}

TEST(PolynomialRoots, MultipleRoot) {
    // (z - 1)^3: a triple root is only resolvable to about eps^(1/3).
    const auto r = polynomial_roots(Poly{-1.0, 3.0, -3.0, 1.0});
    EXPECT_LE(match_distance(r, {1.0, 1.0, 1.0}), 1e-4);
}

TEST(PolynomialRoots, AgreesWithCompanionEigenvalues) {
    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const auto degree = static_cast<std::size_t>(uniform_int(rng, 1, 12));
        Poly p(degree + 1);
        for (cplx& c : p) c = gaussian_complex(rng);
        const auto ours = polynomial_roots(p);
        const auto oracle = companion_eigenvalues(p);
        double scale = 1.0;
        for (const cplx& z : oracle) scale = std::max(scale, std::abs(z));
        EXPECT_LE(match_distance(ours, oracle), 1e-9 * scale) << "degree " << degree;
        for (const cplx& z : ours) EXPECT_LE(std::abs(poly_eval(p, z)), 1e-10 * std::pow(scale, static_cast<double>(degree)) * 10.0);
    }
}

TEST(PolynomialRoots, RecoversPlantedRoots) {
    Rng rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const auto planted = disk_points(rng, static_cast<std::size_t>(uniform_int(rng, 1, 8)), 3.0);
        const auto found = polynomial_roots(poly_from_roots(planted));
        EXPECT_LE(match_distance(found, planted), 1e-8);
    }
}
