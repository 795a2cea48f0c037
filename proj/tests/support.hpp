#ifndef HARDY_TESTS_SUPPORT_HPP
#define HARDY_TESTS_SUPPORT_HPP

// Random instance generators shared by the unit and acceptance suites.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "hardy/model.hpp"
#include "hardy/roots.hpp"

namespace hardy::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline cplx gaussian_complex(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    return {re, n(rng)};
}

/// Uniform point in the disk of radius r.
inline cplx disk_point(Rng& rng, double r) {
    const double rho = r * std::sqrt(uniform(rng, 0.0, 1.0));
    return std::polar(rho, uniform(rng, 0.0, 2.0 * M_PI));
}

inline std::vector<cplx> disk_points(Rng& rng, std::size_t count, double r) {
    std::vector<cplx> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(disk_point(rng, r));
    return out;
}

/// c * prod (z - r_j) with every |r_j| in [r_lo, r_hi].
inline Poly outer_numerator(Rng& rng, std::size_t degree, double r_lo = 1.2, double r_hi = 3.0) {
    std::vector<cplx> roots;
    for (std::size_t i = 0; i < degree; ++i) roots.push_back(std::polar(uniform(rng, r_lo, r_hi), uniform(rng, 0.0, 2.0 * M_PI)));
    Poly p = poly_from_roots(roots);
    const cplx c = gaussian_complex(rng);
    for (cplx& x : p) x *= c;
    return p;
}

/// Smallest numerator root modulus (infinity for constants).
inline double min_root_modulus(const Poly& p) {
    double best = INFINITY;
    for (const cplx& r : polynomial_roots(p)) best = std::min(best, std::abs(r));
    return best;
}

/*
 * Numerator of the given degree, drawn from the null space of linear
 * constraints (each maps a numerator to complex values), with every root at
 * modulus >= min_root. Nullopt after max_tries rejected draws.
 */
inline std::optional<Poly> constrained_numerator(Rng& rng, std::size_t degree,
                                                  const std::function<std::vector<cplx>(const Poly&)>& constraints,
                                                  double min_root = 1.01, int max_tries = 400) {
    const std::size_t n = degree + 1;
    Poly e(n, cplx{});
    e[0] = 1.0;
    const std::size_t rows = constraints(e).size();
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(std::max<std::size_t>(rows, 1)), static_cast<Eigen::Index>(n));
    A.setZero();
    for (std::size_t j = 0; j < n; ++j) {
        Poly basis(n, cplx{});
        basis[j] = 1.0;
        const auto v = constraints(basis);
        for (std::size_t i = 0; i < rows; ++i) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 1e-12 * s(0)) ++rank;
    const Eigen::MatrixXcd null = svd.matrixV().rightCols(static_cast<Eigen::Index>(n) - rank);
    if (null.cols() == 0) return std::nullopt;

    for (int attempt = 0; attempt < max_tries; ++attempt) {
        Eigen::VectorXcd w(null.cols());
        for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = gaussian_complex(rng);
        const Eigen::VectorXcd q = null * w;
        Poly p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = q(static_cast<Eigen::Index>(j));
        if (std::abs(p[0]) < 1e-8) continue;
        if (min_root_modulus(p) >= min_root) return p;
    }
    return std::nullopt;
}

/// Hole coefficients f^(k_j) as functions of the outer numerator.
inline std::function<std::vector<cplx>(const Poly&)> hole_constraints(const std::vector<cplx>& zeros,
                                                                      const std::vector<cplx>& denominators,
                                                                      const PuncturedSpace& K) {
    return [zeros, denominators, K](const Poly& numerator) {
        FactoredFunction f;
        f.inner.zeros = zeros;
        f.outer.numerator = numerator;
        f.outer.denominator_parameters = denominators;
        std::vector<cplx> out;
        if (K.empty()) return out;
        const CoefficientSequence c = taylor_of_f(f, K.max_hole());
        for (long k : K.holes()) out.push_back(c[k]);
        return out;
    };
}

/// Random member of H^1_K with the given zeros; nullopt if no outer draw was found.
inline std::optional<FactoredFunction> random_member(Rng& rng, const PuncturedSpace& K, const std::vector<cplx>& zeros,
                                                     const std::vector<cplx>& denominators, std::size_t degree,
                                                     double min_root = 1.01) {
    const auto p = constrained_numerator(rng, degree, hole_constraints(zeros, denominators, K), min_root);
    if (!p) return std::nullopt;
    FactoredFunction f;
    f.inner.zeros = zeros;
    f.outer.numerator = *p;
    f.outer.denominator_parameters = denominators;
    return f;
}

/// Strictly increasing random hole set with M holes, all <= k_max.
inline PuncturedSpace random_holes(Rng& rng, std::size_t M, long k_max) {
    std::vector<long> pool;
    for (long k = 1; k <= k_max; ++k) pool.push_back(k);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<long> ks(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(M));
    std::sort(ks.begin(), ks.end());
    return PuncturedSpace(ks);
}

}  // namespace hardy::testing

#endif  // HARDY_TESTS_SUPPORT_HPP
