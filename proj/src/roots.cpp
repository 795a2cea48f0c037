#include "hardy/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hardy {

namespace {

constexpr int kMaxIterations = 500;

// p(z) and p'(z) by Horner.
void horner2(std::span<const cplx> p, cplx z, cplx& value, cplx& derivative) {
    value = {0.0, 0.0};
    derivative = {0.0, 0.0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        derivative = derivative * z + value;
        value = value * z + *it;
    }
}

// Running error bound for Horner evaluation of p at z.
double horner_error_bound(std::span<const cplx> p, cplx z) {
    const double r = std::abs(z);
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * r + std::abs(*it);
    return 8.0 * std::numeric_limits<double>::epsilon() * acc;
}

}  // namespace

std::vector<cplx> polynomial_roots(std::span<const cplx> coefficients) {
    std::size_t hi = coefficients.size();
    while (hi > 0 && coefficients[hi - 1] == cplx{0.0, 0.0}) --hi;
    if (hi == 0) throw RootFinderError("polynomial_roots: polynomial is identically zero");

    std::size_t lo = 0;
    while (coefficients[lo] == cplx{0.0, 0.0}) ++lo;

    std::vector<cplx> roots(lo, cplx{0.0, 0.0});
    const std::vector<cplx> p(coefficients.begin() + static_cast<long>(lo), coefficients.begin() + static_cast<long>(hi));
    const std::size_t n = p.size() - 1;
    if (n == 0) return roots;
    if (n == 1) {
        roots.push_back(-p[0] / p[1]);
        return roots;
    }

    // Initial guesses on a circle whose radius is the geometric mean of the
    // root moduli, rotated off the real axis.
    const double radius = std::pow(std::abs(p[0]) / std::abs(p[n]), 1.0 / static_cast<double>(n));
    std::vector<cplx> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = std::polar(radius, angle);
    }

    std::vector<bool> done(n, false);
    int iteration = 0;
    for (; iteration < kMaxIterations; ++iteration) {
        bool all_done = true;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k]) continue;
            cplx value, derivative;
            horner2(p, z[k], value, derivative);
            if (std::abs(value) <= horner_error_bound(p, z[k])) {
                done[k] = true;
                continue;
            }
            all_done = false;
            const cplx ratio = value / derivative;
            cplx repulsion{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            const cplx step = ratio / (1.0 - ratio * repulsion);
            z[k] -= step;
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z[k])) done[k] = true;
        }
        if (all_done) break;
    }
    if (iteration == kMaxIterations) throw RootFinderError("polynomial_roots: Aberth iteration did not converge");
    for (const cplx& r : z)
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
            throw RootFinderError("polynomial_roots: iteration produced a non-finite root");

    // A couple of Newton steps on simple roots; multiple roots are left alone.
    for (cplx& r : z) {
        for (int s = 0; s < 2; ++s) {
            cplx value, derivative;
            horner2(p, r, value, derivative);
            if (std::abs(derivative) == 0.0) break;
            const cplx candidate = r - value / derivative;
            cplx v2, d2;
            horner2(p, candidate, v2, d2);
            if (std::abs(v2) < std::abs(value)) r = candidate;
            else break;
        }
    }

    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

}  // namespace hardy
