#ifndef HARDY_TOLERANCES_HPP
#define HARDY_TOLERANCES_HPP

#include <cstddef>

#include "hardy/series.hpp"

namespace hardy {

enum class RankBackend { floating_svd, exact_rational };

// Numerical thresholds used across the pipeline. All relative unless noted.
struct Tolerances {
    double pole_margin = kDefaultPoleMargin;
    double quad = 1e-10;
    std::size_t grid_initial = 256;
    std::size_t grid_max = std::size_t{1} << 20;
    double root = 1e-8;  // absolute distance to the unit circle
    double membership = 1e-9;
    double rank = 1e-8;
    double delta = 1e-8;
    double realness = 1e-10;
    double variation = 1e-6;
    double certificate = 1e-7;
    double positivity_floor = 0.25;  // min over the grid of 1 -+ eps*(h - c)
    RankBackend backend = RankBackend::floating_svd;

    QuadratureSettings quadrature() const { return {grid_initial, grid_max, quad}; }
};

}  // namespace hardy

#endif  // HARDY_TOLERANCES_HPP
