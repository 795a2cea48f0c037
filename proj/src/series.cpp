#include "hardy/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hardy {

namespace {

std::string pole_message(cplx b, double margin) {
    std::ostringstream os;
    os.precision(17);
    os << "denominator parameter (" << b.real() << ", " << b.imag() << ") has modulus " << std::abs(b)
       << ", which is not below 1 - " << margin;
    return os.str();
}

std::string quadrature_message(std::size_t node, cplx z, cplx value) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite value (" << value.real() << ", " << value.imag() << ") at grid node " << node << " z = ("
       << z.real() << ", " << z.imag() << ")";
    return os.str();
}

}  // namespace

PoleMarginError::PoleMarginError(cplx parameter, double margin)
    : std::invalid_argument(pole_message(parameter, margin)), parameter_(parameter) {}

QuadratureError::QuadratureError(std::size_t node, cplx z, cplx value)
    : std::runtime_error(quadrature_message(node, z, value)), node_(node) {}

double CoefficientSequence::max_abs(long lo, long hi) const noexcept {
    double best = 0.0;
    for (long k = std::max(lo, start_); k <= std::min(hi, end() - 1); ++k) best = std::max(best, std::abs((*this)[k]));
    return best;
}

cplx poly_eval(std::span<const cplx> p, cplx z) noexcept {
    cplx acc{0.0, 0.0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Poly poly_mul(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly poly_from_roots(std::span<const cplx> roots) {
    Poly p{cplx{1.0, 0.0}};
    for (const cplx& r : roots) {
        const cplx factor[2] = {-r, cplx{1.0, 0.0}};
        p = poly_mul(p, factor);
    }
    return p;
}

Poly denominator_poly(std::span<const cplx> parameters) {
    Poly d{cplx{1.0, 0.0}};
    for (const cplx& b : parameters) {
        const cplx factor[2] = {cplx{1.0, 0.0}, -std::conj(b)};
        d = poly_mul(d, factor);
    }
    return d;
}

cplx RationalDiskFunction::operator()(cplx z) const {
    cplx den{1.0, 0.0};
    for (const cplx& b : denominator_parameters) den *= (1.0 - std::conj(b) * z);
    return poly_eval(numerator, z) / den;
}

void RationalDiskFunction::check_poles(double pole_margin) const {
    for (const cplx& b : denominator_parameters)
        if (!(std::abs(b) < 1.0 - pole_margin)) throw PoleMarginError(b, pole_margin);
}

CoefficientSequence expand_rational(const RationalDiskFunction& f, long up_to, double pole_margin) {
    if (up_to < 0) throw std::invalid_argument("expand_rational: up_to must be nonnegative");
    f.check_poles(pole_margin);
    const Poly d = denominator_poly(f.denominator_parameters);
    const auto len = static_cast<std::size_t>(up_to) + 1;
    std::vector<cplx> c(len, cplx{0.0, 0.0});
    // sum_n d_n c_{k-n} = p_k with d_0 = 1
    for (std::size_t k = 0; k < len; ++k) {
        cplx acc = k < f.numerator.size() ? f.numerator[k] : cplx{0.0, 0.0};
        const std::size_t top = std::min(k, d.size() - 1);
        for (std::size_t n = 1; n <= top; ++n) acc -= d[n] * c[k - n];
        c[k] = acc;
    }
    return CoefficientSequence(std::move(c), 0);
}

CoefficientSequence convolve(const CoefficientSequence& s, const CoefficientSequence& t, long up_to) {
    if (s.start() < 0 || t.start() < 0) throw std::invalid_argument("convolve: sequences must start at k >= 0");
    if (up_to < 0) return CoefficientSequence({}, 0);
    std::vector<cplx> out(static_cast<std::size_t>(up_to) + 1, cplx{0.0, 0.0});
    for (long i = s.start(); i < s.end() && i <= up_to; ++i)
        for (long j = t.start(); j < t.end() && i + j <= up_to; ++j) out[static_cast<std::size_t>(i + j)] += s[i] * t[j];
    return CoefficientSequence(std::move(out), 0);
}

CircleGrid::CircleGrid(std::size_t n) : n_(n) {
    if (n < 16 || (n & (n - 1)) != 0) throw std::invalid_argument("CircleGrid: n must be a power of two >= 16");
}

cplx CircleGrid::node(std::size_t j) const noexcept {
    // Reduce to the first octant so symmetric nodes are bit-exact (i, -1, ...).
    const std::size_t q = n_ / 4;
    const std::size_t quadrant = (j / q) % 4;
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j % q) / static_cast<double>(n_);
    const cplx base = j % q == 0 ? cplx{1.0, 0.0} : cplx{std::cos(theta), std::sin(theta)};
    switch (quadrant) {
        case 0: return base;
        case 1: return {-base.imag(), base.real()};
        case 2: return -base;
        default: return {base.imag(), -base.real()};
    }
}

double circle_l1_norm(const CircleFunction& f, const CircleGrid& grid) {
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const cplx z = grid.node(j);
        const cplx v = f(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw QuadratureError(j, z, v);
        sum += std::abs(v);
    }
    return sum * grid.weight();
}

double circle_mean(const RealCircleFunction& g, const CircleGrid& grid) {
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const cplx z = grid.node(j);
        const double v = g(z);
        if (!std::isfinite(v)) throw QuadratureError(j, z, cplx{v, 0.0});
        sum += v;
    }
    return sum * grid.weight();
}

AdaptiveMean adaptive_circle_mean(const RealCircleFunction& g, const QuadratureSettings& settings) {
    std::size_t n = std::max<std::size_t>(16, settings.initial_n);
    AdaptiveMean out;
    out.value = circle_mean(g, CircleGrid(n));
    out.n = n;
    while (2 * n <= settings.max_n) {
        // Nodes of the doubled grid at odd positions are the new ones.
        const CircleGrid fine(2 * n);
        double odd = 0.0;
        for (std::size_t j = 1; j < 2 * n; j += 2) {
            const cplx z = fine.node(j);
            const double v = g(z);
            if (!std::isfinite(v)) throw QuadratureError(j, z, cplx{v, 0.0});
            odd += v;
        }
        const double next = 0.5 * (out.value + odd / static_cast<double>(n));
        const double diff = std::abs(next - out.value);
        out.value = next;
        n *= 2;
        out.n = n;
        if (diff <= settings.tol * std::max(1.0, std::abs(next))) {
            out.converged = true;
            break;
        }
    }
    return out;
}

AdaptiveMean adaptive_l1_norm(const CircleFunction& f, const QuadratureSettings& settings) {
    return adaptive_circle_mean(
        [&f](cplx z) {
            const cplx v = f(z);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::numeric_limits<double>::quiet_NaN();
            return std::abs(v);
        },
        settings);
}

LogMeanResult log_mean_modulus(const CircleFunction& f, const CircleGrid& grid) {
    LogMeanResult out;
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const cplx z = grid.node(j);
        const cplx v = f(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw QuadratureError(j, z, v);
        const double r = std::abs(v);
        if (r == 0.0) {
            ++out.zero_nodes;
            continue;
        }
        sum += std::log(r);
        ++used;
    }
    out.value = used == 0 ? -std::numeric_limits<double>::infinity() : sum / static_cast<double>(used);
    return out;
}

}  // namespace hardy
