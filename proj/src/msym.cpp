#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardy/extremality.hpp"

namespace hardy {

MSymmetricPolynomial::MSymmetricPolynomial(std::size_t N) : N_(N), v_(2 * N + 1, 0.0) {}

MSymmetricPolynomial::MSymmetricPolynomial(std::size_t N, std::vector<double> coefficient_vector)
    : N_(N), v_(std::move(coefficient_vector)) {
    if (v_.size() != 2 * N + 1) throw std::invalid_argument("coefficient vector must have length 2N+1");
}

cplx MSymmetricPolynomial::gamma(std::size_t l) const {
    if (l == 0) return {2.0 * v_[0], 0.0};
    return {v_.at(l), v_.at(N_ + l)};
}

Poly MSymmetricPolynomial::to_poly() const {
    Poly p(2 * N_ + 1);
    for (std::size_t j = 0; j < N_; ++j) p[j] = std::conj(gamma(N_ - j));
    for (std::size_t j = N_; j <= 2 * N_; ++j) p[j] = gamma(j - N_);
    return p;
}

MSymmetricPolynomial MSymmetricPolynomial::from_poly(std::span<const cplx> p, std::size_t N, double tol) {
    auto coeff = [&](std::size_t k) { return k < p.size() ? p[k] : cplx{0.0, 0.0}; };
    double scale = 0.0;
    for (const cplx& c : p) scale = std::max(scale, std::abs(c));
    const double limit = tol * std::max(scale, 1e-300);
    for (std::size_t k = 2 * N + 1; k < p.size(); ++k)
        if (std::abs(p[k]) > limit) throw std::invalid_argument("polynomial degree exceeds 2N");
    for (std::size_t k = 0; k <= N; ++k)
        if (std::abs(coeff(N - k) - std::conj(coeff(N + k))) > limit)
            throw std::invalid_argument("polynomial is not N-symmetric");

    std::vector<double> v(2 * N + 1, 0.0);
    v[0] = 0.5 * coeff(N).real();
    for (std::size_t l = 1; l <= N; ++l) {
        v[l] = coeff(N + l).real();
        v[N + l] = coeff(N + l).imag();
    }
    return MSymmetricPolynomial(N, std::move(v));
}

Poly msym_to_poly(const MSymmetricPolynomial& p) { return p.to_poly(); }

MSymmetricPolynomial canonical_vector(std::span<const cplx> zeros) {
    Poly p{cplx{1.0, 0.0}};
    for (const cplx& a : zeros) {
        if (!(std::abs(a) < 1.0)) throw std::invalid_argument("canonical_vector: zeros must lie in the open disk");
        // (z - a)(1 - conj(a) z) = -a + (1 + |a|^2) z - conj(a) z^2
        const cplx factor[3] = {-a, cplx{1.0 + std::norm(a), 0.0}, -std::conj(a)};
        p = poly_mul(p, factor);
    }
    try {
        return MSymmetricPolynomial::from_poly(p, zeros.size(), 1e-12);
    } catch (const std::invalid_argument& e) {
        throw std::logic_error(std::string("canonical_vector: expansion lost symmetry: ") + e.what());
    }
}

cplx constraint_value(const MSymmetricPolynomial& p, const CoefficientSequence& C, long k, std::size_t m) {
    if (p.N() != m) throw std::invalid_argument("constraint_value: polynomial order must equal m");
    const long mm = static_cast<long>(m);
    cplx acc{0.0, 0.0};
    for (long l = 1; l <= mm; ++l) acc += C[k + l - mm] * std::conj(p.gamma(static_cast<std::size_t>(l)));
    for (long l = 0; l <= mm; ++l) acc += C[k - l - mm] * p.gamma(static_cast<std::size_t>(l));
    return acc;
}

}  // namespace hardy
