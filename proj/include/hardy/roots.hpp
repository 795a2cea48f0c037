#ifndef HARDY_ROOTS_HPP
#define HARDY_ROOTS_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "hardy/series.hpp"

namespace hardy {

class RootFinderError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/*
 * All roots of a complex polynomial (coefficient of z^k at index k), with
 * multiplicity, by simultaneous Aberth-Ehrlich iteration followed by a Newton
 * polish against the original coefficients. Trailing zero coefficients are
 * trimmed; exact zeros at the origin are split off before iterating.
 *
 * Throws RootFinderError if the polynomial is identically zero or the
 * iteration does not converge.
 */
std::vector<cplx> polynomial_roots(std::span<const cplx> coefficients);

}  // namespace hardy

#endif  // HARDY_ROOTS_HPP
