#ifndef HARDY_SERIES_HPP
#define HARDY_SERIES_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardy {

using cplx = std::complex<double>;

/// Complex polynomial, coefficient of z^k at index k.
using Poly = std::vector<cplx>;

class PoleMarginError : public std::invalid_argument {
   public:
    PoleMarginError(cplx parameter, double margin);
    cplx parameter() const noexcept { return parameter_; }

   private:
    cplx parameter_;
};

class QuadratureError : public std::runtime_error {
   public:
    QuadratureError(std::size_t node, cplx z, cplx value);
    std::size_t node() const noexcept { return node_; }

   private:
    std::size_t node_;
};

/*
 * Finitely supported complex sequence indexed by integers. Values are stored
 * for a contiguous window [start, start + size); every read outside the
 * window returns exactly zero, which is how C_k = 0 for k < 0 is enforced.
 */
class CoefficientSequence {
   public:
    CoefficientSequence() = default;
    explicit CoefficientSequence(std::vector<cplx> values, long start = 0)
        : start_(start), values_(std::move(values)) {}

    cplx operator[](long k) const noexcept {
        const long i = k - start_;
        if (i < 0 || i >= static_cast<long>(values_.size())) return {0.0, 0.0};
        return values_[static_cast<std::size_t>(i)];
    }

    long start() const noexcept { return start_; }
    /// One past the last stored index.
    long end() const noexcept { return start_ + static_cast<long>(values_.size()); }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const cplx> values() const noexcept { return values_; }

    /// Largest |c_k| for lo <= k <= hi.
    double max_abs(long lo, long hi) const noexcept;

   private:
    long start_ = 0;
    std::vector<cplx> values_;
};

/// Default distance the denominator parameters must keep from the unit circle.
inline constexpr double kDefaultPoleMargin = 1e-9;

/*
 * numerator(z) / prod_i (1 - conj(b_i) z), with every |b_i| < 1 - pole_margin
 * so the poles 1/conj(b_i) sit strictly outside the closed disk. Denominators
 * are kept as parameter lists, never as expanded coefficients.
 */
struct RationalDiskFunction {
    Poly numerator;
    std::vector<cplx> denominator_parameters;

    cplx operator()(cplx z) const;
    /// Throws PoleMarginError if a parameter violates the margin.
    void check_poles(double pole_margin = kDefaultPoleMargin) const;
};

cplx poly_eval(std::span<const cplx> p, cplx z) noexcept;
Poly poly_mul(std::span<const cplx> a, std::span<const cplx> b);
/// prod_j (z - roots_j)
Poly poly_from_roots(std::span<const cplx> roots);
/// prod_i (1 - conj(b_i) z)
Poly denominator_poly(std::span<const cplx> parameters);

/// Taylor coefficients c_0..c_up_to of f at 0 via the exact denominator recurrence.
CoefficientSequence expand_rational(const RationalDiskFunction& f, long up_to,
                                    double pole_margin = kDefaultPoleMargin);

/// Cauchy product of two sequences supported on k >= 0, truncated at up_to.
CoefficientSequence convolve(const CoefficientSequence& s, const CoefficientSequence& t, long up_to);

/// Uniform grid of the n-th roots of unity with weights 1/n.
class CircleGrid {
   public:
    explicit CircleGrid(std::size_t n);
    std::size_t size() const noexcept { return n_; }
    cplx node(std::size_t j) const noexcept;
    double weight() const noexcept { return 1.0 / static_cast<double>(n_); }

   private:
    std::size_t n_;
};

using CircleFunction = std::function<cplx(cplx)>;
using RealCircleFunction = std::function<double(cplx)>;

/// Grid average of |f|. Throws QuadratureError on a non-finite evaluation.
double circle_l1_norm(const CircleFunction& f, const CircleGrid& grid);

/// Grid average of a real integrand.
double circle_mean(const RealCircleFunction& g, const CircleGrid& grid);

struct QuadratureSettings {
    std::size_t initial_n = 256;
    std::size_t max_n = std::size_t{1} << 20;
    double tol = 1e-10;
};

struct AdaptiveMean {
    double value = 0.0;
    std::size_t n = 0;  ///< finest grid used
    bool converged = false;
};

/*
 * Trapezoidal mean of g on the circle, doubling n (reusing the previous
 * nodes) until two successive values agree within tol relative to
 * max(1, |value|), or max_n is reached.
 */
AdaptiveMean adaptive_circle_mean(const RealCircleFunction& g, const QuadratureSettings& settings);

/// ||f||_1 by adaptive doubling.
AdaptiveMean adaptive_l1_norm(const CircleFunction& f, const QuadratureSettings& settings);

struct LogMeanResult {
    double value = 0.0;
    std::size_t zero_nodes = 0;  ///< nodes dropped because |f| == 0
    bool hit_zero() const noexcept { return zero_nodes > 0; }
};

/// Grid average of log|f|; nodes where f vanishes exactly are dropped and counted.
LogMeanResult log_mean_modulus(const CircleFunction& f, const CircleGrid& grid);

}  // namespace hardy

#endif  // HARDY_SERIES_HPP
