#ifndef HARDY_MODEL_HPP
#define HARDY_MODEL_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hardy/series.hpp"
#include "hardy/tolerances.hpp"

namespace hardy {

/// c * prod_j (z - a_j) / (1 - conj(a_j) z), zeros repeated for multiplicity.
struct BlaschkeProduct {
    std::vector<cplx> zeros;
    cplx constant{1.0, 0.0};

    std::size_t degree() const noexcept { return zeros.size(); }
    cplx operator()(cplx z) const;
    /// Same zeros, constant 1.
    BlaschkeProduct normalized() const { return {zeros, cplx{1.0, 0.0}}; }
    RationalDiskFunction as_rational() const;
    /// Throws on |a_j| >= 1 - pole_margin or |c| != 1.
    void validate(double pole_margin = kDefaultPoleMargin) const;
};

/// Rational outer candidate numerator / prod_i (1 - conj(b_i) z).
struct OuterRational {
    Poly numerator;
    std::vector<cplx> denominator_parameters;

    cplx operator()(cplx z) const;
    RationalDiskFunction as_rational() const { return {numerator, denominator_parameters}; }
    bool is_zero() const noexcept;
    void validate(double pole_margin = kDefaultPoleMargin) const;
};

/// f = I * F with I a finite Blaschke product and F rational outer.
struct FactoredFunction {
    BlaschkeProduct inner;
    OuterRational outer;

    cplx operator()(cplx z) const { return inner(z) * outer(z); }
    std::size_t m() const noexcept { return inner.degree(); }
    RationalDiskFunction as_rational() const;
    /*
     * The criterion is stated for a Blaschke constant of 1; a unimodular
     * constant c is moved onto the outer factor, so f = B * (c F).
     */
    OuterRational folded_outer() const;
    CircleFunction evaluator() const;
};

/// Hole set k_1 < ... < k_M of positive integers. M = 0 is classical H^1.
class PuncturedSpace {
   public:
    PuncturedSpace() = default;
    /// Throws std::invalid_argument unless strictly increasing and positive.
    explicit PuncturedSpace(std::vector<long> holes);

    const std::vector<long>& holes() const noexcept { return holes_; }
    std::size_t M() const noexcept { return holes_.size(); }
    bool empty() const noexcept { return holes_.empty(); }
    /// k_M, or 0 when there are no holes.
    long max_hole() const noexcept { return holes_.empty() ? 0 : holes_.back(); }

   private:
    std::vector<long> holes_;
};

CoefficientSequence taylor_of_f(const FactoredFunction& f, long up_to, double pole_margin = kDefaultPoleMargin);

struct HoleResidual {
    long k = 0;
    double residual = 0.0;  ///< |f^(k)|
};

struct MembershipReport {
    std::vector<HoleResidual> holes;
    double scale = 0.0;  ///< max_{0 <= k <= k_M} |f^(k)|
    double tolerance = 0.0;
    bool accepted = true;
    /// Largest residual relative to scale (0 when there are no holes).
    double worst_relative() const noexcept;
};

class NotInSpaceError : public std::runtime_error {
   public:
    explicit NotInSpaceError(MembershipReport report);
    const MembershipReport& report() const noexcept { return report_; }
    long hole() const noexcept;
    double residual() const noexcept;

   private:
    MembershipReport report_;
};

/// Membership test on a coefficient sequence.
MembershipReport check_membership(const CoefficientSequence& coefficients, const PuncturedSpace& space,
                                  double tol_mem);
MembershipReport check_membership(const FactoredFunction& f, const PuncturedSpace& space, double tol_mem,
                                  double pole_margin = kDefaultPoleMargin);
/// Throws NotInSpaceError when the report rejects.
void require_membership(const MembershipReport& report);

struct OuterCheck {
    enum class Status { outer, not_outer };
    Status status = Status::outer;
    std::vector<cplx> roots;
    std::vector<cplx> inside_roots;  ///< |r| < 1 - tol_root
    std::vector<cplx> circle_roots;  ///< ||r| - 1| <= tol_root
    bool cross_checked = false;
    double log_mean = 0.0;     ///< mean of log|F| on the circle
    double log_at_zero = 0.0;  ///< log|F(0)|
    double expected_gap = 0.0; ///< sum of -log|r| over inside roots (Jensen)

    bool is_outer() const noexcept { return status == Status::outer; }
};

/*
 * Outerness of a rational function with poles off the closed disk reduces to
 * numerator root location. When no root is within tol_root of the circle the
 * verdict is cross-checked against Jensen's formula by quadrature; a
 * disagreement throws RootFinderError.
 */
OuterCheck check_outer(const OuterRational& F, double tol_root = 1e-8);

struct Normalized {
    FactoredFunction function;
    double norm = 0.0;  ///< ||f||_1 before scaling
};

/// Scales the outer numerator by 1 / ||f||_1.
Normalized normalize(const FactoredFunction& f, const QuadratureSettings& quadrature);

class MaxRetriesExceeded : public std::runtime_error {
   public:
    explicit MaxRetriesExceeded(int attempts);
};

struct SampleRequest {
    PuncturedSpace space;
    std::vector<cplx> zeros;
    std::vector<cplx> denominator_parameters;
    std::size_t numerator_degree = 0;
    std::uint64_t seed = 0;
    int max_retries = 1000;
    /// Extra distance from the unit circle demanded of numerator roots.
    double root_clearance = 0.0;
};

/*
 * Random unit-norm member of H^1_K with the requested inner zeros and outer
 * denominator. Numerator coefficients are drawn, projected onto the solution
 * space of the M hole constraints (linear in the numerator), and redrawn until
 * check_outer accepts. Deterministic in the seed.
 */
FactoredFunction sample_member(const SampleRequest& request, const Tolerances& tol = {});

}  // namespace hardy

#endif  // HARDY_MODEL_HPP
