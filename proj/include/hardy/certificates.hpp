#ifndef HARDY_CERTIFICATES_HPP
#define HARDY_CERTIFICATES_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/extremality.hpp"
#include "hardy/model.hpp"
#include "hardy/tolerances.hpp"

namespace hardy {

enum class Provenance { kernel_path, degree_overflow_path };

const char* to_string(Provenance p) noexcept;

/*
 * Data exhibiting f as the midpoint of f(1 + eps h') and f(1 - eps h'),
 * h' = h - c, where h = G / B on the circle, B the inner factor with constant 1,
 * and G = p * prod_{phi1} (1 - conj(a) z)^{-2} * phi2. The phi1 zeros are the
 * inner zeros of f not listed in phi2_zeros; p has order N = #phi1.
 */
struct PerturbationWitness {
    MSymmetricPolynomial p;
    std::vector<cplx> phi2_zeros;
    double epsilon = 0.0;
    double recenter_c = 0.0;
    Provenance provenance = Provenance::kernel_path;
    /// Dimension of the kernel the polynomial was drawn from (informational).
    std::size_t kernel_dimension = 0;
};

struct WitnessReport {
    bool shape_ok = true;
    double h_realness_residual = 0.0;  ///< max |Im h| / max |h|
    double h_variation = 0.0;          ///< (max Re h - min Re h) / max |h|
    std::vector<HoleResidual> hole_residuals;  ///< |g^(k_j)| for g = f h
    double hole_scale = 0.0;
    double negative_residual = 0.0;  ///< max_{1<=k<=8} |g^(-k)| / ||g||_1 by quadrature
    double min_multiplier = 0.0;     ///< min over the grid of 1 -+ eps (h - c)
    double norm_f = 0.0;
    double norm_plus = 0.0;
    double norm_minus = 0.0;
    MembershipReport membership_plus;
    MembershipReport membership_minus;
    double midpoint_residual = 0.0;
    std::size_t grid_n = 0;
    std::vector<std::string> failures;

    bool verifies() const noexcept { return failures.empty(); }
};

struct ExposednessResult {
    enum class Status { exposed, not_extreme, unknown };
    Status status = Status::unknown;
    std::vector<cplx> circle_roots_of_F;
};

const char* to_string(ExposednessResult::Status s) noexcept;

class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Every kernel vector is parallel to the canonical one: the rank call was wrong.
class DegenerateKernel : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Witness from a rank-deficient criterion matrix (m <= M).
PerturbationWitness make_witness(const FactoredFunction& f, const PuncturedSpace& K, const ExtremalityVerdict& verdict,
                                 const Tolerances& tol = {});

struct OverflowOperator {
    std::size_t N = 0;
    std::vector<cplx> phi1_zeros;
    std::vector<cplx> phi2_zeros;
    CriterionMatrix T;
    RankResult rank;
};

/*
 * The 2M x (2N+1) operator T for N = M + 1, built like the criterion matrix
 * over F * Phi_N * phi2 with phi1 the first N inner zeros. Its kernel has
 * dimension at least 3.
 */
OverflowOperator overflow_operator(const FactoredFunction& f, const PuncturedSpace& K, const Tolerances& tol = {});

/// Witness for m > M from the kernel of T, choosing the largest-variation h.
PerturbationWitness make_degree_overflow_witness(const FactoredFunction& f, const PuncturedSpace& K,
                                                 const Tolerances& tol = {});

/// Recomputes everything from (f, K, w); failures are recorded, never thrown.
WitnessReport verify_witness(const FactoredFunction& f, const PuncturedSpace& K, const PerturbationWitness& w,
                             const Tolerances& tol = {});

ExposednessResult check_exposed(const FactoredFunction& f, const PuncturedSpace& K, const ExtremalityVerdict& verdict,
                                const Tolerances& tol = {});

}  // namespace hardy

#endif  // HARDY_CERTIFICATES_HPP
