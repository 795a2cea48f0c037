#ifndef HARDY_EXTREMALITY_HPP
#define HARDY_EXTREMALITY_HPP

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "hardy/model.hpp"
#include "hardy/series.hpp"
#include "hardy/tolerances.hpp"

namespace hardy {

/*
 * N-symmetric polynomial p of degree <= 2N, i.e. z^{-N} p real on the circle,
 * held by its real coefficient vector (alpha_0, alpha_1..alpha_N, beta_1..beta_N).
 * With gamma_0 = 2 alpha_0 and gamma_l = alpha_l + i beta_l,
 *   p(z) = sum_{l<N} conj(gamma_{N-l}) z^l + sum_{l>=N} gamma_{l-N} z^l.
 */
class MSymmetricPolynomial {
   public:
    explicit MSymmetricPolynomial(std::size_t N = 0);
    MSymmetricPolynomial(std::size_t N, std::vector<double> coefficient_vector);

    std::size_t N() const noexcept { return N_; }
    const std::vector<double>& vector() const noexcept { return v_; }
    double alpha(std::size_t l) const { return v_.at(l); }
    double beta(std::size_t l) const { return v_.at(N_ + l); }
    cplx gamma(std::size_t l) const;

    /// Coefficients of p, length 2N + 1.
    Poly to_poly() const;
    /*
     * Reads the vector back from polynomial coefficients. Throws
     * std::invalid_argument if the coefficients break the symmetry
     * p^(N-k) = conj(p^(N+k)) by more than tol (relative to max |p_k|).
     */
    static MSymmetricPolynomial from_poly(std::span<const cplx> p, std::size_t N, double tol = 1e-12);

   private:
    std::size_t N_;
    std::vector<double> v_;
};

Poly msym_to_poly(const MSymmetricPolynomial& p);

/// Coefficient vector of prod_j (z - a_j)(1 - conj(a_j) z), an m-symmetric polynomial.
MSymmetricPolynomial canonical_vector(std::span<const cplx> zeros);

/// Hole coefficient (p F_0)^(k) written through C_r = F_0^(r); p.N() must equal m.
cplx constraint_value(const MSymmetricPolynomial& p, const CoefficientSequence& C, long k, std::size_t m);

struct CriterionMatrix {
    std::size_t M = 0;
    std::size_t m = 0;
    Eigen::MatrixXd A_plus;   ///< M x (m+1)
    Eigen::MatrixXd B_plus;   ///< M x (m+1)
    Eigen::MatrixXd A_minus;  ///< M x m, column l-1 holds l
    Eigen::MatrixXd B_minus;  ///< M x m
    Eigen::MatrixXd assembled;  ///< [[A+, B-], [B+, -A-]], 2M x (2m+1)
    CoefficientSequence C;
};

/// C_k of F_0 = (c F) prod_j (1 - conj(a_j) z)^{-2}, k = 0..up_to.
CoefficientSequence compute_F0(const FactoredFunction& f, long up_to, double pole_margin = kDefaultPoleMargin);

/// Block matrix over an arbitrary coefficient sequence; m columns-parameter.
CriterionMatrix assemble_criterion(const CoefficientSequence& C, const PuncturedSpace& K, std::size_t m);

CriterionMatrix build_matrix(const FactoredFunction& f, const PuncturedSpace& K,
                             double pole_margin = kDefaultPoleMargin);

struct RankResult {
    std::size_t rank = 0;
    std::vector<std::vector<double>> kernel_basis;
    std::vector<double> singular_values;  ///< descending
    bool borderline = false;
};

/*
 * SVD rank: count of sigma_i > max(tol * sigma_max, noise_floor), 0 when
 * sigma_max == 0. The kernel basis is the right singular vectors of the
 * discarded directions. Borderline when some sigma_i lies within one decade
 * of the threshold.
 */
RankResult numeric_rank(const Eigen::MatrixXd& matrix, double tol_rank, double noise_floor = 0.0);

/*
 * Rank of a matrix known to annihilate the canonical vector, measured on its
 * orthogonal complement. Singular values at or below the observed defect
 * |matrix * v| / |v| count as zero. The kernel basis starts with v / |v|;
 * singular_values are those of the restriction (length min(rows, n - 1)).
 */
RankResult deflated_rank(const Eigen::MatrixXd& matrix, const std::vector<double>& canonical, double tol_rank);

enum class VerdictStatus { extreme, non_extreme, borderline };

const char* to_string(VerdictStatus s) noexcept;

struct ExtremalityVerdict {
    VerdictStatus status = VerdictStatus::extreme;
    std::size_t m = 0;
    std::size_t M = 0;
    std::size_t rank = 0;
    bool condition_a = true;  ///< m <= M
    std::vector<std::vector<double>> kernel_basis;
    std::vector<double> singular_values;
    RankBackend backend = RankBackend::floating_svd;
    CriterionMatrix matrix;

    std::size_t two_m() const noexcept { return 2 * m; }
};

/// Throws NotInSpaceError when a hole residual exceeds tol.membership.
ExtremalityVerdict decide_extreme(const FactoredFunction& f, const PuncturedSpace& K, const Tolerances& tol = {});

struct DeltaResult {
    double delta = 0.0;  ///< |C_{k-2}|^2 - |C_k|^2, +inf when m = 0
    bool extreme = true;
    cplx c_k_minus_2{};
    cplx c_k{};
};

/// Single-hole test for K = {k}, m in {0, 1}.
DeltaResult single_hole_delta(const FactoredFunction& f, long k, const Tolerances& tol = {});

}  // namespace hardy

#endif  // HARDY_EXTREMALITY_HPP
