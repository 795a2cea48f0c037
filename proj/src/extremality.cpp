#include "hardy/extremality.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "hardy/exact_rank.hpp"

namespace hardy {

const char* to_string(VerdictStatus s) noexcept {
    switch (s) {
        case VerdictStatus::extreme: return "extreme";
        case VerdictStatus::non_extreme: return "non_extreme";
        case VerdictStatus::borderline: return "borderline";
    }
    return "unknown";
}

CoefficientSequence compute_F0(const FactoredFunction& f, long up_to, double pole_margin) {
    const OuterRational F = f.folded_outer();
    RationalDiskFunction F0{F.numerator, F.denominator_parameters};
    for (const cplx& a : f.inner.zeros) {
        F0.denominator_parameters.push_back(a);
        F0.denominator_parameters.push_back(a);
    }
    return expand_rational(F0, std::max(up_to, 0L), pole_margin);
}

CriterionMatrix assemble_criterion(const CoefficientSequence& C, const PuncturedSpace& K, std::size_t m) {
    CriterionMatrix out;
    out.M = K.M();
    out.m = m;
    out.C = C;
    const auto M = static_cast<Eigen::Index>(out.M);
    const auto mm = static_cast<long>(m);
    out.A_plus.setZero(M, mm + 1);
    out.B_plus.setZero(M, mm + 1);
    out.A_minus.setZero(M, mm);
    out.B_minus.setZero(M, mm);
    for (Eigen::Index j = 0; j < M; ++j) {
        const long k = K.holes()[static_cast<std::size_t>(j)];
        for (long l = 0; l <= mm; ++l) {
            const cplx up = C[k + l - mm];
            const cplx down = C[k - l - mm];
            out.A_plus(j, l) = up.real() + down.real();
            out.B_plus(j, l) = up.imag() + down.imag();
            if (l >= 1) {
                out.A_minus(j, l - 1) = up.real() - down.real();
                out.B_minus(j, l - 1) = up.imag() - down.imag();
            }
        }
    }
    out.assembled.setZero(2 * M, 2 * mm + 1);
    out.assembled.topLeftCorner(M, mm + 1) = out.A_plus;
    out.assembled.topRightCorner(M, mm) = out.B_minus;
    out.assembled.bottomLeftCorner(M, mm + 1) = out.B_plus;
    out.assembled.bottomRightCorner(M, mm) = -out.A_minus;
    return out;
}

CriterionMatrix build_matrix(const FactoredFunction& f, const PuncturedSpace& K, double pole_margin) {
    return assemble_criterion(compute_F0(f, K.max_hole(), pole_margin), K, f.m());
}

RankResult numeric_rank(const Eigen::MatrixXd& matrix, double tol_rank, double noise_floor) {
    RankResult out;
    const Eigen::Index cols = matrix.cols();
    if (!matrix.allFinite()) throw std::invalid_argument("numeric_rank: matrix has non-finite entries");

    Eigen::MatrixXd V = Eigen::MatrixXd::Identity(cols, cols);
    if (matrix.rows() > 0 && cols > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix, Eigen::ComputeFullV);
        const Eigen::VectorXd& s = svd.singularValues();
        out.singular_values.assign(s.data(), s.data() + s.size());
        V = svd.matrixV();
    }
    const double sigma_max = out.singular_values.empty() ? 0.0 : out.singular_values.front();
    if (sigma_max > 0.0) {
        const double threshold = std::max(tol_rank * sigma_max, noise_floor);
        for (double sigma : out.singular_values) {
            if (sigma > threshold) ++out.rank;
            if (sigma >= 0.1 * threshold && sigma <= 10.0 * threshold) out.borderline = true;
        }
    }
    for (Eigen::Index c = static_cast<Eigen::Index>(out.rank); c < cols; ++c) {
        const Eigen::VectorXd v = V.col(c);
        out.kernel_basis.emplace_back(v.data(), v.data() + v.size());
    }
    return out;
}

RankResult deflated_rank(const Eigen::MatrixXd& matrix, const std::vector<double>& canonical, double tol_rank) {
    const Eigen::Index n = matrix.cols();
    if (static_cast<Eigen::Index>(canonical.size()) != n)
        throw std::invalid_argument("deflated_rank: canonical vector length differs from the column count");
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(canonical.data(), n);
    v.normalize();
    // Columns 1..n-1 of the Householder Q span the complement of v.
    const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(v).householderQ();
    const Eigen::MatrixXd complement = Q.rightCols(n - 1);
    const double defect = matrix.rows() > 0 ? (matrix * v).norm() : 0.0;

    RankResult restricted = numeric_rank(matrix * complement, tol_rank, defect);
    RankResult out;
    out.rank = restricted.rank;
    out.borderline = restricted.borderline;
    out.singular_values = std::move(restricted.singular_values);
    out.kernel_basis.emplace_back(v.data(), v.data() + n);
    for (const auto& u : restricted.kernel_basis) {
        const Eigen::VectorXd w = complement * Eigen::Map<const Eigen::VectorXd>(u.data(), n - 1);
        out.kernel_basis.emplace_back(w.data(), w.data() + n);
    }
    return out;
}

ExtremalityVerdict decide_extreme(const FactoredFunction& f, const PuncturedSpace& K, const Tolerances& tol) {
    f.inner.validate(tol.pole_margin);
    f.outer.validate(tol.pole_margin);
    require_membership(check_membership(f, K, tol.membership, tol.pole_margin));

    ExtremalityVerdict v;
    v.m = f.m();
    v.M = K.M();
    v.backend = tol.backend;
    v.matrix = build_matrix(f, K, tol.pole_margin);

    if (tol.backend == RankBackend::exact_rational) {
        const ExactRankResult exact = exact_criterion_rank(f, K);
        v.rank = exact.rank;
        v.kernel_basis = exact.kernel_basis;
    } else {
        RankResult r = deflated_rank(v.matrix.assembled, canonical_vector(f.inner.zeros).vector(), tol.rank);
        v.rank = r.rank;
        v.kernel_basis = std::move(r.kernel_basis);
        v.singular_values = std::move(r.singular_values);
        if (r.borderline) v.status = VerdictStatus::borderline;
    }

    if (v.m > v.M) {
        // Condition (a) fails; the rank is bounded by 2M < 2m regardless.
        assert(v.rank < v.two_m());
        v.condition_a = false;
        v.status = VerdictStatus::non_extreme;
        return v;
    }
    if (v.status == VerdictStatus::borderline) return v;
    v.status = v.rank == v.two_m() ? VerdictStatus::extreme : VerdictStatus::non_extreme;
    return v;
}

DeltaResult single_hole_delta(const FactoredFunction& f, long k, const Tolerances& tol) {
    if (f.m() > 1) throw std::invalid_argument("single_hole_delta: inner degree must be 0 or 1");
    if (k < 1) throw std::invalid_argument("single_hole_delta: hole must be a positive integer");
    DeltaResult out;
    if (f.m() == 0) {
        out.delta = std::numeric_limits<double>::infinity();
        out.extreme = true;
        return out;
    }
    const CoefficientSequence C = compute_F0(f, k, tol.pole_margin);
    out.c_k_minus_2 = C[k - 2];
    out.c_k = C[k];
    const double lower = std::norm(out.c_k_minus_2);
    const double upper = std::norm(out.c_k);
    out.delta = lower - upper;
    // f^(k) rebuilt from C_{k-2..k}; its size bounds the error carried by these C.
    const cplx a = f.inner.zeros.front();
    const double defect = std::abs(-a * C[k] + (1.0 + std::norm(a)) * C[k - 1] - std::conj(a) * C[k - 2]);
    const double noise = 4.0 * (std::abs(out.c_k_minus_2) + std::abs(out.c_k)) * defect;
    out.extreme = std::abs(out.delta) > std::max(tol.delta * (lower + upper), noise);
    return out;
}

}  // namespace hardy
