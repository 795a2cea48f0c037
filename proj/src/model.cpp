#include "hardy/model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hardy/roots.hpp"

namespace hardy {

cplx BlaschkeProduct::operator()(cplx z) const {
    cplx v = constant;
    for (const cplx& a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
}

RationalDiskFunction BlaschkeProduct::as_rational() const {
    Poly num = poly_from_roots(zeros);
    for (cplx& c : num) c *= constant;
    return {std::move(num), zeros};
}

void BlaschkeProduct::validate(double pole_margin) const {
    for (const cplx& a : zeros)
        if (!(std::abs(a) < 1.0 - pole_margin)) throw PoleMarginError(a, pole_margin);
    if (std::abs(std::abs(constant) - 1.0) > 1e-12)
        throw std::invalid_argument("Blaschke constant must be unimodular");
}

cplx OuterRational::operator()(cplx z) const { return as_rational()(z); }

bool OuterRational::is_zero() const noexcept {
    return std::all_of(numerator.begin(), numerator.end(), [](const cplx& c) { return c == cplx{0.0, 0.0}; });
}

void OuterRational::validate(double pole_margin) const {
    if (is_zero()) throw std::invalid_argument("outer factor is identically zero");
    as_rational().check_poles(pole_margin);
}

RationalDiskFunction FactoredFunction::as_rational() const {
    const RationalDiskFunction I = inner.as_rational();
    RationalDiskFunction out;
    out.numerator = poly_mul(I.numerator, outer.numerator);
    out.denominator_parameters = I.denominator_parameters;
    out.denominator_parameters.insert(out.denominator_parameters.end(), outer.denominator_parameters.begin(),
                                      outer.denominator_parameters.end());
    return out;
}

OuterRational FactoredFunction::folded_outer() const {
    OuterRational F = outer;
    for (cplx& c : F.numerator) c *= inner.constant;
    return F;
}

CircleFunction FactoredFunction::evaluator() const {
    return [f = *this](cplx z) { return f(z); };
}

PuncturedSpace::PuncturedSpace(std::vector<long> holes) : holes_(std::move(holes)) {
    for (std::size_t j = 0; j < holes_.size(); ++j) {
        if (holes_[j] < 1) throw std::invalid_argument("holes must be positive integers");
        if (j > 0 && holes_[j] <= holes_[j - 1]) throw std::invalid_argument("holes must be strictly increasing");
    }
}

CoefficientSequence taylor_of_f(const FactoredFunction& f, long up_to, double pole_margin) {
    return expand_rational(f.as_rational(), up_to, pole_margin);
}

double MembershipReport::worst_relative() const noexcept {
    double worst = 0.0;
    for (const auto& h : holes) worst = std::max(worst, scale > 0.0 ? h.residual / scale : h.residual);
    return worst;
}

namespace {

std::string not_in_space_message(const MembershipReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "function is not in the punctured space:";
    const char* sep = " ";
    for (const auto& h : r.holes) {
        if (h.residual <= r.tolerance * r.scale) continue;
        os << sep << "f^(" << h.k << ") residual " << h.residual;
        sep = ", ";
    }
    return os.str();
}

}  // namespace

NotInSpaceError::NotInSpaceError(MembershipReport report)
    : std::runtime_error(not_in_space_message(report)), report_(std::move(report)) {}

long NotInSpaceError::hole() const noexcept {
    for (const auto& h : report_.holes)
        if (h.residual > report_.tolerance * report_.scale) return h.k;
    return 0;
}

double NotInSpaceError::residual() const noexcept {
    for (const auto& h : report_.holes)
        if (h.residual > report_.tolerance * report_.scale) return h.residual;
    return 0.0;
}

MembershipReport check_membership(const CoefficientSequence& coefficients, const PuncturedSpace& space,
                                  double tol_mem) {
    MembershipReport report;
    report.tolerance = tol_mem;
    if (space.empty()) return report;
    report.scale = coefficients.max_abs(0, space.max_hole());
    for (long k : space.holes()) {
        const double r = std::abs(coefficients[k]);
        report.holes.push_back({k, r});
        if (r > tol_mem * report.scale) report.accepted = false;
    }
    return report;
}

MembershipReport check_membership(const FactoredFunction& f, const PuncturedSpace& space, double tol_mem,
                                  double pole_margin) {
    return check_membership(taylor_of_f(f, space.max_hole(), pole_margin), space, tol_mem);
}

void require_membership(const MembershipReport& report) {
    if (!report.accepted) throw NotInSpaceError(report);
}

OuterCheck check_outer(const OuterRational& F, double tol_root) {
    if (F.is_zero()) throw std::invalid_argument("check_outer: numerator is identically zero");
    OuterCheck out;
    out.roots = polynomial_roots(F.numerator);
    for (const cplx& r : out.roots) {
        const double modulus = std::abs(r);
        if (std::abs(modulus - 1.0) <= tol_root) out.circle_roots.push_back(r);
        else if (modulus < 1.0) out.inside_roots.push_back(r);
    }
    out.status = out.inside_roots.empty() ? OuterCheck::Status::outer : OuterCheck::Status::not_outer;

    const cplx at_zero = F(cplx{0.0, 0.0});
    if (!out.circle_roots.empty() || at_zero == cplx{0.0, 0.0}) return out;

    // Jensen: mean log|F| = log|F(0)| + sum_{|r| < 1} log(1/|r|).
    const auto F_eval = F.as_rational();
    const AdaptiveMean mean = adaptive_circle_mean(
        [&F_eval](cplx z) { return std::log(std::abs(F_eval(z))); }, QuadratureSettings{256, std::size_t{1} << 16, 1e-12});
    if (!mean.converged) return out;
    out.cross_checked = true;
    out.log_mean = mean.value;
    out.log_at_zero = std::log(std::abs(at_zero));
    for (const cplx& r : out.inside_roots) out.expected_gap -= std::log(std::abs(r));
    const double gap = out.log_mean - out.log_at_zero;
    if (std::abs(gap - out.expected_gap) > 1e-8 * std::max(1.0, std::abs(out.log_mean)))
        throw RootFinderError("check_outer: root location disagrees with the Jensen quadrature cross-check");
    return out;
}

Normalized normalize(const FactoredFunction& f, const QuadratureSettings& quadrature) {
    if (f.outer.is_zero()) throw std::invalid_argument("normalize: function is identically zero");
    const AdaptiveMean norm = adaptive_l1_norm(f.evaluator(), quadrature);
    Normalized out{f, norm.value};
    for (cplx& c : out.function.outer.numerator) c /= norm.value;
    return out;
}

MaxRetriesExceeded::MaxRetriesExceeded(int attempts)
    : std::runtime_error("sample_member: no outer member found after " + std::to_string(attempts) + " draws") {}

FactoredFunction sample_member(const SampleRequest& request, const Tolerances& tol) {
    const PuncturedSpace& K = request.space;
    const std::size_t d = request.numerator_degree;
    if (d < K.M()) throw std::invalid_argument("sample_member: numerator degree must be at least the number of holes");

    BlaschkeProduct inner{request.zeros, cplx{1.0, 0.0}};
    inner.validate(tol.pole_margin);

    // Column i of U holds the hole coefficients of I(z) z^i / D(z).
    RationalDiskFunction base = inner.as_rational();
    base.denominator_parameters.insert(base.denominator_parameters.end(), request.denominator_parameters.begin(),
                                       request.denominator_parameters.end());
    const CoefficientSequence u = expand_rational(base, K.max_hole(), tol.pole_margin);
    const auto M = static_cast<Eigen::Index>(K.M());
    const auto cols = static_cast<Eigen::Index>(d + 1);
    Eigen::MatrixXcd U(M, cols);
    for (Eigen::Index j = 0; j < M; ++j)
        for (Eigen::Index i = 0; i < cols; ++i) U(j, i) = u[K.holes()[static_cast<std::size_t>(j)] - i];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd;
    if (M > 0) svd.compute(U, Eigen::ComputeThinU | Eigen::ComputeThinV);

    std::mt19937_64 rng(request.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    constexpr double decay = 0.6;

    for (int attempt = 0; attempt < request.max_retries; ++attempt) {
        Eigen::VectorXcd q(cols);
        double scale = 1.0;
        for (Eigen::Index i = 0; i < cols; ++i, scale *= decay) {
            const double re = normal(rng);
            const double im = normal(rng);
            q(i) = scale * cplx{re, im};
        }
        if (M > 0)
            for (int pass = 0; pass < 2; ++pass) q -= svd.solve(U * q);

        OuterRational F{Poly(q.data(), q.data() + cols), request.denominator_parameters};
        if (F.is_zero() || q.norm() < 1e-8) continue;
        OuterCheck check;
        try {
            check = check_outer(F, tol.root);
        } catch (const std::runtime_error&) {
            continue;
        }
        if (!check.is_outer()) continue;
        if (request.root_clearance > 0.0) {
            const bool clear = std::all_of(check.roots.begin(), check.roots.end(), [&](const cplx& r) {
                return std::abs(r) >= 1.0 + request.root_clearance;
            });
            if (!clear) continue;
        }
        return normalize(FactoredFunction{inner, std::move(F)}, tol.quadrature()).function;
    }
    throw MaxRetriesExceeded(request.max_retries);
}

}  // namespace hardy
