#include "hardy/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hardy/roots.hpp"

namespace hardy {

const char* to_string(Provenance p) noexcept {
    return p == Provenance::kernel_path ? "kernel_path" : "degree_overflow_path";
}

const char* to_string(ExposednessResult::Status s) noexcept {
    switch (s) {
        case ExposednessResult::Status::exposed: return "exposed";
        case ExposednessResult::Status::not_extreme: return "not_extreme";
        case ExposednessResult::Status::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

// Grid used for sup/min/realness scans of h.
constexpr std::size_t kScanGrid = 4096;
// Negative Fourier indices of g probed by quadrature.
constexpr long kNegativeProbe = 8;

struct Split {
    std::vector<cplx> phi1;
    std::vector<cplx> phi2;
    bool ok = true;
};

// phi1 = inner zeros minus phi2 (as multisets).
Split split_zeros(const std::vector<cplx>& zeros, const std::vector<cplx>& phi2) {
    Split s;
    s.phi2 = phi2;
    std::vector<bool> used(zeros.size(), false);
    for (const cplx& b : phi2) {
        bool found = false;
        for (std::size_t i = 0; i < zeros.size(); ++i) {
            if (!used[i] && std::abs(zeros[i] - b) <= 1e-12) {
                used[i] = found = true;
                break;
            }
        }
        if (!found) s.ok = false;
    }
    for (std::size_t i = 0; i < zeros.size(); ++i)
        if (!used[i]) s.phi1.push_back(zeros[i]);
    return s;
}

// G = p * prod_{phi1} (1 - conj(a) z)^{-2} * prod_{phi2} (z - b)/(1 - conj(b) z)
struct Perturbation {
    Poly p;
    Split split;
    BlaschkeProduct B;  // inner factor with constant 1
    OuterRational F;    // folded outer factor c F

    cplx G(cplx z) const {
        cplx v = poly_eval(p, z);
        for (const cplx& a : split.phi1) {
            const cplx d = 1.0 - std::conj(a) * z;
            v /= d * d;
        }
        for (const cplx& b : split.phi2) v *= (z - b) / (1.0 - std::conj(b) * z);
        return v;
    }
    cplx h(cplx z) const { return G(z) / B(z); }
    cplx f(cplx z) const { return B(z) * F(z); }
    cplx g(cplx z) const { return F(z) * G(z); }

    RationalDiskFunction g_rational() const {
        RationalDiskFunction out;
        out.numerator = poly_mul(F.numerator, p);
        out.numerator = poly_mul(out.numerator, poly_from_roots(split.phi2));
        out.denominator_parameters = F.denominator_parameters;
        for (const cplx& a : split.phi1) {
            out.denominator_parameters.push_back(a);
            out.denominator_parameters.push_back(a);
        }
        out.denominator_parameters.insert(out.denominator_parameters.end(), split.phi2.begin(), split.phi2.end());
        return out;
    }
};

Perturbation make_perturbation(const FactoredFunction& f, const MSymmetricPolynomial& p, const std::vector<cplx>& phi2) {
    return {p.to_poly(), split_zeros(f.inner.zeros, phi2), f.inner.normalized(), f.folded_outer()};
}

struct HScan {
    double max_abs = 0.0;
    double max_imag = 0.0;
    double min_re = 0.0;
    double max_re = 0.0;

    double variation() const { return max_abs > 0.0 ? (max_re - min_re) / max_abs : 0.0; }
    double realness() const { return max_abs > 0.0 ? max_imag / max_abs : max_imag; }
};

HScan scan_h(const Perturbation& P, std::size_t n) {
    const CircleGrid grid(n);
    HScan s;
    s.min_re = std::numeric_limits<double>::infinity();
    s.max_re = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const cplx h = P.h(grid.node(j));
        s.max_abs = std::max(s.max_abs, std::abs(h));
        s.max_imag = std::max(s.max_imag, std::abs(h.imag()));
        s.min_re = std::min(s.min_re, h.real());
        s.max_re = std::max(s.max_re, h.real());
    }
    return s;
}

// Signs fixed so the largest-magnitude component is positive.
std::vector<double> canonical_sign(std::vector<double> v) {
    const auto it = std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (it != v.end() && *it < 0.0)
        for (double& x : v) x = -x;
    return v;
}

void normalize_vector(std::vector<double>& v) {
    const double n = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (n > 0.0)
        for (double& x : v) x /= n;
}

// c = (mean |f| h) / (mean |f|) and eps = 1 / (2 sup |h - c|).
void finish_witness(const FactoredFunction& f, PerturbationWitness& w, const Tolerances& tol) {
    const Perturbation P = make_perturbation(f, w.p, w.phi2_zeros);
    const QuadratureSettings q = tol.quadrature();
    const double weighted = adaptive_circle_mean([&P](cplx z) { return std::abs(P.f(z)) * P.h(z).real(); }, q).value;
    const double norm = adaptive_l1_norm([&P](cplx z) { return P.f(z); }, q).value;
    w.recenter_c = weighted / norm;
    const CircleGrid grid(std::max(kScanGrid, tol.grid_initial));
    double sup = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) sup = std::max(sup, std::abs(P.h(grid.node(j)).real() - w.recenter_c));
    w.epsilon = 1.0 / (2.0 * sup);
}

}  // namespace

PerturbationWitness make_witness(const FactoredFunction& f, const PuncturedSpace& K, const ExtremalityVerdict& verdict,
                                 const Tolerances& tol) {
    (void)K;
    if (verdict.status != VerdictStatus::non_extreme || !verdict.condition_a || verdict.kernel_basis.size() < 2)
        throw PreconditionError("make_witness: requires a rank-deficient non_extreme verdict with m <= M");

    std::vector<double> canon = canonical_vector(f.inner.zeros).vector();
    normalize_vector(canon);

    std::vector<double> best;
    double best_norm = -1.0;
    for (const auto& v : verdict.kernel_basis) {
        const double dot = std::inner_product(v.begin(), v.end(), canon.begin(), 0.0);
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] - dot * canon[i];
        const double n = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
        if (n > best_norm) {
            best_norm = n;
            best = std::move(r);
        }
    }
    if (best_norm < 1e-10) throw DegenerateKernel("make_witness: kernel is spanned by the canonical vector");
    normalize_vector(best);

    PerturbationWitness w;
    w.p = MSymmetricPolynomial(f.m(), canonical_sign(std::move(best)));
    w.provenance = Provenance::kernel_path;
    w.kernel_dimension = verdict.kernel_basis.size();
    finish_witness(f, w, tol);
    return w;
}

OverflowOperator overflow_operator(const FactoredFunction& f, const PuncturedSpace& K, const Tolerances& tol) {
    if (f.m() <= K.M()) throw PreconditionError("overflow_operator: requires deg I > M");
    OverflowOperator op;
    op.N = K.M() + 1;
    op.phi1_zeros.assign(f.inner.zeros.begin(), f.inner.zeros.begin() + static_cast<long>(op.N));
    op.phi2_zeros.assign(f.inner.zeros.begin() + static_cast<long>(op.N), f.inner.zeros.end());

    // F0 = (c F) Phi_N phi2
    const OuterRational F = f.folded_outer();
    RationalDiskFunction F0;
    F0.numerator = poly_mul(F.numerator, poly_from_roots(op.phi2_zeros));
    F0.denominator_parameters = F.denominator_parameters;
    for (const cplx& a : op.phi1_zeros) {
        F0.denominator_parameters.push_back(a);
        F0.denominator_parameters.push_back(a);
    }
    F0.denominator_parameters.insert(F0.denominator_parameters.end(), op.phi2_zeros.begin(), op.phi2_zeros.end());
    op.T = assemble_criterion(expand_rational(F0, K.max_hole(), tol.pole_margin), K, op.N);
    op.rank = numeric_rank(op.T.assembled, tol.rank);
    return op;
}

PerturbationWitness make_degree_overflow_witness(const FactoredFunction& f, const PuncturedSpace& K,
                                                 const Tolerances& tol) {
    const OverflowOperator op = overflow_operator(f, K, tol);
    if (op.rank.kernel_basis.size() < 3)
        throw std::logic_error("make_degree_overflow_witness: kernel of T has dimension below 3");

    PerturbationWitness w;
    w.phi2_zeros = op.phi2_zeros;
    w.provenance = Provenance::degree_overflow_path;
    w.kernel_dimension = op.rank.kernel_basis.size();

    double best_variation = -1.0;
    for (const auto& v : op.rank.kernel_basis) {
        MSymmetricPolynomial candidate(op.N, canonical_sign(v));
        const double variation = scan_h(make_perturbation(f, candidate, w.phi2_zeros), kScanGrid).variation();
        if (variation > best_variation) {
            best_variation = variation;
            w.p = std::move(candidate);
        }
    }
    if (best_variation <= tol.variation)
        throw std::logic_error("make_degree_overflow_witness: every kernel vector gives a constant h");
    finish_witness(f, w, tol);
    return w;
}

WitnessReport verify_witness(const FactoredFunction& f, const PuncturedSpace& K, const PerturbationWitness& w,
                             const Tolerances& tol) {
    WitnessReport report;
    const Perturbation P = make_perturbation(f, w.p, w.phi2_zeros);
    if (!P.split.ok || P.split.phi1.size() != w.p.N()) {
        report.shape_ok = false;
        report.failures.push_back("witness shape does not match the inner factor of f");
        return report;
    }
    if (!(w.epsilon > 0.0) || !std::isfinite(w.epsilon) || !std::isfinite(w.recenter_c)) {
        report.failures.push_back("epsilon must be positive and finite");
        return report;
    }

    // (1), (2): h real and nonconstant on the circle.
    const std::size_t n = std::max(2 * kScanGrid, tol.grid_initial);
    report.grid_n = n;
    const HScan scan = scan_h(P, n);
    report.h_realness_residual = scan.realness();
    report.h_variation = scan.variation();
    if (!(report.h_realness_residual <= tol.realness)) report.failures.push_back("h is not real on the circle");
    if (!(report.h_variation > tol.variation)) report.failures.push_back("h is constant");

    // Multipliers 1 -+ eps (h - c) stay bounded away from zero.
    {
        const CircleGrid grid(n);
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double shifted = P.h(grid.node(j)).real() - w.recenter_c;
            worst = std::min(worst, 1.0 - w.epsilon * std::abs(shifted));
        }
        report.min_multiplier = worst;
        if (!(worst >= tol.positivity_floor))
            report.failures.push_back("perturbation multiplier 1 -+ eps(h - c) is not bounded away from zero");
    }

    // (3): g = f h = (c F) G in the punctured space, and no negative frequencies.
    const long top = K.max_hole();
    const CoefficientSequence g_hat = expand_rational(P.g_rational(), top, tol.pole_margin);
    const CoefficientSequence f_hat = taylor_of_f(f, top, tol.pole_margin);
    const MembershipReport g_membership = check_membership(g_hat, K, tol.membership);
    report.hole_residuals = g_membership.holes;
    report.hole_scale = g_membership.scale;
    if (!g_membership.accepted) report.failures.push_back("g = f h has nonzero hole coefficients");
    {
        const CircleGrid grid(kScanGrid);
        double g_norm = 0.0;
        std::vector<cplx> negative(static_cast<std::size_t>(kNegativeProbe), cplx{0.0, 0.0});
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const cplx z = grid.node(j);
            const cplx gz = P.g(z);
            g_norm += std::abs(gz);
            cplx zk = z;
            for (long k = 1; k <= kNegativeProbe; ++k, zk *= z) negative[static_cast<std::size_t>(k - 1)] += gz * zk;
        }
        double worst = 0.0;
        for (const cplx& c : negative) worst = std::max(worst, std::abs(c));
        report.negative_residual = g_norm > 0.0 ? worst / g_norm : worst;
        if (!(report.negative_residual <= tol.membership)) report.failures.push_back("g has negative frequencies");
    }

    // (4): both endpoints keep the norm and stay in the space.
    const QuadratureSettings q = tol.quadrature();
    const double eps = w.epsilon;
    const double c = w.recenter_c;
    report.norm_f = adaptive_l1_norm([&P](cplx z) { return P.f(z); }, q).value;
    report.norm_plus = adaptive_l1_norm(
        [&](cplx z) {
            const cplx fz = P.f(z);
            return fz + eps * (P.g(z) - c * fz);
        },
        q).value;
    report.norm_minus = adaptive_l1_norm(
        [&](cplx z) {
            const cplx fz = P.f(z);
            return fz - eps * (P.g(z) - c * fz);
        },
        q).value;
    const double scale = std::max(report.norm_f, 1e-300);
    if (!(std::abs(report.norm_plus - report.norm_f) <= tol.certificate * scale) ||
        !(std::abs(report.norm_minus - report.norm_f) <= tol.certificate * scale))
        report.failures.push_back("endpoint norms differ from ||f||_1");

    std::vector<cplx> plus(static_cast<std::size_t>(top) + 1), minus(static_cast<std::size_t>(top) + 1);
    double midpoint = 0.0;
    for (long k = 0; k <= top; ++k) {
        const cplx delta = eps * (g_hat[k] - c * f_hat[k]);
        plus[static_cast<std::size_t>(k)] = f_hat[k] + delta;
        minus[static_cast<std::size_t>(k)] = f_hat[k] - delta;
        midpoint = std::max(midpoint, std::abs(0.5 * (plus[static_cast<std::size_t>(k)] + minus[static_cast<std::size_t>(k)]) - f_hat[k]));
    }
    report.midpoint_residual = midpoint / std::max(f_hat.max_abs(0, top), 1e-300);
    if (!(report.midpoint_residual <= 1e-12)) report.failures.push_back("endpoint midpoint differs from f");
    report.membership_plus = check_membership(CoefficientSequence(plus, 0), K, tol.membership);
    report.membership_minus = check_membership(CoefficientSequence(minus, 0), K, tol.membership);
    if (!report.membership_plus.accepted || !report.membership_minus.accepted)
        report.failures.push_back("an endpoint is not in the punctured space");
    return report;
}

ExposednessResult check_exposed(const FactoredFunction& f, const PuncturedSpace& K, const ExtremalityVerdict& verdict,
                                const Tolerances& tol) {
    (void)K;
    ExposednessResult out;
    if (verdict.status == VerdictStatus::non_extreme) {
        out.status = ExposednessResult::Status::not_extreme;
        return out;
    }
    if (verdict.status != VerdictStatus::extreme) {
        out.status = ExposednessResult::Status::unknown;
        return out;
    }
    // 1/f in L^1 iff F has no zero on the circle.
    for (const cplx& r : polynomial_roots(f.outer.numerator))
        if (std::abs(std::abs(r) - 1.0) <= tol.root) out.circle_roots_of_F.push_back(r);
    out.status = out.circle_roots_of_F.empty() ? ExposednessResult::Status::exposed : ExposednessResult::Status::unknown;
    return out;
}

}  // namespace hardy
