#include "hardy/exact_rank.hpp"

#include <gmpxx.h>

#include <cmath>

namespace hardy {

namespace {

struct GaussQ {
    mpq_class re{0};
    mpq_class im{0};
};

GaussQ exact(cplx z) {
    GaussQ q;
    q.re = mpq_class(z.real());
    q.im = mpq_class(z.imag());
    return q;
}

GaussQ add(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
GaussQ sub(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
GaussQ mul(const GaussQ& a, const GaussQ& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
GaussQ conj(const GaussQ& a) { return {a.re, -a.im}; }
bool is_zero(const GaussQ& a) { return sgn(a.re) == 0 && sgn(a.im) == 0; }

using QPoly = std::vector<GaussQ>;

QPoly qmul(const QPoly& a, const QPoly& b) {
    QPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = add(out[i + j], mul(a[i], b[j]));
    return out;
}

QPoly qpoly(std::span<const cplx> p) {
    QPoly out;
    for (const cplx& c : p) out.push_back(exact(c));
    if (out.empty()) out.push_back(GaussQ{});
    return out;
}

// Taylor coefficients 0..up_to of num / prod (1 - conj(b) z).
std::vector<GaussQ> expand_exact(const QPoly& num, std::span<const cplx> parameters, long up_to) {
    QPoly d{GaussQ{mpq_class(1), mpq_class(0)}};
    for (const cplx& b : parameters) {
        const QPoly factor{GaussQ{mpq_class(1), mpq_class(0)}, sub(GaussQ{}, conj(exact(b)))};
        d = qmul(d, factor);
    }
    std::vector<GaussQ> c(static_cast<std::size_t>(up_to) + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        GaussQ acc = k < num.size() ? num[k] : GaussQ{};
        for (std::size_t n = 1; n <= std::min(k, d.size() - 1); ++n) acc = sub(acc, mul(d[n], c[k - n]));
        c[k] = acc;
    }
    return c;
}

using QMatrix = std::vector<std::vector<mpq_class>>;

ExactRankResult rank_and_kernel(QMatrix a, std::size_t cols) {
    const std::size_t rows = a.size();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(a[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const mpq_class inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            const mpq_class factor = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }

    ExactRankResult out;
    out.rank = r;
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<double> v(cols, 0.0);
        v[free] = 1.0;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free].get_d();
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

}  // namespace

ExactRankResult exact_matrix_rank(const Eigen::MatrixXd& matrix) {
    QMatrix a(static_cast<std::size_t>(matrix.rows()), std::vector<mpq_class>(static_cast<std::size_t>(matrix.cols())));
    for (Eigen::Index i = 0; i < matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < matrix.cols(); ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mpq_class(matrix(i, j));
    return rank_and_kernel(std::move(a), static_cast<std::size_t>(matrix.cols()));
}

ExactRankResult exact_criterion_rank(const FactoredFunction& f, const PuncturedSpace& K) {
    const long top = K.max_hole();
    const OuterRational F = f.folded_outer();
    const QPoly numerator = qpoly(F.numerator);

    // Exact membership: f^(k_j) = 0 with f = (B numerator) / (B denominators * F denominators).
    {
        QPoly blaschke_num{GaussQ{mpq_class(1), mpq_class(0)}};
        for (const cplx& a : f.inner.zeros) blaschke_num = qmul(blaschke_num, QPoly{sub(GaussQ{}, exact(a)), GaussQ{mpq_class(1), mpq_class(0)}});
        std::vector<cplx> params = f.inner.zeros;
        params.insert(params.end(), F.denominator_parameters.begin(), F.denominator_parameters.end());
        const auto fhat = expand_exact(qmul(blaschke_num, numerator), params, top);
        MembershipReport report;
        report.tolerance = 0.0;
        for (long k : K.holes()) {
            const GaussQ& v = fhat[static_cast<std::size_t>(k)];
            report.holes.push_back({k, std::hypot(v.re.get_d(), v.im.get_d())});
            if (!is_zero(v)) report.accepted = false;
        }
        for (const auto& c : fhat) report.scale = std::max(report.scale, std::hypot(c.re.get_d(), c.im.get_d()));
        if (!report.accepted) throw NotInSpaceError(report);
    }

    std::vector<cplx> params = F.denominator_parameters;
    for (const cplx& a : f.inner.zeros) {
        params.push_back(a);
        params.push_back(a);
    }
    const auto C = expand_exact(numerator, params, top);
    auto at = [&C](long r) { return r < 0 || r >= static_cast<long>(C.size()) ? GaussQ{} : C[static_cast<std::size_t>(r)]; };

    const std::size_t M = K.M();
    const auto m = static_cast<long>(f.m());
    const std::size_t cols = 2 * static_cast<std::size_t>(m) + 1;
    QMatrix a(2 * M, std::vector<mpq_class>(cols));
    for (std::size_t j = 0; j < M; ++j) {
        const long k = K.holes()[j];
        for (long l = 0; l <= m; ++l) {
            const GaussQ up = at(k + l - m);
            const GaussQ down = at(k - l - m);
            const auto col = static_cast<std::size_t>(l);
            a[j][col] = up.re + down.re;
            a[M + j][col] = up.im + down.im;
            if (l >= 1) {
                const auto beta_col = static_cast<std::size_t>(m + l);
                a[j][beta_col] = up.im - down.im;
                a[M + j][beta_col] = -(up.re - down.re);
            }
        }
    }
    return rank_and_kernel(std::move(a), cols);
}

}  // namespace hardy
