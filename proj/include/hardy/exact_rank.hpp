#ifndef HARDY_EXACT_RANK_HPP
#define HARDY_EXACT_RANK_HPP

#include <Eigen/Dense>
#include <vector>

#include "hardy/model.hpp"

namespace hardy {

/*
 * Exact rank provider. Every double is a dyadic rational, so inputs are
 * converted without rounding, the coefficients C_k and the criterion matrix
 * are formed in Gaussian-rational arithmetic (GMP), and rank and kernel come
 * from exact Gauss-Jordan elimination. Kernel vectors are rounded to double
 * and scaled to unit length only on output.
 */
struct ExactRankResult {
    std::size_t rank = 0;
    std::vector<std::vector<double>> kernel_basis;
};

/// Exact rank of a matrix whose entries are taken as exact binary rationals.
ExactRankResult exact_matrix_rank(const Eigen::MatrixXd& matrix);

/*
 * Exact rank of the criterion matrix of f over K. Throws NotInSpaceError when
 * some hole coefficient of f is not exactly zero in rational arithmetic.
 */
ExactRankResult exact_criterion_rank(const FactoredFunction& f, const PuncturedSpace& K);

}  // namespace hardy

#endif  // HARDY_EXACT_RANK_HPP
