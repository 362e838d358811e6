#pragma once

#include <span>
#include <vector>

#include "specprop/dense.hpp"

namespace specprop {

struct LeastSquaresResult {
    std::vector<double> solution;
    /// True when some |R(i,i)| fell below 1e-300 during the factorization;
    /// the back-substitution is still carried out with the tiny pivots.
    bool degenerate = false;
};

/// Minimum-residual solution of A x ~= b via Householder QR, rows >= cols.
[[nodiscard]] LeastSquaresResult lstsq_householder(const DenseMatrix& a,
                                                   std::span<const double> b);

/// All singular values, descending, by one-sided Jacobi on the columns
/// (the transpose is used when rows < cols). Intended for dimensions <= 128.
[[nodiscard]] std::vector<double> singular_values(const DenseMatrix& a);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // column j is the eigenvector of values[j]
};

/// Full eigendecomposition of a symmetric dense matrix by cyclic Jacobi
/// rotations with threshold sweeps (off-diagonal Frobenius norm below
/// 1e-12 * ||A||_F).
[[nodiscard]] EigenDecomposition jacobi_eigh(const DenseMatrix& a);

}  // namespace specprop
