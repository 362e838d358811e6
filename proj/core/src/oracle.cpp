#include "specprop/oracle.hpp"

#include <stdexcept>
#include <string>

#include "specprop/linalg.hpp"

namespace specprop {

DenseMatrix exact_filter_oracle(const PropagationOperator& op, const FilterSpec& filter,
                                const DenseMatrix& signal) {
    const std::size_t n = op.node_count;
    if (n > 64)
        throw std::invalid_argument("exact_filter_oracle: dense path capped at n = 64");
    if (signal.rows != n) throw std::invalid_argument("exact_filter_oracle: signal rows != n");

    DenseMatrix dense(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t pos = op.row_offsets[i]; pos < op.row_offsets[i + 1]; ++pos)
            dense(i, op.col_indices[pos]) = op.values[pos];

    const EigenDecomposition eig = jacobi_eigh(dense);

    std::vector<double> filtered(n);
    for (std::size_t k = 0; k < n; ++k) {
        double lambda = eig.values[k];
        if (!filter.domain.contains(lambda)) {
            if (lambda < filter.domain.lower && filter.domain.lower - lambda <= 1e-9)
                lambda = filter.domain.lower;
            else if (lambda > filter.domain.upper && lambda - filter.domain.upper <= 1e-9)
                lambda = filter.domain.upper;
            else
                throw std::domain_error("exact_filter_oracle: eigenvalue " +
                                        std::to_string(lambda) + " outside domain of " +
                                        filter.name);
        }
        filtered[k] = filter.evaluate(lambda);
    }

    // U diag(g) U^T signal, computed as U * (diag(g) * (U^T signal)).
    DenseMatrix ut_signal = matmul_tn(eig.vectors, signal);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t c = 0; c < ut_signal.cols; ++c) ut_signal(k, c) *= filtered[k];
    return matmul(eig.vectors, ut_signal);
}

}  // namespace specprop
