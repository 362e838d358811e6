#pragma once

#include "specprop/dense.hpp"
#include "specprop/filters.hpp"
#include "specprop/graph.hpp"

namespace specprop {

/// Dense spectral filtering U g(Lambda) U^T x for small operators (n <= 64),
/// via cyclic-Jacobi eigendecomposition. Eigenvalues must lie in the filter's
/// domain; values within 1e-9 outside are clamped to the boundary.
[[nodiscard]] DenseMatrix exact_filter_oracle(const PropagationOperator& op,
                                              const FilterSpec& filter,
                                              const DenseMatrix& signal);

}  // namespace specprop
