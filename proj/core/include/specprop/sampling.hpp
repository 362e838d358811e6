#pragma once

#include <span>
#include <string>
#include <vector>

#include "specprop/interval.hpp"

namespace specprop {

enum class SampleScheme { Equispaced, Chebyshev, Legendre, Jacobi };

[[nodiscard]] std::string to_string(SampleScheme scheme);
[[nodiscard]] SampleScheme sample_scheme_from_string(const std::string& name);

/// r pairwise-distinct sample points in ascending order, together with the
/// interval and the scheme that produced them.
struct SampleSet {
    std::vector<double> points;
    Interval interval;
    SampleScheme scheme = SampleScheme::Equispaced;

    [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// omega_k = l + k (u-l)/(r+1) for k = 1..r; endpoints excluded.
[[nodiscard]] SampleSet equispaced_nodes(const Interval& interval, std::size_t r);

/// omega_k = (u+l)/2 + (u-l)/2 cos((2k-1) pi / (2r)), sorted ascending.
[[nodiscard]] SampleSet chebyshev_nodes(const Interval& interval, std::size_t r);

/// Gauss-Legendre nodes (weight 1 on [-1,1]) mapped affinely to the interval.
[[nodiscard]] SampleSet gauss_legendre_nodes(const Interval& interval, std::size_t r);

/// Gauss-Jacobi nodes for weight (1+omega) on [-1,1], mapped to the interval.
[[nodiscard]] SampleSet gauss_jacobi_nodes(const Interval& interval, std::size_t r);

[[nodiscard]] SampleSet sample_nodes(SampleScheme scheme, const Interval& interval, std::size_t r);

/// All eigenvalues of the symmetric tridiagonal matrix with the given diagonal
/// and off-diagonal, ascending. Implicit-shift QL; bisection fallback if QL
/// exceeds its sweep budget. offdiagonal.size() must be diagonal.size() - 1.
[[nodiscard]] std::vector<double> tridiag_eigenvalues(std::span<const double> diagonal,
                                                      std::span<const double> offdiagonal);

/// Nodes and weights of a Gauss rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Golub-Welsch rule from a Jacobi tridiagonal matrix: nodes are the
/// eigenvalues, weights are mass * (first eigenvector component)^2.
[[nodiscard]] QuadratureRule golub_welsch(std::span<const double> diagonal,
                                          std::span<const double> offdiagonal,
                                          double mass);

/// Gauss-Legendre rule of order r on [-1, 1] (mass 2).
[[nodiscard]] QuadratureRule gauss_legendre_rule(std::size_t r);

/// Gauss-Jacobi rule of order r for weight (1+omega) on [-1, 1] (mass 2).
[[nodiscard]] QuadratureRule gauss_jacobi_rule(std::size_t r);

}  // namespace specprop
