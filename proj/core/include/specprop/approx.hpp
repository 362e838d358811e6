#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specprop/dense.hpp"
#include "specprop/sampling.hpp"

namespace specprop {

/// V(i,j) = omega_i^j for j = 0..K, built by repeated multiplication.
struct VandermondeMatrix {
    DenseMatrix entries;  // r x (K+1)
    SampleSet samples;
    std::size_t degree = 0;
};

/// Orthonormalized sample-space basis from the Arnoldi/Lanczos recurrence on
/// diag(omega). Columns of q have Euclidean norm sqrt(r); q/sqrt(r) is
/// orthonormal. h is the extended upper-Hessenberg table of projection
/// coefficients and normalizers, sized (K+2) x (K+1) for the effective degree
/// K; its final column holds the projections of the first unused Krylov
/// vector, so the top (K+1) x (K+1) block is the complete T of the recurrence.
struct ArnoldiBasis {
    DenseMatrix q;  // r x (K+1)
    DenseMatrix h;  // (K+2) x (K+1)
    SampleSet samples;
    std::size_t requested_degree = 0;
    std::size_t effective_degree = 0;

    [[nodiscard]] bool truncated() const { return effective_degree < requested_degree; }
};

enum class FitMethod { VandermondeQR, Arnoldi };

/// A fitted degree-K polynomial. Arnoldi fits carry the basis and its
/// least-squares coefficients (and may carry recovered monomial coefficients,
/// trusted only for small K); Vandermonde fits carry monomial coefficients
/// only.
struct PolynomialApproximant {
    std::vector<double> basis_coefficients;
    std::optional<std::vector<double>> monomial_coefficients;
    std::optional<ArnoldiBasis> basis;
    std::string filter_name;
    FitMethod fit_method = FitMethod::Arnoldi;
    bool monomial_trusted = true;
    bool degenerate = false;

    [[nodiscard]] std::size_t degree() const;
};

struct ConditionReport {
    std::string matrix_label;
    double condition_number = 1.0;
    std::optional<double> theoretical_lower_bound;
};

/// Requires K + 1 <= r (least-squares or square fitting).
[[nodiscard]] VandermondeMatrix build_vandermonde(const SampleSet& samples, std::size_t degree);

/// Householder-QR least squares on V; numerically rank-deficient systems are
/// flagged degenerate and the (inaccurate) coefficients returned anyway.
[[nodiscard]] PolynomialApproximant solve_vandermonde_qr(const VandermondeMatrix& v,
                                                         std::span<const double> g_values);

/// Arnoldi/Lanczos fit: build the orthonormal basis by the diag(omega)
/// recurrence with modified Gram-Schmidt (projection divisor r, one
/// re-orthogonalization pass), then solve q d ~= g. Krylov breakdown
/// (normalizer below 1e-14, e.g. when K >= r) truncates the basis at the
/// breakdown index; the effective degree is reported in the basis.
[[nodiscard]] PolynomialApproximant arnoldi_fit(const SampleSet& samples,
                                                std::span<const double> g_values,
                                                std::size_t degree);

/// Recover monomial coefficients through R = [e1, T e1, ..., T^K e1]
/// (numerically untrusted above degree 15; the approximant is flagged).
void recover_monomial_coefficients(PolynomialApproximant& approx);

/// Arnoldi approximants replay the h-table recurrence at the new points;
/// Vandermonde approximants use Horner on the monomial coefficients.
[[nodiscard]] std::vector<double> evaluate_approximant(const PolynomialApproximant& approx,
                                                       std::span<const double> points);

[[nodiscard]] double evaluate_approximant_at(const PolynomialApproximant& approx, double point);

/// kappa = sigma_max / sigma_min by one-sided Jacobi SVD; +infinity when the
/// smallest singular value is below 1e-300.
[[nodiscard]] ConditionReport condition_number(const DenseMatrix& matrix,
                                               const std::string& label = "matrix");

/// Relative Frobenius residual of V/||e|| = Q R with R = [e1, T e1, ..., T^K e1].
/// Basis and V must share samples and degree.
[[nodiscard]] double verify_qr_equivalence(const ArnoldiBasis& basis, const VandermondeMatrix& v);

/// Condition number of (Q/sqrt(r))^T (Q/sqrt(r)); lower bound 1 by construction.
[[nodiscard]] ConditionReport basis_orthonormality_condition(const ArnoldiBasis& basis);

/// Conditioning lower bound for a Vandermonde matrix on r samples:
/// 2^{r-1} (1/alpha)^r when the interval lies in (-1,1) with
/// alpha = max(|l|,|u|); 2^{r-2} when it lies in (0,2].
[[nodiscard]] double vandermonde_condition_bound(std::size_t r, const Interval& interval);

}  // namespace specprop
