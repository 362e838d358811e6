#include "specprop/approx.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "specprop/linalg.hpp"

namespace specprop {
namespace {

constexpr double kBreakdownTol = 1e-14;

double column_dot(const DenseMatrix& q, std::size_t col, std::span<const double> v) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q.rows; ++i) sum += q(i, col) * v[i];
    return sum;
}

}  // namespace

std::size_t PolynomialApproximant::degree() const {
    if (!basis_coefficients.empty()) return basis_coefficients.size() - 1;
    if (monomial_coefficients.has_value()) return monomial_coefficients->size() - 1;
    return 0;
}

VandermondeMatrix build_vandermonde(const SampleSet& samples, std::size_t degree) {
    const std::size_t r = samples.size();
    if (r == 0) throw std::invalid_argument("build_vandermonde: empty sample set");
    if (degree + 1 > r)
        throw std::invalid_argument("build_vandermonde: K + 1 > r is underdetermined");
    VandermondeMatrix v;
    v.samples = samples;
    v.degree = degree;
    v.entries = DenseMatrix(r, degree + 1);
    for (std::size_t i = 0; i < r; ++i) {
        double power = 1.0;  // repeated multiplication, not pow()
        for (std::size_t j = 0; j <= degree; ++j) {
            v.entries(i, j) = power;
            power *= samples.points[i];
        }
    }
    return v;
}

PolynomialApproximant solve_vandermonde_qr(const VandermondeMatrix& v,
                                           std::span<const double> g_values) {
    if (g_values.size() != v.entries.rows)
        throw std::invalid_argument("solve_vandermonde_qr: g length must equal r");
    auto ls = lstsq_householder(v.entries, g_values);
    PolynomialApproximant approx;
    approx.fit_method = FitMethod::VandermondeQR;
    approx.monomial_coefficients = std::move(ls.solution);
    approx.degenerate = ls.degenerate;
    return approx;
}

PolynomialApproximant arnoldi_fit(const SampleSet& samples, std::span<const double> g_values,
                                  std::size_t degree) {
    const std::size_t r = samples.size();
    if (r == 0) throw std::invalid_argument("arnoldi_fit: empty sample set");
    if (g_values.size() != r) throw std::invalid_argument("arnoldi_fit: g length must equal r");
    const std::vector<double>& omega = samples.points;
    const double sqrt_r = std::sqrt(static_cast<double>(r));

    DenseMatrix q(r, degree + 1);
    DenseMatrix h(degree + 2, degree + 1);
    for (std::size_t i = 0; i < r; ++i) q(i, 0) = 1.0;

    std::vector<double> work(r);
    std::size_t effective = degree;
    for (std::size_t m = 1; m <= degree + 1; ++m) {
        // m <= degree appends a column; m == degree+1 only records projections.
        for (std::size_t i = 0; i < r; ++i) work[i] = omega[i] * q(i, m - 1);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t l = 0; l < m; ++l) {
                const double coeff = column_dot(q, l, work) / static_cast<double>(r);
                h(l, m - 1) += coeff;
                for (std::size_t i = 0; i < r; ++i) work[i] -= coeff * q(i, l);
            }
        }
        double norm = 0.0;
        for (double x : work) norm += x * x;
        norm = std::sqrt(norm);
        const double beta = norm / sqrt_r;
        h(m, m - 1) = beta;
        if (m == degree + 1) break;
        if (beta < kBreakdownTol) {
            effective = m - 1;
            break;
        }
        for (std::size_t i = 0; i < r; ++i) q(i, m) = work[i] / beta;
    }

    ArnoldiBasis basis;
    basis.samples = samples;
    basis.requested_degree = degree;
    basis.effective_degree = effective;
    if (effective == degree) {
        basis.q = std::move(q);
        basis.h = std::move(h);
    } else {
        basis.q = DenseMatrix(r, effective + 1);
        basis.h = DenseMatrix(effective + 2, effective + 1);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j <= effective; ++j) basis.q(i, j) = q(i, j);
        for (std::size_t i = 0; i <= effective + 1; ++i)
            for (std::size_t j = 0; j <= effective; ++j) basis.h(i, j) = h(i, j);
    }

    auto ls = lstsq_householder(basis.q, g_values);

    PolynomialApproximant approx;
    approx.fit_method = FitMethod::Arnoldi;
    approx.basis_coefficients = std::move(ls.solution);
    approx.degenerate = ls.degenerate;
    approx.basis = std::move(basis);
    return approx;
}

void recover_monomial_coefficients(PolynomialApproximant& approx) {
    if (!approx.basis.has_value())
        throw std::invalid_argument("recover_monomial_coefficients: no Arnoldi basis present");
    const ArnoldiBasis& basis = *approx.basis;
    const std::size_t k = basis.effective_degree;
    const std::size_t n = k + 1;

    // R = [e1, T e1, ..., T^K e1] is upper triangular with positive diagonal.
    DenseMatrix rmat(n, n);
    std::vector<double> col(n, 0.0);
    col[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) rmat(i, j) = col[i];
        if (j + 1 == n) break;
        std::vector<double> next(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (col[i] == 0.0) continue;
            for (std::size_t row = 0; row < n; ++row) next[row] += basis.h(row, i) * col[i];
        }
        col = std::move(next);
    }

    // V = q R in the norm-sqrt(r) column convention, so q d = g and V a = g
    // give R a = d by back-substitution.
    std::vector<double> a(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double sum = approx.basis_coefficients[i];
        for (std::size_t j = i + 1; j < n; ++j) sum -= rmat(i, j) * a[j];
        a[i] = sum / rmat(i, i);
    }
    approx.monomial_coefficients = std::move(a);
    approx.monomial_trusted = k <= 15;
}

double evaluate_approximant_at(const PolynomialApproximant& approx, double point) {
    if (!std::isfinite(point))
        throw std::invalid_argument("evaluate_approximant: non-finite point");
    if (approx.fit_method == FitMethod::Arnoldi) {
        const ArnoldiBasis& basis = approx.basis.value();
        const std::size_t k = basis.effective_degree;
        std::vector<double> w(k + 1);
        w[0] = 1.0;
        for (std::size_t m = 1; m <= k; ++m) {
            double value = point * w[m - 1];
            for (std::size_t l = 0; l < m; ++l) value -= basis.h(l, m - 1) * w[l];
            w[m] = value / basis.h(m, m - 1);
        }
        double sum = 0.0;
        for (std::size_t m = 0; m <= k; ++m) sum += approx.basis_coefficients[m] * w[m];
        return sum;
    }
    const std::vector<double>& coeffs = approx.monomial_coefficients.value();
    double sum = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) sum = sum * point + coeffs[j];
    return sum;
}

std::vector<double> evaluate_approximant(const PolynomialApproximant& approx,
                                         std::span<const double> points) {
    std::vector<double> values;
    values.reserve(points.size());
    for (double p : points) values.push_back(evaluate_approximant_at(approx, p));
    return values;
}

ConditionReport condition_number(const DenseMatrix& matrix, const std::string& label) {
    const auto sv = singular_values(matrix);
    ConditionReport report;
    report.matrix_label = label;
    if (sv.back() < 1e-300)
        report.condition_number = std::numeric_limits<double>::infinity();
    else
        report.condition_number = sv.front() / sv.back();
    return report;
}

double verify_qr_equivalence(const ArnoldiBasis& basis, const VandermondeMatrix& v) {
    if (v.degree != basis.effective_degree)
        throw std::invalid_argument("verify_qr_equivalence: degree mismatch");
    if (v.entries.rows != basis.q.rows)
        throw std::invalid_argument("verify_qr_equivalence: sample count mismatch");
    const std::size_t r = basis.q.rows;
    const std::size_t n = basis.effective_degree + 1;
    const double sqrt_r = std::sqrt(static_cast<double>(r));

    DenseMatrix rmat(n, n);
    std::vector<double> col(n, 0.0);
    col[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) rmat(i, j) = col[i];
        if (j + 1 == n) break;
        std::vector<double> next(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (col[i] == 0.0) continue;
            for (std::size_t row = 0; row < n; ++row) next[row] += basis.h(row, i) * col[i];
        }
        col = std::move(next);
    }

    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double qr = 0.0;
            for (std::size_t l = 0; l < n; ++l) qr += basis.q(i, l) / sqrt_r * rmat(l, j);
            const double vstar = v.entries(i, j) / sqrt_r;
            num += (vstar - qr) * (vstar - qr);
            den += vstar * vstar;
        }
    }
    return std::sqrt(num / den);
}

ConditionReport basis_orthonormality_condition(const ArnoldiBasis& basis) {
    const std::size_t r = basis.q.rows;
    const std::size_t n = basis.effective_degree + 1;
    DenseMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t row = 0; row < r; ++row) sum += basis.q(row, i) * basis.q(row, j);
            gram(i, j) = sum / static_cast<double>(r);
        }
    }
    ConditionReport report = condition_number(gram, "QtQ");
    report.theoretical_lower_bound = 1.0;
    return report;
}

double vandermonde_condition_bound(std::size_t r, const Interval& interval) {
    const double alpha = std::max(std::fabs(interval.lower), std::fabs(interval.upper));
    if (interval.lower < 0.0) {
        if (alpha >= 1.0)
            throw std::invalid_argument("vandermonde_condition_bound: interval must lie in (-1,1) or (0,2]");
        return std::pow(2.0, static_cast<double>(r) - 1.0) *
               std::pow(1.0 / alpha, static_cast<double>(r));
    }
    return std::pow(2.0, static_cast<double>(r) - 2.0);
}

}  // namespace specprop
