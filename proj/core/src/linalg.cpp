#include "specprop/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specprop {

LeastSquaresResult lstsq_householder(const DenseMatrix& a, std::span<const double> b) {
    const std::size_t m = a.rows;
    const std::size_t n = a.cols;
    if (b.size() != m) throw std::invalid_argument("lstsq_householder: rhs length mismatch");
    if (m < n) throw std::invalid_argument("lstsq_householder: requires rows >= cols");

    DenseMatrix work = a;
    std::vector<double> rhs(b.begin(), b.end());
    bool degenerate = false;

    for (std::size_t k = 0; k < n; ++k) {
        // Householder vector for column k below the diagonal.
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += work(i, k) * work(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            degenerate = true;
            continue;
        }
        const double alpha = work(k, k) >= 0.0 ? -norm : norm;
        std::vector<double> v(m - k);
        v[0] = work(k, k) - alpha;
        for (std::size_t i = k + 1; i < m; ++i) v[i - k] = work(i, k);
        double vnorm2 = 0.0;
        for (double x : v) vnorm2 += x * x;
        work(k, k) = alpha;
        for (std::size_t i = k + 1; i < m; ++i) work(i, k) = 0.0;
        if (vnorm2 == 0.0) continue;

        for (std::size_t j = k + 1; j < n; ++j) {
            double proj = 0.0;
            for (std::size_t i = k; i < m; ++i) proj += v[i - k] * work(i, j);
            proj *= 2.0 / vnorm2;
            for (std::size_t i = k; i < m; ++i) work(i, j) -= proj * v[i - k];
        }
        double proj = 0.0;
        for (std::size_t i = k; i < m; ++i) proj += v[i - k] * rhs[i];
        proj *= 2.0 / vnorm2;
        for (std::size_t i = k; i < m; ++i) rhs[i] -= proj * v[i - k];
    }

    LeastSquaresResult result;
    result.solution.assign(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double sum = rhs[k];
        for (std::size_t j = k + 1; j < n; ++j) sum -= work(k, j) * result.solution[j];
        double pivot = work(k, k);
        if (std::fabs(pivot) < 1e-300) {
            degenerate = true;
            pivot = pivot >= 0.0 ? 1e-300 : -1e-300;
        }
        result.solution[k] = sum / pivot;
    }
    result.degenerate = degenerate;
    return result;
}

std::vector<double> singular_values(const DenseMatrix& a) {
    if (a.rows == 0 || a.cols == 0) throw std::invalid_argument("singular_values: empty matrix");
    // Work on a tall copy: one-sided Jacobi orthogonalizes columns.
    DenseMatrix work;
    if (a.rows >= a.cols) {
        work = a;
    } else {
        work = DenseMatrix(a.cols, a.rows);
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t j = 0; j < a.cols; ++j) work(j, i) = a(i, j);
    }
    const std::size_t m = work.rows;
    const std::size_t n = work.cols;

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double x = work(i, p);
                    const double y = work(i, q);
                    app += x * x;
                    aqq += y * y;
                    apq += x * y;
                }
                if (std::fabs(apq) <= 1e-15 * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double x = work(i, p);
                    const double y = work(i, q);
                    work(i, p) = c * x - s * y;
                    work(i, q) = s * x + c * y;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) sum += work(i, j) * work(i, j);
        sv[j] = std::sqrt(sum);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

EigenDecomposition jacobi_eigh(const DenseMatrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("jacobi_eigh: matrix must be square");
    const std::size_t n = a.rows;
    DenseMatrix work = a;
    DenseMatrix vecs(n, n);
    for (std::size_t i = 0; i < n; ++i) vecs(i, i) = 1.0;

    double norm = frobenius_norm(work);
    if (norm == 0.0) norm = 1.0;
    const double tol = 1e-12 * norm;

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * work(i, j) * work(i, j);
        if (std::sqrt(off) <= tol) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = work(p, q);
                if (std::fabs(apq) <= tol / static_cast<double>(n * n)) continue;
                const double theta = (work(q, q) - work(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = work(k, p);
                    const double akq = work(k, q);
                    work(k, p) = c * akp - s * akq;
                    work(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = work(p, k);
                    const double aqk = work(q, k);
                    work(p, k) = c * apk - s * aqk;
                    work(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = vecs(k, p);
                    const double vkq = vecs(k, q);
                    vecs(k, p) = c * vkp - s * vkq;
                    vecs(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return work(x, x) < work(y, y); });

    EigenDecomposition decomp;
    decomp.values.resize(n);
    decomp.vectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        decomp.values[j] = work(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) decomp.vectors(i, j) = vecs(i, order[j]);
    }
    return decomp;
}

}  // namespace specprop
