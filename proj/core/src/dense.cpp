#include "specprop/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace specprop {

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions differ");
    DenseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* brow = &b.values[k * b.cols];
            double* crow = &c.values[i * c.cols];
            for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows) throw std::invalid_argument("matmul_tn: row counts differ");
    DenseMatrix c(a.cols, b.cols);
    for (std::size_t k = 0; k < a.rows; ++k) {
        const double* arow = &a.values[k * a.cols];
        const double* brow = &b.values[k * b.cols];
        for (std::size_t i = 0; i < a.cols; ++i) {
            const double aki = arow[i];
            if (aki == 0.0) continue;
            double* crow = &c.values[i * c.cols];
            for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aki * brow[j];
        }
    }
    return c;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.cols) throw std::invalid_argument("matmul_nt: column counts differ");
    DenseMatrix c(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = &a.values[i * a.cols];
        for (std::size_t j = 0; j < b.rows; ++j) {
            const double* brow = &b.values[j * b.cols];
            double sum = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) sum += arow[k] * brow[k];
            c(i, j) = sum;
        }
    }
    return c;
}

void add_inplace(DenseMatrix& a, const DenseMatrix& b, double scale) {
    if (!a.same_shape(b)) throw std::invalid_argument("add_inplace: shape mismatch");
    for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += scale * b.values[i];
}

void scale_inplace(DenseMatrix& a, double scale) {
    for (double& v : a.values) v *= scale;
}

double dot(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("dot: shape mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * b.values[i];
    return sum;
}

double frobenius_norm(const DenseMatrix& a) {
    double sum = 0.0;
    for (double v : a.values) sum += v * v;
    return std::sqrt(sum);
}

}  // namespace specprop
