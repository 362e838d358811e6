#pragma once

#include <cstddef>
#include <vector>

namespace specprop {

/// Row-major dense real matrix.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), values(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

    [[nodiscard]] bool same_shape(const DenseMatrix& other) const {
        return rows == other.rows && cols == other.cols;
    }
};

/// C = A * B
[[nodiscard]] DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
/// C = A^T * B
[[nodiscard]] DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);
/// C = A * B^T
[[nodiscard]] DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);

void add_inplace(DenseMatrix& a, const DenseMatrix& b, double scale = 1.0);
void scale_inplace(DenseMatrix& a, double scale);

/// Sum of elementwise products <A, B>.
[[nodiscard]] double dot(const DenseMatrix& a, const DenseMatrix& b);

[[nodiscard]] double frobenius_norm(const DenseMatrix& a);

}  // namespace specprop
