#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mscz {

using cdouble = std::complex<double>;

inline constexpr double kUnitaryTolerance = 1e-12;

/// Dense row-major complex matrix. Dimensions stay small here (mode bases
/// of a few dozen entries at most), so everything is straightforward O(n^3).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<cdouble>& entries() const { return entries_; }

    ComplexMatrix transpose() const;
    ComplexMatrix adjoint() const;
    ComplexMatrix scaled(cdouble factor) const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;

    cdouble trace() const;
    double max_abs() const;

    /// max |(U†U - I)_ij|; square matrices only.
    double unitarity_defect() const;
    bool is_unitary(double tol = kUnitaryTolerance) const;

    /// Largest singular value, via power iteration on A†A. Deterministic.
    double max_singular_value() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> entries_;
};

/// max_ij |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, row-major convention: (a ⊗ b)[i*p+k][j*q+l] = a[i][j] b[k][l].
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace mscz
