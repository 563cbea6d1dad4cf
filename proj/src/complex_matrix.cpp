#include "mscz/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mscz {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cdouble(0.0, 0.0)) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::scaled(cdouble factor) const {
    ComplexMatrix out = *this;
    for (auto& e : out.entries_) e *= factor;
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cdouble a = (*this)(r, k);
            if (a == cdouble(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

cdouble ComplexMatrix::trace() const {
    if (!is_square()) throw std::invalid_argument("trace: matrix not square");
    cdouble t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

double ComplexMatrix::unitarity_defect() const {
    if (!is_square()) throw std::invalid_argument("unitarity_defect: matrix not square");
    const ComplexMatrix gram = adjoint() * (*this);
    double defect = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) {
            const cdouble expected = (r == c) ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);
            defect = std::max(defect, std::abs(gram(r, c) - expected));
        }
    return defect;
}

bool ComplexMatrix::is_unitary(double tol) const { return unitarity_defect() < tol; }

double ComplexMatrix::max_singular_value() const {
    if (rows_ == 0 || cols_ == 0) return 0.0;
    const ComplexMatrix gram = adjoint() * (*this);  // Hermitian PSD, cols x cols
    const std::size_t n = gram.rows();

    // Power iteration with a fixed dense start vector; spectra here are tiny
    // and well separated, convergence is fast.
    std::vector<cdouble> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = cdouble(1.0 + 0.37 * static_cast<double>(i % 7),
                       0.11 * static_cast<double>((i * 13) % 5));
    auto normalize = [&](std::vector<cdouble>& x) {
        double nrm = 0.0;
        for (const auto& e : x) nrm += std::norm(e);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) return false;
        for (auto& e : x) e /= nrm;
        return true;
    };
    if (!normalize(v)) return 0.0;

    double lambda = 0.0;
    for (int iter = 0; iter < 2000; ++iter) {
        std::vector<cdouble> w(n, 0.0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) w[r] += gram(r, c) * v[c];
        cdouble rayleigh = 0.0;
        for (std::size_t i = 0; i < n; ++i) rayleigh += std::conj(v[i]) * w[i];
        const double next = rayleigh.real();
        if (!normalize(w)) return 0.0;
        v = std::move(w);
        if (iter > 8 && std::abs(next - lambda) < 1e-16 * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(0.0, lambda));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

}  // namespace mscz
