#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mimosa {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense row-major complex matrix. Dimensions in this project stay small
/// (at most a few tens per side), so everything is plain O(n^3) code.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Complex* data() { return data_.data(); }
    const Complex* data() const { return data_.data(); }

    Matrix adjoint() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix& operator*=(Complex s);
    Matrix operator*(Complex s) const;

    CVector column(std::size_t j) const;
    void set_column(std::size_t j, const CVector& v);
    Matrix columns(std::size_t first, std::size_t count) const;

    /// y = M x
    CVector apply(const CVector& x) const;
    /// y = M^H x
    CVector apply_adjoint(const CVector& x) const;

    /// Scale row i by d[i] (diagonal matrix on the left).
    void scale_rows(const CVector& d);
    /// Scale column j by d[j] (diagonal matrix on the right).
    void scale_cols(const CVector& d);

    double frobenius_norm() const;
    double max_abs() const;

    /// max |M(i,j) - conj(M(j,i))| over all entries.
    double hermitian_defect() const;

    bool same_shape(const Matrix& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVector data_;
};

Matrix operator*(Complex s, const Matrix& m);

/// u v^H
Matrix outer_product(const CVector& u, const CVector& v);

Complex dot_adjoint(const CVector& u, const CVector& v);  // u^H v
double norm2(const CVector& v);                           // ||v||^2
double norm(const CVector& v);

/// Singular values, descending, via one-sided Jacobi column orthogonalization.
/// Accurate for small singular values, unlike going through the Gram matrix.
std::vector<double> singular_values(const Matrix& m);

}  // namespace mimosa
