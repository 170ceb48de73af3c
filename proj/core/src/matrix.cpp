#include "mimosa/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mimosa {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("Matrix multiply: dimension mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (!same_shape(rhs)) throw std::invalid_argument("Matrix add: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (!same_shape(rhs)) throw std::invalid_argument("Matrix subtract: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    Matrix out = *this;
    out += rhs;
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    Matrix out = *this;
    out -= rhs;
    return out;
}

Matrix& Matrix::operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
}

Matrix Matrix::operator*(Complex s) const {
    Matrix out = *this;
    out *= s;
    return out;
}

Matrix operator*(Complex s, const Matrix& m) { return m * s; }

CVector Matrix::column(std::size_t j) const {
    if (j >= cols_) throw std::out_of_range("Matrix::column: index out of range");
    CVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_column(std::size_t j, const CVector& v) {
    if (j >= cols_ || v.size() != rows_) throw std::invalid_argument("Matrix::set_column: bad shape");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw std::out_of_range("Matrix::columns: range out of bounds");
    Matrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    return out;
}

CVector Matrix::apply(const CVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: size mismatch");
    CVector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

CVector Matrix::apply_adjoint(const CVector& x) const {
    if (x.size() != rows_) throw std::invalid_argument("Matrix::apply_adjoint: size mismatch");
    CVector y(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const Complex xi = x[i];
        for (std::size_t j = 0; j < cols_; ++j) y[j] += std::conj((*this)(i, j)) * xi;
    }
    return y;
}

void Matrix::scale_rows(const CVector& d) {
    if (d.size() != rows_) throw std::invalid_argument("Matrix::scale_rows: size mismatch");
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) *= d[i];
}

void Matrix::scale_cols(const CVector& d) {
    if (d.size() != cols_) throw std::invalid_argument("Matrix::scale_cols: size mismatch");
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) *= d[j];
}

double Matrix::frobenius_norm() const {
    double acc = 0.0;
    for (const auto& v : data_) acc += std::norm(v);
    return std::sqrt(acc);
}

double Matrix::max_abs() const {
    double acc = 0.0;
    for (const auto& v : data_) acc = std::max(acc, std::abs(v));
    return acc;
}

double Matrix::hermitian_defect() const {
    if (rows_ != cols_) return std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            acc = std::max(acc, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return acc;
}

Matrix outer_product(const CVector& u, const CVector& v) {
    Matrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

Complex dot_adjoint(const CVector& u, const CVector& v) {
    if (u.size() != v.size()) throw std::invalid_argument("dot_adjoint: size mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
    return acc;
}

double norm2(const CVector& v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return acc;
}

double norm(const CVector& v) { return std::sqrt(norm2(v)); }

std::vector<double> singular_values(const Matrix& m) {
    if (m.empty()) return {};
    // Work on the tall orientation so columns are orthogonalized.
    Matrix w = (m.rows() >= m.cols()) ? m : m.adjoint();
    const std::size_t n = w.cols();
    const std::size_t rows = w.rows();

    const double tol = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq{};
                for (std::size_t r = 0; r < rows; ++r) {
                    app += std::norm(w(r, p));
                    aqq += std::norm(w(r, q));
                    apq += std::conj(w(r, p)) * w(r, q);
                }
                const double mag = std::abs(apq);
                if (mag <= tol * std::sqrt(app * aqq) || mag == 0.0) continue;
                rotated = true;

                // Rotation that zeroes the (p,q) entry of the 2x2 Gram block.
                const Complex phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t r = 0; r < rows; ++r) {
                    const Complex wp = w(r, p);
                    const Complex wq = w(r, q);
                    w(r, p) = c * wp - s * std::conj(phase) * wq;
                    w(r, q) = s * phase * wp + c * wq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t r = 0; r < rows; ++r) acc += std::norm(w(r, j));
        sv[j] = std::sqrt(acc);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

}  // namespace mimosa
