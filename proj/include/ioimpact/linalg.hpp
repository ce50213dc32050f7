#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ioimpact {

// Dense row-major matrix of doubles. Entries are checked finite on
// construction; everything downstream may assume no NaN/inf.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);  // zero-filled
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    const std::vector<double>& entries() const { return entries_; }

    // max_i sum_j |m_ij|
    double infinity_norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n) : entries_(n, 0.0) {}
    Vector(std::vector<double> entries);
    Vector(std::initializer_list<double> entries);

    std::size_t size() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    double& operator[](std::size_t i) { return entries_[i]; }

    const std::vector<double>& entries() const { return entries_; }
    double sum() const;

private:
    std::vector<double> entries_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Vector mat_vec(const Matrix& a, const Vector& v);
// Row vector times matrix: (v' m)_j = sum_i v_i m_ij.
Vector vec_mat(const Vector& v, const Matrix& m);

// Inverse via LU with partial pivoting. Throws SingularMatrixError when a
// pivot falls below pivot_tol or the residual ||m*inv - I||inf exceeds
// 1e-9 * n.
Matrix lu_invert(const Matrix& m, double pivot_tol = 1e-12);

// Partial sum I + a + a^2 + ... + a^(terms-1). Independent oracle for
// (I-a)^{-1}; converges when the spectral radius of a is below 1.
Matrix neumann_inverse(const Matrix& a, std::size_t terms);

// Power-iteration estimate of the dominant eigenvalue magnitude of a
// nonnegative square matrix. Returns 0 for the zero matrix.
double spectral_radius_bound(const Matrix& a, std::size_t iterations = 100);

}  // namespace ioimpact
