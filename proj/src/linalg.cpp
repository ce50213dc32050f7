#include "ioimpact/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ioimpact/errors.hpp"

namespace ioimpact {

namespace {

std::string shape_of(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void check_finite(const std::vector<double>& entries, const char* what) {
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!std::isfinite(entries[k])) {
            throw ValueError(std::string(what) + " entry " + std::to_string(k) +
                             " is not finite");
        }
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ * cols_ != entries_.size()) {
        throw DimensionError("matrix " + shape_of(*this) + " needs " +
                             std::to_string(rows_ * cols_) + " entries, got " +
                             std::to_string(entries_.size()));
    }
    check_finite(entries_, "matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionError("ragged initializer: row has " +
                                 std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(cols_));
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    check_finite(entries_, "matrix");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double Matrix::infinity_norm() const {
    double norm = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) row_sum += std::abs((*this)(i, j));
        norm = std::max(norm, row_sum);
    }
    return norm;
}

Vector::Vector(std::vector<double> entries) : entries_(std::move(entries)) {
    check_finite(entries_, "vector");
}

Vector::Vector(std::initializer_list<double> entries) : entries_(entries) {
    check_finite(entries_, "vector");
}

double Vector::sum() const {
    double s = 0.0;
    for (double e : entries_) s += e;
    return s;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("cannot multiply " + shape_of(a) + " by " + shape_of(b));
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

Vector mat_vec(const Matrix& a, const Vector& v) {
    if (a.cols() != v.size()) {
        throw DimensionError("cannot multiply " + shape_of(a) + " by vector of length " +
                             std::to_string(v.size()));
    }
    Vector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

Vector vec_mat(const Vector& v, const Matrix& m) {
    if (v.size() != m.rows()) {
        throw DimensionError("cannot multiply vector of length " + std::to_string(v.size()) +
                             " by " + shape_of(m));
    }
    Vector out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) s += v[i] * m(i, j);
        out[j] = s;
    }
    return out;
}

Matrix lu_invert(const Matrix& m, double pivot_tol) {
    if (m.rows() != m.cols()) {
        throw DimensionError("cannot invert non-square matrix " + shape_of(m));
    }
    const std::size_t n = m.rows();

    // In-place LU factorization with row pivoting, PA = LU.
    Matrix lu = m;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    double weakest_pivot = std::numeric_limits<double>::infinity();
    std::size_t weakest_column = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double pivot_mag = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu(i, k)) > pivot_mag) {
                pivot_mag = std::abs(lu(i, k));
                pivot_row = i;
            }
        }
        if (pivot_mag < pivot_tol) {
            throw SingularMatrixError("singular matrix: pivot " + std::to_string(pivot_mag) +
                                          " below tolerance " + std::to_string(pivot_tol) +
                                          " in column " + std::to_string(k),
                                      k);
        }
        if (pivot_mag < weakest_pivot) {
            weakest_pivot = pivot_mag;
            weakest_column = k;
        }
        if (pivot_row != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot_row, j));
            std::swap(perm[k], perm[pivot_row]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            lu(i, k) /= lu(k, k);
            const double lik = lu(i, k);
            if (lik == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= lik * lu(k, j);
        }
    }

    // Solve for each unit column: inv column p solves m * col = e_p.
    Matrix inv(n, n);
    std::vector<double> y(n);
    for (std::size_t p = 0; p < n; ++p) {
        // Forward substitution on the permuted right-hand side.
        for (std::size_t i = 0; i < n; ++i) {
            double s = perm[i] == p ? 1.0 : 0.0;
            for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
            y[i] = s;
        }
        // Back substitution.
        for (std::size_t ii = n; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * inv(j, p);
            inv(ii, p) = s / lu(ii, ii);
        }
    }

    // Residual check against the contract bound.
    const Matrix residual = mat_mul(m, inv);
    double max_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            max_err = std::max(max_err, std::abs(residual(i, j) - (i == j ? 1.0 : 0.0)));
        }
    }
    if (max_err > 1e-9 * static_cast<double>(n)) {
        throw SingularMatrixError("near-singular matrix: inverse residual " +
                                      std::to_string(max_err) + " exceeds bound (weakest pivot " +
                                      std::to_string(weakest_pivot) + ")",
                                  weakest_column);
    }
    return inv;
}

Matrix neumann_inverse(const Matrix& a, std::size_t terms) {
    if (a.rows() != a.cols()) {
        throw DimensionError("neumann_inverse needs a square matrix, got " + shape_of(a));
    }
    const std::size_t n = a.rows();
    Matrix sum(n, n);
    Matrix power = Matrix::identity(n);
    for (std::size_t t = 0; t < terms; ++t) {
        if (t > 0) power = mat_mul(power, a);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) sum(i, j) += power(i, j);
        }
    }
    return sum;
}

double spectral_radius_bound(const Matrix& a, std::size_t iterations) {
    if (a.rows() != a.cols()) {
        throw DimensionError("spectral_radius_bound needs a square matrix, got " + shape_of(a));
    }
    const std::size_t n = a.rows();
    if (n == 0) return 0.0;

    // All-ones start vector: never orthogonal to the Perron vector of a
    // nonnegative matrix.
    Vector v(std::vector<double>(n, 1.0));
    double estimate = 0.0;
    for (std::size_t it = 0; it < iterations; ++it) {
        Vector w = mat_vec(a, v);
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::abs(w[i]));
        if (norm == 0.0) return 0.0;
        estimate = norm;
        for (std::size_t i = 0; i < n; ++i) w[i] /= norm;
        v = w;
    }
    return estimate;
}

}  // namespace ioimpact
