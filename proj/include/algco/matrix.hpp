#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace algco {

/**
 * Dense row-major matrix over an arbitrary commutative scalar type.
 *
 * Instantiated with Rational for every exact kernel and with double inside
 * the numeric flow module.  Only the operations the library actually needs
 * are provided; elimination/rank/solve live in linalg.hpp because they are
 * field-specific.
 */
template <class S>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : m_rows(rows), m_cols(cols), m_data(rows * cols, S(0)) {}

    Matrix(std::initializer_list<std::initializer_list<S>> init) {
        m_rows = init.size();
        m_cols = m_rows ? init.begin()->size() : 0;
        m_data.reserve(m_rows * m_cols);
        for (const auto& row : init) {
            if (row.size() != m_cols) throw DimensionMismatch("ragged initializer");
            for (const auto& v : row) m_data.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return m_rows; }
    std::size_t cols() const { return m_cols; }

    S&       operator()(std::size_t i, std::size_t j)       { return m_data[i * m_cols + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return m_data[i * m_cols + j]; }

    bool operator==(const Matrix& o) const {
        return m_rows == o.m_rows && m_cols == o.m_cols && m_data == o.m_data;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& v : m_data)
            if (!(v == S(0))) return false;
        return true;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o, "add");
        Matrix r(m_rows, m_cols);
        for (std::size_t k = 0; k < m_data.size(); ++k) r.m_data[k] = m_data[k] + o.m_data[k];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o, "sub");
        Matrix r(m_rows, m_cols);
        for (std::size_t k = 0; k < m_data.size(); ++k) r.m_data[k] = m_data[k] - o.m_data[k];
        return r;
    }

    Matrix operator-() const {
        Matrix r(m_rows, m_cols);
        for (std::size_t k = 0; k < m_data.size(); ++k) r.m_data[k] = -m_data[k];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (m_cols != o.m_rows) throw DimensionMismatch("mul: inner dimensions differ");
        Matrix r(m_rows, o.m_cols);
        for (std::size_t i = 0; i < m_rows; ++i)
            for (std::size_t k = 0; k < m_cols; ++k) {
                const S& a = (*this)(i, k);
                if (a == S(0)) continue;
                for (std::size_t j = 0; j < o.m_cols; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Matrix operator*(const S& c) const {
        Matrix r(m_rows, m_cols);
        for (std::size_t k = 0; k < m_data.size(); ++k) r.m_data[k] = m_data[k] * c;
        return r;
    }

    std::vector<S> apply(const std::vector<S>& x) const {
        if (x.size() != m_cols) throw DimensionMismatch("apply: vector length != cols");
        std::vector<S> y(m_rows, S(0));
        for (std::size_t i = 0; i < m_rows; ++i)
            for (std::size_t j = 0; j < m_cols; ++j)
                if (!((*this)(i, j) == S(0))) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    Matrix transpose() const {
        Matrix r(m_cols, m_rows);
        for (std::size_t i = 0; i < m_rows; ++i)
            for (std::size_t j = 0; j < m_cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Kronecker product; (i*o.rows+r, j*o.cols+s) = (*this)(i,j) * o(r,s).
    Matrix kron(const Matrix& o) const {
        Matrix r(m_rows * o.m_rows, m_cols * o.m_cols);
        for (std::size_t i = 0; i < m_rows; ++i)
            for (std::size_t j = 0; j < m_cols; ++j) {
                const S& a = (*this)(i, j);
                if (a == S(0)) continue;
                for (std::size_t p = 0; p < o.m_rows; ++p)
                    for (std::size_t q = 0; q < o.m_cols; ++q)
                        r(i * o.m_rows + p, j * o.m_cols + q) = a * o(p, q);
            }
        return r;
    }

    Matrix hcat(const Matrix& o) const {
        if (m_rows != o.m_rows) throw DimensionMismatch("hcat: row counts differ");
        Matrix r(m_rows, m_cols + o.m_cols);
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) r(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < o.m_cols; ++j) r(i, m_cols + j) = o(i, j);
        }
        return r;
    }

    Matrix vcat(const Matrix& o) const {
        if (m_cols != o.m_cols) throw DimensionMismatch("vcat: col counts differ");
        Matrix r(m_rows + o.m_rows, m_cols);
        for (std::size_t i = 0; i < m_rows; ++i)
            for (std::size_t j = 0; j < m_cols; ++j) r(i, j) = (*this)(i, j);
        for (std::size_t i = 0; i < o.m_rows; ++i)
            for (std::size_t j = 0; j < m_cols; ++j) r(m_rows + i, j) = o(i, j);
        return r;
    }

    std::vector<S> col(std::size_t j) const {
        std::vector<S> c(m_rows);
        for (std::size_t i = 0; i < m_rows; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<S> row(std::size_t i) const {
        return std::vector<S>(m_data.begin() + i * m_cols, m_data.begin() + (i + 1) * m_cols);
    }

    static Matrix from_columns(std::size_t ambient, const std::vector<std::vector<S>>& cols) {
        Matrix m(ambient, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != ambient) throw DimensionMismatch("from_columns: bad length");
            for (std::size_t i = 0; i < ambient; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

private:
    void check_same_shape(const Matrix& o, const char* op) const {
        if (m_rows != o.m_rows || m_cols != o.m_cols)
            throw DimensionMismatch(std::string(op) + ": shapes differ");
    }

    std::size_t m_rows = 0, m_cols = 0;
    std::vector<S> m_data;
};

using QMatrix = Matrix<Rational>;
using DMatrix = Matrix<double>;
using QVector = std::vector<Rational>;

inline DMatrix to_double(const QMatrix& m) {
    DMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
    return r;
}

} // namespace algco
