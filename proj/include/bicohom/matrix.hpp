#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace bicohom {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over Q(i). 0xn and nx0 matrices are legal.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    QMatrix(std::initializer_list<std::initializer_list<Scalar>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            ensure(row.size() == cols_, ErrorCode::ShapeMismatch, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static QMatrix from_columns(std::size_t rows, std::span<const Vector> columns) {
        QMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            ensure(columns[j].size() == rows, ErrorCode::ShapeMismatch, "column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector column(std::size_t j) const {
        Vector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    Vector row(std::size_t i) const { return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Entrywise complex conjugate.
    QMatrix conj() const {
        QMatrix c = *this;
        for (auto& x : c.data_) x = x.conj();
        return c;
    }

    QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        ensure(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorCode::ShapeMismatch, "block out of range");
        QMatrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const QMatrix& b) {
        ensure(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, ErrorCode::ShapeMismatch, "block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    QMatrix select_rows(std::span<const std::size_t> which) const {
        QMatrix s(which.size(), cols_);
        for (std::size_t i = 0; i < which.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(which[i], j);
        return s;
    }

    friend QMatrix hstack(const QMatrix& a, const QMatrix& b) {
        ensure(a.rows() == b.rows(), ErrorCode::ShapeMismatch, "hstack row mismatch");
        QMatrix m(a.rows(), a.cols() + b.cols());
        m.set_block(0, 0, a);
        m.set_block(0, a.cols(), b);
        return m;
    }
    friend QMatrix vstack(const QMatrix& a, const QMatrix& b) {
        ensure(a.cols() == b.cols(), ErrorCode::ShapeMismatch, "vstack column mismatch");
        QMatrix m(a.rows() + b.rows(), a.cols());
        m.set_block(0, 0, a);
        m.set_block(a.rows(), 0, b);
        return m;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        ensure(a.cols() == b.rows(), ErrorCode::ShapeMismatch,
               "product of " + shape(a) + " and " + shape(b));
        QMatrix m(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                const Scalar& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend Vector operator*(const QMatrix& a, const Vector& v) {
        ensure(a.cols() == v.size(), ErrorCode::ShapeMismatch, "matrix-vector length mismatch");
        Vector out(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k)
                if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
        return out;
    }
    friend QMatrix operator+(QMatrix a, const QMatrix& b) {
        ensure(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::ShapeMismatch, "sum shape mismatch");
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
        return a;
    }
    friend QMatrix operator-(QMatrix a, const QMatrix& b) {
        ensure(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::ShapeMismatch, "difference shape mismatch");
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
        return a;
    }
    friend QMatrix operator*(const Scalar& s, QMatrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }
    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::string shape(const QMatrix& m) {
        return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
    }

    friend std::ostream& operator<<(std::ostream& os, const QMatrix& m) {
        os << "[";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
            os << "]";
        }
        return os << "]";
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Block-diagonal matrix diag(a, b).
inline QMatrix direct_sum(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

} // namespace bicohom
