#pragma once

// Exact linear algebra over Q(i): fraction-free row reduction, kernels, images
// and the subspace calculus (sum, intersection, preimage, quotients) that every
// cohomology computation is phrased in.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace bicohom {

namespace detail {

/// Gaussian integer, used only inside the fraction-free elimination.
struct GaussInt {
    mpz_class re;
    mpz_class im;

    bool is_zero() const { return re == 0 && im == 0; }
};

inline GaussInt mul(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

/// a / b, which must be exact in Z[i].
inline GaussInt exact_div(const GaussInt& a, const GaussInt& b) {
    if (b.im == 0) {
        ensure(mpz_divisible_p(a.re.get_mpz_t(), b.re.get_mpz_t()) &&
                   mpz_divisible_p(a.im.get_mpz_t(), b.re.get_mpz_t()),
               ErrorCode::InternalInconsistency, "inexact Bareiss division");
        mpz_class re, im;
        mpz_divexact(re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
        mpz_divexact(im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
        return {re, im};
    }
    mpz_class n = b.re * b.re + b.im * b.im;
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    ensure(mpz_divisible_p(re.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(im.get_mpz_t(), n.get_mpz_t()),
           ErrorCode::InternalInconsistency, "inexact Bareiss division");
    mpz_divexact(re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
    return {re, im};
}

} // namespace detail

struct RrefResult {
    QMatrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

/// Reduced row echelon form. Rows are cleared of denominators, brought to
/// echelon form by Bareiss fraction-free elimination over Z[i], and only then
/// normalized back into Q(i).
inline RrefResult rref(const QMatrix& m) {
    using detail::GaussInt;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<GaussInt>> a(rows, std::vector<GaussInt>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class lcm = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            const Scalar& x = m(i, j);
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.re().raw().get_den_mpz_t());
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.im().raw().get_den_mpz_t());
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const Scalar& x = m(i, j);
            a[i][j].re = x.re().numerator() * (lcm / x.re().denominator());
            a[i][j].im = x.im().numerator() * (lcm / x.im().denominator());
        }
    }

    RrefResult out;
    GaussInt prev{1, 0};
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        const GaussInt p = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const GaussInt f = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = detail::exact_div(detail::sub(mul(p, a[i][j]), mul(f, a[r][j])), prev);
            }
            a[i][c] = GaussInt{0, 0};
        }
        prev = p;
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;

    QMatrix red(rows, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = out.pivots[i]; j < cols; ++j)
            if (!a[i][j].is_zero())
                red(i, j) = Scalar(Rational(a[i][j].re), Rational(a[i][j].im));
    for (std::size_t i = r; i-- > 0;) {
        const std::size_t pc = out.pivots[i];
        const Scalar inv = Scalar(1) / red(i, pc);
        for (std::size_t j = pc; j < cols; ++j)
            if (!red(i, j).is_zero()) red(i, j) *= inv;
        for (std::size_t k = 0; k < i; ++k) {
            const Scalar f = red(k, pc);
            if (f.is_zero()) continue;
            for (std::size_t j = pc; j < cols; ++j)
                if (!red(i, j).is_zero()) red(k, j) -= f * red(i, j);
        }
    }
    out.reduced = std::move(red);
    return out;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).rank; }

/// A subspace of Q(i)^ambient, stored by a basis whose transpose is in RREF,
/// so two subspaces are equal exactly when their basis matrices are equal.
class Subspace {
public:
    Subspace() = default;

    /// Span of the given columns (not necessarily independent).
    static Subspace span(const QMatrix& columns) {
        Subspace s;
        s.ambient_ = columns.rows();
        RrefResult rr = rref(columns.transpose());
        s.basis_ = QMatrix(columns.rows(), rr.rank);
        for (std::size_t j = 0; j < rr.rank; ++j)
            for (std::size_t i = 0; i < columns.rows(); ++i) s.basis_(i, j) = rr.reduced(j, i);
        s.pivots_ = std::move(rr.pivots);
        return s;
    }
    static Subspace zero(std::size_t ambient) { return span(QMatrix(ambient, 0)); }
    static Subspace full(std::size_t ambient) { return span(QMatrix::identity(ambient)); }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const QMatrix& basis() const { return basis_; }
    /// Coordinates of a member are its entries at these positions.
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const Vector& v) const {
        ensure(v.size() == ambient_, ErrorCode::AmbientMismatch, "vector length differs from ambient dimension");
        Vector residual = v;
        for (std::size_t j = 0; j < dim(); ++j) {
            const Scalar c = v[pivots_[j]];
            if (c.is_zero()) continue;
            for (std::size_t i = 0; i < ambient_; ++i)
                if (!basis_(i, j).is_zero()) residual[i] -= c * basis_(i, j);
        }
        return std::all_of(residual.begin(), residual.end(), [](const Scalar& x) { return x.is_zero(); });
    }

    bool contains(const Subspace& w) const {
        ensure(w.ambient_ == ambient_, ErrorCode::AmbientMismatch, "subspaces live in different ambient spaces");
        for (std::size_t j = 0; j < w.dim(); ++j)
            if (!contains(w.basis_.column(j))) return false;
        return true;
    }

    /// Coordinates of v with respect to basis(); v must be a member.
    Vector coordinates(const Vector& v) const {
        ensure(contains(v), ErrorCode::NotASubspace, "vector is not in the subspace");
        Vector c(dim());
        for (std::size_t j = 0; j < dim(); ++j) c[j] = v[pivots_[j]];
        return c;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    QMatrix basis_;
    std::vector<std::size_t> pivots_;
};

/// Basis of {x : Mx = 0}; dim = cols - rank.
inline Subspace kernel_basis(const QMatrix& m) {
    RrefResult rr = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : rr.pivots) is_pivot[c] = true;
    QMatrix k(n, n - rr.rank);
    std::size_t col = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        k(f, col) = 1;
        for (std::size_t i = 0; i < rr.rank; ++i) k(rr.pivots[i], col) = -rr.reduced(i, f);
        ++col;
    }
    return Subspace::span(k);
}

/// Column space of M.
inline Subspace image_basis(const QMatrix& m) { return Subspace::span(m); }

/// Image of a subspace under M.
inline Subspace image(const QMatrix& m, const Subspace& u) {
    ensure(m.cols() == u.ambient_dim(), ErrorCode::AmbientMismatch, "map domain differs from subspace ambient");
    return Subspace::span(m * u.basis());
}

/// Rows spanning the annihilator {a : a.u = 0 for all u in U} (bilinear pairing).
inline QMatrix annihilator(const Subspace& u) {
    return kernel_basis(u.basis().transpose()).basis().transpose();
}

inline Subspace sum(const Subspace& u, const Subspace& v) {
    ensure(u.ambient_dim() == v.ambient_dim(), ErrorCode::AmbientMismatch, "sum of subspaces in different ambients");
    return Subspace::span(hstack(u.basis(), v.basis()));
}

inline Subspace intersect(const Subspace& u, const Subspace& v) {
    ensure(u.ambient_dim() == v.ambient_dim(), ErrorCode::AmbientMismatch,
           "intersection of subspaces in different ambients");
    if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(u.ambient_dim());
    if (u.dim() == u.ambient_dim()) return v;
    if (v.dim() == v.ambient_dim()) return u;
    return kernel_basis(vstack(annihilator(u), annihilator(v)));
}

/// {x : Mx in W}.
inline Subspace preimage(const QMatrix& m, const Subspace& w) {
    ensure(w.ambient_dim() == m.rows(), ErrorCode::AmbientMismatch, "preimage target differs from map codomain");
    if (w.dim() == w.ambient_dim()) return Subspace::full(m.cols());
    return kernel_basis(annihilator(w) * m);
}

/// dim V - dim W for W a subspace of V.
inline std::size_t quotient_dim(const Subspace& v, const Subspace& w) {
    ensure(v.contains(w), ErrorCode::NotASubspace, "quotient by a space that is not a subspace");
    return v.dim() - w.dim();
}

/// Particular solution of Mx = b with all free variables set to zero (the RREF
/// solution), or nullopt when the system is inconsistent.
inline std::optional<Vector> solve(const QMatrix& m, const Vector& b) {
    ensure(b.size() == m.rows(), ErrorCode::ShapeMismatch, "right-hand side length mismatch");
    QMatrix aug(m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (std::size_t i = 0; i < b.size(); ++i) aug(i, m.cols()) = b[i];
    RrefResult rr = rref(aug);
    if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols());
    for (std::size_t i = 0; i < rr.rank; ++i) x[rr.pivots[i]] = rr.reduced(i, m.cols());
    return x;
}

/// solve() against a fixed matrix, factored once: E with E·M = rref(M).
class LinearSolver {
public:
    explicit LinearSolver(const QMatrix& m) : cols_(m.cols()) {
        RrefResult rr = rref(hstack(m, QMatrix::identity(m.rows())));
        for (std::size_t i = 0; i < rr.rank && rr.pivots[i] < cols_; ++i) pivots_.push_back(rr.pivots[i]);
        transform_ = rr.reduced.block(0, cols_, m.rows(), m.rows());
    }

    /// Same result as solve(m, b).
    std::optional<Vector> solve(const Vector& b) const {
        ensure(b.size() == transform_.cols(), ErrorCode::ShapeMismatch, "right-hand side length mismatch");
        Vector eb = transform_ * b;
        for (std::size_t i = pivots_.size(); i < eb.size(); ++i)
            if (!eb[i].is_zero()) return std::nullopt;
        Vector x(cols_);
        for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = eb[i];
        return x;
    }

private:
    std::size_t cols_;
    std::vector<std::size_t> pivots_;
    QMatrix transform_;
};

/// Inverse of a square matrix; ShapeMismatch when singular or not square.
inline QMatrix inverse(const QMatrix& m) {
    ensure(m.rows() == m.cols(), ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RrefResult rr = rref(hstack(m, QMatrix::identity(n)));
    ensure(rr.rank >= n && (n == 0 || rr.pivots[n - 1] == n - 1), ErrorCode::ShapeMismatch, "singular matrix");
    return rr.reduced.block(0, n, n, n);
}

/// Projection of the ambient space onto A/W, realized on the complement spanned
/// by the standard vectors outside W's pivot positions.
class QuotientMap {
public:
    explicit QuotientMap(const Subspace& w) : ambient_(w.ambient_dim()) {
        std::vector<bool> is_pivot(ambient_, false);
        for (auto p : w.pivots()) is_pivot[p] = true;
        for (std::size_t i = 0; i < ambient_; ++i)
            if (!is_pivot[i]) complement_.push_back(i);
        // v -> v - W * v[pivots], read off at the complement positions
        project_ = QMatrix(complement_.size(), ambient_);
        for (std::size_t r = 0; r < complement_.size(); ++r) project_(r, complement_[r]) = 1;
        for (std::size_t j = 0; j < w.dim(); ++j)
            for (std::size_t r = 0; r < complement_.size(); ++r) {
                const Scalar& x = w.basis()(complement_[r], j);
                if (!x.is_zero()) project_(r, w.pivots()[j]) -= x;
            }
        lift_ = QMatrix(ambient_, complement_.size());
        for (std::size_t r = 0; r < complement_.size(); ++r) lift_(complement_[r], r) = 1;
    }

    std::size_t quotient_dim() const { return complement_.size(); }
    /// (ambient - dim W) x ambient
    const QMatrix& project() const { return project_; }
    /// ambient x (ambient - dim W); a section of project().
    const QMatrix& lift() const { return lift_; }

private:
    std::size_t ambient_;
    std::vector<std::size_t> complement_;
    QMatrix project_;
    QMatrix lift_;
};

} // namespace bicohom
