#pragma once

// Bounded double complexes over Q(i) on the rectangle [0,P]x[0,Q], their
// total complexes, direct sums and complex conjugation.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace bicohom {

struct Bidegree {
    int p = 0;
    int q = 0;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

class Bicomplex {
public:
    Bicomplex() : Bicomplex(0, 0, {0}) {}

    /// Zero differentials; dims is indexed [p * (Q + 1) + q].
    Bicomplex(int P, int Q, std::vector<std::size_t> dims) : P_(P), Q_(Q), dims_(std::move(dims)) {
        ensure(P >= 0 && Q >= 0, ErrorCode::ShapeMismatch, "negative bounding box");
        ensure(dims_.size() == cell_count(), ErrorCode::ShapeMismatch, "dims table does not match the box");
        del_.resize(cell_count());
        delbar_.resize(cell_count());
        for (int p = 0; p <= P_; ++p)
            for (int q = 0; q <= Q_; ++q) {
                del_[index(p, q)] = QMatrix(dim(p + 1, q), dim(p, q));
                delbar_[index(p, q)] = QMatrix(dim(p, q + 1), dim(p, q));
            }
    }

    int P() const { return P_; }
    int Q() const { return Q_; }
    int top_degree() const { return P_ + Q_; }
    bool in_box(int p, int q) const { return p >= 0 && q >= 0 && p <= P_ && q <= Q_; }

    std::size_t dim(int p, int q) const { return in_box(p, q) ? dims_[index(p, q)] : 0; }
    std::size_t dim(Bidegree b) const { return dim(b.p, b.q); }

    /// ∂ : A^{p,q} -> A^{p+1,q}
    const QMatrix& del(int p, int q) const { return del_[checked(p, q)]; }
    /// ∂̄ : A^{p,q} -> A^{p,q+1}
    const QMatrix& delbar(int p, int q) const { return delbar_[checked(p, q)]; }

    /// Like del/delbar but any bidegree, zero maps outside the box.
    QMatrix del_or_zero(int p, int q) const {
        return in_box(p, q) ? del_[index(p, q)] : QMatrix(dim(p + 1, q), dim(p, q));
    }
    QMatrix delbar_or_zero(int p, int q) const {
        return in_box(p, q) ? delbar_[index(p, q)] : QMatrix(dim(p, q + 1), dim(p, q));
    }
    /// ∂∂̄ : A^{p,q} -> A^{p+1,q+1}
    QMatrix ddbar(int p, int q) const { return del_or_zero(p, q + 1) * delbar_or_zero(p, q); }

    void set_del(int p, int q, QMatrix m) {
        ensure(m.rows() == dim(p + 1, q) && m.cols() == dim(p, q), ErrorCode::ShapeMismatch,
               "del at (" + std::to_string(p) + "," + std::to_string(q) + ") must be " +
                   std::to_string(dim(p + 1, q)) + "x" + std::to_string(dim(p, q)) + ", got " + shape(m));
        del_[checked(p, q)] = std::move(m);
    }
    void set_delbar(int p, int q, QMatrix m) {
        ensure(m.rows() == dim(p, q + 1) && m.cols() == dim(p, q), ErrorCode::ShapeMismatch,
               "delbar at (" + std::to_string(p) + "," + std::to_string(q) + ") must be " +
                   std::to_string(dim(p, q + 1)) + "x" + std::to_string(dim(p, q)) + ", got " + shape(m));
        delbar_[checked(p, q)] = std::move(m);
    }

    /// Real structure: an antilinear x -> conj_matrix(p,q) * conj(x) from A^{p,q} to A^{q,p}.
    bool has_conj() const { return conj_.has_value(); }
    const QMatrix& conj_matrix(int p, int q) const {
        ensure(has_conj(), ErrorCode::InvalidBicomplex, "bicomplex carries no conjugation data");
        return (*conj_)[checked(p, q)];
    }
    void set_conj(std::vector<QMatrix> sigma) {
        ensure(P_ == Q_, ErrorCode::ShapeMismatch, "conjugation data needs a square box");
        ensure(sigma.size() == cell_count(), ErrorCode::ShapeMismatch, "conjugation table does not match the box");
        for (int p = 0; p <= P_; ++p)
            for (int q = 0; q <= Q_; ++q) {
                const QMatrix& s = sigma[index(p, q)];
                ensure(s.rows() == dim(q, p) && s.cols() == dim(p, q), ErrorCode::ShapeMismatch,
                       "conjugation block at (" + std::to_string(p) + "," + std::to_string(q) + ") has shape " +
                           shape(s));
            }
        conj_ = std::move(sigma);
    }
    void clear_conj() { conj_.reset(); }

    std::size_t index(int p, int q) const { return static_cast<std::size_t>(p * (Q_ + 1) + q); }
    std::size_t cell_count() const { return static_cast<std::size_t>((P_ + 1) * (Q_ + 1)); }
    const std::vector<std::size_t>& dims() const { return dims_; }

    std::size_t total_dim() const {
        std::size_t n = 0;
        for (auto d : dims_) n += d;
        return n;
    }

    friend bool operator==(const Bicomplex&, const Bicomplex&) = default;

private:
    std::size_t checked(int p, int q) const {
        ensure(in_box(p, q), ErrorCode::ShapeMismatch,
               "bidegree (" + std::to_string(p) + "," + std::to_string(q) + ") outside the box");
        return index(p, q);
    }

    int P_;
    int Q_;
    std::vector<std::size_t> dims_;
    std::vector<QMatrix> del_;
    std::vector<QMatrix> delbar_;
    std::optional<std::vector<QMatrix>> conj_;
};

struct Violation {
    std::string axiom;
    Bidegree at;
    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

inline void check_shapes(const Bicomplex& b) {
    for (int p = 0; p <= b.P(); ++p)
        for (int q = 0; q <= b.Q(); ++q) {
            const QMatrix& d = b.del(p, q);
            const QMatrix& e = b.delbar(p, q);
            ensure(d.rows() == b.dim(p + 1, q) && d.cols() == b.dim(p, q), ErrorCode::ShapeMismatch,
                   "del shape at (" + std::to_string(p) + "," + std::to_string(q) + ")");
            ensure(e.rows() == b.dim(p, q + 1) && e.cols() == b.dim(p, q), ErrorCode::ShapeMismatch,
                   "delbar shape at (" + std::to_string(p) + "," + std::to_string(q) + ")");
        }
}

/// Every violated double-complex identity, not just the first. Conjugation
/// data, when present, must be an involution intertwining ∂ and ∂̄.
inline ValidationReport validate(const Bicomplex& b) {
    check_shapes(b);
    ValidationReport report;
    for (int p = 0; p <= b.P(); ++p)
        for (int q = 0; q <= b.Q(); ++q) {
            if (!(b.del_or_zero(p + 1, q) * b.del(p, q)).is_zero())
                report.violations.push_back({"del^2 = 0", {p, q}});
            if (!(b.delbar_or_zero(p, q + 1) * b.delbar(p, q)).is_zero())
                report.violations.push_back({"delbar^2 = 0", {p, q}});
            QMatrix anti = b.del_or_zero(p, q + 1) * b.delbar(p, q) + b.delbar_or_zero(p + 1, q) * b.del(p, q);
            if (!anti.is_zero()) report.violations.push_back({"del delbar + delbar del = 0", {p, q}});
        }
    if (b.has_conj()) {
        for (int p = 0; p <= b.P(); ++p)
            for (int q = 0; q <= b.Q(); ++q) {
                const QMatrix& s = b.conj_matrix(p, q);
                if (!(b.conj_matrix(q, p) * s.conj() == QMatrix::identity(b.dim(p, q))))
                    report.violations.push_back({"conj is an involution", {p, q}});
                // conj(∂x) = ∂̄ conj(x) and conj(∂̄x) = ∂ conj(x)
                QMatrix lhs = b.delbar(q, p) * s;
                QMatrix rhs = (p + 1 <= b.P() ? b.conj_matrix(p + 1, q) : QMatrix(0, b.dim(p + 1, q))) *
                              b.del(p, q).conj();
                if (!(lhs == rhs)) report.violations.push_back({"conj intertwines del and delbar", {p, q}});
                QMatrix lhs2 = b.del(q, p) * s;
                QMatrix rhs2 = (q + 1 <= b.Q() ? b.conj_matrix(p, q + 1) : QMatrix(0, b.dim(p, q + 1))) *
                               b.delbar(p, q).conj();
                if (!(lhs2 == rhs2)) report.violations.push_back({"conj intertwines delbar and del", {p, q}});
            }
    }
    return report;
}

inline void require_valid(const Bicomplex& b) {
    ValidationReport r = validate(b);
    if (!r.ok()) {
        const Violation& v = r.violations.front();
        fail(ErrorCode::InvalidBicomplex, v.axiom + " fails at (" + std::to_string(v.at.p) + "," +
                                              std::to_string(v.at.q) + ")");
    }
}

/// Which operator of the total complex to assemble.
enum class Operator { Del, Delbar, D };

/// Single-graded view: A^k = ⊕_{p+q=k} A^{p,q}, blocks ordered by increasing p.
class TotalComplex {
public:
    TotalComplex() = default;
    TotalComplex(std::vector<std::size_t> dims, std::vector<QMatrix> d) : dims_(std::move(dims)), d_(std::move(d)) {}

    int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
    std::size_t dim(int k) const { return k >= 0 && k <= top_degree() ? dims_[static_cast<std::size_t>(k)] : 0; }
    /// d : A^k -> A^{k+1}
    QMatrix d(int k) const {
        if (k < 0 || k > top_degree()) return QMatrix(dim(k + 1), dim(k));
        return d_[static_cast<std::size_t>(k)];
    }
    const std::vector<std::size_t>& dims() const { return dims_; }

private:
    std::vector<std::size_t> dims_;
    std::vector<QMatrix> d_;
};

/// Offset of the A^{p,q} block inside A^{p+q}.
inline std::size_t block_offset(const Bicomplex& b, int p, int q) {
    std::size_t off = 0;
    for (int r = 0; r < p; ++r) off += b.dim(r, p + q - r);
    return off;
}

inline std::size_t total_dim(const Bicomplex& b, int k) {
    std::size_t n = 0;
    for (int p = 0; p <= k; ++p) n += b.dim(p, k - p);
    return n;
}

/// Matrix of ∂, ∂̄ or d = ∂ + ∂̄ from A^k to A^{k+1} of the total complex.
inline QMatrix total_operator(const Bicomplex& b, Operator op, int k) {
    QMatrix m(total_dim(b, k + 1), total_dim(b, k));
    if (k < 0) return m;
    for (int p = 0; p <= k; ++p) {
        const int q = k - p;
        if (!b.in_box(p, q) || b.dim(p, q) == 0) continue;
        const std::size_t col = block_offset(b, p, q);
        if (op != Operator::Delbar && b.dim(p + 1, q) > 0)
            m.set_block(block_offset(b, p + 1, q), col, b.del(p, q));
        if (op != Operator::Del && b.dim(p, q + 1) > 0)
            m.set_block(block_offset(b, p, q + 1), col, b.delbar(p, q));
    }
    return m;
}

/// Projection of A^k onto the filtration piece F^p = ⊕_{r >= p} A^{r,k-r}, as a subspace.
inline Subspace filtration(const Bicomplex& b, int p, int k) {
    const std::size_t n = total_dim(b, k);
    std::vector<Vector> cols;
    for (int r = std::max(p, 0); r <= k; ++r) {
        const std::size_t off = block_offset(b, r, k - r);
        for (std::size_t i = 0; i < b.dim(r, k - r); ++i) {
            Vector e(n);
            e[off + i] = 1;
            cols.push_back(std::move(e));
        }
    }
    return Subspace::span(QMatrix::from_columns(n, cols));
}

inline TotalComplex total(const Bicomplex& b) {
    require_valid(b);
    std::vector<std::size_t> dims;
    std::vector<QMatrix> ds;
    for (int k = 0; k <= b.top_degree(); ++k) {
        dims.push_back(total_dim(b, k));
        ds.push_back(total_operator(b, Operator::D, k));
    }
    for (int k = 0; k + 1 <= b.top_degree(); ++k)
        ensure((ds[static_cast<std::size_t>(k + 1)] * ds[static_cast<std::size_t>(k)]).is_zero(),
               ErrorCode::InternalInconsistency, "d^2 != 0 on the total complex");
    return TotalComplex(std::move(dims), std::move(ds));
}

/// Dims add, differentials are block diagonal; the box is the union of boxes.
inline Bicomplex direct_sum(const Bicomplex& a, const Bicomplex& b) {
    const int P = std::max(a.P(), b.P()), Q = std::max(a.Q(), b.Q());
    std::vector<std::size_t> dims(static_cast<std::size_t>((P + 1) * (Q + 1)));
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) dims[static_cast<std::size_t>(p * (Q + 1) + q)] = a.dim(p, q) + b.dim(p, q);
    Bicomplex s(P, Q, dims);
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            s.set_del(p, q, direct_sum(a.del_or_zero(p, q), b.del_or_zero(p, q)));
            s.set_delbar(p, q, direct_sum(a.delbar_or_zero(p, q), b.delbar_or_zero(p, q)));
        }
    if (a.has_conj() && b.has_conj() && P == Q) {
        std::vector<QMatrix> sigma(s.cell_count());
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q) {
                QMatrix sa = a.in_box(p, q) ? a.conj_matrix(p, q) : QMatrix(a.dim(q, p), a.dim(p, q));
                QMatrix sb = b.in_box(p, q) ? b.conj_matrix(p, q) : QMatrix(b.dim(q, p), b.dim(p, q));
                sigma[s.index(p, q)] = direct_sum(sa, sb);
            }
        s.set_conj(std::move(sigma));
    }
    return s;
}

/// Complex conjugate complex: (p,q) <-> (q,p), ∂ <-> ∂̄, entries conjugated.
inline Bicomplex conjugate(const Bicomplex& b) {
    std::vector<std::size_t> dims(static_cast<std::size_t>((b.Q() + 1) * (b.P() + 1)));
    for (int p = 0; p <= b.Q(); ++p)
        for (int q = 0; q <= b.P(); ++q) dims[static_cast<std::size_t>(p * (b.P() + 1) + q)] = b.dim(q, p);
    Bicomplex c(b.Q(), b.P(), dims);
    for (int p = 0; p <= c.P(); ++p)
        for (int q = 0; q <= c.Q(); ++q) {
            c.set_del(p, q, b.delbar(q, p).conj());
            c.set_delbar(p, q, b.del(q, p).conj());
        }
    if (b.has_conj()) {
        std::vector<QMatrix> sigma(c.cell_count());
        for (int p = 0; p <= c.P(); ++p)
            for (int q = 0; q <= c.Q(); ++q) sigma[c.index(p, q)] = b.conj_matrix(q, p).conj();
        c.set_conj(std::move(sigma));
    }
    return c;
}

/// B ⊕ conj(B) on the square box of side max(P,Q), with the real structure
/// that swaps the two summands.
inline Bicomplex realify(const Bicomplex& b) {
    const int n = std::max(b.P(), b.Q());
    Bicomplex bare = b;
    bare.clear_conj();
    Bicomplex bar = conjugate(bare);
    Bicomplex s = direct_sum(bare, bar);
    if (s.P() != n || s.Q() != n) {
        // pad to the square box
        std::vector<std::size_t> dims(static_cast<std::size_t>((n + 1) * (n + 1)));
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) dims[static_cast<std::size_t>(p * (n + 1) + q)] = s.dim(p, q);
        Bicomplex padded(n, n, dims);
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                padded.set_del(p, q, s.del_or_zero(p, q));
                padded.set_delbar(p, q, s.delbar_or_zero(p, q));
            }
        s = std::move(padded);
    }
    std::vector<QMatrix> sigma(s.cell_count());
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            // A^{p,q} = B^{p,q} ⊕ B^{q,p};  A^{q,p} = B^{q,p} ⊕ B^{p,q}; swap the blocks.
            const std::size_t x = bare.dim(p, q), y = bare.dim(q, p);
            QMatrix m(y + x, x + y);
            m.set_block(0, x, QMatrix::identity(y));
            m.set_block(y, 0, QMatrix::identity(x));
            sigma[s.index(p, q)] = std::move(m);
        }
    s.set_conj(std::move(sigma));
    return s;
}

/// Whether the per-bidegree maps phi(p,q): A^{p,q} -> B^{p,q} form an
/// isomorphism of double complexes.
inline bool is_isomorphism(const Bicomplex& a, const Bicomplex& b, const std::vector<QMatrix>& phi) {
    if (a.P() != b.P() || a.Q() != b.Q() || phi.size() != a.cell_count()) return false;
    for (int p = 0; p <= a.P(); ++p)
        for (int q = 0; q <= a.Q(); ++q) {
            const QMatrix& f = phi[a.index(p, q)];
            if (f.rows() != b.dim(p, q) || f.cols() != a.dim(p, q)) return false;
            if (rank(f) != a.dim(p, q) || a.dim(p, q) != b.dim(p, q)) return false;
            QMatrix right = a.in_box(p + 1, q) ? phi[a.index(p + 1, q)] : QMatrix(0, 0);
            QMatrix up = a.in_box(p, q + 1) ? phi[a.index(p, q + 1)] : QMatrix(0, 0);
            if (!(b.del(p, q) * f == right * a.del(p, q))) return false;
            if (!(b.delbar(p, q) * f == up * a.delbar(p, q))) return false;
        }
    return true;
}

/// The identification conj(B) ≅ B provided by the stored real structure.
inline std::vector<QMatrix> conjugation_isomorphism(const Bicomplex& b) {
    std::vector<QMatrix> phi(b.cell_count());
    for (int p = 0; p <= b.P(); ++p)
        for (int q = 0; q <= b.Q(); ++q) phi[b.index(p, q)] = b.conj_matrix(q, p);
    return phi;
}

} // namespace bicohom
