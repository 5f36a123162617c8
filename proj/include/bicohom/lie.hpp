#pragma once

// Lie algebras by structure constants, complex structures, the
// Chevalley-Eilenberg complex and its splitting into a double complex.

#include <bit>
#include <map>
#include <optional>
#include <tuple>

#include "bicomplex.hpp"
#include "exterior.hpp"

namespace bicohom {

/// [x_i, x_j] = Σ_k c(i,j,k) x_k, 0-based; stored antisymmetrically.
class LieAlgebra {
public:
    explicit LieAlgebra(int n = 0) : n_(n), c_(static_cast<std::size_t>(n * n * n)) {
        ensure(n >= 0, ErrorCode::ShapeMismatch, "negative dimension");
    }

    int dim() const { return n_; }
    const Scalar& c(int i, int j, int k) const { return c_[at(i, j, k)]; }

    /// Sets c_{ij}^k and c_{ji}^k = -c_{ij}^k.
    void set(int i, int j, int k, const Scalar& v) {
        ensure(i != j || v.is_zero(), ErrorCode::SchemaError, "[x_i, x_i] must vanish");
        c_[at(i, j, k)] = v;
        c_[at(j, i, k)] = -v;
    }

    Vector bracket(const Vector& x, const Vector& y) const {
        Vector out(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            if (x[static_cast<std::size_t>(i)].is_zero()) continue;
            for (int j = 0; j < n_; ++j) {
                if (y[static_cast<std::size_t>(j)].is_zero()) continue;
                const Scalar xy = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
                for (int k = 0; k < n_; ++k)
                    if (!c(i, j, k).is_zero()) out[static_cast<std::size_t>(k)] += xy * c(i, j, k);
            }
        }
        return out;
    }
    Vector unit(int i) const {
        Vector v(static_cast<std::size_t>(n_));
        v[static_cast<std::size_t>(i)] = 1;
        return v;
    }
    bool is_real() const {
        for (const auto& x : c_)
            if (!x.is_real()) return false;
        return true;
    }
    friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

private:
    std::size_t at(int i, int j, int k) const {
        ensure(i >= 0 && j >= 0 && k >= 0 && i < n_ && j < n_ && k < n_, ErrorCode::SchemaError,
               "structure constant index out of range");
        return static_cast<std::size_t>((i * n_ + j) * n_ + k);
    }
    int n_;
    std::vector<Scalar> c_;
};

/// dα^k = -Σ_{i<j} c_{ij}^k α^i ∧ α^j, extended as a graded derivation.
inline Dga ce_algebra(const LieAlgebra& g) {
    std::vector<SparseForm> gens(static_cast<std::size_t>(g.dim()));
    for (int k = 0; k < g.dim(); ++k)
        for (int i = 0; i < g.dim(); ++i)
            for (int j = i + 1; j < g.dim(); ++j)
                add_term(gens[static_cast<std::size_t>(k)], (Mask{1} << i) | (Mask{1} << j), -g.c(i, j, k));
    return Dga(g.dim(), std::move(gens));
}

using JacobiTriple = std::tuple<int, int, int>;

/// First triple i<j<k (0-based) on which the Jacobi identity fails. Cross-checked
/// against d² = 0 on Λ¹.
inline std::optional<JacobiTriple> jacobi_check(const LieAlgebra& g) {
    std::optional<JacobiTriple> bad;
    const int n = g.dim();
    for (int i = 0; i < n && !bad; ++i)
        for (int j = i + 1; j < n && !bad; ++j)
            for (int k = j + 1; k < n && !bad; ++k) {
                Vector x = g.unit(i), y = g.unit(j), z = g.unit(k);
                Vector s = g.bracket(g.bracket(x, y), z);
                Vector t = g.bracket(g.bracket(y, z), x);
                Vector u = g.bracket(g.bracket(z, x), y);
                for (std::size_t m = 0; m < s.size(); ++m)
                    if (!(s[m] + t[m] + u[m]).is_zero()) {
                        bad = JacobiTriple{i, j, k};
                        break;
                    }
            }
    Dga a = ce_algebra(g);
    const bool d2 = (a.d_matrix(2) * a.d_matrix(1)).is_zero();
    ensure(d2 == !bad.has_value(), ErrorCode::InternalInconsistency, "Jacobi check and d^2 = 0 on degree one disagree");
    return bad;
}

inline void require_jacobi(const LieAlgebra& g) {
    if (auto bad = jacobi_check(g)) {
        auto [i, j, k] = *bad;
        fail(ErrorCode::JacobiViolation, "Jacobi identity fails on (" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
    }
}

/// The CE differential on Λ•(g*) ⊗ C.
inline Dga ce_differential(const LieAlgebra& g) {
    require_jacobi(g);
    return ce_algebra(g);
}

inline void require_almost_complex(const LieAlgebra& g, const QMatrix& J) {
    const std::size_t n = static_cast<std::size_t>(g.dim());
    ensure(J.rows() == n && J.cols() == n, ErrorCode::NotAlmostComplex, "J must be " + std::to_string(n) + "x" + std::to_string(n));
    ensure(n % 2 == 0, ErrorCode::NotAlmostComplex, "odd-dimensional algebra carries no almost complex structure");
    ensure(J * J == Scalar(-1) * QMatrix::identity(n), ErrorCode::NotAlmostComplex, "J^2 != -id");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            ensure(J(i, j).is_real(), ErrorCode::NotAlmostComplex, "J must be real");
}

struct NijenhuisValue {
    int i = 0; // 0-based basis pair
    int j = 0;
    Vector value;
};

struct NijenhuisReport {
    std::vector<NijenhuisValue> nonzero; // basis pairs i<j with N_J(x_i, x_j) != 0
    bool integrable() const { return nonzero.empty(); }
};

/// N_J(V,W) = [V,W] + J[JV,W] + J[V,JW] - [JV,JW] on all basis pairs, checked
/// against closure of T^{1,0} = ker(J - i) under the bracket.
inline NijenhuisReport nijenhuis(const LieAlgebra& g, const QMatrix& J) {
    require_almost_complex(g, J);
    NijenhuisReport rep;
    const int n = g.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vector v = g.unit(i), w = g.unit(j);
            Vector jv = J * v, jw = J * w;
            Vector a = g.bracket(v, w), b = J * g.bracket(jv, w), c = J * g.bracket(v, jw), d = g.bracket(jv, jw);
            Vector out(a.size());
            bool zero = true;
            for (std::size_t k = 0; k < a.size(); ++k) {
                out[k] = a[k] + b[k] + c[k] - d[k];
                zero = zero && out[k].is_zero();
            }
            if (!zero) rep.nonzero.push_back({i, j, out});
        }
    const std::size_t un = static_cast<std::size_t>(n);
    Subspace t10 = kernel_basis(J - Scalar::i() * QMatrix::identity(un));
    bool closed = true;
    for (std::size_t a = 0; a < t10.dim() && closed; ++a)
        for (std::size_t b = a + 1; b < t10.dim() && closed; ++b)
            closed = t10.contains(g.bracket(t10.basis().column(a), t10.basis().column(b)));
    ensure(closed == rep.integrable(), ErrorCode::InternalInconsistency,
           "Nijenhuis tensor and the (0,2)-component criterion disagree");
    return rep;
}

/// dφ^k = Σ A^k_{ij} φ^i∧φ^j + Σ B^k_{ij} φ^i∧φ̄^j (+ (0,2) terms, which make it
/// non-integrable). Indices 0-based; dφ̄ is obtained by conjugation.
struct CoframeTerm {
    int i = 0;
    bool bar_i = false;
    int j = 0;
    bool bar_j = false;
    Scalar c;
    friend bool operator==(const CoframeTerm&, const CoframeTerm&) = default;
};

struct ComplexCoframe {
    int m = 0;
    std::vector<std::vector<CoframeTerm>> d; // d[k] = terms of dφ^k
    friend bool operator==(const ComplexCoframe&, const ComplexCoframe&) = default;
};

/// Generators 0..m-1 are φ^1..φ^m, m..2m-1 are φ̄^1..φ̄^m.
inline std::vector<SparseForm> coframe_generator_forms(const ComplexCoframe& cf) {
    const int m = cf.m;
    ensure(m >= 0 && m <= 12, ErrorCode::SchemaError, "complex dimension must be between 0 and 12");
    ensure(static_cast<int>(cf.d.size()) == m, ErrorCode::SchemaError, "one structure equation per generator");
    std::vector<SparseForm> gens(static_cast<std::size_t>(2 * m));
    for (int k = 0; k < m; ++k)
        for (const CoframeTerm& t : cf.d[static_cast<std::size_t>(k)]) {
            ensure(t.i >= 0 && t.j >= 0 && t.i < m && t.j < m, ErrorCode::SchemaError, "coframe index out of range");
            const int a = t.i + (t.bar_i ? m : 0), b = t.j + (t.bar_j ? m : 0);
            if (a == b) continue;
            const Mask ma = Mask{1} << a, mb = Mask{1} << b;
            const int s = wedge_sign(ma, mb);
            add_term(gens[static_cast<std::size_t>(k)], ma | mb, s > 0 ? t.c : -t.c);
        }
    auto bar = [&](Mask mask) {
        const Mask low = (Mask{1} << m) - 1;
        return ((mask & low) << m) | ((mask >> m) & low);
    };
    for (int k = 0; k < m; ++k)
        for (const auto& [mask, c] : gens[static_cast<std::size_t>(k)]) {
            // conj(c ψ^a ∧ ψ^b) = c̄ ψ^ā ∧ ψ^b̄, reordered
            const Mask a = mask & (~mask + 1), b = mask ^ a;
            const int s = wedge_sign(bar(a), bar(b));
            add_term(gens[static_cast<std::size_t>(k + m)], bar(mask), s > 0 ? c.conj() : -c.conj());
        }
    return gens;
}

inline std::pair<int, int> bidegree_of(Mask mask, int m) {
    const Mask low = (Mask{1} << m) - 1;
    return {std::popcount(mask & low), std::popcount(mask >> m)};
}

/// Splits the complexified CE algebra on generators (φ, φ̄) into the double
/// complex Λ^{p,q}; the basis of Λ^{p,q} is the lexicographic one and conj
/// maps φ^I∧φ̄^J to (-1)^{|I||J|} φ^J∧φ̄^I.
inline Bicomplex bicomplex_from_coframe_dga(const Dga& a, int m) {
    const ExteriorBasis& basis = a.basis();
    std::vector<std::vector<Mask>> cell(static_cast<std::size_t>((m + 1) * (m + 1)));
    auto idx = [&](int p, int q) { return static_cast<std::size_t>(p * (m + 1) + q); };
    for (int k = 0; k <= 2 * m; ++k)
        for (Mask mask : basis.monomials(k)) {
            auto [p, q] = bidegree_of(mask, m);
            cell[idx(p, q)].push_back(mask);
        }
    std::vector<std::size_t> dims;
    for (const auto& c : cell) dims.push_back(c.size());
    std::map<Mask, std::size_t> pos;
    for (const auto& c : cell)
        for (std::size_t i = 0; i < c.size(); ++i) pos[c[i]] = i;
    Bicomplex b(m, m, dims);
    for (int p = 0; p <= m; ++p)
        for (int q = 0; q <= m; ++q) {
            QMatrix del(b.dim(p + 1, q), b.dim(p, q)), delbar(b.dim(p, q + 1), b.dim(p, q));
            const auto& mons = cell[idx(p, q)];
            for (std::size_t j = 0; j < mons.size(); ++j)
                for (const auto& [mask, c] : a.d_monomial(mons[j])) {
                    auto [pp, qq] = bidegree_of(mask, m);
                    if (pp == p + 1 && qq == q) del(pos[mask], j) = c;
                    else if (pp == p && qq == q + 1) delbar(pos[mask], j) = c;
                    else fail(ErrorCode::NotIntegrable, "d has a component of bidegree (" + std::to_string(pp - p) + "," +
                                                            std::to_string(qq - q) + ")");
                }
            b.set_del(p, q, del);
            b.set_delbar(p, q, delbar);
        }
    const Mask low = (Mask{1} << m) - 1;
    std::vector<QMatrix> sigma(b.cell_count());
    for (int p = 0; p <= m; ++p)
        for (int q = 0; q <= m; ++q) {
            QMatrix s(b.dim(q, p), b.dim(p, q));
            const auto& mons = cell[idx(p, q)];
            for (std::size_t j = 0; j < mons.size(); ++j) {
                const Mask holo = mons[j] & low, anti = mons[j] >> m;
                const Mask swapped = anti | (holo << m);
                s(pos[swapped], j) = (p * q) % 2 == 0 ? 1 : -1;
            }
            sigma[b.index(p, q)] = std::move(s);
        }
    b.set_conj(std::move(sigma));
    return b;
}

/// The coframe must have no (0,2) part; d² = 0 is then checked through the
/// double-complex axioms.
inline Bicomplex build_bicomplex_coframe(const ComplexCoframe& cf) {
    std::vector<SparseForm> gens = coframe_generator_forms(cf);
    for (int k = 0; k < cf.m; ++k)
        for (const auto& [mask, c] : gens[static_cast<std::size_t>(k)])
            if (bidegree_of(mask, cf.m).first == 0)
                fail(ErrorCode::NotIntegrable, "d(phi^" + std::to_string(k + 1) + ") has a nonzero (0,2) component");
    Dga a(2 * cf.m, std::move(gens));
    Bicomplex b = bicomplex_from_coframe_dga(a, cf.m);
    require_valid(b);
    return b;
}

/// (1,0)-forms: α with α∘J = iα, i.e. the kernel of J^T - i.
inline Subspace holomorphic_covectors(const QMatrix& J) {
    return kernel_basis(J.transpose() - Scalar::i() * QMatrix::identity(J.rows()));
}

/// The complex coframe (φ^a = holomorphic covectors, φ̄^a their conjugates)
/// with the structure equations it inherits from g.
inline ComplexCoframe coframe_of(const LieAlgebra& g, const QMatrix& J) {
    require_jacobi(g);
    require_almost_complex(g, J);
    const int n = g.dim(), m = n / 2;
    Subspace hol = holomorphic_covectors(J);
    ensure(static_cast<int>(hol.dim()) == m, ErrorCode::InternalInconsistency, "wrong number of (1,0)-forms");
    // columns of psi: coordinates of ψ^a in the dual basis e^k
    QMatrix psi(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    psi.set_block(0, 0, hol.basis());
    psi.set_block(0, static_cast<std::size_t>(m), hol.basis().conj());
    QMatrix inv = inverse(psi); // e^k = Σ_a inv(a,k) ψ^a
    Dga real = ce_algebra(g);
    ComplexCoframe cf;
    cf.m = m;
    cf.d.resize(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
        SparseForm dpsi;
        for (int k = 0; k < n; ++k) {
            const Scalar& coef = psi(static_cast<std::size_t>(k), static_cast<std::size_t>(a));
            if (coef.is_zero()) continue;
            for (const auto& [mask, c] : real.generator_differential(k)) {
                const int i = std::countr_zero(mask), j = std::countr_zero(mask & (mask - 1));
                SparseForm ei, ej;
                for (int x = 0; x < n; ++x) {
                    add_term(ei, Mask{1} << x, inv(static_cast<std::size_t>(x), static_cast<std::size_t>(i)));
                    add_term(ej, Mask{1} << x, inv(static_cast<std::size_t>(x), static_cast<std::size_t>(j)));
                }
                for (const auto& [mm, cc] : wedge(ei, ej)) add_term(dpsi, mm, coef * c * cc);
            }
        }
        for (const auto& [mask, c] : dpsi) {
            const int x = std::countr_zero(mask), y = std::countr_zero(mask & (mask - 1));
            cf.d[static_cast<std::size_t>(a)].push_back({x % m, x >= m, y % m, y >= m, c});
        }
    }
    return cf;
}

/// Bicomplex Λ^{p,q} g* of an integrable (g, J).
inline Bicomplex build_bicomplex(const LieAlgebra& g, const QMatrix& J) {
    require_jacobi(g);
    if (!nijenhuis(g, J).integrable()) fail(ErrorCode::NotIntegrable, "Nijenhuis tensor of J does not vanish");
    return build_bicomplex_coframe(coframe_of(g, J));
}

/// The complexified Lie algebra dual to the coframe (ψ = φ, φ̄): c_{ij}^k = -coefficient
/// of ψ^i∧ψ^j in dψ^k.
inline LieAlgebra lie_algebra_of(const ComplexCoframe& cf) {
    std::vector<SparseForm> gens = coframe_generator_forms(cf);
    LieAlgebra g(2 * cf.m);
    for (int k = 0; k < 2 * cf.m; ++k)
        for (const auto& [mask, c] : gens[static_cast<std::size_t>(k)]) {
            const int i = std::countr_zero(mask), j = std::countr_zero(mask & (mask - 1));
            g.set(i, j, k, -c);
        }
    return g;
}

struct CentralSeries {
    std::vector<std::size_t> dims;    // dim Z^0 = 0, dim Z^1, ... until stable
    std::optional<int> nilpotency_step;
};

/// Z^0 = 0, Z^{i+1} = {x : [x, g] ⊆ Z^i}.
inline CentralSeries central_series(const LieAlgebra& g) {
    require_jacobi(g);
    const std::size_t n = static_cast<std::size_t>(g.dim());
    // ad: x -> ([x,e_1], ..., [x,e_n]) as an n^2 x n matrix
    QMatrix ad(n * n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                ad(j * n + k, i) = g.c(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
    CentralSeries s;
    Subspace z = Subspace::zero(n);
    s.dims.push_back(0);
    if (n == 0) {
        s.nilpotency_step = 0;
        return s;
    }
    while (true) {
        QMatrix blocks(n * n, n * z.dim());
        for (std::size_t j = 0; j < n; ++j) blocks.set_block(j * n, j * z.dim(), z.basis());
        Subspace next = preimage(ad, Subspace::span(blocks));
        if (next.dim() == z.dim()) break;
        z = next;
        s.dims.push_back(z.dim());
        if (z.dim() == n) {
            s.nilpotency_step = static_cast<int>(s.dims.size()) - 1;
            break;
        }
    }
    return s;
}

} // namespace bicohom
