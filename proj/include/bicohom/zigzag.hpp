#pragma once

// Decomposition of a bounded double complex into squares, zigzags and dots.
//
// Squares: at each (p,q) there are rank(∂∂̄) of them, and the subcomplex T
// generated by a complement of ker ∂∂̄ is a direct summand made of squares.
// On A/T one has ∂∂̄ = 0 and each pair of adjacent antidiagonals k, k+1
// carries a representation of the zigzag quiver
//     U_0 <- L_0 -> U_1 <- L_1 -> ... <- L_k -> U_{k+1}
// with L_p = A^{p,k-p}/(ker ∂ ∩ ker ∂̄) and U_p = (im ∂ + im ∂̄) ⊆ A^{p,k+1-p}.
// Its interval summands are the zigzags of length >= 2; they are counted by
// the rank of lim -> colim over every interval followed by Möbius inversion.

#include <map>

#include "cohomology.hpp"
#include "shapes.hpp"

namespace bicohom {

namespace detail {

/// Quiver representation on vertices 0..n-1 in a line; arrow between v and
/// v+1 oriented from the odd vertex to the even one.
struct ZigzagRep {
    std::vector<std::size_t> dims;
    std::vector<QMatrix> arrows; // arrows[v]: between v and v+1, source odd, target even

    std::size_t source(std::size_t a) const { return a % 2 == 1 ? a : a + 1; }
    std::size_t target(std::size_t a) const { return a % 2 == 1 ? a + 1 : a; }

    /// Rank of the canonical map lim -> colim of the restriction to [i, j].
    std::size_t interval_rank(std::size_t i, std::size_t j) const {
        for (std::size_t v = i; v <= j; ++v)
            if (dims[v] == 0) return 0;
        std::vector<std::size_t> off;
        std::size_t total = 0;
        for (std::size_t v = i; v <= j; ++v) {
            off.push_back(total);
            total += dims[v];
        }
        auto offset = [&](std::size_t v) { return off[v - i]; };
        // limit: families (x_v) with M_a x_s = x_t
        std::size_t eq_rows = 0;
        for (std::size_t a = i; a < j; ++a) eq_rows += dims[target(a)];
        QMatrix eq(eq_rows, total);
        std::vector<Vector> relations;
        std::size_t row = 0;
        for (std::size_t a = i; a < j; ++a) {
            const std::size_t s = source(a), t = target(a);
            const QMatrix& m = arrows[a];
            eq.set_block(row, offset(s), m);
            eq.set_block(row, offset(t), Scalar(-1) * QMatrix::identity(dims[t]));
            row += dims[t];
            // colimit relations ι_t(M e) - ι_s(e)
            for (std::size_t c = 0; c < dims[s]; ++c) {
                Vector r(total);
                for (std::size_t k = 0; k < dims[t]; ++k) r[offset(t) + k] = m(k, c);
                r[offset(s) + c] -= Scalar(1);
                relations.push_back(std::move(r));
            }
        }
        Subspace lim = kernel_basis(eq);
        if (lim.dim() == 0) return 0;
        Subspace rel = Subspace::span(QMatrix::from_columns(total, relations));
        // ι_i π_i (lim)
        QMatrix proj(total, lim.dim());
        for (std::size_t c = 0; c < lim.dim(); ++c)
            for (std::size_t k = 0; k < dims[i]; ++k) proj(offset(i) + k, c) = lim.basis()(offset(i) + k, c);
        return sum(Subspace::span(proj), rel).dim() - rel.dim();
    }
};

} // namespace detail

inline ZigzagDecomposition decompose(const Bicomplex& b) {
    require_valid(b);
    const int P = b.P(), Q = b.Q();
    ZigzagDecomposition out{P, Q, {}};

    // Phase 1: squares.
    std::vector<Subspace> W(b.cell_count());
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            RrefResult rr = rref(b.ddbar(p, q));
            out.add(ZigzagShape::square(p, q), rr.rank);
            QMatrix basis(b.dim(p, q), rr.rank);
            for (std::size_t j = 0; j < rr.rank; ++j) basis(rr.pivots[j], j) = 1;
            W[b.index(p, q)] = Subspace::span(basis);
        }
    auto w_or_zero = [&](int p, int q) {
        return b.in_box(p, q) ? W[b.index(p, q)] : Subspace::zero(b.dim(p, q));
    };
    std::vector<QuotientMap> quot;
    std::vector<std::size_t> qdims(b.cell_count());
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            Subspace t = W[b.index(p, q)];
            t = sum(t, image(b.del_or_zero(p - 1, q), w_or_zero(p - 1, q)));
            t = sum(t, image(b.delbar_or_zero(p, q - 1), w_or_zero(p, q - 1)));
            t = sum(t, image(b.ddbar(p - 1, q - 1), w_or_zero(p - 1, q - 1)));
            quot.emplace_back(t);
            qdims[b.index(p, q)] = quot.back().quotient_dim();
        }
    Bicomplex a(P, Q, qdims);
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            const QMatrix& lift = quot[b.index(p, q)].lift();
            if (p < P) a.set_del(p, q, quot[b.index(p + 1, q)].project() * b.del(p, q) * lift);
            if (q < Q) a.set_delbar(p, q, quot[b.index(p, q + 1)].project() * b.delbar(p, q) * lift);
        }
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q)
            ensure(a.ddbar(p, q).is_zero(), ErrorCode::InternalInconsistency, "ddbar survives the square quotient");

    // Phase 2: dots and zigzags.
    std::vector<Subspace> K(a.cell_count()), I(a.cell_count());
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            BidegreeSpaces s = bidegree_spaces(a, p, q);
            K[a.index(p, q)] = intersect(s.ker_del, s.ker_delbar);
            I[a.index(p, q)] = sum(s.im_del, s.im_delbar);
            out.add(ZigzagShape::dot(p, q), quotient_dim(K[a.index(p, q)], I[a.index(p, q)]));
        }
    for (int k = 0; k < P + Q; ++k) {
        // vertex 2p = U_p = (p, k+1-p), vertex 2p+1 = L_p = (p, k-p)
        const std::size_t n = static_cast<std::size_t>(2 * k + 3);
        detail::ZigzagRep rep;
        rep.dims.assign(n, 0);
        rep.arrows.assign(n - 1, QMatrix());
        std::vector<std::optional<QuotientMap>> lower(static_cast<std::size_t>(k + 1));
        for (int p = 0; p <= k + 1; ++p) {
            const int q = k + 1 - p;
            if (a.in_box(p, q)) rep.dims[static_cast<std::size_t>(2 * p)] = I[a.index(p, q)].dim();
        }
        for (int p = 0; p <= k; ++p) {
            const int q = k - p;
            if (!a.in_box(p, q)) continue;
            lower[static_cast<std::size_t>(p)].emplace(K[a.index(p, q)]);
            rep.dims[static_cast<std::size_t>(2 * p + 1)] = lower[static_cast<std::size_t>(p)]->quotient_dim();
        }
        for (int p = 0; p <= k; ++p) {
            const std::size_t v = static_cast<std::size_t>(2 * p + 1);
            const int q = k - p;
            if (rep.dims[v] == 0) {
                rep.arrows[v - 1] = QMatrix(rep.dims[v - 1], 0);
                rep.arrows[v] = QMatrix(rep.dims[v + 1], 0);
                continue;
            }
            const QMatrix& lift = lower[static_cast<std::size_t>(p)]->lift();
            // ∂̄ : L_p -> U_p, in coordinates of the canonical basis of I
            QMatrix up = a.delbar_or_zero(p, q) * lift;
            QMatrix right = a.del_or_zero(p, q) * lift;
            rep.arrows[v - 1] = a.in_box(p, q + 1) ? up.select_rows(I[a.index(p, q + 1)].pivots()) : QMatrix(0, rep.dims[v]);
            rep.arrows[v] = a.in_box(p + 1, q) ? right.select_rows(I[a.index(p + 1, q)].pivots()) : QMatrix(0, rep.dims[v]);
        }
        // r(i, j) for all intervals, then Möbius inversion
        std::vector<std::vector<long>> r(n + 1, std::vector<long>(n + 1, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) r[i][j] = static_cast<long>(rep.interval_rank(i, j));
        auto R = [&](long i, long j) -> long {
            if (i < 0 || j >= static_cast<long>(n)) return 0;
            return r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        };
        for (long i = 0; i < static_cast<long>(n); ++i)
            for (long j = i; j < static_cast<long>(n); ++j) {
                const long m = R(i, j) - R(i - 1, j) - R(i, j + 1) + R(i - 1, j + 1);
                ensure(m >= 0, ErrorCode::InternalInconsistency, "negative interval multiplicity");
                if (m == 0) continue;
                ensure(j > i, ErrorCode::InternalInconsistency, "isolated vertex in the zigzag quiver");
                const int p = static_cast<int>(i / 2);
                const Step step = i % 2 == 0 ? Step::Vertical : Step::Horizontal;
                out.add(ZigzagShape::zigzag(p, k - p, step, static_cast<int>(j - i + 1)), static_cast<std::size_t>(m));
            }
    }

    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q)
            ensure(out.dim(p, q) == b.dim(p, q), ErrorCode::InternalInconsistency,
                   "decomposition does not account for every dimension at (" + std::to_string(p) + "," +
                       std::to_string(q) + ")");
    return out;
}

inline std::size_t multiplicity_of(const Bicomplex& b, const ZigzagShape& shape) { return decompose(b).count(shape); }

/// Counts per shape: dots everywhere; squares nothing; a zigzag gives Dolbeault
/// classes at dots without a ∂̄ arrow, conjugate Dolbeault at dots without a ∂
/// arrow, Bott-Chern at its upper corners, Aeppli at its lower corners, and one
/// de Rham class in the majority antidiagonal when its length is odd.
inline CohomologySummary reconstruct(const ZigzagDecomposition& d) {
    CohomologySummary s{CohomologyTable::graded(d.P, d.Q),
                        CohomologyTable::bigraded(Theory::Dolbeault, d.P, d.Q),
                        CohomologyTable::bigraded(Theory::ConjDolbeault, d.P, d.Q),
                        CohomologyTable::bigraded(Theory::BottChern, d.P, d.Q),
                        CohomologyTable::bigraded(Theory::Aeppli, d.P, d.Q)};
    for (const auto& [shape, m] : d.multiplicities) {
        if (shape.kind == ShapeKind::Square) continue;
        const int k = total_degree(shape);
        if (shape.kind == ShapeKind::Dot) {
            const int p = shape.anchor.p, q = shape.anchor.q;
            for (CohomologyTable* t : {&s.dolbeault, &s.conj_dolbeault, &s.bott_chern, &s.aeppli}) t->cell(p, q) += m;
            s.de_rham.entries[static_cast<std::size_t>(k)] += m;
            continue;
        }
        std::vector<ShapeDot> dots = dots_of(shape);
        std::map<Bidegree, bool> present;
        for (const ShapeDot& x : dots) present[x.at] = x.upper;
        auto has = [&](int p, int q) { return present.count({p, q}) > 0; };
        int uppers = 0;
        for (const ShapeDot& x : dots) {
            const int p = x.at.p, q = x.at.q;
            const bool vertical = x.upper ? has(p, q - 1) : has(p, q + 1);
            const bool horizontal = x.upper ? has(p - 1, q) : has(p + 1, q);
            if (!vertical) s.dolbeault.cell(p, q) += m;
            if (!horizontal) s.conj_dolbeault.cell(p, q) += m;
            if (x.upper) {
                s.bott_chern.cell(p, q) += m;
                ++uppers;
            } else {
                s.aeppli.cell(p, q) += m;
            }
        }
        if (shape.length % 2 == 1) {
            const int degree = 2 * uppers > shape.length ? k + 1 : k;
            s.de_rham.entries[static_cast<std::size_t>(degree)] += m;
        }
    }
    return s;
}

} // namespace bicohom
