#pragma once

// De Rham, Dolbeault, conjugate Dolbeault, Bott-Chern and Aeppli cohomology of
// a bounded double complex, the Varouchas spaces, the Δ_k invariant, the
// ∂∂̄-lemma decision and the six DGMS conditions.

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "bicomplex.hpp"

namespace bicohom {

enum class Theory { DeRham, Dolbeault, ConjDolbeault, BottChern, Aeppli };

inline std::string to_string(Theory t) {
    switch (t) {
    case Theory::DeRham: return "de_rham";
    case Theory::Dolbeault: return "dolbeault";
    case Theory::ConjDolbeault: return "conj_dolbeault";
    case Theory::BottChern: return "bott_chern";
    case Theory::Aeppli: return "aeppli";
    }
    return "?";
}

/// Bigraded tables are indexed [p*(Q+1)+q]; the de Rham table by total degree.
struct CohomologyTable {
    Theory theory = Theory::Dolbeault;
    int P = 0;
    int Q = 0;
    std::vector<std::size_t> entries;

    static CohomologyTable bigraded(Theory t, int P, int Q) {
        return {t, P, Q, std::vector<std::size_t>(static_cast<std::size_t>((P + 1) * (Q + 1)), 0)};
    }
    static CohomologyTable graded(int P, int Q) {
        return {Theory::DeRham, P, Q, std::vector<std::size_t>(static_cast<std::size_t>(P + Q + 1), 0)};
    }

    bool is_graded() const { return theory == Theory::DeRham; }
    bool in_box(int p, int q) const { return p >= 0 && q >= 0 && p <= P && q <= Q; }

    std::size_t at(int p, int q) const { return in_box(p, q) ? entries[static_cast<std::size_t>(p * (Q + 1) + q)] : 0; }
    std::size_t& cell(int p, int q) {
        ensure(in_box(p, q), ErrorCode::ShapeMismatch, "bidegree outside the table");
        return entries[static_cast<std::size_t>(p * (Q + 1) + q)];
    }

    /// b_k for de Rham, Σ_{p+q=k} h^{p,q} otherwise.
    std::size_t degree(int k) const {
        if (is_graded()) return k >= 0 && k <= P + Q ? entries[static_cast<std::size_t>(k)] : 0;
        std::size_t n = 0;
        for (int p = 0; p <= k; ++p) n += at(p, k - p);
        return n;
    }
    std::vector<std::size_t> by_degree() const {
        std::vector<std::size_t> out;
        for (int k = 0; k <= P + Q; ++k) out.push_back(degree(k));
        return out;
    }

    friend bool operator==(const CohomologyTable&, const CohomologyTable&) = default;
};

/// The subspaces of A^{p,q} from which every theory is a subquotient.
struct BidegreeSpaces {
    Subspace ker_del, ker_delbar, ker_ddbar;
    Subspace im_del, im_delbar, im_ddbar;
};

inline BidegreeSpaces bidegree_spaces(const Bicomplex& b, int p, int q) {
    BidegreeSpaces s;
    s.ker_del = kernel_basis(b.del(p, q));
    s.ker_delbar = kernel_basis(b.delbar(p, q));
    s.ker_ddbar = kernel_basis(b.ddbar(p, q));
    s.im_del = image_basis(b.del_or_zero(p - 1, q));
    s.im_delbar = image_basis(b.delbar_or_zero(p, q - 1));
    s.im_ddbar = image_basis(b.ddbar(p - 1, q - 1));
    return s;
}

inline std::size_t dolbeault_dim(const BidegreeSpaces& s) { return quotient_dim(s.ker_delbar, s.im_delbar); }
inline std::size_t conj_dolbeault_dim(const BidegreeSpaces& s) { return quotient_dim(s.ker_del, s.im_del); }
inline std::size_t bott_chern_dim(const BidegreeSpaces& s) {
    return quotient_dim(intersect(s.ker_del, s.ker_delbar), s.im_ddbar);
}
inline std::size_t aeppli_dim(const BidegreeSpaces& s) { return quotient_dim(s.ker_ddbar, sum(s.im_del, s.im_delbar)); }

/// All four bigraded tables from one pass over the box.
struct BigradedTables {
    CohomologyTable dolbeault, conj_dolbeault, bott_chern, aeppli;
};

inline BigradedTables bigraded_tables(const Bicomplex& b) {
    require_valid(b);
    BigradedTables t{CohomologyTable::bigraded(Theory::Dolbeault, b.P(), b.Q()),
                     CohomologyTable::bigraded(Theory::ConjDolbeault, b.P(), b.Q()),
                     CohomologyTable::bigraded(Theory::BottChern, b.P(), b.Q()),
                     CohomologyTable::bigraded(Theory::Aeppli, b.P(), b.Q())};
    for (int p = 0; p <= b.P(); ++p)
        for (int q = 0; q <= b.Q(); ++q) {
            BidegreeSpaces s = bidegree_spaces(b, p, q);
            t.dolbeault.cell(p, q) = dolbeault_dim(s);
            t.conj_dolbeault.cell(p, q) = conj_dolbeault_dim(s);
            t.bott_chern.cell(p, q) = bott_chern_dim(s);
            t.aeppli.cell(p, q) = aeppli_dim(s);
        }
    return t;
}

inline CohomologyTable de_rham(const Bicomplex& b) {
    require_valid(b);
    CohomologyTable t = CohomologyTable::graded(b.P(), b.Q());
    std::vector<std::size_t> ranks;
    for (int k = -1; k <= b.top_degree(); ++k) ranks.push_back(rank(total_operator(b, Operator::D, k)));
    for (int k = 0; k <= b.top_degree(); ++k)
        t.entries[static_cast<std::size_t>(k)] =
            total_dim(b, k) - ranks[static_cast<std::size_t>(k + 1)] - ranks[static_cast<std::size_t>(k)];
    return t;
}

inline CohomologyTable dolbeault(const Bicomplex& b) { return bigraded_tables(b).dolbeault; }
inline CohomologyTable conj_dolbeault(const Bicomplex& b) { return bigraded_tables(b).conj_dolbeault; }
inline CohomologyTable bott_chern(const Bicomplex& b) { return bigraded_tables(b).bott_chern; }
inline CohomologyTable aeppli(const Bicomplex& b) { return bigraded_tables(b).aeppli; }

/// Table of the (p,q) <-> (q,p) reflected complex.
inline CohomologyTable transposed(const CohomologyTable& t) {
    if (t.is_graded()) return t;
    CohomologyTable r = CohomologyTable::bigraded(t.theory, t.Q, t.P);
    for (int p = 0; p <= t.P; ++p)
        for (int q = 0; q <= t.Q; ++q) r.cell(q, p) = t.at(p, q);
    return r;
}

/// All five tables, de Rham first.
struct CohomologySummary {
    CohomologyTable de_rham, dolbeault, conj_dolbeault, bott_chern, aeppli;
    friend bool operator==(const CohomologySummary&, const CohomologySummary&) = default;
};

inline CohomologySummary all_cohomology(const Bicomplex& b) {
    BigradedTables t = bigraded_tables(b);
    return {de_rham(b), t.dolbeault, t.conj_dolbeault, t.bott_chern, t.aeppli};
}

// ---------------------------------------------------------------- Varouchas

/// N/D with D ⊆ N, a term of a sequence whose maps are induced by the identity.
struct Subquotient {
    Subspace numerator;
    Subspace denominator;
    std::size_t dim() const { return quotient_dim(numerator, denominator); }
};

/// Exactness of 0 -> T_0 -> T_1 -> ... -> T_m -> 0 with identity-induced maps.
inline bool identity_sequence_exact(const std::vector<Subquotient>& terms) {
    const std::size_t m = terms.size();
    if (m == 0) return true;
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (!terms[i + 1].numerator.contains(terms[i].numerator) ||
            !terms[i + 1].denominator.contains(terms[i].denominator))
            return false;
    if (m == 1) return terms[0].dim() == 0;
    if (!(intersect(terms[0].numerator, terms[1].denominator) == terms[0].denominator)) return false;
    for (std::size_t i = 0; i + 2 < m; ++i)
        if (!(sum(terms[i].numerator, terms[i + 1].denominator) ==
              intersect(terms[i + 1].numerator, terms[i + 2].denominator)))
            return false;
    return sum(terms[m - 2].numerator, terms[m - 1].denominator) == terms[m - 1].numerator;
}

struct VarouchasTable {
    int P = 0;
    int Q = 0;
    // a..f indexed like CohomologyTable
    std::vector<std::size_t> a, b, c, d, e, f;
    std::vector<Bidegree> first_sequence_failures;  // 0 -> A -> B -> H_∂̄ -> H_A -> C -> 0
    std::vector<Bidegree> second_sequence_failures; // 0 -> D -> H_BC -> H_∂̄ -> E -> F -> 0

    std::size_t at(const std::vector<std::size_t>& t, int p, int q) const {
        return p >= 0 && q >= 0 && p <= P && q <= Q ? t[static_cast<std::size_t>(p * (Q + 1) + q)] : 0;
    }
    bool exact() const { return first_sequence_failures.empty() && second_sequence_failures.empty(); }
};

inline VarouchasTable varouchas(const Bicomplex& bc) {
    require_valid(bc);
    VarouchasTable t;
    t.P = bc.P();
    t.Q = bc.Q();
    const std::size_t n = bc.cell_count();
    for (auto* v : {&t.a, &t.b, &t.c, &t.d, &t.e, &t.f}) v->assign(n, 0);
    for (int p = 0; p <= bc.P(); ++p)
        for (int q = 0; q <= bc.Q(); ++q) {
            const std::size_t i = bc.index(p, q);
            BidegreeSpaces s = bidegree_spaces(bc, p, q);
            Subquotient A{intersect(s.im_delbar, s.im_del), s.im_ddbar};
            Subquotient B{intersect(s.ker_delbar, s.im_del), s.im_ddbar};
            Subquotient C{s.ker_ddbar, sum(s.ker_delbar, s.im_del)};
            Subquotient D{intersect(s.im_delbar, s.ker_del), s.im_ddbar};
            Subquotient E{s.ker_ddbar, sum(s.ker_del, s.im_delbar)};
            Subquotient F{s.ker_ddbar, sum(s.ker_delbar, s.ker_del)};
            Subquotient Hdbar{s.ker_delbar, s.im_delbar};
            Subquotient HA{s.ker_ddbar, sum(s.im_del, s.im_delbar)};
            Subquotient HBC{intersect(s.ker_del, s.ker_delbar), s.im_ddbar};
            t.a[i] = A.dim();
            t.b[i] = B.dim();
            t.c[i] = C.dim();
            t.d[i] = D.dim();
            t.e[i] = E.dim();
            t.f[i] = F.dim();
            std::vector<Subquotient> first{A, B, Hdbar, HA, C}, second{D, HBC, Hdbar, E, F};
            auto alternating = [](const std::vector<Subquotient>& seq) {
                long s = 0, sign = 1;
                for (const auto& x : seq) {
                    s += sign * static_cast<long>(x.dim());
                    sign = -sign;
                }
                return s;
            };
            if (alternating(first) != 0 || !identity_sequence_exact(first))
                t.first_sequence_failures.push_back({p, q});
            if (alternating(second) != 0 || !identity_sequence_exact(second))
                t.second_sequence_failures.push_back({p, q});
        }
    return t;
}

/// A violated dimension identity between Varouchas and cohomology tables.
struct IdentityFailure {
    std::string identity;
    Bidegree at;
};

/// Identities valid on every bicomplex:
///   h_BC + h_A = h_∂̄ + h_∂ + f + a,  c^{p,q} = d^{p,q+1},  e^{p,q} = b^{p+1,q};
/// and, when conj data is present, the symmetric ones together with
///   h_BC^{p,q} + h_A^{q,p} = h_∂̄^{p,q} + h_∂^{p,q} + f^{p,q} + a^{p,q}.
inline std::vector<IdentityFailure> varouchas_identity_failures(const Bicomplex& b) {
    VarouchasTable v = varouchas(b);
    BigradedTables h = bigraded_tables(b);
    std::vector<IdentityFailure> out;
    for (int p = 0; p <= b.P(); ++p)
        for (int q = 0; q <= b.Q(); ++q) {
            const std::size_t rhs = h.dolbeault.at(p, q) + h.conj_dolbeault.at(p, q) + v.at(v.f, p, q) + v.at(v.a, p, q);
            if (h.bott_chern.at(p, q) + h.aeppli.at(p, q) != rhs) out.push_back({"h_BC + h_A = h_dbar + h_d + f + a", {p, q}});
            if (v.at(v.c, p, q) != v.at(v.d, p, q + 1)) out.push_back({"c^{p,q} = d^{p,q+1}", {p, q}});
            if (v.at(v.e, p, q) != v.at(v.b, p + 1, q)) out.push_back({"e^{p,q} = b^{p+1,q}", {p, q}});
            if (b.has_conj()) {
                if (h.bott_chern.at(p, q) + h.aeppli.at(q, p) != rhs)
                    out.push_back({"h_BC^{p,q} + h_A^{q,p} = h_dbar + h_d + f + a", {p, q}});
                if (v.at(v.a, p, q) != v.at(v.a, q, p)) out.push_back({"a^{p,q} = a^{q,p}", {p, q}});
                if (v.at(v.f, p, q) != v.at(v.f, q, p)) out.push_back({"f^{p,q} = f^{q,p}", {p, q}});
                if (v.at(v.d, p, q) != v.at(v.b, q, p)) out.push_back({"d^{p,q} = b^{q,p}", {p, q}});
                if (v.at(v.e, p, q) != v.at(v.c, q, p)) out.push_back({"e^{p,q} = c^{q,p}", {p, q}});
            }
        }
    return out;
}

// ------------------------------------------------------------ ∂∂̄-lemma

inline std::vector<long> delta_all(const Bicomplex& b) {
    BigradedTables t = bigraded_tables(b);
    CohomologyTable dr = de_rham(b);
    std::vector<long> out;
    for (int k = 0; k <= b.top_degree(); ++k)
        out.push_back(static_cast<long>(t.bott_chern.degree(k) + t.aeppli.degree(k)) -
                      2 * static_cast<long>(dr.degree(k)));
    return out;
}

/// Δ_k = Σ_{p+q=k} (h_BC + h_A) - 2 b_k; zero outside [0, P+Q].
inline long delta_k(const Bicomplex& b, int k) {
    if (k < 0 || k > b.top_degree()) {
        require_valid(b);
        return 0;
    }
    return delta_all(b)[static_cast<std::size_t>(k)];
}

struct DdbarEvidence {
    bool holds = false;
    std::vector<long> delta;                  // Δ_k for k = 0..P+Q
    std::vector<Bidegree> non_injective_at;   // where H_BC -> H_A fails to be injective
};

/// Decides the ∂∂̄-lemma numerically (Δ ≡ 0) and directly (H_BC -> H_A
/// injective everywhere); the two must agree.
inline DdbarEvidence satisfies_ddbar(const Bicomplex& b) {
    DdbarEvidence ev;
    ev.delta = delta_all(b);
    bool numeric = true;
    for (long d : ev.delta) {
        ensure(d >= 0, ErrorCode::InternalInconsistency, "negative Delta_k");
        numeric = numeric && d == 0;
    }
    for (int p = 0; p <= b.P(); ++p)
        for (int q = 0; q <= b.Q(); ++q) {
            BidegreeSpaces s = bidegree_spaces(b, p, q);
            Subspace closed = intersect(s.ker_del, s.ker_delbar);
            if (!(intersect(closed, sum(s.im_del, s.im_delbar)) == s.im_ddbar)) ev.non_injective_at.push_back({p, q});
        }
    const bool direct = ev.non_injective_at.empty();
    ensure(numeric == direct, ErrorCode::InternalInconsistency,
           "Delta criterion and injectivity criterion disagree on the ddbar-lemma");
    ev.holds = direct;
    return ev;
}

// ------------------------------------------------------ DGMS conditions

struct Lemma515 {
    bool a = false, b = false, c = false;             // in A^k
    bool a_star = false, b_star = false, c_star = false; // in A^{k-1}
    bool all_equal() const { return a == b && b == c && c == a_star && a_star == b_star && b_star == c_star; }
    std::vector<bool> values() const { return {a, b, c, a_star, b_star, c_star}; }
};

inline Lemma515 lemma_515(const Bicomplex& bc, int k) {
    require_valid(bc);
    ensure(k >= 1 && k <= bc.top_degree(), ErrorCode::ShapeMismatch,
           "degree k must satisfy 1 <= k <= " + std::to_string(bc.top_degree()));
    auto del = [&](int j) { return total_operator(bc, Operator::Del, j); };
    auto delbar = [&](int j) { return total_operator(bc, Operator::Delbar, j); };
    auto dtot = [&](int j) { return total_operator(bc, Operator::D, j); };
    auto ddbar = [&](int j) { return del(j + 1) * delbar(j); };

    // spaces in A^j
    struct Spaces {
        Subspace ker_d, ker_db, ker_tot, ker_ddb, im_d, im_db, im_tot, im_ddb;
    };
    auto spaces = [&](int j) {
        return Spaces{kernel_basis(del(j)),        kernel_basis(delbar(j)),    kernel_basis(dtot(j)),
                      kernel_basis(ddbar(j)),      image_basis(del(j - 1)),    image_basis(delbar(j - 1)),
                      image_basis(dtot(j - 1)),    image_basis(ddbar(j - 2))};
    };
    Spaces s = spaces(k), t = spaces(k - 1);
    Lemma515 r;
    Subspace closed = intersect(s.ker_d, s.ker_db);
    r.a = intersect(closed, s.im_tot) == s.im_ddb;
    r.b = intersect(s.ker_db, s.im_d) == s.im_ddb && intersect(s.ker_d, s.im_db) == s.im_ddb;
    r.c = intersect(closed, sum(s.im_d, s.im_db)) == s.im_ddb;
    Subspace images = sum(t.im_d, t.im_db);
    r.a_star = sum(images, t.ker_tot) == t.ker_ddb;
    r.b_star = sum(t.im_db, t.ker_d) == t.ker_ddb && sum(t.im_d, t.ker_db) == t.ker_ddb;
    r.c_star = sum(images, intersect(t.ker_d, t.ker_db)) == t.ker_ddb;
    return r;
}

// ------------------------------------------------------ inequality suite

struct InequalityRow {
    int k = 0;
    std::size_t h_bc = 0, h_a = 0;
    std::size_t dbar_k = 0, dbar_prev = 0, dbar_next = 0;
    std::size_t bc_bound = 0, a_bound = 0, difference_bound = 0;
    bool bc_ok = true, a_ok = true, difference_ok = true;
};

struct InequalityReport {
    int n = 0;
    bool has_real_structure = false;
    std::vector<InequalityRow> rows;
    std::size_t total_difference = 0;   // Σ_k |h^k_BC - h^k_A|
    bool ddbar = false;
    bool characterization_ok = true;    // total_difference == 0 <=> ddbar
    bool all_ok() const {
        for (const auto& r : rows)
            if (!r.bc_ok || !r.a_ok || !r.difference_ok) return false;
        return characterization_ok;
    }
};

inline InequalityReport inequality_suite(const Bicomplex& b, int n) {
    ensure(b.P() == n && b.Q() == n, ErrorCode::ShapeMismatch,
           "inequality suite needs the box [0,n]x[0,n] with n = " + std::to_string(n));
    BigradedTables t = bigraded_tables(b);
    InequalityReport rep;
    rep.n = n;
    rep.has_real_structure = b.has_conj();
    for (int k = 0; k <= 2 * n; ++k) {
        InequalityRow r;
        r.k = k;
        r.h_bc = t.bott_chern.degree(k);
        r.h_a = t.aeppli.degree(k);
        r.dbar_k = t.dolbeault.degree(k);
        r.dbar_prev = t.dolbeault.degree(k - 1);
        r.dbar_next = t.dolbeault.degree(k + 1);
        const std::size_t factor = static_cast<std::size_t>(std::min(k + 1, 2 * n - k + 1));
        r.bc_bound = factor * (r.dbar_k + r.dbar_prev);
        // Aeppli classes in degree k sit on zigzags reaching degree k+1
        r.a_bound = factor * (r.dbar_k + r.dbar_next);
        r.difference_bound = static_cast<std::size_t>(2 * (n + 1)) * (r.dbar_k + r.dbar_next);
        r.bc_ok = r.h_bc <= r.bc_bound;
        r.a_ok = r.h_a <= r.a_bound;
        const std::size_t diff = r.h_bc > r.h_a ? r.h_bc - r.h_a : r.h_a - r.h_bc;
        r.difference_ok = diff <= r.difference_bound;
        rep.total_difference += diff;
        rep.rows.push_back(r);
    }
    rep.ddbar = satisfies_ddbar(b).holds;
    rep.characterization_ok = (rep.total_difference == 0) == rep.ddbar;
    return rep;
}

} // namespace bicohom
