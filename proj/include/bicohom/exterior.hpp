#pragma once

// Exterior algebra Λ(V*) on N generators with a derivation d determined by its
// values on generators: the commutative DGA underlying a Chevalley-Eilenberg
// complex. Monomials are bitmasks; each degree uses the lexicographic order of
// increasing index tuples.

#include <bit>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "linalg.hpp"

namespace bicohom {

using Mask = std::uint32_t;

/// Sign of e_a ∧ e_b relative to the sorted monomial e_{a|b}; 0 if they overlap.
inline int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int inversions = 0;
    for (Mask rest = b; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        inversions += std::popcount(a >> (j + 1));
    }
    return inversions % 2 == 0 ? 1 : -1;
}

/// Sparse form: monomial -> coefficient.
using SparseForm = std::map<Mask, Scalar>;

inline void add_term(SparseForm& f, Mask m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = f.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) f.erase(it);
    }
}

inline SparseForm wedge(const SparseForm& a, const SparseForm& b) {
    SparseForm out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            const int s = wedge_sign(ma, mb);
            if (s != 0) add_term(out, ma | mb, s > 0 ? ca * cb : -(ca * cb));
        }
    return out;
}

class ExteriorBasis {
public:
    explicit ExteriorBasis(int n) : n_(n) {
        ensure(n >= 0 && n <= 24, ErrorCode::ShapeMismatch, "exterior algebra limited to 24 generators");
        by_degree_.resize(static_cast<std::size_t>(n + 1));
        std::vector<int> idx;
        // lexicographic enumeration of increasing tuples of each size
        for (int k = 0; k <= n; ++k) {
            idx.assign(static_cast<std::size_t>(k), 0);
            for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
            while (true) {
                Mask m = 0;
                for (int i : idx) m |= Mask{1} << i;
                by_degree_[static_cast<std::size_t>(k)].push_back(m);
                int pos = k - 1;
                while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
                if (pos < 0) break;
                ++idx[static_cast<std::size_t>(pos)];
                for (int i = pos + 1; i < k; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
            }
        }
        for (const auto& level : by_degree_)
            for (std::size_t i = 0; i < level.size(); ++i) index_[level[i]] = i;
    }

    int generators() const { return n_; }
    std::size_t dim(int k) const { return k >= 0 && k <= n_ ? by_degree_[static_cast<std::size_t>(k)].size() : 0; }
    const std::vector<Mask>& monomials(int k) const { return by_degree_[static_cast<std::size_t>(k)]; }
    std::size_t index_of(Mask m) const { return index_.at(m); }

private:
    int n_;
    std::vector<std::vector<Mask>> by_degree_;
    std::unordered_map<Mask, std::size_t> index_;
};

/// Element of a single degree, coordinates in the lexicographic basis.
struct DgaElement {
    int degree = 0;
    Vector coords;
    friend bool operator==(const DgaElement&, const DgaElement&) = default;
};

class Dga {
public:
    /// generator_d[i] = d(e^i), a 2-form.
    Dga(int n, std::vector<SparseForm> generator_d) : basis_(n), gen_d_(std::move(generator_d)) {
        ensure(static_cast<int>(gen_d_.size()) == n, ErrorCode::ShapeMismatch, "one differential per generator");
        for (const auto& f : gen_d_)
            for (const auto& [m, c] : f) ensure(std::popcount(m) == 2, ErrorCode::ShapeMismatch, "d(generator) must be a 2-form");
        for (int k = 0; k <= n; ++k) d_.push_back(build_d(k));
    }

    int generators() const { return basis_.generators(); }
    const ExteriorBasis& basis() const { return basis_; }
    std::size_t dim(int k) const { return basis_.dim(k); }
    int top_degree() const { return generators(); }
    const SparseForm& generator_differential(int i) const { return gen_d_[static_cast<std::size_t>(i)]; }

    /// d : Λ^k -> Λ^{k+1}
    QMatrix d_matrix(int k) const {
        if (k < 0 || k > top_degree()) return QMatrix(dim(k + 1), dim(k));
        return d_[static_cast<std::size_t>(k)];
    }

    /// d(e_m) for a monomial, via the graded Leibniz rule.
    SparseForm d_monomial(Mask m) const {
        SparseForm out;
        int position = 0;
        for (Mask rest = m; rest; rest &= rest - 1, ++position) {
            const int i = std::countr_zero(rest);
            const Mask bit = Mask{1} << i;
            const Mask before = m & (bit - 1), after = m & ~(bit | (bit - 1));
            SparseForm left{{before, Scalar(position % 2 == 0 ? 1 : -1)}};
            SparseForm right{{after, Scalar(1)}};
            for (const auto& [mm, c] : bicohom::wedge(bicohom::wedge(left, gen_d_[static_cast<std::size_t>(i)]), right)) add_term(out, mm, c);
        }
        return out;
    }

    SparseForm to_sparse(const DgaElement& x) const {
        SparseForm f;
        const auto& mons = basis_.monomials(x.degree);
        for (std::size_t i = 0; i < mons.size(); ++i) add_term(f, mons[i], x.coords[i]);
        return f;
    }
    DgaElement from_sparse(int degree, const SparseForm& f) const {
        DgaElement x{degree, Vector(dim(degree))};
        for (const auto& [m, c] : f) {
            ensure(std::popcount(m) == degree, ErrorCode::ShapeMismatch, "mixed degrees in a form");
            x.coords[basis_.index_of(m)] = c;
        }
        return x;
    }
    DgaElement monomial(Mask m) const { return from_sparse(std::popcount(m), SparseForm{{m, Scalar(1)}}); }

    DgaElement wedge(const DgaElement& a, const DgaElement& b) const {
        return from_sparse(a.degree + b.degree, bicohom::wedge(to_sparse(a), to_sparse(b)));
    }
    DgaElement d(const DgaElement& a) const { return {a.degree + 1, d_matrix(a.degree) * a.coords}; }

    /// Whether d∘d = 0 on every degree.
    bool d_squared_zero() const {
        for (int k = 0; k + 1 <= top_degree(); ++k)
            if (!(d_matrix(k + 1) * d_matrix(k)).is_zero()) return false;
        return true;
    }

private:
    QMatrix build_d(int k) const {
        QMatrix m(dim(k + 1), dim(k));
        const auto& mons = basis_.monomials(k);
        for (std::size_t j = 0; j < mons.size(); ++j)
            for (const auto& [mm, c] : d_monomial(mons[j])) m(basis_.index_of(mm), j) = c;
        return m;
    }

    ExteriorBasis basis_;
    std::vector<SparseForm> gen_d_;
    std::vector<QMatrix> d_;
};

} // namespace bicohom
