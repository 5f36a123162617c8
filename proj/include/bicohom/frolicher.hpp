#pragma once

// Frölicher spectral sequence of the column filtration F^p A = ⊕_{r>=p} A^{r,•},
// computed page by page from the Z_r / B_r subquotient formula.

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "cohomology.hpp"

namespace bicohom {

struct SpectralPage {
    int r = 1;
    int P = 0;
    int Q = 0;
    std::vector<std::size_t> entries;            // [p*(Q+1)+q]
    std::vector<std::size_t> differential_ranks; // rank of d_r out of (p,q)

    std::size_t at(int p, int q) const {
        return p >= 0 && q >= 0 && p <= P && q <= Q ? entries[static_cast<std::size_t>(p * (Q + 1) + q)] : 0;
    }
    std::size_t rank_out(int p, int q) const {
        return p >= 0 && q >= 0 && p <= P && q <= Q ? differential_ranks[static_cast<std::size_t>(p * (Q + 1) + q)] : 0;
    }
    std::size_t degree(int k) const {
        std::size_t n = 0;
        for (int p = 0; p <= k; ++p) n += at(p, k - p);
        return n;
    }
    bool differential_zero() const {
        for (auto x : differential_ranks)
            if (x != 0) return false;
        return true;
    }
    CohomologyTable as_table() const { return {Theory::Dolbeault, P, Q, entries}; }
};

struct FrolicherResult {
    std::vector<SpectralPage> pages; // r = 1 .. min(r_max, last_computed)
    int stable_from = 1;             // first r with E_r = E_∞
    SpectralPage infinity;           // E_∞
    int last_computed = 1;           // hard bound P+Q+2
};

namespace detail {

class FrolicherData {
public:
    explicit FrolicherData(const Bicomplex& b) : b_(b) {
        for (int k = -1; k <= b.top_degree() + 1; ++k) d_.push_back(total_operator(b, Operator::D, k));
    }

    const QMatrix& d(int k) const { return d_[static_cast<std::size_t>(k + 1)]; }

    Subspace filtration(int p, int k) const {
        if (k < 0 || k > b_.top_degree()) return Subspace::zero(total_dim(b_, k));
        return bicohom::filtration(b_, p, k);
    }

    /// Z_r^{p,q} = F^p A^{p+q} ∩ d^{-1}(F^{p+r} A^{p+q+1}), r >= 0.
    const Subspace& Z(int r, int p, int q) const {
        const int k = p + q;
        // F^j is everything for j <= 0 and zero for j > P
        const int target = std::clamp(p + r, 0, b_.P() + 1);
        p = std::clamp(p, 0, b_.P() + 1);
        auto key = std::tuple{target, p, k};
        auto it = z_.find(key);
        if (it != z_.end()) return it->second;
        Subspace z = k < 0 || k > b_.top_degree()
                         ? Subspace::zero(total_dim(b_, k))
                         : intersect(filtration(p, k), preimage(d(k), filtration(target, k + 1)));
        return z_.emplace(key, std::move(z)).first->second;
    }

    /// Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}
    Subspace B(int r, int p, int q) const {
        const int k = p + q;
        Subspace lower = Z(r - 1, p + 1, q - 1);
        if (k - 1 < 0) return lower;
        return sum(lower, image(d(k - 1), Z(r - 1, p - r + 1, q + r - 2)));
    }

private:
    const Bicomplex& b_;
    std::vector<QMatrix> d_;
    mutable std::map<std::tuple<int, int, int>, Subspace> z_;
};

} // namespace detail

/// Pages E_1 .. E_{r_max}; everything up to r = P+Q+2 is computed so that the
/// reported stabilization page is exact.
inline FrolicherResult frolicher(const Bicomplex& b, int r_max) {
    ensure(r_max >= 1, ErrorCode::ShapeMismatch, "r_max must be at least 1");
    require_valid(b);
    detail::FrolicherData data(b);
    const int last = b.P() + b.Q() + 2;
    std::vector<SpectralPage> all;
    for (int r = 1; r <= last; ++r) {
        SpectralPage page{r, b.P(), b.Q(), std::vector<std::size_t>(b.cell_count(), 0),
                          std::vector<std::size_t>(b.cell_count(), 0)};
        for (int p = 0; p <= b.P(); ++p)
            for (int q = 0; q <= b.Q(); ++q) {
                Subspace z = data.Z(r, p, q);
                page.entries[b.index(p, q)] = quotient_dim(z, data.B(r, p, q));
                Subspace kernel = sum(data.Z(r + 1, p, q), data.Z(r - 1, p + 1, q - 1));
                page.differential_ranks[b.index(p, q)] = quotient_dim(z, kernel);
            }
        all.push_back(std::move(page));
    }
    // E_{r+1} = H(E_r, d_r)
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
        const SpectralPage& e = all[i];
        const int r = e.r;
        for (int p = 0; p <= b.P(); ++p)
            for (int q = 0; q <= b.Q(); ++q) {
                const std::size_t expected = e.at(p, q) - e.rank_out(p, q) - e.rank_out(p - r, q + r - 1);
                ensure(all[i + 1].at(p, q) == expected, ErrorCode::InternalInconsistency,
                       "spectral page " + std::to_string(r + 1) + " is not the cohomology of page " +
                           std::to_string(r));
            }
    }
    FrolicherResult res;
    res.last_computed = last;
    res.infinity = all.back();
    ensure(res.infinity.differential_zero(), ErrorCode::InternalInconsistency, "spectral sequence did not stabilize");
    int stable = last;
    while (stable > 1) {
        const SpectralPage& prev = all[static_cast<std::size_t>(stable - 2)];
        if (prev.entries != res.infinity.entries || !prev.differential_zero()) break;
        --stable;
    }
    res.stable_from = stable;
    CohomologyTable dr = de_rham(b);
    for (int k = 0; k <= b.top_degree(); ++k)
        ensure(res.infinity.degree(k) == dr.degree(k), ErrorCode::InternalInconsistency,
               "E_infinity does not add up to the de Rham numbers in degree " + std::to_string(k));
    for (int r = 1; r <= std::min(r_max, last); ++r) res.pages.push_back(all[static_cast<std::size_t>(r - 1)]);
    return res;
}

} // namespace bicohom
