#pragma once

// Cup products and triple Massey products on H(Λ, d) of a finite exterior DGA.

#include <map>
#include <optional>
#include <tuple>

#include "exterior.hpp"
#include "linalg.hpp"

namespace bicohom {

struct CohomologyClass {
    int degree = 0;
    Vector coords; // in the basis of DgaCohomology::at(degree)
    friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;
};

/// H^k = ker d_k / im d_{k-1}. Basis classes are represented by the closed
/// basis vectors whose images in the quotient are the RREF-first independent ones.
class CohomologySpace {
public:
    CohomologySpace(const Dga& a, int k)
        : degree_(k), closed_(kernel_basis(a.d_matrix(k))),
          exact_(k > 0 ? image_basis(a.d_matrix(k - 1)) : Subspace::zero(a.dim(k))),
          primitive_(k > 0 ? a.d_matrix(k - 1) : QMatrix(a.dim(k), 0)) {
        QuotientMap quotient(exact_);
        QMatrix projected = quotient.project() * closed_.basis();
        RrefResult rr = rref(projected);
        reps_ = QMatrix(a.dim(k), rr.rank);
        QMatrix proj_reps(quotient.quotient_dim(), rr.rank);
        for (std::size_t j = 0; j < rr.rank; ++j) {
            reps_.set_block(0, j, closed_.basis().block(0, rr.pivots[j], a.dim(k), 1));
            proj_reps.set_block(0, j, projected.block(0, rr.pivots[j], projected.rows(), 1));
        }
        // coordinates from h independent rows of the projected representatives
        std::vector<std::size_t> rows = rref(proj_reps.transpose()).pivots;
        to_class_ = inverse(proj_reps.select_rows(rows)) * quotient.project().select_rows(rows);
    }

    int degree() const { return degree_; }
    std::size_t dim() const { return reps_.cols(); }
    const Subspace& closed() const { return closed_; }
    const Subspace& exact() const { return exact_; }
    /// Columns are the representatives of the basis classes.
    const QMatrix& representatives() const { return reps_; }

    bool is_closed(const Vector& form) const { return closed_.contains(form); }

    Vector class_of(const Vector& form) const {
        ensure(is_closed(form), ErrorCode::NotClosed, "form of degree " + std::to_string(degree_) + " is not closed");
        return to_class_ * form;
    }
    Vector representative(const Vector& coords) const {
        ensure(coords.size() == dim(), ErrorCode::ShapeMismatch, "class coordinates have the wrong length");
        return reps_ * coords;
    }
    CohomologyClass basis_class(std::size_t i) const {
        ensure(i < dim(), ErrorCode::ShapeMismatch, "basis class index out of range");
        Vector c(dim());
        c[i] = 1;
        return {degree_, c};
    }
    /// RREF particular solution β of dβ = form, or nullopt when form is not exact.
    std::optional<Vector> primitive(const Vector& form) const { return primitive_.solve(form); }

private:
    int degree_;
    Subspace closed_;
    Subspace exact_;
    LinearSolver primitive_;
    QMatrix reps_;
    QMatrix to_class_;
};

/// Cohomology of a DGA in all degrees, with the product.
class DgaCohomology {
public:
    explicit DgaCohomology(const Dga& a) : a_(a) {
        for (int k = 0; k <= a.top_degree(); ++k) spaces_.emplace_back(a, k);
    }

    const Dga& algebra() const { return a_; }
    const CohomologySpace& at(int k) const {
        ensure(k >= 0 && k <= a_.top_degree(), ErrorCode::ShapeMismatch, "degree out of range");
        return spaces_[static_cast<std::size_t>(k)];
    }
    std::vector<std::size_t> betti() const {
        std::vector<std::size_t> b;
        for (const auto& s : spaces_) b.push_back(s.dim());
        return b;
    }

    DgaElement representative(const CohomologyClass& c) const { return {c.degree, at(c.degree).representative(c.coords)}; }
    CohomologyClass class_of(const DgaElement& x) const { return {x.degree, at(x.degree).class_of(x.coords)}; }

    /// Zero class of a degree past the top is reported with empty coordinates.
    CohomologyClass cup(const CohomologyClass& x, const CohomologyClass& y) const {
        return cup_forms(representative(x), representative(y));
    }
    /// [α][β] for closed forms α, β.
    CohomologyClass cup_forms(const DgaElement& x, const DgaElement& y) const {
        ensure(at(x.degree).is_closed(x.coords) && at(y.degree).is_closed(y.coords), ErrorCode::NotClosed,
               "cup product needs closed representatives");
        if (x.degree + y.degree > a_.top_degree()) return {x.degree + y.degree, {}};
        return class_of(a_.wedge(x, y));
    }

    /// Coordinates of [x_i][y_j] for basis classes, memoized.
    const Vector& basis_cup(int d1, std::size_t i1, int d2, std::size_t i2) const {
        auto key = std::tuple{d1, i1, d2, i2};
        auto it = cups_.find(key);
        if (it == cups_.end()) it = cups_.emplace(key, cup(at(d1).basis_class(i1), at(d2).basis_class(i2)).coords).first;
        return it->second;
    }

private:
    const Dga& a_;
    std::vector<CohomologySpace> spaces_;
    mutable std::map<std::tuple<int, std::size_t, int, std::size_t>, Vector> cups_;
};

struct MasseyResult {
    bool defined = false;
    DgaElement representative;         // degree |a12|+|a23|+|a34|-1
    Vector class_coords;               // class of the representative
    Subspace indeterminacy;            // inside H^{degree}, in class coordinates
    bool vanishes = false;
};

namespace detail {

inline Scalar parity_sign(int degree) { return degree % 2 == 0 ? Scalar(1) : Scalar(-1); }

inline DgaElement scaled(const DgaElement& x, const Scalar& s) {
    DgaElement y = x;
    for (auto& c : y.coords) c *= s;
    return y;
}

inline DgaElement plus(const DgaElement& x, const DgaElement& y) {
    ensure(x.degree == y.degree, ErrorCode::ShapeMismatch, "adding forms of different degrees");
    DgaElement z = x;
    for (std::size_t i = 0; i < z.coords.size(); ++i) z.coords[i] += y.coords[i];
    return z;
}

/// (-1)^{|a12|} a12∧a24 + (-1)^{|a13|} a13∧a34
inline DgaElement massey_representative(const DgaCohomology& h, const DgaElement& a12, const DgaElement& a13,
                                       const DgaElement& a24, const DgaElement& a34) {
    const Dga& a = h.algebra();
    return plus(scaled(a.wedge(a12, a24), parity_sign(a12.degree)), scaled(a.wedge(a13, a34), parity_sign(a13.degree)));
}

/// β with dβ = (-1)^{|x|} x∧y, the RREF particular solution; nullopt when the
/// product is not exact.
inline std::optional<DgaElement> defining_form(const DgaCohomology& h, const DgaElement& x, const DgaElement& y) {
    const Dga& a = h.algebra();
    const int k = x.degree + y.degree;
    if (k > a.top_degree()) return DgaElement{k - 1, Vector(a.dim(k - 1))};
    DgaElement target = scaled(a.wedge(x, y), parity_sign(x.degree));
    auto sol = h.at(k).primitive(target.coords);
    if (!sol) return std::nullopt;
    return DgaElement{k - 1, *sol};
}

} // namespace detail

/// a12·H^{|a23|+|a34|-1} + H^{|a12|+|a23|-1}·a34 inside H^n, in class coordinates.
inline Subspace massey_indeterminacy(const DgaCohomology& h, const DgaElement& a12, int d23, const DgaElement& a34) {
    const int n = a12.degree + d23 + a34.degree - 1;
    const std::size_t hn = h.at(n).dim();
    std::vector<Vector> gens;
    const int left = d23 + a34.degree - 1, right = a12.degree + d23 - 1;
    for (std::size_t i = 0; i < h.at(left).dim(); ++i)
        gens.push_back(h.cup_forms(a12, h.representative(h.at(left).basis_class(i))).coords);
    for (std::size_t i = 0; i < h.at(right).dim(); ++i)
        gens.push_back(h.cup_forms(h.representative(h.at(right).basis_class(i)), a34).coords);
    return gens.empty() ? Subspace::zero(hn) : Subspace::span(QMatrix::from_columns(hn, gens));
}

/// Massey product from explicit closed forms and explicit defining forms α13, α24.
/// A precomputed indeterminacy may be supplied.
inline MasseyResult massey_from_forms(const DgaCohomology& h, const DgaElement& a12, const DgaElement& a23,
                                      const DgaElement& a34, const DgaElement& a13, const DgaElement& a24,
                                      const Subspace* indeterminacy = nullptr) {
    const Dga& a = h.algebra();
    for (const DgaElement* x : {&a12, &a23, &a34})
        ensure(h.at(x->degree).is_closed(x->coords), ErrorCode::NotClosed, "Massey product needs closed representatives");
    ensure(a12.degree >= 1 && a23.degree >= 1 && a34.degree >= 1, ErrorCode::ShapeMismatch,
           "Massey products are taken of classes of positive degree");
    const int n = a12.degree + a23.degree + a34.degree - 1;
    MasseyResult res;
    res.defined = true;
    if (n > a.top_degree()) {
        res.representative = {n, {}};
        res.indeterminacy = Subspace::zero(0);
        res.vanishes = true;
        return res;
    }
    auto check_defining = [&](const DgaElement& x, const DgaElement& y, const DgaElement& z) {
        DgaElement target = detail::scaled(a.wedge(x, y), detail::parity_sign(x.degree));
        ensure(z.degree == x.degree + y.degree - 1 && a.d(z).coords == target.coords, ErrorCode::NotClosed,
               "defining form does not bound the product");
    };
    check_defining(a12, a23, a13);
    check_defining(a23, a34, a24);
    res.representative = detail::massey_representative(h, a12, a13, a24, a34);
    ensure(h.at(n).is_closed(res.representative.coords), ErrorCode::InternalInconsistency,
           "Massey representative is not closed");
    res.class_coords = h.at(n).class_of(res.representative.coords);
    res.indeterminacy = indeterminacy ? *indeterminacy : massey_indeterminacy(h, a12, a23.degree, a34);
    res.vanishes = res.indeterminacy.contains(res.class_coords);
    return res;
}

/// ⟨a12, a23, a34⟩; defined = false when a12·a23 or a23·a34 is nonzero.
inline MasseyResult triple_massey(const DgaCohomology& h, const CohomologyClass& a12, const CohomologyClass& a23,
                                  const CohomologyClass& a34) {
    DgaElement x = h.representative(a12), y = h.representative(a23), z = h.representative(a34);
    auto a13 = detail::defining_form(h, x, y);
    auto a24 = detail::defining_form(h, y, z);
    if (!a13 || !a24) return {};
    return massey_from_forms(h, x, y, z, *a13, *a24);
}

/// Massey products of order > 3 are reserved.
inline MasseyResult massey_product(const DgaCohomology& h, const std::vector<CohomologyClass>& classes) {
    ensure(classes.size() >= 3, ErrorCode::ShapeMismatch, "a Massey product needs at least three classes");
    if (classes.size() > 3) fail(ErrorCode::Unsupported, "Massey products of order " + std::to_string(classes.size()) + " are not implemented");
    return triple_massey(h, classes[0], classes[1], classes[2]);
}

struct MasseyWitness {
    int d1 = 0, d2 = 0, d3 = 0;         // degrees
    std::size_t i1 = 0, i2 = 0, i3 = 0; // basis-class indices
    MasseyResult result;
};

/// Non-vanishing ⟨[x],[y],[z]⟩ over basis classes of positive degree with
/// |x|+|y|+|z|-1 <= max_degree, ordered by degrees and then indices.
inline std::vector<MasseyWitness> massey_scan(const DgaCohomology& h, int max_degree) {
    std::vector<MasseyWitness> found;
    const int top = h.algebra().top_degree();
    std::map<std::tuple<int, std::size_t, int, std::size_t>, std::optional<DgaElement>> defining;
    auto bound = [&](int d1, std::size_t i1, int d2, std::size_t i2) -> const std::optional<DgaElement>& {
        auto key = std::tuple{d1, i1, d2, i2};
        auto it = defining.find(key);
        if (it == defining.end())
            it = defining
                     .emplace(key, detail::defining_form(h, h.representative(h.at(d1).basis_class(i1)),
                                                         h.representative(h.at(d2).basis_class(i2))))
                     .first;
        return it->second;
    };
    std::map<std::tuple<int, std::size_t, int, int, std::size_t>, Subspace> indet;
    // same subspace as massey_indeterminacy, assembled from memoized basis cups
    auto indeterminacy = [&](int d1, std::size_t i1, int d2, int d3, std::size_t i3) -> const Subspace& {
        auto key = std::tuple{d1, i1, d2, d3, i3};
        auto it = indet.find(key);
        if (it != indet.end()) return it->second;
        const std::size_t hn = h.at(d1 + d2 + d3 - 1).dim();
        std::vector<Vector> gens;
        const int left = d2 + d3 - 1, right = d1 + d2 - 1;
        for (std::size_t j = 0; j < h.at(left).dim(); ++j) gens.push_back(h.basis_cup(d1, i1, left, j));
        for (std::size_t j = 0; j < h.at(right).dim(); ++j) gens.push_back(h.basis_cup(right, j, d3, i3));
        Subspace s = gens.empty() ? Subspace::zero(hn) : Subspace::span(QMatrix::from_columns(hn, gens));
        return indet.emplace(key, std::move(s)).first->second;
    };
    for (int total = 3; total <= std::min(max_degree + 1, top + 1); ++total)
        for (int d1 = 1; d1 <= total - 2; ++d1)
            for (int d2 = 1; d1 + d2 <= total - 1; ++d2) {
                const int d3 = total - d1 - d2;
                for (std::size_t i1 = 0; i1 < h.at(d1).dim(); ++i1)
                    for (std::size_t i2 = 0; i2 < h.at(d2).dim(); ++i2) {
                        const auto& a13 = bound(d1, i1, d2, i2);
                        if (!a13) continue;
                        for (std::size_t i3 = 0; i3 < h.at(d3).dim(); ++i3) {
                            const auto& a24 = bound(d2, i2, d3, i3);
                            if (!a24) continue;
                            const DgaElement x = h.representative(h.at(d1).basis_class(i1));
                            const DgaElement z = h.representative(h.at(d3).basis_class(i3));
                            // a zero class vanishes whatever the indeterminacy is
                            const Vector cls = h.class_of(detail::massey_representative(h, x, *a13, *a24, z)).coords;
                            if (std::all_of(cls.begin(), cls.end(), [](const Scalar& c) { return c.is_zero(); })) continue;
                            MasseyResult r = massey_from_forms(h, x, h.representative(h.at(d2).basis_class(i2)), z,
                                                               *a13, *a24, &indeterminacy(d1, i1, d2, d3, i3));
                            if (!r.vanishes) found.push_back({d1, d2, d3, i1, i2, i3, std::move(r)});
                        }
                    }
            }
    return found;
}

} // namespace bicohom
