#pragma once

// Indecomposable double complexes: dots, squares and zigzags, in a canonical
// naming so that multisets of shapes compare by equality.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "bicomplex.hpp"

namespace bicohom {

enum class ShapeKind { Dot, Square, Zigzag };
enum class Step { Horizontal, Vertical };

/// Dot(p,q); Square(p,q) with (p,q) its bottom-left corner; Zigzag with anchor
/// the lexicographically least dot (always on the lower antidiagonal k = p+q).
/// first_step = Vertical means (p,q+1) belongs to the zigzag, otherwise the
/// path starts at the anchor and goes right.
struct ZigzagShape {
    ShapeKind kind = ShapeKind::Dot;
    Bidegree anchor;
    Step first_step = Step::Horizontal;
    int length = 1;

    static ZigzagShape dot(int p, int q) { return {ShapeKind::Dot, {p, q}, Step::Horizontal, 1}; }
    static ZigzagShape square(int p, int q) { return {ShapeKind::Square, {p, q}, Step::Horizontal, 4}; }
    static ZigzagShape zigzag(int p, int q, Step first, int length) {
        ensure(length >= 1, ErrorCode::ShapeMismatch, "zigzag length must be positive");
        if (length == 1) return dot(p, q);
        return {ShapeKind::Zigzag, {p, q}, first, length};
    }

    friend auto operator<=>(const ZigzagShape&, const ZigzagShape&) = default;
};

struct ShapeDot {
    Bidegree at;
    bool upper = false; // on the antidiagonal of the anchor + 1
    friend auto operator<=>(const ShapeDot&, const ShapeDot&) = default;
};

/// Dots in path order (for squares: bottom-left, bottom-right, top-left, top-right).
inline std::vector<ShapeDot> dots_of(const ZigzagShape& s) {
    const int p = s.anchor.p, q = s.anchor.q;
    switch (s.kind) {
    case ShapeKind::Dot:
        return {{{p, q}, false}};
    case ShapeKind::Square:
        return {{{p, q}, false}, {{p + 1, q}, true}, {{p, q + 1}, true}, {{p + 1, q + 1}, false}};
    case ShapeKind::Zigzag:
        break;
    }
    // U_j = (p+j, q+1-j), L_j = (p+j, q-j)
    std::vector<ShapeDot> out;
    int j = 0;
    bool next_upper = s.first_step == Step::Vertical;
    while (static_cast<int>(out.size()) < s.length) {
        if (next_upper) {
            out.push_back({{p + j, q + 1 - j}, true});
        } else {
            out.push_back({{p + j, q - j}, false});
            ++j;
        }
        next_upper = !next_upper;
    }
    return out;
}

inline int total_degree(const ZigzagShape& s) { return s.anchor.p + s.anchor.q; }

inline bool fits(const ZigzagShape& s, int P, int Q) {
    for (const ShapeDot& d : dots_of(s))
        if (d.at.p < 0 || d.at.q < 0 || d.at.p > P || d.at.q > Q) return false;
    return true;
}

/// Names a connected set of dots spanning the antidiagonals k and k+1.
inline ZigzagShape shape_from_dots(std::vector<ShapeDot> dots) {
    ensure(!dots.empty(), ErrorCode::ShapeMismatch, "empty dot set");
    if (dots.size() == 1) return ZigzagShape::dot(dots[0].at.p, dots[0].at.q);
    std::sort(dots.begin(), dots.end(), [](const ShapeDot& a, const ShapeDot& b) { return a.at < b.at; });
    const ShapeDot& least = dots.front();
    ensure(!least.upper, ErrorCode::ShapeMismatch, "lexicographically least dot of a zigzag must be lower");
    bool has_up = std::any_of(dots.begin(), dots.end(), [&](const ShapeDot& d) {
        return d.upper && d.at.p == least.at.p && d.at.q == least.at.q + 1;
    });
    ZigzagShape s = ZigzagShape::zigzag(least.at.p, least.at.q, has_up ? Step::Vertical : Step::Horizontal,
                                        static_cast<int>(dots.size()));
    std::vector<ShapeDot> expect = dots_of(s);
    std::sort(expect.begin(), expect.end(), [](const ShapeDot& a, const ShapeDot& b) { return a.at < b.at; });
    ensure(expect == dots, ErrorCode::ShapeMismatch, "dot set is not a zigzag");
    return s;
}

/// The shape of the conjugate complex: (p,q) -> (q,p).
inline ZigzagShape reflect(const ZigzagShape& s) {
    if (s.kind == ShapeKind::Dot) return ZigzagShape::dot(s.anchor.q, s.anchor.p);
    if (s.kind == ShapeKind::Square) return ZigzagShape::square(s.anchor.q, s.anchor.p);
    std::vector<ShapeDot> dots = dots_of(s);
    for (ShapeDot& d : dots) d.at = {d.at.q, d.at.p};
    return shape_from_dots(std::move(dots));
}

inline std::string to_string(Step s) { return s == Step::Vertical ? "vertical" : "horizontal"; }

inline std::string to_string(const ZigzagShape& s) {
    const std::string at = std::to_string(s.anchor.p) + "," + std::to_string(s.anchor.q);
    switch (s.kind) {
    case ShapeKind::Dot: return "dot(" + at + ")";
    case ShapeKind::Square: return "square(" + at + ")";
    case ShapeKind::Zigzag: break;
    }
    return "zigzag(" + at + "," + (s.first_step == Step::Vertical ? "v" : "h") + "," + std::to_string(s.length) + ")";
}

using ShapeMultiset = std::map<ZigzagShape, std::size_t>;

struct ZigzagDecomposition {
    int P = 0;
    int Q = 0;
    ShapeMultiset multiplicities;

    std::size_t count(const ZigzagShape& s) const {
        auto it = multiplicities.find(s);
        return it == multiplicities.end() ? 0 : it->second;
    }
    void add(const ZigzagShape& s, std::size_t m = 1) {
        if (m > 0) multiplicities[s] += m;
    }
    bool only_dots_and_squares() const {
        return std::all_of(multiplicities.begin(), multiplicities.end(),
                           [](const auto& e) { return e.first.kind != ShapeKind::Zigzag; });
    }
    /// Σ multiplicity over shapes having a dot at (p,q).
    std::size_t dim(int p, int q) const {
        std::size_t n = 0;
        for (const auto& [shape, m] : multiplicities)
            for (const ShapeDot& d : dots_of(shape))
                if (d.at.p == p && d.at.q == q) n += m;
        return n;
    }
    friend bool operator==(const ZigzagDecomposition&, const ZigzagDecomposition&) = default;
};

inline ZigzagDecomposition reflect(const ZigzagDecomposition& d) {
    ZigzagDecomposition r{d.Q, d.P, {}};
    for (const auto& [shape, m] : d.multiplicities) r.add(reflect(shape), m);
    return r;
}

inline ZigzagDecomposition merge(const ZigzagDecomposition& a, const ZigzagDecomposition& b) {
    ZigzagDecomposition r{std::max(a.P, b.P), std::max(a.Q, b.Q), a.multiplicities};
    for (const auto& [shape, m] : b.multiplicities) r.add(shape, m);
    return r;
}

/// Every shape that fits in the box [0,P]x[0,Q].
inline std::vector<ZigzagShape> shapes_in_box(int P, int Q) {
    std::vector<ZigzagShape> out;
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            out.push_back(ZigzagShape::dot(p, q));
            if (p < P && q < Q) out.push_back(ZigzagShape::square(p, q));
            for (Step step : {Step::Horizontal, Step::Vertical})
                for (int len = 2;; ++len) {
                    ZigzagShape s = ZigzagShape::zigzag(p, q, step, len);
                    if (!fits(s, P, Q)) break;
                    out.push_back(s);
                }
        }
    return out;
}

/// Direct sum of the shapes with the given multiplicities, in the standard
/// basis (all maps identities, squares with the sign -1 on ∂̄ at the bottom right).
inline Bicomplex realize(const ZigzagDecomposition& d) {
    std::vector<std::size_t> dims(static_cast<std::size_t>((d.P + 1) * (d.Q + 1)));
    auto idx = [&](Bidegree b) { return static_cast<std::size_t>(b.p * (d.Q + 1) + b.q); };
    for (const auto& [shape, m] : d.multiplicities) {
        ensure(fits(shape, d.P, d.Q), ErrorCode::ShapeMismatch, to_string(shape) + " does not fit the box");
        for (const ShapeDot& dot : dots_of(shape)) dims[idx(dot.at)] += m;
    }
    std::vector<QMatrix> del(dims.size()), delbar(dims.size());
    Bicomplex b(d.P, d.Q, dims);
    for (int p = 0; p <= d.P; ++p)
        for (int q = 0; q <= d.Q; ++q) {
            del[idx({p, q})] = b.del(p, q);
            delbar[idx({p, q})] = b.delbar(p, q);
        }
    std::vector<std::size_t> used(dims.size(), 0);
    for (const auto& [shape, m] : d.multiplicities)
        for (std::size_t copy = 0; copy < m; ++copy) {
            std::vector<ShapeDot> dots = dots_of(shape);
            std::map<Bidegree, std::size_t> at;
            for (const ShapeDot& dot : dots) at[dot.at] = used[idx(dot.at)]++;
            auto link = [&](Bidegree from, Bidegree to, const Scalar& c) {
                if (!at.count(from) || !at.count(to)) return;
                if (to.p == from.p + 1) del[idx(from)](at[to], at[from]) = c;
                else delbar[idx(from)](at[to], at[from]) = c;
            };
            if (shape.kind == ShapeKind::Square) {
                const int p = shape.anchor.p, q = shape.anchor.q;
                link({p, q}, {p + 1, q}, 1);
                link({p, q}, {p, q + 1}, 1);
                link({p, q + 1}, {p + 1, q + 1}, 1);
                link({p + 1, q}, {p + 1, q + 1}, -1);
                continue;
            }
            for (const ShapeDot& dot : dots) {
                if (dot.upper) continue;
                link(dot.at, {dot.at.p + 1, dot.at.q}, 1);
                link(dot.at, {dot.at.p, dot.at.q + 1}, 1);
            }
        }
    for (int p = 0; p <= d.P; ++p)
        for (int q = 0; q <= d.Q; ++q) {
            b.set_del(p, q, del[idx({p, q})]);
            b.set_delbar(p, q, delbar[idx({p, q})]);
        }
    return b;
}

inline Bicomplex realize(const ZigzagShape& s, int P, int Q) {
    ZigzagDecomposition d{P, Q, {}};
    d.add(s);
    return realize(d);
}

} // namespace bicohom
