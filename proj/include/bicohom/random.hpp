#pragma once

// Seeded random bicomplexes: a random direct sum of shapes, disguised by a
// random invertible change of basis in every bidegree. The shape multiset is
// returned alongside as ground truth.

#include <cstdint>
#include <random>

#include "shapes.hpp"

namespace bicohom {

struct RandomOptions {
    bool only_dots_and_squares = false;
    bool change_basis = true;
    bool gaussian_entries = true;
};

struct GeneratedBicomplex {
    Bicomplex complex;
    ZigzagDecomposition hidden;
};

namespace detail {

// rng() % n keeps the stream identical across standard libraries.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

inline Scalar small_scalar(std::mt19937_64& rng, bool gaussian) {
    const long re = static_cast<long>(draw(rng, 5)) - 2;
    long im = 0;
    if (gaussian && draw(rng, 4) == 0) im = static_cast<long>(draw(rng, 3)) - 1;
    return Scalar(Rational(re), Rational(im));
}

/// Unit lower times unit upper triangular: invertible with small entries.
inline QMatrix random_invertible(std::mt19937_64& rng, std::size_t n, bool gaussian) {
    QMatrix lower = QMatrix::identity(n), upper = QMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            lower(i, j) = small_scalar(rng, gaussian);
            upper(j, i) = small_scalar(rng, gaussian);
        }
    return lower * upper;
}

} // namespace detail

inline GeneratedBicomplex random_bicomplex_with_shapes(std::uint64_t seed, int P, int Q, std::size_t max_dim,
                                                       const RandomOptions& options = {}) {
    std::mt19937_64 rng(seed);
    std::vector<ZigzagShape> pool;
    for (const ZigzagShape& s : shapes_in_box(P, Q))
        if (!options.only_dots_and_squares || s.kind != ShapeKind::Zigzag) pool.push_back(s);

    ZigzagDecomposition hidden{P, Q, {}};
    std::vector<std::size_t> fill(static_cast<std::size_t>((P + 1) * (Q + 1)), 0);
    auto idx = [&](Bidegree b) { return static_cast<std::size_t>(b.p * (Q + 1) + b.q); };
    const std::uint64_t attempts = detail::draw(rng, 2 * fill.size() * max_dim + 1);
    for (std::uint64_t a = 0; a < attempts; ++a) {
        const ZigzagShape& s = pool[detail::draw(rng, pool.size())];
        std::vector<ShapeDot> dots = dots_of(s);
        bool room = std::all_of(dots.begin(), dots.end(), [&](const ShapeDot& d) { return fill[idx(d.at)] < max_dim; });
        if (!room) continue;
        for (const ShapeDot& d : dots) ++fill[idx(d.at)];
        hidden.add(s);
    }

    Bicomplex b = realize(hidden);
    if (options.change_basis) {
        std::vector<QMatrix> g(b.cell_count()), ginv(b.cell_count());
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q) {
                g[b.index(p, q)] = detail::random_invertible(rng, b.dim(p, q), options.gaussian_entries);
                ginv[b.index(p, q)] = inverse(g[b.index(p, q)]);
            }
        Bicomplex c = b;
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q) {
                if (p < P) c.set_del(p, q, g[b.index(p + 1, q)] * b.del(p, q) * ginv[b.index(p, q)]);
                if (q < Q) c.set_delbar(p, q, g[b.index(p, q + 1)] * b.delbar(p, q) * ginv[b.index(p, q)]);
            }
        b = std::move(c);
    }
    return {std::move(b), std::move(hidden)};
}

inline Bicomplex random_bicomplex(std::uint64_t seed, int P, int Q, std::size_t max_dim) {
    return random_bicomplex_with_shapes(seed, P, Q, max_dim).complex;
}

} // namespace bicohom
