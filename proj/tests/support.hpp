#pragma once

// Seeded generators shared by the property tests.

#include <cstdint>
#include <random>

#include "bicohom/linalg.hpp"

namespace testsupport {

using bicohom::QMatrix;
using bicohom::Rational;
using bicohom::Scalar;

inline long small_int(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Entries in [-range, range]; about half zeros when sparse is set.
inline QMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long range, bool sparse = false) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            if (sparse && rng() % 2 == 0) continue;
            m(i, j) = Scalar(small_int(rng, -range, range));
        }
    return m;
}

inline QMatrix random_gauss_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long range) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = Scalar(Rational(small_int(rng, -range, range)), Rational(small_int(rng, -range, range)));
    return m;
}

/// A matrix of prescribed maximal rank: product of random r x k and k x c factors.
inline QMatrix random_low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t k) {
    return random_int_matrix(rng, r, k, 2) * random_int_matrix(rng, k, c, 2);
}

inline bicohom::Subspace random_subspace(std::mt19937_64& rng, std::size_t n, std::size_t max_gens) {
    std::size_t g = static_cast<std::size_t>(rng() % (max_gens + 1));
    return bicohom::Subspace::span(random_low_rank(rng, n, g, std::max<std::size_t>(1, g)));
}

} // namespace testsupport

#include <string>

#include "bicohom/bicomplex.hpp"

namespace testsupport {

inline bicohom::Bicomplex square_at(int p, int q, int P, int Q, bool with_sign = true) {
    std::vector<std::size_t> dims(static_cast<std::size_t>((P + 1) * (Q + 1)), 0);
    auto at = [&](int a, int b) -> std::size_t& { return dims[static_cast<std::size_t>(a * (Q + 1) + b)]; };
    at(p, q) = at(p + 1, q) = at(p, q + 1) = at(p + 1, q + 1) = 1;
    bicohom::Bicomplex b(P, Q, dims);
    b.set_del(p, q, QMatrix{{1}});
    b.set_delbar(p, q, QMatrix{{1}});
    b.set_del(p, q + 1, QMatrix{{1}});
    b.set_delbar(p + 1, q, QMatrix{{with_sign ? -1 : 1}});
    return b;
}

inline bicohom::Bicomplex dot_at(int p, int q, int P, int Q) {
    std::vector<std::size_t> dims(static_cast<std::size_t>((P + 1) * (Q + 1)), 0);
    dims[static_cast<std::size_t>(p * (Q + 1) + q)] = 1;
    return bicohom::Bicomplex(P, Q, dims);
}

/// FNV-1a over the textual form of every entry, stable across platforms.
inline std::uint64_t fingerprint(const bicohom::Bicomplex& b) {
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    };
    for (auto d : b.dims()) feed(std::to_string(d));
    for (int p = 0; p <= b.P(); ++p)
        for (int q = 0; q <= b.Q(); ++q)
            for (const QMatrix* m : {&b.del(p, q), &b.delbar(p, q)})
                for (std::size_t i = 0; i < m->rows(); ++i)
                    for (std::size_t j = 0; j < m->cols(); ++j) feed((*m)(i, j).str());
    return h;
}

} // namespace testsupport
