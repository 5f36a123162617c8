#include <gtest/gtest.h>

#include <functional>

#include "bicohom/linalg.hpp"
#include "support.hpp"

using namespace bicohom;
using testsupport::random_int_matrix;

namespace {

QMatrix heisenberg_d1() {
    // columns e1, e2, e3; rows e1^e2, e1^e3, e2^e3; d e3 = -e1^e2
    return QMatrix{{0, 0, -1}, {0, 0, 0}, {0, 0, 0}};
}

Vector unit(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
}

template <class F>
void expect_code(ErrorCode code, F&& f) {
    try {
        f();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

Rational det(const QMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    Rational total;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
        QMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        Rational term = m(0, j).re() * det(minor);
        total += (j % 2 == 0) ? term : -term;
    }
    return total;
}

} // namespace

TEST(Rref, Identity) {
    RrefResult r = rref(QMatrix::identity(2));
    EXPECT_EQ(r.reduced, QMatrix::identity(2));
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(r.rank, 2u);
}

TEST(Rref, ProportionalRows) {
    RrefResult r = rref(QMatrix{{1, 2}, {2, 4}});
    EXPECT_EQ(r.reduced, (QMatrix{{1, 2}, {0, 0}}));
    EXPECT_EQ(r.rank, 1u);
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, EmptyMatrices) {
    EXPECT_EQ(rref(QMatrix(0, 4)).rank, 0u);
    EXPECT_EQ(rref(QMatrix(3, 0)).rank, 0u);
    EXPECT_EQ(kernel_basis(QMatrix(0, 4)).dim(), 4u);
    EXPECT_EQ(kernel_basis(QMatrix(3, 0)).dim(), 0u);
    EXPECT_EQ(image_basis(QMatrix(3, 0)).dim(), 0u);
    EXPECT_EQ(image_basis(QMatrix(3, 0)).ambient_dim(), 3u);
}

TEST(Rref, GaussianEntries) {
    Scalar i = Scalar::i();
    QMatrix m{{1, i}, {i, -1}};
    EXPECT_EQ(rank(m), 1u);
    QMatrix n{{1, i}, {i, 1}};
    EXPECT_EQ(rank(n), 2u);
    EXPECT_EQ(rref(n).reduced, QMatrix::identity(2));
}

TEST(Rref, Fractions) {
    RrefResult r = rref(QMatrix{{2, 3, 5}, {4, 1, 1}});
    EXPECT_EQ(r.reduced(0, 2), Scalar(Rational(mpz_class(-1), mpz_class(5))));
    EXPECT_EQ(r.reduced(1, 2), Scalar(Rational(mpz_class(9), mpz_class(5))));
}

TEST(Kernel, ZeroMapAndIdentity) {
    EXPECT_EQ(kernel_basis(QMatrix(3, 3)).dim(), 3u);
    EXPECT_EQ(kernel_basis(QMatrix::identity(3)).dim(), 0u);
    EXPECT_EQ(image_basis(QMatrix(3, 3)).dim(), 0u);
    EXPECT_EQ(image_basis(QMatrix::identity(3)).dim(), 3u);
}

TEST(Kernel, HeisenbergDegreeOne) {
    Subspace k = kernel_basis(heisenberg_d1());
    EXPECT_EQ(k.dim(), 2u);
    EXPECT_TRUE(k.contains(unit(3, 0)));
    EXPECT_TRUE(k.contains(unit(3, 1)));
    EXPECT_FALSE(k.contains(unit(3, 2)));
    Subspace im = image_basis(heisenberg_d1());
    EXPECT_EQ(im.dim(), 1u);
    EXPECT_TRUE(im.contains(unit(3, 0)));
}

TEST(Subspaces, SumIntersect) {
    Subspace u = Subspace::span(QMatrix{{1, 0}, {0, 1}, {0, 0}, {0, 0}});
    Subspace v = Subspace::span(QMatrix{{0, 0}, {0, 0}, {1, 0}, {0, 1}});
    EXPECT_EQ(sum(u, v).dim(), 4u);
    EXPECT_EQ(intersect(u, v).dim(), 0u);
    EXPECT_EQ(sum(u, u), u);
    EXPECT_EQ(intersect(u, u), u);
}

TEST(Subspaces, CanonicalBasisMakesEqualityBasisFree) {
    Subspace a = Subspace::span(QMatrix{{1, 1}, {2, 0}, {3, -1}});
    Subspace b = Subspace::span(QMatrix{{2, 0}, {2, 2}, {2, 4}});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.basis(), b.basis());
}

TEST(Subspaces, AmbientMismatch) {
    expect_code(ErrorCode::AmbientMismatch, [] { sum(Subspace::full(2), Subspace::full(3)); });
    expect_code(ErrorCode::AmbientMismatch, [] { intersect(Subspace::full(2), Subspace::zero(3)); });
    expect_code(ErrorCode::AmbientMismatch, [] { preimage(QMatrix(2, 2), Subspace::full(3)); });
}

TEST(Subspaces, QuotientDim) {
    Subspace v = Subspace::full(3);
    EXPECT_EQ(quotient_dim(v, Subspace::zero(3)), 3u);
    EXPECT_EQ(quotient_dim(v, v), 0u);
    Subspace line = Subspace::span(QMatrix{{1}, {0}, {0}});
    Subspace other = Subspace::span(QMatrix{{0}, {1}, {0}});
    expect_code(ErrorCode::NotASubspace, [&] { quotient_dim(line, other); });
}

TEST(Preimage, Extremes) {
    QMatrix m = heisenberg_d1();
    EXPECT_EQ(preimage(m, Subspace::full(3)).dim(), 3u);
    EXPECT_EQ(preimage(m, Subspace::zero(3)), kernel_basis(m));
}

TEST(Solve, ParticularSolution) {
    QMatrix m{{1, 1}, {0, 0}};
    auto x = solve(m, Vector{Scalar(3), Scalar(0)});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m * *x, (Vector{Scalar(3), Scalar(0)}));
    EXPECT_EQ((*x)[1], Scalar(0));
    EXPECT_FALSE(solve(m, Vector{Scalar(0), Scalar(1)}).has_value());
}

TEST(Solve, FactoredSolverAgreesWithSolve) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        QMatrix m = testsupport::random_low_rank(rng, r, c, rng() % (std::min(r, c) + 1));
        LinearSolver solver(m);
        for (int k = 0; k < 3; ++k) {
            // alternate reachable and arbitrary right-hand sides
            Vector b = k % 2 == 0 ? m * testsupport::random_gauss_matrix(rng, c, 1, 3).column(0)
                                  : testsupport::random_gauss_matrix(rng, r, 1, 3).column(0);
            EXPECT_EQ(solver.solve(b), solve(m, b));
        }
    }
}

TEST(Inverse, RoundTrip) {
    QMatrix m{{2, 1}, {1, 1}};
    EXPECT_EQ(inverse(m) * m, QMatrix::identity(2));
    expect_code(ErrorCode::ShapeMismatch, [] { inverse(QMatrix{{1, 2}, {2, 4}}); });
}

TEST(QuotientMapTest, KillsSubspaceAndSplits) {
    Subspace w = Subspace::span(QMatrix{{1}, {1}, {0}});
    QuotientMap q(w);
    EXPECT_EQ(q.quotient_dim(), 2u);
    EXPECT_TRUE((q.project() * w.basis()).is_zero());
    EXPECT_EQ(q.project() * q.lift(), QMatrix::identity(2));
}

// ---- properties ----

TEST(LinalgProperty, RankNullity) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = rng() % 6, c = rng() % 6;
        QMatrix m = random_int_matrix(rng, r, c, 2, true);
        EXPECT_EQ(rank(m) + kernel_basis(m).dim(), c);
        EXPECT_EQ(image_basis(m).dim(), rank(m));
        EXPECT_TRUE((m * kernel_basis(m).basis()).is_zero());
    }
}

TEST(LinalgProperty, GaussianRankNullity) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        std::size_t r = rng() % 5, c = rng() % 5;
        QMatrix m = testsupport::random_low_rank(rng, r, c, rng() % 4) +
                    Scalar::i() * testsupport::random_low_rank(rng, r, c, 1);
        EXPECT_EQ(rank(m) + kernel_basis(m).dim(), c);
        EXPECT_TRUE((m * kernel_basis(m).basis()).is_zero());
        EXPECT_EQ(rank(m), rank(m.transpose()));
    }
}

TEST(LinalgProperty, Grassmann) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 1 + rng() % 6;
        Subspace u = testsupport::random_subspace(rng, n, n);
        Subspace v = testsupport::random_subspace(rng, n, n);
        Subspace s = sum(u, v), i = intersect(u, v);
        EXPECT_EQ(u.dim() + v.dim(), s.dim() + i.dim());
        EXPECT_TRUE(s.contains(u) && s.contains(v));
        EXPECT_TRUE(u.contains(i) && v.contains(i));
    }
}

TEST(LinalgProperty, RrefIdempotent) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        QMatrix m = random_int_matrix(rng, rng() % 6, rng() % 6, 3, true);
        QMatrix r = rref(m).reduced;
        EXPECT_EQ(rref(r).reduced, r);
        EXPECT_EQ(Subspace::span(m.transpose()), Subspace::span(r.transpose()));
    }
}

TEST(LinalgProperty, PreimageMembership) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        QMatrix m = random_int_matrix(rng, r, c, 2, true);
        Subspace w = testsupport::random_subspace(rng, r, r);
        Subspace pre = preimage(m, w);
        for (std::size_t j = 0; j < pre.dim(); ++j) EXPECT_TRUE(w.contains(m * pre.basis().column(j)));
        EXPECT_TRUE(pre.contains(kernel_basis(m)));
        EXPECT_EQ(image(m, pre), intersect(image_basis(m), w));
    }
}

TEST(LinalgProperty, RrefDenominatorsDivideAMinor) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 300; ++t) {
        const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        QMatrix m = random_int_matrix(rng, r, c, 4);
        RrefResult rr = rref(m);
        if (rr.rank == 0) continue;
        // find rows S with det M[S, pivots] != 0; the nonzero rows of R are M[S,piv]^{-1} M[S,:]
        std::vector<std::size_t> chosen;
        std::optional<Rational> found;
        std::function<void(std::size_t)> pick = [&](std::size_t start) {
            if (found) return;
            if (chosen.size() == rr.rank) {
                QMatrix sub(rr.rank, rr.rank);
                for (std::size_t a = 0; a < rr.rank; ++a)
                    for (std::size_t b = 0; b < rr.rank; ++b) sub(a, b) = m(chosen[a], rr.pivots[b]);
                Rational d = det(sub);
                if (!d.is_zero()) found = d;
                return;
            }
            for (std::size_t i = start; i < r; ++i) {
                chosen.push_back(i);
                pick(i + 1);
                chosen.pop_back();
            }
        };
        pick(0);
        ASSERT_TRUE(found.has_value());
        mpz_class d = found->numerator();
        for (std::size_t i = 0; i < rr.rank; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                EXPECT_TRUE(rr.reduced(i, j).is_real());
                mpz_class den = rr.reduced(i, j).re().denominator();
                EXPECT_TRUE(mpz_divisible_p(d.get_mpz_t(), den.get_mpz_t()))
                    << "denominator " << den << " does not divide " << d;
            }
    }
}
