#include <gtest/gtest.h>

#include "bicohom/cohomology.hpp"
#include "bicohom/random.hpp"
#include "support.hpp"

using namespace bicohom;
using testsupport::dot_at;
using testsupport::square_at;

TEST(Validate, ZeroDifferentials) {
    Bicomplex b(2, 1, {1, 2, 0, 3, 1, 1});
    EXPECT_TRUE(validate(b).ok());
}

TEST(Validate, SquareWithSign) { EXPECT_TRUE(validate(square_at(0, 0, 1, 1)).ok()); }

TEST(Validate, SquareWithoutSignReportsCorner) {
    ValidationReport r = validate(square_at(0, 0, 1, 1, false));
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0].axiom, "del delbar + delbar del = 0");
    EXPECT_EQ(r.violations[0].at, (Bidegree{0, 0}));
}

TEST(Validate, ReportsEveryViolation) {
    Bicomplex b = direct_sum(square_at(0, 0, 2, 2, false), square_at(1, 1, 2, 2, false));
    EXPECT_EQ(validate(b).violations.size(), 2u);
    Bicomplex c(0, 2, {1, 1, 1});
    c.set_delbar(0, 0, QMatrix{{1}});
    c.set_delbar(0, 1, QMatrix{{1}});
    ValidationReport r = validate(c);
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0].axiom, "delbar^2 = 0");
}

TEST(Validate, ShapeMismatchIsAnError) {
    Bicomplex b(1, 1, {1, 1, 1, 1});
    try {
        b.set_del(0, 0, QMatrix(2, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
    }
    EXPECT_THROW(Bicomplex(1, 1, {1, 1, 1}), Error);
}

TEST(Validate, InvalidComplexRejectedDownstream) {
    try {
        total(square_at(0, 0, 1, 1, false));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidBicomplex);
    }
}

TEST(Total, SquareIsExact) {
    TotalComplex t = total(square_at(0, 0, 1, 1));
    EXPECT_EQ(t.dims(), (std::vector<std::size_t>{1, 2, 1}));
    EXPECT_EQ(de_rham(square_at(0, 0, 1, 1)).entries, (std::vector<std::size_t>{0, 0, 0}));
    // blocks ordered by increasing p: degree 1 is (0,1) then (1,0)
    EXPECT_EQ(t.d(0), (QMatrix{{1}, {1}}));
}

TEST(Total, Dot) {
    Bicomplex b = dot_at(1, 2, 2, 2);
    EXPECT_EQ(total(b).dim(3), 1u);
    EXPECT_EQ(de_rham(b).degree(3), 1u);
    EXPECT_EQ(de_rham(b).degree(2), 0u);
}

TEST(DirectSum, ZeroIsNeutral) {
    Bicomplex b = random_bicomplex(3, 2, 2, 2);
    Bicomplex zero(2, 2, std::vector<std::size_t>(9, 0));
    EXPECT_EQ(direct_sum(b, zero), b);
}

TEST(DirectSum, SquarePlusDot) {
    Bicomplex b = direct_sum(square_at(0, 0, 1, 1), dot_at(1, 0, 1, 1));
    EXPECT_EQ(de_rham(b).entries, (std::vector<std::size_t>{0, 1, 0}));
}

TEST(DirectSum, UnionOfBoxes) {
    Bicomplex b = direct_sum(dot_at(2, 0, 2, 0), dot_at(0, 1, 0, 1));
    EXPECT_EQ(b.P(), 2);
    EXPECT_EQ(b.Q(), 1);
    EXPECT_EQ(b.dim(2, 0), 1u);
    EXPECT_EQ(b.dim(0, 1), 1u);
}

TEST(Random, TrivialBoxGivesDots) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GeneratedBicomplex g = random_bicomplex_with_shapes(seed, 0, 0, 3);
        EXPECT_TRUE(validate(g.complex).ok());
        for (const auto& [shape, m] : g.hidden.multiplicities) EXPECT_EQ(shape.kind, ShapeKind::Dot);
    }
}

TEST(Random, AlwaysValid) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Bicomplex b = random_bicomplex(seed, static_cast<int>(seed % 4), static_cast<int>((seed / 4) % 4), 3);
        EXPECT_TRUE(validate(b).ok()) << seed;
        for (int p = 0; p <= b.P(); ++p)
            for (int q = 0; q <= b.Q(); ++q) EXPECT_LE(b.dim(p, q), 3u);
    }
}

TEST(Random, Seed42Pinned) {
    Bicomplex a = random_bicomplex(42, 2, 2, 3);
    Bicomplex b = random_bicomplex(42, 2, 2, 3);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.dims(), (std::vector<std::size_t>{2, 3, 1, 3, 3, 3, 1, 3, 3}));
    EXPECT_EQ(testsupport::fingerprint(a), 17338406956147592597ull);
}

TEST(Random, ExercisesDdbar) {
    std::size_t with_squares = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Bicomplex b = random_bicomplex(seed, 2, 2, 3);
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
                if (!b.ddbar(p, q).is_zero()) {
                    ++with_squares;
                    p = q = 2;
                }
    }
    EXPECT_GT(with_squares, 10u);
}

TEST(Conjugate, Involution) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Bicomplex b = random_bicomplex(seed, 2, 3, 2);
        EXPECT_EQ(conjugate(conjugate(b)), b);
        EXPECT_TRUE(validate(conjugate(b)).ok());
    }
}

TEST(Conjugate, SquareToSquare) {
    Bicomplex c = conjugate(square_at(0, 0, 1, 1));
    EXPECT_TRUE(validate(c).ok());
    EXPECT_EQ(rank(c.ddbar(0, 0)), 1u);
}

TEST(Conjugate, RealifiedCarriesRealStructure) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Bicomplex r = realify(random_bicomplex(seed, 1 + static_cast<int>(seed % 3), 2, 2));
        EXPECT_TRUE(r.has_conj());
        EXPECT_TRUE(validate(r).ok()) << seed;
        EXPECT_TRUE(is_isomorphism(conjugate(r), r, conjugation_isomorphism(r)));
    }
}

TEST(Conjugate, BrokenRealStructureIsReported) {
    Bicomplex r = realify(testsupport::square_at(0, 0, 1, 1));
    std::vector<QMatrix> sigma;
    for (int p = 0; p <= 1; ++p)
        for (int q = 0; q <= 1; ++q) sigma.push_back(Scalar(2) * r.conj_matrix(p, q));
    r.set_conj(sigma);
    EXPECT_FALSE(validate(r).ok());
}

TEST(BicomplexProperty, TotalSquaresToZero) {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        Bicomplex b = random_bicomplex(seed, 3, 3, 3);
        TotalComplex t = total(b);
        for (int k = 0; k < t.top_degree(); ++k) EXPECT_TRUE((t.d(k + 1) * t.d(k)).is_zero());
        for (int k = 0; k <= t.top_degree(); ++k) EXPECT_EQ(t.dim(k), total_dim(b, k));
    }
}

TEST(BicomplexProperty, CohomologyAdditive) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Bicomplex a = random_bicomplex(seed, 2, 2, 2), b = random_bicomplex(seed + 1000, 2, 1, 2);
        CohomologySummary s = all_cohomology(direct_sum(a, b));
        CohomologySummary x = all_cohomology(a), y = all_cohomology(b);
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q) {
                EXPECT_EQ(s.dolbeault.at(p, q), x.dolbeault.at(p, q) + y.dolbeault.at(p, q));
                EXPECT_EQ(s.conj_dolbeault.at(p, q), x.conj_dolbeault.at(p, q) + y.conj_dolbeault.at(p, q));
                EXPECT_EQ(s.bott_chern.at(p, q), x.bott_chern.at(p, q) + y.bott_chern.at(p, q));
                EXPECT_EQ(s.aeppli.at(p, q), x.aeppli.at(p, q) + y.aeppli.at(p, q));
            }
        for (int k = 0; k <= 4; ++k) EXPECT_EQ(s.de_rham.degree(k), x.de_rham.degree(k) + y.de_rham.degree(k));
    }
}

TEST(BicomplexProperty, ConjugateSwapsTheories) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Bicomplex b = random_bicomplex(seed, 2, 3, 3);
        CohomologySummary s = all_cohomology(b), c = all_cohomology(conjugate(b));
        EXPECT_EQ(c.dolbeault.entries, transposed(s.conj_dolbeault).entries);
        EXPECT_EQ(c.conj_dolbeault.entries, transposed(s.dolbeault).entries);
        EXPECT_EQ(c.bott_chern.entries, transposed(s.bott_chern).entries);
        EXPECT_EQ(c.aeppli.entries, transposed(s.aeppli).entries);
        EXPECT_EQ(c.de_rham.entries, s.de_rham.entries);
    }
}
