#include <random>

#include <gtest/gtest.h>

#include "sparsemult/families.hpp"
#include "sparsemult/gale.hpp"
#include "test_util.hpp"

using namespace sparsemult;

namespace {

Polynomial poly(int n, const std::vector<std::pair<Exponent, Rational>>& terms) {
    Polynomial p(n);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

SparseSystem cubic() { return make_system(build_config({{0}, {1}, {2}, {3}}), RationalMatrix{{-1, 3, -3, 1}}); }

// D with rows 0, (a,b), (c,d), 3(c-a, d-b) after the ones column.
RationalMatrix general_D(Rational a, Rational b, Rational c, Rational d) {
    return RationalMatrix{{1, 0, 0}, {1, a, b}, {1, c, d}, {1, 3 * (c - a), 3 * (d - b)}};
}

// Product of random elementary integer operations: determinant +-1.
IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t m) {
    IntegerMatrix M = IntegerMatrix::identity(m);
    if (m < 2) {
        if (rng() % 2) M(0, 0) = -1;
        return M;
    }
    for (int s = 0; s < 4; ++s) {
        std::size_t i = rng() % m, j = rng() % m;
        if (i == j) continue;
        long k = testutil::uniform(rng, -2, 2);
        for (std::size_t r = 0; r < m; ++r) M(r, j) += k * M(r, i);
    }
    return M;
}

}  // namespace

TEST(GaleDualB, Examples) {
    auto B = gale_dual_B(build_config({{0}, {1}, {2}, {3}}));
    EXPECT_EQ(B, (IntegerMatrix{{1, 2}, {-2, -3}, {1, 0}, {0, 1}}));
    EXPECT_EQ(gale_dual_B(build_config({{0, 0}, {1, 0}, {0, 1}})).cols(), 0u);
    EXPECT_THROW(gale_dual_B(build_config({{1}, {2}, {3}})), PreconditionError);
}

TEST(GaleDualB, WitnessIsDualToCoefficients) {
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m) {
            auto w = witness_system(n, m);
            IntegerMatrix B = gale_dual_B(w.system.config);
            // columns of B and the rows of C_{m,n} span the same space
            IntegerMatrix Cmn = witness_C(m, n);
            RationalMatrix both(B.rows(), B.cols() + Cmn.rows());
            for (std::size_t i = 0; i < B.rows(); ++i) {
                for (std::size_t j = 0; j < B.cols(); ++j) both(i, j) = B(i, j);
                for (std::size_t j = 0; j < Cmn.rows(); ++j) both(i, B.cols() + j) = Cmn(j, i);
            }
            EXPECT_EQ(rank(both), static_cast<std::size_t>(m)) << n << "," << m;
        }
}

TEST(ReducedGaleDualD, Examples) {
    EXPECT_EQ(reduced_gale_dual_D(RationalMatrix{{-1, 3, -3, 1}}),
              (RationalMatrix{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, -3, 3}}));
    EXPECT_EQ(reduced_gale_dual_D(RationalMatrix{{1, -2, 1}}), (RationalMatrix{{1, 0}, {1, 1}, {1, 2}}));
    EXPECT_THROW(reduced_gale_dual_D(RationalMatrix{{1, 1, 1}}), OnesNotInKernel);
    EXPECT_THROW(gale_data(make_system(build_config({{0}, {1}, {2}}), RationalMatrix{{1, 2, 1}})), OnesNotInKernel);
}

TEST(GaleData, Validation) {
    auto sys = cubic();
    auto gd = gale_data(sys);
    EXPECT_TRUE((gd.config.matrixA * gd.B).is_zero());
    EXPECT_TRUE((gd.C * gd.D).is_zero());
    EXPECT_THROW(gale_data(sys, gd.B, RationalMatrix{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 0, 0}}), ValidationError);
    EXPECT_THROW(gale_data(sys, IntegerMatrix(4, 1), gd.D), ShapeError);
}

TEST(GaleSystem, CubicPolynomials) {
    auto gd = gale_data(cubic());
    auto gs = gale_system(gd);
    ASSERT_EQ(gs.g.size(), 2u);
    EXPECT_EQ(gs.g[0].truncate(10), poly(2, {{{0, 1}, 1}, {{1, 0}, -2}, {{2, 0}, -1}}));
    EXPECT_EQ(gs.g[1].truncate(10), poly(2, {{{0, 1}, 3}, {{1, 0}, -6}, {{2, 0}, -3}, {{3, 0}, -1}}));
    for (int k = 0; k < 2; ++k) {
        EXPECT_EQ(gs.g[k].coefficient({0, 0}), 0);
        EXPECT_EQ(gs.evaluate_phi(k, {0, 0}), 1);
    }
    EXPECT_EQ(gs.evaluate_phi(0, {Rational(1, 2), 0}), Rational(1) / Rational(9, 4));
}

TEST(GaleSystem, GeneralD) {
    auto sys = cubic();
    Rational a = 2, b = -1, c = 3, d = 5;
    auto gd = gale_data(sys, gale_dual_B(anchor_at_zero(sys.config, 0).config), general_D(a, b, c, d));
    auto gs = gale_system(gd);
    Polynomial lin = poly(2, {{{1, 0}, a}, {{0, 1}, b}});
    Polynomial expect = poly(2, {{{1, 0}, c - 2 * a}, {{0, 1}, d - 2 * b}}) - lin * lin;
    EXPECT_EQ(gs.g[0].truncate(10), expect);
    EXPECT_EQ(gs.g[1].truncate(10), expect * 3 - lin * lin * lin);
}

TEST(GaleSystem, CubicMultiplicityAndDegeneracy) {
    auto sys = cubic();
    auto gd = gale_data(sys);
    auto ps = gale_poly_system(gd);
    EXPECT_EQ(multiplicity_at_origin(ps).require(), 3);
    EXPECT_EQ(nondegeneracy_check(ps).overall, FaceStatus::Degenerate);
    // c = 2a: still degenerate, segment [(2,0),(0,1)] with covolume 2
    auto B = gale_dual_B(gd.config);
    auto g2 = gale_data(sys, B, general_D(1, 0, 2, 1));
    auto ps2 = gale_poly_system(g2);
    EXPECT_EQ(nondegeneracy_check(ps2).overall, FaceStatus::Degenerate);
    EXPECT_EQ(system_covolume(convenient_staircases(ps2)), 2);
    EXPECT_EQ(multiplicity_at_origin(ps2).require(), 3);
    // second column minus three times the first: non-degenerate, covolume 3
    IntegerMatrix B2{{1, -1}, {-2, 3}, {1, -3}, {0, 1}};
    auto g3 = gale_data(sys, B2, general_D(1, 0, 2, 1));
    auto ps3 = gale_poly_system(g3);
    auto sc3 = convenient_staircases(ps3);
    std::set<Exponent> verts(sc3.staircases[1].minimal_points.begin(), sc3.staircases[1].minimal_points.end());
    EXPECT_EQ(verts, (std::set<Exponent>{{0, 2}, {1, 1}, {3, 0}}));
    EXPECT_EQ(nondegeneracy_check(ps3, sc3).overall, FaceStatus::NonDegenerate);
    EXPECT_EQ(system_covolume(sc3), 3);
    EXPECT_EQ(multiplicity_at_origin(ps3).require(), 3);
}

TEST(HDual, CubicMultiplicity) {
    auto gd = gale_data(cubic());
    auto hd = hdual_series(gd);
    for (int k = 0; k < 2; ++k) EXPECT_EQ(hd.H[k].coefficient({0, 0}), 0);
    EXPECT_EQ(multiplicity_at_origin(hdual_poly_system(gd, hd)).require(), 3);
}

TEST(HDual, PolynomialWhenExponentsNonnegative) {
    // C = (1,-2,1), A = {0,1,2}: D rows 0,1,2 and H = sum_i b_i (y+1)^i
    auto sys = make_system(build_config({{0}, {1}, {2}}), RationalMatrix{{1, -2, 1}});
    auto gd = gale_data(sys);
    auto hd = hdual_series(gd);
    Polynomial direct(1);
    for (int i = 0; i < 3; ++i)
        direct += Polynomial::power(poly(1, {{{0}, 1}, {{1}, 1}}), to_long(gd.D(i, 1))) * Rational(gd.B(i, 0));
    EXPECT_EQ(hd.H[0].truncate(6), direct);
}

TEST(DualitySquare, Examples) {
    auto sq = duality_square(cubic());
    EXPECT_EQ(sq.mu.require(), 3);
    EXPECT_EQ(sq.mu_gale.require(), 3);
    EXPECT_EQ(sq.mu_prime.require(), 3);
    EXPECT_EQ(sq.mu_phi.require(), 3);
    ASSERT_TRUE(sq.diagrams_equal);
    EXPECT_TRUE(*sq.diagrams_equal);

    auto w = witness_system(1, 1);
    auto sw = duality_square(w.system);
    EXPECT_EQ(sw.mu.require(), 2);
    EXPECT_EQ(sw.mu_prime.require(), 2);

    auto simple = make_system(build_config({{0}, {1}, {3}}), RationalMatrix{{1, -2, 1}});
    auto ss = duality_square(simple);
    EXPECT_EQ(ss.mu.require(), 1);
    EXPECT_EQ(ss.mu_gale.require(), 1);
    EXPECT_EQ(ss.mu_prime.require(), 1);

    auto tri = make_system(build_config({{0, 0}, {1, 0}, {0, 1}}), RationalMatrix{{1, -1, 0}, {1, 0, -1}});
    auto st = duality_square(tri);
    EXPECT_EQ(st.mu.require(), 1);
    EXPECT_EQ(st.mu_gale.require(), 1);
}

TEST(LinearPart, Examples) {
    auto t = multiplicity_ge_two(gale_data(cubic()));
    EXPECT_TRUE(t.primal_singular);
    EXPECT_TRUE(t.dual_singular);
    EXPECT_TRUE(t.agree);
    // unit square: the condition is c11 c22 - c21 c12 = 0 when c13 = c23 = 0
    auto sq = build_config({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto sing = multiplicity_ge_two(gale_data(make_system(sq, RationalMatrix{{-2, 1, 1, 0}, {-1, 0, 0, 1}})));
    EXPECT_TRUE(sing.primal_singular);
    EXPECT_TRUE(sing.dual_singular);
    auto reg = multiplicity_ge_two(gale_data(make_system(sq, RationalMatrix{{-3, 2, 1, 0}, {-4, 1, 3, 0}})));
    EXPECT_FALSE(reg.primal_singular);
    EXPECT_EQ(reg.primal_det, 2 * 3 - 1 * 1);
    EXPECT_TRUE(reg.agree);
    auto deg = multiplicity_ge_two(gale_data(make_system(sq, RationalMatrix{{-3, 1, 2, 0}, {-1, 2, 0, -1}})));
    EXPECT_EQ(deg.primal_det, (1 + 0) * (0 - 1) - (2 - 1) * (2 + 0));
}

TEST(Properties, GaleMultiplicityEquality) {
    std::mt19937_64 rng(83);
    int compared = 0;
    for (int t = 0; t < 60; ++t) {
        int n = 1 + t % 2, m = 1 + (t / 2) % 2;
        auto sys = testutil::random_system(rng, n, m, 3, 5);
        sys.config = anchor_at_zero(sys.config, 0).config;
        auto sq = duality_square(sys);
        if (!sq.mu.finite()) continue;
        ++compared;
        EXPECT_EQ(sq.mu_gale.require(), sq.mu.value);
        // another choice of B and reduced D
        IntegerMatrix M = random_unimodular(rng, m);
        RationalMatrix Nrm = RationalMatrix::identity(m + 1);
        do {
            for (int i = 1; i <= m; ++i)
                for (int j = 1; j <= m; ++j) Nrm(i, j) = testutil::uniform(rng, -3, 3);
        } while (determinant(Nrm) == 0);
        auto other = gale_data(sys, sq.gale.B * M, sq.gale.D * Nrm);
        EXPECT_EQ(multiplicity_at_origin(gale_poly_system(other)).require(), sq.mu.value);
    }
    EXPECT_GT(compared, 30);
}

TEST(Properties, DiagramEqualityAndCoefficientLaw) {
    std::mt19937_64 rng(89);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        int n = 1 + t % 2, m = 1 + (t / 2) % 2;
        auto sys = testutil::random_system(rng, n, m, 3, 5);
        auto gd = gale_data(sys);
        auto gs = gale_poly_system(gd);
        auto hs = hdual_poly_system(gd);
        auto g = system_staircases(gs, false);
        auto h = system_staircases(hs, false);
        for (int k = 0; k < m; ++k) {
            EXPECT_EQ(g.staircases[k].minimal_points, h.staircases[k].minimal_points);
            VanishingSumEvaluator ev{gd.b_column(k), gd.deltas()};
            for (const auto& beta : h.staircases[k].minimal_points) {
                ++checked;
                long deg = total_degree(beta);
                Rational sign = (deg - 1) % 2 == 0 ? 1 : -1;
                Rational hc = hs.polys[k].coefficient(beta), gc = gs.polys[k].coefficient(beta);
                EXPECT_EQ(gc, sign * Rational(factorial(deg - 1)) * hc);
                Rational fact = 1;
                for (long b : beta) fact *= Rational(factorial(b));
                EXPECT_EQ(hc, L_value(ev, beta) / fact);
            }
        }
    }
    EXPECT_GT(checked, 60);
}

TEST(Properties, LinearPartAgreesWithOracle) {
    std::mt19937_64 rng(97);
    for (int t = 0; t < 80; ++t) {
        int n = 1 + t % 2, m = 1 + (t / 2) % 2;
        auto sys = testutil::random_system(rng, n, m, 3, 5);
        auto gd = gale_data(sys);
        auto lp = multiplicity_ge_two(gd);
        EXPECT_TRUE(lp.agree);
        auto mu = multiplicity_at_origin(shift_system(sys));
        if (mu.finite()) EXPECT_EQ(lp.primal_singular, mu.value >= 2);
        else EXPECT_TRUE(lp.primal_singular);
    }
}

TEST(Properties, ConvenienceRepair) {
    std::mt19937_64 rng(101);
    int attempted = 0;
    for (int t = 0; t < 40; ++t) {
        int n = 1 + t % 2, m = 1 + (t / 2) % 2;
        auto sys = testutil::random_system(rng, n, m, 3, 5);
        if (!multiplicity_at_origin(shift_system(sys)).finite()) continue;
        ++attempted;
        auto r = repair_convenience(sys, 7);
        EXPECT_TRUE(r.repaired);
        if (r.repaired) {
            EXPECT_TRUE(shifted_is_convenient(r.system));
            EXPECT_NE(determinant(r.M), 0);
        }
        auto gr = repair_gale_convenience(gale_data(sys), 7);
        EXPECT_TRUE(gr.repaired);
        if (gr.repaired) {
            EXPECT_NE(determinant(gr.M), 0);
        }
    }
    EXPECT_GT(attempted, 20);
}

TEST(Repair, IdentityFirst) {
    auto r = repair_convenience(cubic(), 1);
    ASSERT_TRUE(r.repaired);
    EXPECT_EQ(r.trials, 1);
    EXPECT_EQ(r.M, RationalMatrix::identity(1));
}
