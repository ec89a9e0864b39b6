#include <random>

#include <gtest/gtest.h>

#include "sparsemult/families.hpp"
#include "sparsemult/local_mult.hpp"
#include "test_util.hpp"

using namespace sparsemult;

namespace {

Polynomial poly(int n, const std::vector<std::pair<Exponent, Rational>>& terms) {
    Polynomial p(n);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

// The two Gale polynomials of the cubic example.
std::vector<Polynomial> gale_cubic() {
    return {poly(2, {{{0, 1}, 1}, {{1, 0}, -2}, {{2, 0}, -1}}),
            poly(2, {{{0, 1}, 3}, {{1, 0}, -6}, {{2, 0}, -3}, {{3, 0}, -1}})};
}

}  // namespace

TEST(ShiftSystem, Examples) {
    auto quad = make_system(build_config({{0}, {1}, {2}}), RationalMatrix{{1, -2, 1}});
    auto ps = shift_system(quad);
    EXPECT_EQ(ps.polys[0].truncate(4), poly(1, {{{2}, 1}}));
    auto cube = make_system(build_config({{0}, {1}, {2}, {3}}), RationalMatrix{{-1, 3, -3, 1}});
    EXPECT_EQ(shift_system(cube).polys[0].truncate(6), poly(1, {{{3}, 1}}));
}

TEST(ShiftSystem, WitnessTwoTwoLowOrder) {
    // 1 - 2 x1 x2 + x1^2 x2^4 at (1,1)
    auto c = build_config({{0, 0}, {1, 1}, {2, 4}});
    std::vector<Rational> row{1, -2, 1};
    std::vector<Rational> ones{1, 1};
    auto ev = VanishingSumEvaluator::from_system_row(c, row);
    EXPECT_EQ(shifted_coefficient(c, row, ones, {0, 0}), 0);
    EXPECT_EQ(shifted_coefficient(c, row, ones, {1, 0}), 0);
    EXPECT_EQ(shifted_coefficient(c, row, ones, {0, 1}), 2);
    EXPECT_EQ(shifted_coefficient(c, row, ones, {0, 1}), L_value(ev, {0, 1}));
    EXPECT_EQ(shifted_coefficient(c, row, ones, {1, 1}), 6);
    EXPECT_EQ(shifted_coefficient(c, row, ones, {0, 2}), 6);
    // the first-axis intercept sits at degree 2
    EXPECT_EQ(shifted_coefficient(c, row, ones, {2, 0}), 1);
    EXPECT_EQ(shifted_coefficient(c, row, ones, {2, 0}), L_value(ev, {2, 0}) / 2);
}

TEST(Multiplicity, Examples) {
    EXPECT_EQ(multiplicity_at_origin(polynomial_system({poly(1, {{{3}, 1}})})).require(), 3);
    EXPECT_EQ(multiplicity_at_origin(polynomial_system(gale_cubic())).require(), 3);
    auto w = witness_system(2, 1);
    EXPECT_EQ(multiplicity_at_origin(shift_system(w.system)).require(), 3);
    EXPECT_EQ(multiplicity_at_origin(polynomial_system({poly(2, {{{1, 0}, 1}}), poly(2, {{{0, 1}, 1}})})).require(), 1);
}

TEST(Multiplicity, Errors) {
    EXPECT_THROW(multiplicity_at_origin(polynomial_system({poly(1, {{{0}, 1}, {{1}, 1}})})), OriginNotRoot);
    // common curve z1 = 0: not isolated, the Bezout bound 4 is exceeded
    auto r = multiplicity_at_origin(
        polynomial_system({poly(2, {{{1, 1}, 1}}), poly(2, {{{1, 1}, 2}, {{2, 0}, 1}})}));
    EXPECT_EQ(r.status, MultStatus::Infinite);
    EXPECT_THROW(r.require(), PreconditionError);
    auto c = multiplicity_at_origin(polynomial_system({poly(2, {{{1, 1}, 1}}), poly(2, {{{1, 1}, 1}})}), 10);
    EXPECT_EQ(c.status, MultStatus::CeilingExceeded);
}

TEST(MultiplicityOfSeries, Examples) {
    EXPECT_EQ(multiplicity_of_series({poly(1, {{{1}, 1}, {{2}, 1}})}, 5).require(), 1);
    auto z = multiplicity_of_series({Polynomial(1)}, 5);
    EXPECT_EQ(z.status, MultStatus::Unknown);
    EXPECT_THROW(z.require(), TruncationTooShort);
    EXPECT_EQ(multiplicity_of_series(gale_cubic(), 8).require(), 3);
}

TEST(FaceTruncations, GaleCubic) {
    auto ps = polynomial_system(gale_cubic());
    auto faces = face_truncations(ps);
    bool saw_segment = false;
    for (const auto& ts : faces) {
        if (ts.K.size() == 1) {
            for (const auto& f : ts.initial_forms) EXPECT_EQ(f.size(), 1u);
        }
        if (ts.K.size() == 2 && ts.face_dimension == 1) {
            saw_segment = true;
            EXPECT_EQ(ts.initial_forms[0], poly(2, {{{0, 1}, 1}, {{1, 0}, -2}}));
            EXPECT_EQ(ts.initial_forms[1], poly(2, {{{0, 1}, 3}, {{1, 0}, -6}}));
        }
    }
    EXPECT_TRUE(saw_segment);
}

TEST(Nondegeneracy, GaleCubicIsDegenerate) {
    auto rep = nondegeneracy_check(polynomial_system(gale_cubic()));
    EXPECT_EQ(rep.overall, FaceStatus::Degenerate);
}

TEST(Nondegeneracy, WitnessTwoOneIsNonDegenerate) {
    auto w = witness_system(2, 1);
    auto ps = shift_system(w.system);
    auto rep = nondegeneracy_check(ps);
    EXPECT_EQ(rep.overall, FaceStatus::NonDegenerate);
    EXPECT_EQ(system_covolume(convenient_staircases(ps)), 3);
}

TEST(Nondegeneracy, NotConvenient) {
    auto ps = polynomial_system({poly(2, {{{1, 1}, 1}, {{2, 0}, 1}}), poly(2, {{{0, 1}, 1}, {{1, 0}, 1}})});
    EXPECT_THROW(face_truncations(ps), NotConvenient);
}

TEST(Hypersurface, Examples) {
    auto quartic = Polynomial::power(poly(1, {{{1}, 1}, {{0}, -1}}), 4);
    EXPECT_EQ(hypersurface_multiplicity(quartic, {Rational(1)}), 4);
    // x1 g(x2) + g(x3) with g(z) = (1 - z)^4
    Polynomial g2 = Polynomial::power(poly(3, {{{0, 0, 0}, 1}, {{0, 1, 0}, -1}}), 4);
    Polynomial g3 = Polynomial::power(poly(3, {{{0, 0, 0}, 1}, {{0, 0, 1}, -1}}), 4);
    Polynomial f = Polynomial::variable(3, 0) * g2 + g3;
    EXPECT_EQ(hypersurface_multiplicity(f, {1, 1, 1}), 4);
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 5; ++m) {
            long s = 1;
            while (s * n < n + m) ++s;
            EXPECT_EQ(hypersurface_multiplicity(f_dn(n + m, n), std::vector<Rational>(n, Rational(1))), s)
                << "n=" << n << " m=" << m;
        }
}

TEST(Hypersurface, UnivariateGroundTruth) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 100; ++t) {
        int roots = 1 + t % 3;
        std::vector<long> r;
        while (static_cast<int>(r.size()) < roots) {
            long v = testutil::uniform(rng, -4, 4);
            if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
        }
        Polynomial f = Polynomial::constant(1, 1), shifted = Polynomial::constant(1, 1);
        std::vector<long> k;
        for (int i = 0; i < roots; ++i) {
            k.push_back(testutil::uniform(rng, 1, 4));
            f = f * Polynomial::power(poly(1, {{{1}, 1}, {{0}, -r[i]}}), k[i]);
            // same factor in z = x - r_0
            shifted = shifted * Polynomial::power(poly(1, {{{1}, 1}, {{0}, r[0] - r[i]}}), k[i]);
        }
        EXPECT_EQ(hypersurface_multiplicity(f, {Rational(r[0])}), k[0]);
        EXPECT_EQ(multiplicity_at_origin(polynomial_system({shifted})).require(), k[0]);
    }
}

TEST(Properties, OracleVersusCovolume) {
    std::mt19937_64 rng(67);
    int certified = 0, compared = 0;
    for (int t = 0; t < 150; ++t) {
        int n = 1 + t % 2;
        auto sys = testutil::random_system(rng, n, 1 + t % 3, 3, 5);
        auto ps = shift_system(sys);
        SystemStaircases sc;
        try {
            sc = convenient_staircases(ps);
        } catch (const NotConvenient&) {
            continue;
        }
        auto mu = multiplicity_at_origin(ps);
        if (!mu.finite()) continue;
        ++compared;
        Rational cov = system_covolume(sc);
        EXPECT_GE(Rational(mu.value), cov);
        if (nondegeneracy_check(ps, sc).overall == FaceStatus::NonDegenerate) {
            ++certified;
            EXPECT_EQ(Rational(mu.value), cov);
        }
    }
    EXPECT_GT(compared, 50);
    EXPECT_GT(certified, 20);
}

TEST(Properties, LeftEquivalenceInvariance) {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 60; ++t) {
        auto sys = testutil::random_system(rng, 2, 1 + t % 3, 3, 5);
        RationalMatrix M;
        do {
            M = testutil::random_rational_matrix(rng, 2, 2, 4);
        } while (determinant(M) == 0);
        auto other = make_system(sys.config, M * sys.C);
        auto a = multiplicity_at_origin(shift_system(sys));
        auto b = multiplicity_at_origin(shift_system(other));
        EXPECT_EQ(a.status, b.status);
        if (a.finite()) {
            EXPECT_EQ(a.value, b.value);
        }
    }
}

TEST(Properties, NakayamaStopIsStable) {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 40; ++t) {
        auto sys = testutil::random_system(rng, 2, 1 + t % 2, 3, 5);
        auto ps = shift_system(sys);
        auto mu = multiplicity_at_origin(ps);
        if (!mu.finite()) continue;
        long K = static_cast<long>(mu.ladder.size());
        for (long j = 1; j <= 3; ++j) {
            std::vector<Polynomial> truncs;
            for (const auto& s : ps.polys) truncs.push_back(s.truncate(K + j - 1));
            EXPECT_EQ(detail::ladder_step(2, truncs, K + j), mu.value);
        }
    }
}

TEST(Properties, ThetaDerivativeAtOnes) {
    // at a minimal nonzero beta, L(beta) = beta! [z^beta] F
    std::mt19937_64 rng(79);
    for (int t = 0; t < 60; ++t) {
        int n = 1 + t % 3;
        auto sys = testutil::random_system(rng, n, 1 + t % 3, 3, 5);
        auto stats = sparsity_stats(sys.C, sys.config);
        std::vector<Rational> ones(n, Rational(1));
        for (int k = 0; k < n; ++k) {
            auto ev = VanishingSumEvaluator::from_system_row(sys.config, sys.C.row(k));
            auto st = staircase_of(
                n, [&](const Exponent& a) { return L_value(ev, a) != 0; }, stats.t, false);
            for (const auto& beta : st.minimal_points) {
                Rational fact = 1;
                for (long b : beta) fact *= Rational(factorial(b));
                EXPECT_EQ(L_value(ev, beta), fact * shifted_coefficient(sys.config, sys.C.row(k), ones, beta));
            }
        }
    }
}
