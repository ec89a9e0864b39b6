#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "sparsemult/newton_geometry.hpp"
#include "test_util.hpp"

using namespace sparsemult;

namespace {

VanishingSumEvaluator ev_of(const std::vector<Exponent>& pts, const std::vector<Rational>& row) {
    return VanishingSumEvaluator::from_system_row(build_config(pts), row);
}

ConvenientPolytope poly(const std::vector<Exponent>& pts) { return polytope_of(pts); }

// Axis points plus a few extra lattice points in the box.
ConvenientPolytope random_convenient(std::mt19937_64& rng, int n, long box) {
    std::set<Exponent> pts;
    for (int l = 0; l < n; ++l) {
        Exponent e(n, 0);
        e[l] = testutil::uniform(rng, 1, box);
        pts.insert(e);
    }
    long extra = testutil::uniform(rng, 0, 3);
    for (long i = 0; i < extra; ++i) {
        Exponent e(n);
        for (auto& x : e) x = testutil::uniform(rng, 0, box);
        if (total_degree(e) > 0) pts.insert(e);
    }
    return poly({pts.begin(), pts.end()});
}

std::set<Point> vertex_set(const ConvenientPolytope& p) { return {p.vertices.begin(), p.vertices.end()}; }

}  // namespace

TEST(LValue, Examples) {
    auto ev = ev_of({{0}, {1}, {2}, {3}}, {-1, 3, -3, 1});
    EXPECT_EQ(L_value(ev, {2}), 0);
    EXPECT_EQ(L_value(ev, {3}), 6);
    EXPECT_EQ(L_value(ev, {0}), 0);
    auto ev2 = ev_of({{0}, {1}, {3}}, {2, 5, -1});
    EXPECT_EQ(L_value(ev2, {0}), 6);
}

TEST(Staircase, SquaredLinear) {
    auto st = staircase(ev_of({{0}, {1}, {2}}, {1, -2, 1}), {2});
    EXPECT_EQ(st.minimal_points, (std::vector<Exponent>{{2}}));
    ASSERT_TRUE(st.axis_intercepts[0]);
    EXPECT_EQ(*st.axis_intercepts[0], 2);
    EXPECT_TRUE(is_convenient(st));
}

TEST(Staircase, VanishesOnAxis) {
    auto ev = ev_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {1, -1, -1, 1});
    try {
        staircase(ev, {1, 1});
        FAIL() << "expected VanishesOnAxis";
    } catch (const VanishesOnAxis& e) {
        EXPECT_EQ(e.axis(), 0);
    }
    auto st = staircase_of(
        2, [&](const Exponent& a) { return L_value(ev, a) != 0; }, {1, 1}, false);
    EXPECT_FALSE(is_convenient(st));
    EXPECT_EQ(st.minimal_points, (std::vector<Exponent>{{1, 1}}));
}

TEST(NewtonDiagram, FigureOneEdges) {
    Staircase st;
    st.dim = 2;
    st.minimal_points = {{1, 1}, {3, 0}, {0, 3}};
    st.axis_intercepts = {3L, 3L};
    auto nd = newton_diagram(st);
    std::set<std::set<Exponent>> edges;
    for (const auto& f : nd.faces)
        if (f.dimension == 1) {
            edges.insert({f.vertices.begin(), f.vertices.end()});
            for (const auto& w : f.normal) EXPECT_GT(w, 0);
        }
    EXPECT_EQ(edges, (std::set<std::set<Exponent>>{{{0, 3}, {1, 1}}, {{1, 1}, {3, 0}}}));
    EXPECT_EQ(nd.vertices.size(), 3u);
    EXPECT_TRUE(is_convenient(st));
    EXPECT_EQ(covolume_single(poly(st.minimal_points)), 6);
}

TEST(NewtonDiagram, OneDimensional) {
    Staircase st;
    st.dim = 1;
    st.minimal_points = {{4}};
    st.axis_intercepts = {4L};
    auto nd = newton_diagram(st);
    ASSERT_EQ(nd.faces.size(), 1u);
    EXPECT_EQ(nd.faces[0].dimension, 0);
    EXPECT_EQ(nd.vertices, (std::vector<Exponent>{{4}}));
}

TEST(SparsityStats, Examples) {
    auto a = sparsity_stats(RationalMatrix{{1, -2, 1}}, build_config({{0}, {1}, {2}}));
    EXPECT_EQ(a.s, (std::vector<long>{2}));
    EXPECT_EQ(a.t, (std::vector<long>{2}));
    EXPECT_EQ(a.rho[0][0], 2);
    // witness support for (n, m) = (2, 1)
    auto w = sparsity_stats(RationalMatrix{{1, 1, 1, 1}, {0, 1, 2, 3}},
                            build_config({{0, 0}, {1, 1}, {2, 4}, {3, 9}}));
    EXPECT_EQ(w.t, (std::vector<long>{3, 3}));
    auto flat = sparsity_stats(RationalMatrix{{1, -1, 0}, {0, 1, -1}}, build_config({{0, 0}, {1, 0}, {0, 1}}));
    EXPECT_EQ(flat.t, (std::vector<long>{1, 1}));
}

TEST(SparsityStats, RhoBoundedBySAndT) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        int n = 1 + t % 3;
        auto sys = testutil::random_system(rng, n, 1 + t % 3, 3, 5);
        auto st = sparsity_stats(sys.C, sys.config);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) EXPECT_LE(st.rho[k][l], std::min(st.s[k], st.t[l]));
    }
}

TEST(SparsityStats, AxisInterceptAtMostRho) {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 100; ++t) {
        int n = 1 + t % 3;
        auto sys = testutil::random_system(rng, n, 1 + t % 3, 3, 5);
        auto st = sparsity_stats(sys.C, sys.config);
        for (int k = 0; k < n; ++k) {
            auto ev = VanishingSumEvaluator::from_system_row(sys.config, sys.C.row(k));
            auto sc = staircase_of(
                n, [&](const Exponent& a) { return L_value(ev, a) != 0; }, st.t, false);
            for (int l = 0; l < n; ++l) {
                if (sc.axis_intercepts[l]) {
                    EXPECT_LE(*sc.axis_intercepts[l], st.rho[k][l]);
                } else {
                    EXPECT_LT(st.rho[k][l], 1);
                }
            }
            // antichain
            for (std::size_t i = 0; i < sc.minimal_points.size(); ++i)
                for (std::size_t j = 0; j < sc.minimal_points.size(); ++j)
                    if (i != j) EXPECT_FALSE(dominates(sc.minimal_points[i], sc.minimal_points[j]));
        }
    }
}

TEST(MinkowskiSum, Examples) {
    auto s = minkowski_sum(poly({{2, 0}, {0, 1}}), poly({{1, 0}, {0, 2}}));
    EXPECT_EQ(vertex_set(s), (std::set<Point>{{3, 0}, {1, 1}, {0, 3}}));
    EXPECT_EQ(vertex_set(minkowski_sum(poly({{3, 0}, {0, 1}}), poly({{0, 0}}))), (std::set<Point>{{3, 0}, {0, 1}}));
    auto simplex = poly({{1, 0}, {0, 1}});
    EXPECT_EQ(vertex_set(minkowski_sum(simplex, simplex)), (std::set<Point>{{2, 0}, {0, 2}}));
}

TEST(Covolume, SingleExamples) {
    EXPECT_EQ(covolume_single(poly({{3, 0}, {1, 1}, {0, 3}})), 6);
    for (int n = 1; n <= 4; ++n) {
        std::vector<Exponent> unit;
        std::vector<Point> sigma;
        Integer fact = 1;
        for (int i = 0; i < n; ++i) {
            Exponent e(n, 0);
            e[i] = 1;
            unit.push_back(e);
            Point p(n, Rational(0));
            p[i] = Rational(1, i + 1);
            sigma.push_back(p);
            fact *= i + 1;
        }
        EXPECT_EQ(covolume_single(poly(unit)), 1);
        EXPECT_EQ(covolume_single(ConvenientPolytope{sigma}), Rational(1) / Rational(fact));
    }
    EXPECT_THROW(covolume_single(poly({{1, 1}, {2, 0}})), NotConvenient);
}

TEST(Covolume, MixedExamples) {
    for (long m = 1; m <= 6; ++m) {
        EXPECT_EQ(mixed_covolume({poly({{m + 1, 0}, {0, m + 1}}), poly({{m + 2, 0}, {0, m + 2}})}), (m + 1) * (m + 2));
        EXPECT_EQ(mixed_covolume({poly({{m + 1, 0}, {0, m + 2}}), poly({{m + 2, 0}, {0, m + 1}})}), (m + 1) * (m + 1));
    }
    for (long m = 1; m <= 9; m += 2) {
        long a = (m + 1) / 2;
        auto d1 = poly({{0, a}, {2 * a, 0}});
        auto d2 = poly({{0, a + 1}, {1, a}, {2 * a + 1, 0}});
        EXPECT_EQ(mixed_covolume({d1, d2}), a * (2 * a + 1));
        EXPECT_EQ(mixed_covolume({d1, d2}), binomial(m + 2, 2));
    }
    EXPECT_THROW(mixed_covolume({poly({{1, 0}, {0, 1}})}), DimensionMismatch);
    EXPECT_THROW(mixed_covolume({poly({{1, 0}, {0, 1}}), poly({{1, 1}, {2, 0}})}), NotConvenient);
}

TEST(CovolumeProperties, SymmetryDiagonalIntegrality) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + t % 3;
        std::vector<ConvenientPolytope> ps;
        for (int i = 0; i < n; ++i) ps.push_back(random_convenient(rng, n, 4));
        Rational v = mixed_covolume(ps);
        EXPECT_TRUE(is_integer(v));
        EXPECT_GT(v, 0);
        auto perm = ps;
        std::shuffle(perm.begin(), perm.end(), rng);
        EXPECT_EQ(mixed_covolume(perm), v);
        std::vector<ConvenientPolytope> diag(n, ps[0]);
        EXPECT_EQ(mixed_covolume(diag), covolume_single(ps[0]));
    }
}

TEST(CovolumeProperties, Multilinearity) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + t % 2;
        auto P = random_convenient(rng, n, 3), Q = random_convenient(rng, n, 3);
        std::vector<ConvenientPolytope> rest;
        for (int i = 1; i < n; ++i) rest.push_back(random_convenient(rng, n, 3));
        auto with = [&](const ConvenientPolytope& first) {
            std::vector<ConvenientPolytope> v{first};
            v.insert(v.end(), rest.begin(), rest.end());
            return mixed_covolume(v);
        };
        EXPECT_EQ(with(minkowski_sum(P, Q)), with(P) + with(Q));
    }
}

TEST(CovolumeProperties, Monotonicity) {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + t % 3;
        std::vector<ConvenientPolytope> P, Q;
        for (int i = 0; i < n; ++i) {
            P.push_back(random_convenient(rng, n, 4));
            auto bigger = P.back();
            auto extra = random_convenient(rng, n, 4);
            bigger.vertices.insert(bigger.vertices.end(), extra.vertices.begin(), extra.vertices.end());
            Q.push_back(bigger);
        }
        EXPECT_GE(mixed_covolume(P), mixed_covolume(Q));
    }
}
