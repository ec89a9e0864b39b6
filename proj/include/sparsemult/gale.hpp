#ifndef SPARSEMULT_GALE_HPP
#define SPARSEMULT_GALE_HPP

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sparsemult/local_mult.hpp"

namespace sparsemult {

// Gale dual data of a system C x^A = 0 with the all-ones solution and a_0 = 0.
struct GaleData {
    SupportConfig config;
    RationalMatrix C;  // n x N
    IntegerMatrix B;   // N x m, columns span the integer kernel of matrixA
    RationalMatrix D;  // N x (m+1), reduced: first column ones, first row (1,0,...,0)

    int m() const { return config.m; }
    std::vector<Rational> delta(std::size_t i) const {
        std::vector<Rational> d;
        for (std::size_t j = 1; j < D.cols(); ++j) d.push_back(D(i, j));
        return d;
    }
    std::vector<std::vector<Rational>> deltas() const {
        std::vector<std::vector<Rational>> out;
        for (std::size_t i = 0; i < D.rows(); ++i) out.push_back(delta(i));
        return out;
    }
    std::vector<Rational> b_column(std::size_t k) const {
        std::vector<Rational> v;
        for (std::size_t i = 0; i < B.rows(); ++i) v.emplace_back(B(i, k));
        return v;
    }
};

inline void require_anchored(const SupportConfig& c) {
    for (long v : c.points[0])
        if (v != 0) throw PreconditionError("configuration must be anchored with a_0 = 0");
}

inline IntegerMatrix gale_dual_B(const SupportConfig& c) {
    require_anchored(c);
    if (c.m == 0) return IntegerMatrix(c.N, 0);
    return lattice_kernel_basis(c.matrixA);
}

// Reduced Gale dual of C: [1 | E] where the columns of E span the kernel
// vectors with vanishing 0-th entry, in column echelon form.
inline RationalMatrix reduced_gale_dual_D(const RationalMatrix& C) {
    const std::size_t N = C.cols();
    std::vector<Rational> ones(N, Rational(1));
    for (const auto& x : C * ones)
        if (x != 0) throw OnesNotInKernel("the all-ones point does not solve the system");
    RationalMatrix K = rational_kernel_basis(C);
    RationalMatrix shifted(N, K.cols());
    for (std::size_t j = 0; j < K.cols(); ++j)
        for (std::size_t i = 0; i < N; ++i) shifted(i, j) = K(i, j) - K(0, j);
    RationalMatrix E = column_echelon(shifted);
    RationalMatrix D(N, E.cols() + 1);
    for (std::size_t i = 0; i < N; ++i) {
        D(i, 0) = 1;
        for (std::size_t j = 0; j < E.cols(); ++j) D(i, j + 1) = E(i, j);
    }
    return D;
}

inline void validate_gale(const GaleData& gd) {
    const std::size_t N = gd.config.N, m = gd.config.m;
    if (gd.B.rows() != N || gd.B.cols() != m) throw ShapeError("B must be N x m");
    if (gd.D.rows() != N || gd.D.cols() != m + 1) throw ShapeError("D must be N x (m+1)");
    if (!(gd.config.matrixA * gd.B).is_zero()) throw ValidationError("A * B is not zero");
    if (!(gd.C * gd.D).is_zero()) throw ValidationError("C * D is not zero");
    if (rank(gd.B) != m) throw ValidationError("B does not have rank m");
    if (rank(gd.D) != m + 1) throw ValidationError("D does not have rank m+1");
    for (std::size_t i = 0; i < N; ++i)
        if (gd.D(i, 0) != 1) throw ValidationError("D is not reduced: first column must be ones");
    for (std::size_t j = 1; j <= m; ++j)
        if (gd.D(0, j) != 0) throw ValidationError("D is not reduced: delta_0 must vanish");
}

// Anchors the configuration at a_0 (a translation; point order unchanged).
inline GaleData gale_data(const SparseSystem& sys) {
    for (const auto& q : sys.base_point)
        if (q != 1) throw PreconditionError("Gale duality is taken at the all-ones point");
    GaleData gd;
    gd.config = anchor_at_zero(sys.config, 0).config;
    gd.C = sys.C;
    gd.B = gale_dual_B(gd.config);
    gd.D = reduced_gale_dual_D(sys.C);
    validate_gale(gd);
    return gd;
}

inline GaleData gale_data(const SparseSystem& sys, const IntegerMatrix& B, const RationalMatrix& D) {
    GaleData gd;
    gd.config = anchor_at_zero(sys.config, 0).config;
    gd.C = sys.C;
    gd.B = B;
    gd.D = D;
    validate_gale(gd);
    return gd;
}

// prod_i (1 + <forms_i, y>)^{exps_i} through total degree P.
inline Polynomial power_product(int nvars, const std::vector<std::vector<Rational>>& forms,
                                const std::vector<Rational>& exps, long P) {
    Polynomial result = Polynomial::constant(nvars, 1);
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (exps[i] == 0) continue;
        Polynomial l(nvars);
        for (int j = 0; j < nvars; ++j) {
            Exponent e(nvars, 0);
            e[j] = 1;
            l.add_term(e, forms[i][j]);
        }
        if (l.is_zero()) continue;
        bool terminating = is_integer(exps[i]) && exps[i] > 0;
        long top = terminating ? std::min(P, to_long(exps[i])) : P;
        Polynomial factor = Polynomial::constant(nvars, 1);
        Polynomial lr = Polynomial::constant(nvars, 1);
        for (long r = 1; r <= top; ++r) {
            lr = Polynomial::multiply(lr, l, P);
            Polynomial t = lr;
            t *= binomial(exps[i], r);
            factor += t;
        }
        result = Polynomial::multiply(result, factor, P);
    }
    return result;
}

struct GaleFactorization {
    std::vector<std::pair<std::size_t, long>> numerator;    // (i, b_ik) with b_ik > 0
    std::vector<std::pair<std::size_t, long>> denominator;  // (i, -b_ik) with b_ik < 0
};

struct GaleSystem {
    int m = 0;
    std::vector<std::vector<Rational>> deltas;  // p_i(y) = 1 + <delta_i, y>
    std::vector<GaleFactorization> phi;         // phi_k = prod p_i^{b_ik}
    std::vector<Series> g;                      // numerator minus denominator

    Polynomial p(std::size_t i) const {
        Polynomial r = Polynomial::constant(m, 1);
        for (int j = 0; j < m; ++j) {
            Exponent e(m, 0);
            e[j] = 1;
            r.add_term(e, deltas[i][j]);
        }
        return r;
    }

    Rational evaluate_phi(std::size_t k, const std::vector<Rational>& y) const {
        Rational v = 1;
        for (const auto& [i, b] : phi[k].numerator) v *= pow(p(i).evaluate(y), b);
        for (const auto& [i, b] : phi[k].denominator) {
            Rational d = p(i).evaluate(y);
            if (d == 0) throw PreconditionError("point lies on the hyperplane arrangement");
            v /= pow(d, b);
        }
        return v;
    }
};

inline GaleSystem gale_system(const GaleData& gd) {
    GaleSystem gs;
    gs.m = gd.m();
    gs.deltas = gd.deltas();
    for (int k = 0; k < gs.m; ++k) {
        GaleFactorization f;
        std::vector<Rational> pos(gd.config.N, Rational(0)), neg(gd.config.N, Rational(0));
        long dpos = 0, dneg = 0;
        for (int i = 0; i < gd.config.N; ++i) {
            long b = to_long(gd.B(i, k));
            if (b > 0) f.numerator.emplace_back(i, b), pos[i] = b, dpos += b;
            if (b < 0) f.denominator.emplace_back(i, -b), neg[i] = -b, dneg += -b;
        }
        auto deltas = std::make_shared<std::vector<std::vector<Rational>>>(gs.deltas);
        int m = gs.m;
        gs.g.emplace_back(
            m,
            [deltas, pos, neg, m](long P) {
                Polynomial r = power_product(m, *deltas, pos, P);
                r -= power_product(m, *deltas, neg, P);
                return r;
            },
            Series::CoeffFn{}, std::max(dpos, dneg));
        gs.phi.push_back(std::move(f));
    }
    return gs;
}

// Axis scan limits t*_l on the dual side.
inline SparsityStats dual_sparsity_stats(const GaleData& gd) {
    std::vector<std::vector<Rational>> rows;
    for (int k = 0; k < gd.m(); ++k) rows.push_back(gd.b_column(k));
    return sparsity_stats(rows, gd.deltas());
}

// L^m m! Vol(conv delta) with L clearing denominators: a BKK bound for the
// dual side (y -> y^L is a local isomorphism at 1).
inline std::optional<long> dual_mu_bound(const GaleData& gd) {
    const int m = gd.m();
    std::vector<Rational> all;
    for (std::size_t i = 0; i < gd.D.rows(); ++i)
        for (std::size_t j = 0; j < gd.D.cols(); ++j) all.push_back(gd.D(i, j));
    Integer L = lcm_of_denominators(all);
    std::vector<Point> pts = gd.deltas();
    Rational v = volume(pts) * Rational(factorial(m));
    for (int i = 0; i < m; ++i) v *= L;
    if (!is_integer(v)) return std::nullopt;
    Integer z = v.get_num();
    if (!z.fits_slong_p()) return std::nullopt;
    return z.get_si();
}

inline std::optional<long> primal_mu_bound(const SupportConfig& c) {
    Integer b = normalized_volume(c);
    if (!b.fits_slong_p()) return std::nullopt;
    return b.get_si();
}

// The Gale system at the origin; its multiplicity equals the original's at 1.
inline PolySystem gale_poly_system(const GaleData& gd, const GaleSystem& gs) {
    PolySystem ps;
    ps.dim = gd.m();
    ps.polys = gs.g;
    auto st = dual_sparsity_stats(gd);
    for (int k = 0; k < gd.m(); ++k) ps.axis_hints.push_back(st.t);
    ps.mu_bound = primal_mu_bound(gd.config);
    return ps;
}

inline PolySystem gale_poly_system(const GaleData& gd) { return gale_poly_system(gd, gale_system(gd)); }

struct HDualSystem {
    int m = 0;
    std::vector<std::vector<Rational>> deltas;
    std::vector<std::vector<Rational>> b_columns;
    std::vector<Series> H;
};

// H_k(y) = sum_i b_ik (y + 1)^{delta_i}; coefficient of y^beta is
// sum_i b_ik prod_j binom(delta_ij, beta_j).
inline HDualSystem hdual_series(const GaleData& gd) {
    HDualSystem hd;
    hd.m = gd.m();
    hd.deltas = gd.deltas();
    for (int k = 0; k < hd.m; ++k) {
        hd.b_columns.push_back(gd.b_column(k));
        auto b = std::make_shared<std::vector<Rational>>(hd.b_columns.back());
        auto d = std::make_shared<std::vector<std::vector<Rational>>>(hd.deltas);
        hd.H.push_back(Series::from_coefficients(hd.m, [b, d](const Exponent& beta) {
            Rational s = 0;
            for (std::size_t i = 0; i < b->size(); ++i) {
                if ((*b)[i] == 0) continue;
                Rational t = (*b)[i];
                for (std::size_t j = 0; j < beta.size() && t != 0; ++j)
                    if (beta[j] != 0) t *= binomial((*d)[i][j], beta[j]);
                s += t;
            }
            return s;
        }));
    }
    return hd;
}

inline PolySystem hdual_poly_system(const GaleData& gd, const HDualSystem& hd) {
    PolySystem ps;
    ps.dim = hd.m;
    ps.polys = hd.H;
    auto st = dual_sparsity_stats(gd);
    for (int k = 0; k < hd.m; ++k) ps.axis_hints.push_back(st.t);
    ps.mu_bound = dual_mu_bound(gd);
    return ps;
}

inline PolySystem hdual_poly_system(const GaleData& gd) { return hdual_poly_system(gd, hdual_series(gd)); }

// The corner (A^t x)^{C^t} = 1: phi_k(x) - 1 = prod_i (1 + <a_i, x>)^{c_ki} - 1.
// Dual to the H-dual system, so it carries the multiplicity mu'.
inline PolySystem phi_corner_system(const GaleData& gd) {
    const int n = gd.config.n;
    auto forms = std::make_shared<std::vector<std::vector<Rational>>>();
    for (const auto& a : gd.config.points) forms->push_back(to_point(a));
    PolySystem ps;
    ps.dim = n;
    for (int k = 0; k < n; ++k) {
        std::vector<Rational> exps = gd.C.row(k);
        ps.polys.emplace_back(n, [forms, exps, n](long P) {
            Polynomial r = power_product(n, *forms, exps, P);
            r -= Polynomial::constant(n, 1);
            return r;
        });
    }
    auto st = sparsity_stats(gd.C, gd.config);
    for (int k = 0; k < n; ++k) ps.axis_hints.push_back(st.t);
    ps.mu_bound = dual_mu_bound(gd);
    return ps;
}

struct DualitySquare {
    GaleData gale;
    PolySystem original;  // C (x + 1)^A
    PolySystem gale_side;  // (D y)^B = 1, cleared
    PolySystem hdual;      // B^t (y + 1)^{D^t}
    PolySystem phi_corner;  // (A^t x)^{C^t} = 1
    MultiplicityResult mu;        // original at 1
    MultiplicityResult mu_gale;   // Gale system at 0
    MultiplicityResult mu_prime;  // H-dual at 0
    MultiplicityResult mu_phi;    // phi corner at 0
    std::optional<bool> diagrams_equal;  // staircases of g_k and H_k agree
    std::vector<Staircase> gale_staircases, hdual_staircases;
};

inline DualitySquare duality_square(const SparseSystem& sys, std::optional<long> ceiling = std::nullopt) {
    DualitySquare sq;
    sq.gale = gale_data(sys);
    sq.original = shift_system(sys);
    sq.gale_side = gale_poly_system(sq.gale);
    sq.hdual = hdual_poly_system(sq.gale);
    sq.phi_corner = phi_corner_system(sq.gale);
    sq.mu = multiplicity_at_origin(sq.original, ceiling);
    if (sq.gale.m() > 0) {
        sq.mu_gale = multiplicity_at_origin(sq.gale_side, ceiling);
        sq.mu_prime = multiplicity_at_origin(sq.hdual, ceiling);
        try {
            auto g = system_staircases(sq.gale_side, true);
            auto h = system_staircases(sq.hdual, true);
            sq.gale_staircases = g.staircases;
            sq.hdual_staircases = h.staircases;
            bool eq = true;
            for (std::size_t k = 0; k < g.staircases.size(); ++k)
                if (g.staircases[k].minimal_points != h.staircases[k].minimal_points) eq = false;
            sq.diagrams_equal = eq;
        } catch (const VanishesOnAxis&) {
            sq.diagrams_equal.reset();
        }
    } else {
        // m = 0: both dual sides live in zero variables
        sq.mu_gale = sq.mu_prime = MultiplicityResult{MultStatus::Finite, 1, {}};
    }
    sq.mu_phi = multiplicity_at_origin(sq.phi_corner, ceiling);
    return sq;
}

struct LinearPartTest {
    bool primal_singular = false;  // det(A' C'^t) = 0
    bool dual_singular = false;    // det(B'^t D') = 0
    bool agree = false;
    Rational primal_det, dual_det;
};

inline LinearPartTest multiplicity_ge_two(const GaleData& gd) {
    require_anchored(gd.config);
    const std::size_t n = gd.config.n, N = gd.config.N, m = gd.config.m;
    RationalMatrix Ap(n, N - 1), Cp(n, N - 1), Bp(N - 1, m), Dp(N - 1, m);
    for (std::size_t j = 1; j < N; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            Ap(i, j - 1) = gd.config.matrixA(i + 1, j);
            Cp(i, j - 1) = gd.C(i, j);
        }
        for (std::size_t k = 0; k < m; ++k) {
            Bp(j - 1, k) = gd.B(j, k);
            Dp(j - 1, k) = gd.D(j, k + 1);
        }
    }
    LinearPartTest t;
    t.primal_det = determinant(Ap * Cp.transpose());
    t.dual_det = m == 0 ? Rational(1) : determinant(Bp.transpose() * Dp);
    t.primal_singular = t.primal_det == 0;
    t.dual_singular = t.dual_det == 0;
    t.agree = t.primal_singular == t.dual_singular;
    return t;
}

struct RepairResult {
    bool repaired = false;
    int trials = 0;
    RationalMatrix M;     // left factor applied to C
    SparseSystem system;  // M C x^A = 0 when repaired
};

inline bool shifted_is_convenient(const SparseSystem& sys) {
    PolySystem ps = shift_system(sys);
    try {
        system_staircases(ps, true);
        return true;
    } catch (const VanishesOnAxis&) {
        return false;
    }
}

// Search for invertible M with entries in [-3, 3] making M C x^A convenient
// at 1.  The identity is tried first.
inline RepairResult repair_convenience(const SparseSystem& sys, std::uint64_t seed, int max_trials = 200) {
    RepairResult r;
    const std::size_t n = sys.C.rows();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int trial = 0; trial <= max_trials; ++trial) {
        RationalMatrix M = RationalMatrix::identity(n);
        if (trial > 0) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) M(i, j) = dist(rng);
            if (determinant(M) == 0) continue;
        }
        r.trials = trial + 1;
        SparseSystem cand = make_system(sys.config, M * sys.C, sys.base_point);
        if (shifted_is_convenient(cand)) {
            r.repaired = true;
            r.M = M;
            r.system = cand;
            return r;
        }
    }
    return r;
}

struct GaleRepairResult {
    bool repaired = false;
    int trials = 0;
    IntegerMatrix M;  // right factor applied to B
    GaleData gale;
};

// Same search on the dual side: B -> B M keeps a Gale dual of A.
inline GaleRepairResult repair_gale_convenience(const GaleData& gd, std::uint64_t seed, int max_trials = 200) {
    GaleRepairResult r;
    const std::size_t m = gd.m();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int trial = 0; trial <= max_trials; ++trial) {
        IntegerMatrix M = IntegerMatrix::identity(m);
        if (trial > 0) {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) M(i, j) = dist(rng);
            if (determinant(M) == 0) continue;
        }
        r.trials = trial + 1;
        GaleData cand = gd;
        cand.B = gd.B * M;
        try {
            system_staircases(hdual_poly_system(cand), true);
        } catch (const VanishesOnAxis&) {
            continue;
        }
        r.repaired = true;
        r.M = M;
        r.gale = cand;
        return r;
    }
    return r;
}

}  // namespace sparsemult

#endif  // SPARSEMULT_GALE_HPP
