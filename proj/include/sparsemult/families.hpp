#ifndef SPARSEMULT_FAMILIES_HPP
#define SPARSEMULT_FAMILIES_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sparsemult/gale.hpp"

namespace sparsemult {

// f_{d,n}(x) = sum_k (-1)^k binom(d,k) x1^k x2^{k^2} ... xn^{k^n}
inline Polynomial f_dn(long d, int n) {
    if (d < 0 || n < 1) throw PreconditionError("f_dn needs d >= 0, n >= 1");
    Polynomial f(n);
    for (long k = 0; k <= d; ++k) {
        Exponent e(n);
        long pk = 1;
        for (int i = 0; i < n; ++i) e[i] = (pk *= k);
        Rational c(binomial(d, k));
        if (k % 2) c = -c;
        f.add_term(e, c);
    }
    return f;
}

// A_{n,m}: (n+1) x (n+m+1), entry (i,j) = j^i.
inline IntegerMatrix witness_A(int n, int m) {
    IntegerMatrix a(n + 1, n + m + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n + m; ++j) a(i, j) = pow(Integer(j), static_cast<unsigned long>(i));
    return a;
}

// C_{n,m}: n x (n+m+1), entry (i,j) = (-1)^j binom(m+i, j), i = 1..n.
inline IntegerMatrix witness_C(int n, int m) {
    IntegerMatrix c(n, n + m + 1);
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= n + m; ++j) {
            Integer b = binomial(m + i, j);
            c(i - 1, j) = (j % 2) ? Integer(-b) : b;
        }
    return c;
}

struct WitnessSystem {
    int n = 0, m = 0;
    IntegerMatrix C, A;
    std::vector<Polynomial> polys;  // f_{m+1,n}, ..., f_{m+n,n}
    SparseSystem system;
};

inline WitnessSystem witness_system(int n, int m) {
    if (n < 1 || m < 1) throw PreconditionError("witness system needs n, m >= 1");
    WitnessSystem w;
    w.n = n;
    w.m = m;
    w.C = witness_C(n, m);
    w.A = witness_A(n, m);
    if (!(w.C * witness_A(m, n).transpose()).is_zero()) throw ValidationError("C_{n,m} A_{m,n}^t is not zero");
    std::vector<Exponent> pts;
    for (int j = 0; j <= n + m; ++j) {
        Exponent e(n);
        for (int i = 1; i <= n; ++i) e[i - 1] = to_long(w.A(i, j));
        pts.push_back(e);
    }
    for (int k = 1; k <= n; ++k) w.polys.push_back(f_dn(m + k, n));
    w.system = make_system(build_config(pts), to_rational(w.C));
    return w;
}

// sum_{q=0}^{l} (-1)^q binom(l,q) q^k
inline Integer stirling_sum(long l, long k) {
    if (l < 0 || k < 0) throw PreconditionError("stirling_sum needs l, k >= 0");
    Integer s = 0;
    for (long q = 0; q <= l; ++q) {
        Integer t = binomial(l, q) * pow(Integer(q), static_cast<unsigned long>(k));
        s += (q % 2) ? Integer(-t) : t;
    }
    return s;
}

// Same value as k! [x^k] (1 - e^x)^l.
inline Integer stirling_sum_series(long l, long k) {
    if (l < 0 || k < 0) throw PreconditionError("stirling_sum needs l, k >= 0");
    Polynomial u(1);  // 1 - e^x = -x - x^2/2 - ...
    for (long r = 1; r <= k; ++r) u.add_term({r}, Rational(-1) / Rational(factorial(r)));
    Polynomial p = Polynomial::power(u, l, k);
    Rational c = p.coefficient({k}) * Rational(factorial(k));
    return c.get_num();
}

// |alpha|' = sum_j j alpha_j
inline long weighted_degree(const Exponent& a) {
    long s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += static_cast<long>(j + 1) * a[j];
    return s;
}

// Minimal alpha with |alpha|' >= m + k.
inline Staircase witness_diagram_prediction(int n, int m, int k) {
    if (k < 1 || k > n) throw PreconditionError("need 1 <= k <= n");
    const long target = m + k;
    std::vector<long> hints(n);
    for (int i = 1; i <= n; ++i) hints[i - 1] = (target + i - 1) / i;
    return staircase_of(
        n, [&](const Exponent& a) { return weighted_degree(a) >= target; }, hints, true);
}

inline Rational witness_diagram_coefficient(int m, int k, const Exponent& alpha) {
    Rational c(stirling_sum(m + k, weighted_degree(alpha)));
    for (long a : alpha) c /= Rational(factorial(a));
    return c;
}

template <typename T>
struct Bound {
    std::optional<T> value;
    std::string note;  // why the bound is absent
};

struct BoundsReport {
    int n = 0, m = 0;
    Bound<Integer> kouchnirenko;  // min(prod s_k, prod t_l)
    Bound<Rational> gamma_covolume;
    Bound<Integer> coarse, diag, box, planar;
    Bound<Integer> dual_kouchnirenko;
    Bound<Rational> dual_gamma_covolume;
    Bound<Integer> dual_coarse, dual_diag, dual_planar;
    Integer conjectured;
    Integer gabrielov;
};

// Some choice of n columns of the k x N matrix forms an invertible diagonal block.
inline bool has_invertible_diagonal(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t k = rows.size();
    if (k == 0) return true;
    const std::size_t N = rows[0].size();
    // column j can serve row r iff row r is its only nonzero entry
    std::vector<std::set<std::size_t>> owners(k);
    for (std::size_t j = 0; j < N; ++j) {
        int cnt = 0;
        std::size_t who = 0;
        for (std::size_t r = 0; r < k; ++r)
            if (rows[r][j] != 0) ++cnt, who = r;
        if (cnt == 1) owners[who].insert(j);
    }
    for (const auto& o : owners)
        if (o.empty()) return false;
    return true;
}

inline Integer prod_long(const std::vector<long>& v) {
    Integer p = 1;
    for (long x : v) p *= x;
    return p;
}

inline Integer int_pow(long b, long e) { return pow(Integer(b), static_cast<unsigned long>(e)); }

inline Bound<Rational> gamma_bound(const SparsityStats& st) {
    Bound<Rational> b;
    std::vector<ConvenientPolytope> gs;
    for (const auto& g : st.gammas) {
        if (g.empty()) {
            b.note = "some polynomial vanishes on a coordinate axis";
            return b;
        }
        gs.push_back(ConvenientPolytope{g});
    }
    if (gs.empty()) {
        b.note = "no variables";
        return b;
    }
    b.value = mixed_covolume(gs);
    return b;
}

inline BoundsReport bounds_report(const SparseSystem& sys, const std::optional<GaleData>& gale = std::nullopt) {
    const SupportConfig& c = sys.config;
    const int n = c.n, m = c.m, N = c.N;
    BoundsReport r;
    r.n = n;
    r.m = m;
    auto st = sparsity_stats(sys.C, c);
    r.kouchnirenko.value = std::min(prod_long(st.s), prod_long(st.t));
    r.gamma_covolume = gamma_bound(st);
    r.coarse.value = int_pow(n + m, n);
    std::vector<std::vector<Rational>> crows;
    for (int k = 0; k < n; ++k) crows.push_back(sys.C.row(k));
    if (has_invertible_diagonal(crows))
        r.diag.value = int_pow(m + 1, n);
    else
        r.diag.note = "C has no invertible diagonal n x n submatrix";
    {
        auto norm = normalize_to_orthant(c);
        long d = 0;
        for (const auto& p : norm.config.points)
            for (long x : p) d = std::max(d, x);
        r.box.value = int_pow(d, n);
    }
    if (n == 2)
        r.planar.value = Integer((m + 1) * (m + 2));
    else
        r.planar.note = "only for n = 2";
    r.conjectured = binomial(n + m, n);
    r.gabrielov = int_pow(2, to_long(binomial(N, 2))) * int_pow(n + 1, N);

    if (m == 0) {
        r.dual_kouchnirenko.note = r.dual_gamma_covolume.note = r.dual_coarse.note = r.dual_diag.note =
            r.dual_planar.note = "codimension 0";
        return r;
    }
    std::optional<GaleData> gd = gale;
    if (!gd) {
        try {
            gd = gale_data(sys);
        } catch (const Error& e) {
            r.dual_kouchnirenko.note = r.dual_gamma_covolume.note = r.dual_coarse.note = r.dual_diag.note =
                r.dual_planar.note = std::string("no Gale data: ") + e.what();
            return r;
        }
    }
    auto ds = dual_sparsity_stats(*gd);
    r.dual_kouchnirenko.value = std::min(prod_long(ds.s), prod_long(ds.t));
    r.dual_gamma_covolume = gamma_bound(ds);
    r.dual_coarse.value = int_pow(n + m, m);
    std::vector<std::vector<Rational>> brows;
    for (int k = 0; k < m; ++k) brows.push_back(gd->b_column(k));
    if (has_invertible_diagonal(brows))
        r.dual_diag.value = int_pow(n + 1, m);
    else
        r.dual_diag.note = "B has no invertible diagonal m x m submatrix";
    if (m == 2)
        r.dual_planar.value = Integer((n + 1) * (n + 2));
    else
        r.dual_planar.note = "only for m = 2";
    return r;
}

struct HypersurfaceBounds {
    long sigma = 0;
    long b = 0;
    long mu0_lo = 0, mu0_hi = 0;  // mu_0 lies in [lo, hi]
};

// sigma = max{k >= 1 : binom(n+k-1, n) <= n+m}; b = 1 + ceil(m/n).
inline HypersurfaceBounds hypersurface_bounds(int n, int m) {
    if (n < 1 || m < 1) throw PreconditionError("need n, m >= 1");
    HypersurfaceBounds h;
    long k = 1;
    while (binomial(n + k, n) <= n + m) ++k;
    h.sigma = k;
    h.b = 1 + (m + n - 1) / n;
    h.mu0_lo = k;
    h.mu0_hi = binomial(n + k - 1, n) == n + m ? k : k + 1;
    return h;
}

// Rows "m sigma(2,m) b(2,m)" for m = 1..10 under a header line.
inline std::string table1_text() {
    std::string out = "m sigma(2,m) b(2,m)\n";
    for (int m = 1; m <= 10; ++m) {
        auto h = hypersurface_bounds(2, m);
        out += std::to_string(m) + " " + std::to_string(h.sigma) + " " + std::to_string(h.b) + "\n";
    }
    return out;
}

struct MaxHypersurfaceMult {
    long mu = 0;
    std::vector<Integer> witness;  // coefficients with multiplicity exactly mu at 1
    bool full_row_rank = false;    // A^(mu-1) has full row rank
};

// Largest multiplicity at 1 of a polynomial supported on the configuration:
// the smallest k with ker A^(k) = 0.
inline MaxHypersurfaceMult max_hypersurface_mult(const SupportConfig& c) {
    RationalMatrix prev_kernel;
    RationalMatrix prev;
    for (long k = 0;; ++k) {
        RationalMatrix Ak = to_rational(higher_matrix(c, k));
        RationalMatrix K = rational_kernel_basis(Ak);
        if (K.cols() == 0) {
            MaxHypersurfaceMult out;
            out.mu = k;
            out.witness = primitive_integer_vector(prev_kernel.col(0));
            out.full_row_rank = rank(prev) == prev.rows();
            return out;
        }
        prev_kernel = K;
        prev = Ak;
    }
}

inline void require_distinct(const std::vector<Rational>& d) {
    std::set<Rational> s(d.begin(), d.end());
    if (s.size() != d.size()) throw DuplicateValue("values must be pairwise distinct");
}

// Points (d, d^2, ..., d^n) on the moment curve.
inline std::vector<Point> cyclic_config(const std::vector<Rational>& d, int n) {
    if (n < 1) throw PreconditionError("need n >= 1");
    require_distinct(d);
    std::vector<Point> pts;
    for (const auto& v : d) {
        Point p(n);
        Rational x = 1;
        for (int i = 0; i < n; ++i) p[i] = (x *= v);
        pts.push_back(p);
    }
    return pts;
}

// Circuit system with multiplicity n+1 at 1: moment-curve support (after
// translating d_0 to 0 and clearing denominators) and C the transpose of a
// Gale dual of [1 ... 1; d_0 - d_0 ... d_{n+1} - d_0].
inline SparseSystem max_mult_circuit_system(const std::vector<Rational>& d_values) {
    if (d_values.size() < 3) throw PreconditionError("need n+2 >= 3 values");
    require_distinct(d_values);
    const int n = static_cast<int>(d_values.size()) - 2;
    std::vector<Rational> d;
    for (const auto& v : d_values) d.push_back(v - d_values[0]);
    Rational L(lcm_of_denominators(d));
    for (auto& v : d) v *= L;
    std::vector<Exponent> pts;
    for (const auto& p : cyclic_config(d, n)) {
        Exponent e;
        for (const auto& x : p) e.push_back(to_long(x));
        pts.push_back(e);
    }
    RationalMatrix M(2, d.size());
    for (std::size_t j = 0; j < d.size(); ++j) M(0, j) = 1, M(1, j) = d[j];
    RationalMatrix C = rational_kernel_basis(M).transpose();
    return make_system(build_config(pts), C);
}

// The supplied d certify that a codimension-1 configuration is affinely
// cyclic: the circuit relation lambda satisfies sum_j lambda_j d_j^i = 0, i = 1..n.
inline bool verify_cyclic(const SupportConfig& c, const std::vector<Rational>& d) {
    if (c.m != 1) throw CodimNotOne("configuration has codimension " + std::to_string(c.m));
    if (static_cast<int>(d.size()) != c.N) throw DimensionMismatch("one value per point");
    require_distinct(d);
    IntegerMatrix lam = lattice_kernel_basis(c.matrixA);
    for (int i = 1; i <= c.n; ++i) {
        Rational s = 0;
        for (int j = 0; j < c.N; ++j) s += Rational(lam(j, 0)) * pow(d[j], i);
        if (s != 0) return false;
    }
    return true;
}

struct IntegerizeResult {
    SparseSystem system;
    IntegerMatrix C0;
    MultiplicityResult mu;
};

// Integer coefficient matrix with the same staircases, the same
// non-degeneracy certificate and the same multiplicity.
inline IntegerizeResult integerize_coefficients(const SparseSystem& sys) {
    PolySystem ps = shift_system(sys);
    auto sc = convenient_staircases(ps);
    auto rep = nondegeneracy_check(ps, sc);
    if (rep.overall != FaceStatus::NonDegenerate)
        throw PreconditionError("system is not certified non-degenerate (" + to_string(rep.overall) + ")");
    MultiplicityResult mu = multiplicity_at_origin(ps);

    // Each row lies in the rational kernel of the rows r_alpha below its
    // staircase; its primitive integer multiple lies in the kernel lattice.
    IntegerMatrix C0(sys.C.rows(), sys.C.cols());
    for (std::size_t k = 0; k < sys.C.rows(); ++k) {
        auto v = primitive_integer_vector(sys.C.row(k));
        for (std::size_t j = 0; j < v.size(); ++j) C0(k, j) = v[j];
    }
    IntegerizeResult out;
    out.C0 = C0;
    out.system = make_system(sys.config, to_rational(C0), sys.base_point);
    PolySystem ps0 = shift_system(out.system);
    auto sc0 = convenient_staircases(ps0);
    for (std::size_t k = 0; k < sc.staircases.size(); ++k)
        if (sc0.staircases[k].minimal_points != sc.staircases[k].minimal_points)
            throw ValidationError("integer representative changed a staircase");
    if (nondegeneracy_check(ps0, sc0).overall != FaceStatus::NonDegenerate)
        throw ValidationError("integer representative lost the non-degeneracy certificate");
    out.mu = multiplicity_at_origin(ps0);
    if (out.mu.status != mu.status || out.mu.value != mu.value)
        throw ValidationError("integer representative changed the multiplicity");
    return out;
}

}  // namespace sparsemult

#endif  // SPARSEMULT_FAMILIES_HPP
