#ifndef SPARSEMULT_SUPPORT_CONFIG_HPP
#define SPARSEMULT_SUPPORT_CONFIG_HPP

#include <algorithm>
#include <set>
#include <vector>

#include "sparsemult/exact_linalg.hpp"
#include "sparsemult/polynomial.hpp"

namespace sparsemult {

// A lattice point configuration a_0..a_{N-1} in Z^n of full affine dimension.
struct SupportConfig {
    std::vector<Exponent> points;
    int n = 0;
    int N = 0;
    int m = 0;
    IntegerMatrix matrixA;  // (n+1) x N, top row all ones
};

inline IntegerMatrix config_matrix(const std::vector<Exponent>& pts, int n) {
    IntegerMatrix a(n + 1, pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        a(0, j) = 1;
        for (int i = 0; i < n; ++i) a(i + 1, j) = pts[j][i];
    }
    return a;
}

inline SupportConfig build_config(const std::vector<Exponent>& points) {
    if (points.empty()) throw DegenerateConfig("empty configuration");
    const int n = static_cast<int>(points[0].size());
    if (n == 0) throw DegenerateConfig("points of dimension 0");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != n) throw DimensionMismatch("points of different dimensions");
    std::set<Exponent> seen;
    for (const auto& p : points)
        if (!seen.insert(p).second) throw DuplicatePoint("repeated point in configuration");
    SupportConfig c;
    c.points = points;
    c.n = n;
    c.N = static_cast<int>(points.size());
    c.matrixA = config_matrix(points, n);
    if (rank(c.matrixA) < static_cast<std::size_t>(n + 1))
        throw DegenerateConfig("configuration is contained in an affine hyperplane");
    c.m = c.N - (n + 1);
    return c;
}

struct OrthantNormalization {
    SupportConfig config;
    Exponent shift;  // added to every point
};

inline OrthantNormalization normalize_to_orthant(const SupportConfig& c) {
    Exponent shift(c.n, 0);
    for (int i = 0; i < c.n; ++i) {
        long lo = c.points[0][i];
        for (const auto& p : c.points) lo = std::min(lo, p[i]);
        shift[i] = -lo;
    }
    std::vector<Exponent> pts = c.points;
    for (auto& p : pts)
        for (int i = 0; i < c.n; ++i) p[i] += shift[i];
    return {build_config(pts), shift};
}

struct AnchoredConfig {
    SupportConfig config;
    std::vector<std::size_t> permutation;  // new index -> old index
};

// Translate so a_j becomes the origin and move it to the front; the other
// points keep their relative order.
inline AnchoredConfig anchor_at_zero(const SupportConfig& c, std::size_t j) {
    if (j >= c.points.size()) throw ShapeError("anchor index out of range");
    AnchoredConfig out;
    out.permutation.push_back(j);
    for (std::size_t i = 0; i < c.points.size(); ++i)
        if (i != j) out.permutation.push_back(i);
    std::vector<Exponent> pts;
    for (auto i : out.permutation) {
        Exponent p = c.points[i];
        for (int k = 0; k < c.n; ++k) p[k] -= c.points[j][k];
        pts.push_back(std::move(p));
    }
    out.config = build_config(pts);
    return out;
}

template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (!f(static_cast<const std::vector<std::size_t>&>(idx))) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
}

inline bool is_uniform(const SupportConfig& c) {
    bool uniform = true;
    std::vector<std::size_t> rows(c.n + 1);
    for (int i = 0; i <= c.n; ++i) rows[i] = i;
    for_each_combination(c.N, c.n + 1, [&](const std::vector<std::size_t>& cols) {
        if (determinant(c.matrixA.select(rows, cols)) == 0) uniform = false;
        return uniform;
    });
    return uniform;
}

// A^(k): rows r_alpha = (a_j^alpha)_j for |alpha| <= k, by degree then lex.
inline IntegerMatrix higher_matrix(const SupportConfig& c, long k) {
    if (k < 0) throw PreconditionError("k must be nonnegative");
    auto alphas = exponents_up_to(c.n, k);
    IntegerMatrix a(alphas.size(), c.N);
    for (std::size_t r = 0; r < alphas.size(); ++r)
        for (int j = 0; j < c.N; ++j) {
            // 0^0 = 1 and negative exponents are fine when alpha_i = 0
            Integer v = 1;
            for (int i = 0; i < c.n; ++i) {
                if (alphas[r][i] == 0) continue;
                v *= pow(Integer(c.points[j][i]), static_cast<unsigned long>(alphas[r][i]));
            }
            a(r, j) = v;
        }
    return a;
}

struct InvariantFactorReduction {
    SupportConfig config;
    std::vector<Integer> factors;  // invariant factors t_1 | t_2 | ... of the lattice ZA
    IntegerMatrix basis;           // lower-triangular basis H of ZA; a_j = H * alpha_j
};

// With a_0 = 0, rewrite the points in a basis of the lattice they generate.
inline InvariantFactorReduction invariant_factor_reduce(const SupportConfig& c) {
    for (long v : c.points[0])
        if (v != 0) throw PreconditionError("invariant_factor_reduce expects a_0 = 0");
    IntegerMatrix P(c.n, c.N);
    for (int j = 0; j < c.N; ++j)
        for (int i = 0; i < c.n; ++i) P(i, j) = c.points[j][i];
    SmithForm sf = smith_normal_form(P);
    InvariantFactorReduction out;
    for (int i = 0; i < c.n; ++i) out.factors.push_back(sf.S(i, i));
    IntegerMatrix h = hermite_normal_form(P.transpose());  // rows: upper-triangular basis of ZA
    out.basis = h.transpose();
    RationalMatrix hinv_p = to_rational(out.basis);
    // solve H * alpha = P column by column (H lower triangular)
    std::vector<Exponent> pts(c.N, Exponent(c.n, 0));
    for (int j = 0; j < c.N; ++j) {
        std::vector<Rational> x(c.n);
        for (int i = 0; i < c.n; ++i) {
            Rational s = P(i, j);
            for (int k = 0; k < i; ++k) s -= hinv_p(i, k) * x[k];
            x[i] = s / hinv_p(i, i);
        }
        for (int i = 0; i < c.n; ++i) pts[j][i] = to_long(x[i]);
    }
    out.config = build_config(pts);
    return out;
}

// A polynomial system C * x^A = 0 with a distinguished point.
struct SparseSystem {
    SupportConfig config;
    RationalMatrix C;                  // n x N
    std::vector<Rational> base_point;  // defaults to the all-ones point
};

inline SparseSystem make_system(const SupportConfig& config, const RationalMatrix& C,
                                std::vector<Rational> base_point = {}) {
    if (C.cols() != static_cast<std::size_t>(config.N))
        throw ValidationError("coefficient matrix has " + std::to_string(C.cols()) + " columns, expected " +
                              std::to_string(config.N));
    if (C.rows() != static_cast<std::size_t>(config.n))
        throw ValidationError("coefficient matrix has " + std::to_string(C.rows()) + " rows, expected n = " +
                              std::to_string(config.n));
    if (rank(C) != static_cast<std::size_t>(config.n)) throw ValidationError("coefficient matrix is rank deficient");
    if (base_point.empty()) base_point.assign(config.n, Rational(1));
    if (base_point.size() != static_cast<std::size_t>(config.n)) throw DimensionMismatch("base point dimension");
    for (const auto& q : base_point)
        if (q == 0) throw ValidationError("base point must lie in the torus");
    return {config, C, std::move(base_point)};
}

// The Laurent polynomial sum_j coeffs[j] x^{a_j}.
inline Polynomial row_polynomial(const SupportConfig& c, const std::vector<Rational>& coeffs) {
    Polynomial p(c.n);
    for (int j = 0; j < c.N; ++j) p.add_term(c.points[j], coeffs[j]);
    return p;
}

}  // namespace sparsemult

#endif  // SPARSEMULT_SUPPORT_CONFIG_HPP
