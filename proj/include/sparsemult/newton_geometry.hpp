#ifndef SPARSEMULT_NEWTON_GEOMETRY_HPP
#define SPARSEMULT_NEWTON_GEOMETRY_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sparsemult/parallel.hpp"
#include "sparsemult/polyhedra.hpp"

namespace sparsemult {

// L(alpha) = sum_j coeffs[j] * prod_i exponents[j][i]^alpha_i.
struct VanishingSumEvaluator {
    std::vector<Rational> coeffs;
    std::vector<std::vector<Rational>> exponents;  // one exponent vector per coefficient

    static VanishingSumEvaluator from_system_row(const SupportConfig& c, const std::vector<Rational>& row) {
        VanishingSumEvaluator ev;
        ev.coeffs = row;
        for (const auto& p : c.points) ev.exponents.push_back(to_point(p));
        return ev;
    }

    int dim() const { return exponents.empty() ? 0 : static_cast<int>(exponents[0].size()); }
};

inline Rational L_value(const VanishingSumEvaluator& ev, const Exponent& alpha) {
    if (ev.coeffs.size() != ev.exponents.size()) throw DimensionMismatch("evaluator lengths disagree");
    Rational s = 0;
    for (std::size_t j = 0; j < ev.coeffs.size(); ++j) {
        if (ev.coeffs[j] == 0) continue;
        Rational t = ev.coeffs[j];
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (alpha[i] < 0) throw PreconditionError("negative exponent in a vanishing sum");
            if (alpha[i] == 0) continue;
            t *= pow(ev.exponents[j][i], alpha[i]);
            if (t == 0) break;
        }
        s += t;
    }
    return s;
}

struct Staircase {
    int dim = 0;
    std::vector<Exponent> minimal_points;             // sorted by degree then lex
    std::vector<std::optional<long>> axis_intercepts;  // empty optional: vanishes on that axis (within hint)
};

inline bool is_convenient(const Staircase& st) {
    for (const auto& a : st.axis_intercepts)
        if (!a) return false;
    return true;
}

// Minimal elements of {alpha : nonzero(alpha)}.  Each axis is scanned up to
// its hint; the box spanned by the intercepts (or by the hints on axes
// where nothing was found) is then scanned in degree order.  When
// `strict` is set, an empty axis raises VanishesOnAxis.
inline Staircase staircase_of(int n, const std::function<bool(const Exponent&)>& nonzero,
                              const std::vector<long>& hints, bool strict) {
    if (static_cast<int>(hints.size()) != n) throw DimensionMismatch("one axis hint per coordinate");
    Staircase st;
    st.dim = n;
    std::vector<long> box(n);
    for (int l = 0; l < n; ++l) {
        std::optional<long> hit;
        for (long u = 0; u <= hints[l]; ++u) {
            Exponent e(n, 0);
            e[l] = u;
            if (nonzero(e)) {
                hit = u;
                break;
            }
        }
        if (!hit && strict) throw VanishesOnAxis(l);
        st.axis_intercepts.push_back(hit);
        box[l] = hit ? *hit : hints[l];
    }
    long maxdeg = 0;
    for (long b : box) maxdeg += b;
    for (long d = 0; d <= maxdeg; ++d) {
        for (const auto& e : exponents_of_degree(n, d)) {
            bool inside = true;
            for (int l = 0; l < n && inside; ++l)
                if (e[l] > box[l]) inside = false;
            if (!inside) continue;
            bool dominated = false;
            for (const auto& m : st.minimal_points)
                if (dominates(e, m)) {
                    dominated = true;
                    break;
                }
            if (dominated) continue;
            if (nonzero(e)) st.minimal_points.push_back(e);
        }
    }
    return st;
}

inline Staircase staircase(const VanishingSumEvaluator& ev, const std::vector<long>& axis_bound_hints) {
    return staircase_of(
        ev.dim(), [&](const Exponent& a) { return L_value(ev, a) != 0; }, axis_bound_hints, true);
}

struct DiagramFace {
    std::vector<Exponent> vertices;
    std::vector<Exponent> lattice_points;  // staircase points lying on the face
    std::vector<Integer> normal;           // strictly positive inner normal
    int dimension = 0;
};

struct NewtonDiagram {
    Staircase staircase;
    std::vector<Exponent> vertices;
    std::vector<DiagramFace> faces;  // bounded faces of conv(points) + R_{>=0}^n, by dimension
};

inline NewtonDiagram newton_diagram(const Staircase& st) {
    NewtonDiagram nd;
    nd.staircase = st;
    if (st.minimal_points.empty()) return nd;
    std::vector<Point> pts;
    for (const auto& e : st.minimal_points) pts.push_back(to_point(e));
    auto faces = bounded_faces(pts);
    std::set<std::size_t> vertex_ids;
    for (const auto& f : faces)
        if (f.dimension == 0) vertex_ids.insert(f.points.begin(), f.points.end());
    for (auto v : vertex_ids) nd.vertices.push_back(st.minimal_points[v]);
    for (const auto& f : faces) {
        DiagramFace df;
        df.normal = f.normal;
        df.dimension = f.dimension;
        for (auto i : f.points) {
            df.lattice_points.push_back(st.minimal_points[i]);
            if (vertex_ids.count(i)) df.vertices.push_back(st.minimal_points[i]);
        }
        nd.faces.push_back(std::move(df));
    }
    return nd;
}

struct SparsityStats {
    int n = 0;  // number of polynomials (rows of the coefficient matrix)
    int dim = 0;
    std::vector<std::vector<long>> rho;  // rho[k][l]
    std::vector<long> s;
    std::vector<long> t;
    std::vector<std::vector<Point>> gammas;  // vertex lists of Gamma_k (empty when some rho < 1)
};

// coeff_rows: k-th row gives the coefficients c_{k j}; exponent_rows: j-th
// entry is the exponent vector attached to index j.  The dual statistics
// are obtained by passing the columns of B and the rows delta_i of D.
inline SparsityStats sparsity_stats(const std::vector<std::vector<Rational>>& coeff_rows,
                                    const std::vector<std::vector<Rational>>& exponent_rows) {
    SparsityStats st;
    st.n = static_cast<int>(coeff_rows.size());
    st.dim = exponent_rows.empty() ? 0 : static_cast<int>(exponent_rows[0].size());
    const std::size_t N = exponent_rows.size();
    for (const auto& row : coeff_rows)
        if (row.size() != N) throw DimensionMismatch("coefficient row length differs from point count");
    for (int l = 0; l < st.dim; ++l) {
        std::set<Rational> vals;
        for (const auto& e : exponent_rows) vals.insert(e[l]);
        st.t.push_back(static_cast<long>(vals.size()) - 1);
    }
    for (const auto& row : coeff_rows) {
        long nz = 0;
        for (const auto& c : row)
            if (c != 0) ++nz;
        st.s.push_back(nz - 1);
        std::vector<long> rho_row;
        for (int l = 0; l < st.dim; ++l) {
            std::map<Rational, Rational> bar;
            for (std::size_t j = 0; j < N; ++j) bar[exponent_rows[j][l]] += row[j];
            long cnt = 0;
            for (const auto& [u, v] : bar)
                if (v != 0) ++cnt;
            rho_row.push_back(cnt - 1);
        }
        st.rho.push_back(rho_row);
        std::vector<Point> gamma;
        bool ok = true;
        for (int l = 0; l < st.dim; ++l) {
            if (rho_row[l] < 1) ok = false;
            Point p(st.dim, Rational(0));
            p[l] = rho_row[l];
            gamma.push_back(p);
        }
        st.gammas.push_back(ok ? gamma : std::vector<Point>{});
    }
    return st;
}

inline SparsityStats sparsity_stats(const RationalMatrix& C, const SupportConfig& A) {
    std::vector<std::vector<Rational>> rows, exps;
    for (std::size_t k = 0; k < C.rows(); ++k) rows.push_back(C.row(k));
    for (const auto& p : A.points) exps.push_back(to_point(p));
    return sparsity_stats(rows, exps);
}

// A convenient polytope is stored by a vertex (or generating point) list.
struct ConvenientPolytope {
    std::vector<Point> vertices;
    int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
};

inline ConvenientPolytope polytope_of(const std::vector<Exponent>& pts) {
    ConvenientPolytope p;
    for (const auto& e : pts) p.vertices.push_back(to_point(e));
    return p;
}

inline bool polytope_is_convenient(const ConvenientPolytope& P) {
    const int n = P.dim();
    if (n == 0) return false;
    for (const auto& v : P.vertices)
        for (const auto& x : v)
            if (x < 0) return false;
    for (int l = 0; l < n; ++l) {
        bool hit = false;
        for (const auto& v : P.vertices) {
            bool on_axis = true;
            for (int i = 0; i < n && on_axis; ++i)
                if (i != l && v[i] != 0) on_axis = false;
            if (on_axis) hit = true;
        }
        if (!hit) return false;
    }
    return true;
}

// Vertices of conv(P + Q); points below the lower hull are all that matter
// for covolumes, so dominated sums are dropped as well.
inline ConvenientPolytope minkowski_sum(const ConvenientPolytope& P, const ConvenientPolytope& Q) {
    if (P.dim() != Q.dim()) throw DimensionMismatch("Minkowski sum of polytopes in different dimensions");
    std::set<Point> sums;
    for (const auto& p : P.vertices)
        for (const auto& q : Q.vertices) {
            Point s(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + q[i];
            sums.insert(std::move(s));
        }
    std::vector<Point> pts(sums.begin(), sums.end());
    pts = minimal_elements(pts);
    // keep only vertices of conv(pts) + orthant
    std::vector<PolyFace> faces = bounded_faces(pts);
    ConvenientPolytope out;
    for (const auto& f : faces)
        if (f.dimension == 0) out.vertices.push_back(pts[f.points[0]]);
    return out;
}

// n! * Vol(B_Delta), the covolume of a convenient polytope.
inline Rational covolume_single(const ConvenientPolytope& D) {
    if (!polytope_is_convenient(D)) throw NotConvenient("polytope does not meet every coordinate axis");
    return region_below_normalized(D.vertices);
}

// Polarization of covolume_single: sum over nonempty I of
// (-1)^{n-|I|} covolume_single(Delta_I), divided by n!.  The diagonal then
// equals covolume_single.
inline Rational mixed_covolume(const std::vector<ConvenientPolytope>& polys) {
    const std::size_t n = polys.size();
    if (n == 0) throw DimensionMismatch("no polytopes");
    for (const auto& P : polys) {
        if (P.dim() != static_cast<int>(n)) throw DimensionMismatch("need n polytopes in dimension n");
        if (!polytope_is_convenient(P)) throw NotConvenient("polytope does not meet every coordinate axis");
    }
    const std::size_t subsets = (std::size_t(1) << n) - 1;
    std::vector<Rational> terms(subsets);
    parallel_for(subsets, [&](std::size_t idx) {
        std::size_t mask = idx + 1;
        ConvenientPolytope sum;
        bool first = true;
        int size = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (std::size_t(1) << i))) continue;
            ++size;
            sum = first ? polys[i] : minkowski_sum(sum, polys[i]);
            first = false;
        }
        Rational v = covolume_single(sum);
        terms[idx] = ((n - size) % 2 == 0) ? v : Rational(-v);
    });
    Rational total = 0;
    for (const auto& t : terms) total += t;  // fixed order keeps the result deterministic
    return total / Rational(factorial(static_cast<long>(n)));
}

}  // namespace sparsemult

#endif  // SPARSEMULT_NEWTON_GEOMETRY_HPP
