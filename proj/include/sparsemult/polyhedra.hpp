#ifndef SPARSEMULT_POLYHEDRA_HPP
#define SPARSEMULT_POLYHEDRA_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sparsemult/exact_linalg.hpp"
#include "sparsemult/support_config.hpp"

// Small exact polyhedral routines for dimensions up to about 4: facets of
// conv(points) (optionally plus the nonnegative orthant), bounded faces,
// and volumes.  Brute force over generating subsets.

namespace sparsemult {

using Point = std::vector<Rational>;

inline Point to_point(const Exponent& e) {
    Point p(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) p[i] = e[i];
    return p;
}

struct Facet {
    std::vector<Integer> normal;  // primitive; normal . x >= offset on the polyhedron
    Rational offset;
    std::vector<std::size_t> incident;  // indices of input points on the facet
};

struct PolyFace {
    std::vector<std::size_t> points;  // input points lying on the face
    std::vector<Integer> normal;      // relative-interior normal (sum of containing facet normals)
    int dimension = 0;
};

namespace detail {

struct IntegerCloud {
    std::vector<std::vector<Integer>> pts;
    Integer scale;  // original = pts / scale
};

inline IntegerCloud integerize(const std::vector<Point>& pts) {
    IntegerCloud c;
    c.scale = 1;
    for (const auto& p : pts)
        for (const auto& x : p) mpz_lcm(c.scale.get_mpz_t(), c.scale.get_mpz_t(), x.get_den_mpz_t());
    for (const auto& p : pts) {
        std::vector<Integer> q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            Rational s = p[i] * c.scale;
            q[i] = s.get_num();
        }
        c.pts.push_back(std::move(q));
    }
    return c;
}

inline Integer small_det(std::vector<std::vector<Integer>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i][j];
    return determinant(m);
}

// Generalized cross product of k-1 vectors in Z^k: the cofactor vector.
inline std::vector<Integer> cofactor_normal(const std::vector<std::vector<Integer>>& rows, std::size_t k) {
    std::vector<Integer> w(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::vector<Integer>> minor;
        for (const auto& r : rows) {
            std::vector<Integer> rr;
            for (std::size_t j = 0; j < k; ++j)
                if (j != i) rr.push_back(r[j]);
            minor.push_back(std::move(rr));
        }
        Integer d = small_det(std::move(minor));
        w[i] = (i % 2 == 0) ? d : Integer(-d);
    }
    return w;
}

inline void make_primitive(std::vector<Integer>& w) {
    Integer g = 0;
    for (const auto& x : w) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : w) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

inline Integer dot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += a[i] * b[i];
    return s;
}

inline std::size_t affine_rank(const std::vector<std::vector<Integer>>& pts, const std::vector<std::size_t>& idx) {
    if (idx.size() <= 1) return 0;
    const std::size_t d = pts[idx[0]].size();
    IntegerMatrix m(idx.size() - 1, d);
    for (std::size_t r = 1; r < idx.size(); ++r)
        for (std::size_t j = 0; j < d; ++j) m(r - 1, j) = pts[idx[r]][j] - pts[idx[0]][j];
    return rank(m);
}

struct IntFacet {
    std::vector<Integer> normal;
    Integer offset;
    std::vector<std::size_t> incident;
};

// Facets of conv(pts) (+ R_{>=0}^d when orthant is set).  Points must span
// dimension d unless the orthant is added.
inline std::vector<IntFacet> int_facets(const std::vector<std::vector<Integer>>& pts, std::size_t d, bool orthant) {
    std::vector<IntFacet> out;
    std::set<std::vector<Integer>> seen;
    const std::size_t np = pts.size();
    const std::size_t max_s = orthant ? d - 1 : 0;
    for (std::size_t s = 0; s <= max_s; ++s) {
        // S: coordinates forced to zero in the normal (directions contained in the facet)
        for_each_combination(d, s, [&](const std::vector<std::size_t>& S) {
            std::vector<std::size_t> free;
            for (std::size_t j = 0, t = 0; j < d; ++j) {
                if (t < S.size() && S[t] == j) {
                    ++t;
                    continue;
                }
                free.push_back(j);
            }
            const std::size_t r = d - s;  // points needed
            for_each_combination(np, r, [&](const std::vector<std::size_t>& P) {
                std::vector<std::vector<Integer>> rows;
                for (std::size_t t = 1; t < P.size(); ++t) {
                    std::vector<Integer> row(free.size());
                    for (std::size_t j = 0; j < free.size(); ++j)
                        row[j] = pts[P[t]][free[j]] - pts[P[0]][free[j]];
                    rows.push_back(std::move(row));
                }
                std::vector<Integer> wf = cofactor_normal(rows, free.size());
                bool nonzero = false;
                for (const auto& x : wf)
                    if (x != 0) nonzero = true;
                if (!nonzero) return true;
                std::vector<Integer> w(d, Integer(0));
                for (std::size_t j = 0; j < free.size(); ++j) w[free[j]] = wf[j];
                make_primitive(w);
                Integer h = dot(w, pts[P[0]]);
                bool ge = true, le = true;
                for (std::size_t i = 0; i < np && (ge || le); ++i) {
                    Integer v = dot(w, pts[i]);
                    if (v < h) ge = false;
                    if (v > h) le = false;
                }
                if (!ge && !le) return true;
                if (ge && le) {
                    // every point on the hyperplane: only a facet when the rays make it one
                    if (!orthant) return true;
                    bool neg = false;
                    for (const auto& x : w)
                        if (x < 0) neg = true;
                    if (neg) {
                        for (auto& x : w) x = -x;
                        h = -h;
                    }
                } else if (!ge) {
                    for (auto& x : w) x = -x;
                    h = -h;
                }
                if (orthant)
                    for (const auto& x : w)
                        if (x < 0) return true;
                if (!seen.insert(w).second) return true;
                IntFacet f{w, h, {}};
                for (std::size_t i = 0; i < np; ++i)
                    if (dot(w, pts[i]) == h) f.incident.push_back(i);
                out.push_back(std::move(f));
                return true;
            });
            return true;
        });
    }
    return out;
}

inline Rational int_volume(const std::vector<std::vector<Integer>>& pts, std::size_t d);

// Volume of a full-dimensional facet-defined polytope by coning from the
// lexicographically smallest point.
inline Rational int_volume(const std::vector<std::vector<Integer>>& pts, std::size_t d) {
    if (pts.empty()) return 0;
    if (d == 0) return 1;
    if (d == 1) {
        Integer lo = pts[0][0], hi = pts[0][0];
        for (const auto& p : pts) lo = std::min(lo, p[0]), hi = std::max(hi, p[0]);
        return Rational(hi - lo);
    }
    std::vector<std::size_t> all(pts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (affine_rank(pts, all) < d) return 0;
    std::size_t apex = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i] < pts[apex]) apex = i;
    Rational vol = 0;
    for (const auto& f : int_facets(pts, d, false)) {
        Integer height = dot(f.normal, pts[apex]) - f.offset;
        if (height == 0) continue;
        std::size_t j = 0;
        while (f.normal[j] == 0) ++j;
        std::vector<std::vector<Integer>> proj;
        for (auto i : f.incident) {
            std::vector<Integer> q;
            for (std::size_t k = 0; k < d; ++k)
                if (k != j) q.push_back(pts[i][k]);
            proj.push_back(std::move(q));
        }
        vol += Rational(height) / Rational(abs(f.normal[j])) * int_volume(proj, d - 1) / Rational(d);
    }
    return vol;
}

}  // namespace detail

// Points not dominated componentwise by another point (ties keep the first).
inline std::vector<Point> minimal_elements(const std::vector<Point>& pts) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
            if (i == j) continue;
            bool ge = true;
            for (std::size_t k = 0; k < pts[i].size() && ge; ++k)
                if (pts[i][k] < pts[j][k]) ge = false;
            if (ge && (pts[i] != pts[j] || j < i)) dominated = true;
        }
        if (!dominated) out.push_back(pts[i]);
    }
    return out;
}

inline std::vector<Facet> facets(const std::vector<Point>& pts, bool with_orthant) {
    if (pts.empty()) return {};
    const std::size_t d = pts[0].size();
    auto cloud = detail::integerize(pts);
    std::vector<Facet> out;
    for (auto& f : detail::int_facets(cloud.pts, d, with_orthant))
        out.push_back({f.normal, Rational(f.offset) / Rational(cloud.scale), f.incident});
    return out;
}

// Euclidean volume of conv(pts) in R^d (zero when not full-dimensional).
inline Rational volume(const std::vector<Point>& pts) {
    if (pts.empty()) return 0;
    const std::size_t d = pts[0].size();
    auto cloud = detail::integerize(pts);
    Rational v = detail::int_volume(cloud.pts, d);
    return v / Rational(pow(cloud.scale, static_cast<unsigned long>(d)));
}

// All bounded faces (vertices included) of conv(pts) + R_{>=0}^d, each with a
// strictly positive relative-interior normal.
inline std::vector<PolyFace> bounded_faces(const std::vector<Point>& pts) {
    std::vector<PolyFace> out;
    if (pts.empty()) return out;
    const std::size_t d = pts[0].size();
    auto cloud = detail::integerize(pts);
    auto fs = detail::int_facets(cloud.pts, d, true);
    // a face is identified by its incident points and the ray directions it contains
    using Key = std::pair<std::vector<std::size_t>, std::uint64_t>;
    auto rays_of = [&](const detail::IntFacet& f) {
        std::uint64_t mask = 0;
        for (std::size_t j = 0; j < d; ++j)
            if (f.normal[j] == 0) mask |= (std::uint64_t(1) << j);
        return mask;
    };
    std::set<Key> faces;
    std::vector<Key> frontier;
    for (const auto& f : fs) {
        Key k{f.incident, rays_of(f)};
        if (faces.insert(k).second) frontier.push_back(k);
    }
    while (!frontier.empty()) {
        std::vector<Key> next;
        for (const auto& k : frontier)
            for (const auto& f : fs) {
                Key nk;
                std::set_intersection(k.first.begin(), k.first.end(), f.incident.begin(), f.incident.end(),
                                      std::back_inserter(nk.first));
                nk.second = k.second & rays_of(f);
                if (nk.first.empty()) continue;
                if (faces.insert(nk).second) next.push_back(nk);
            }
        frontier = std::move(next);
    }
    for (const auto& k : faces) {
        if (k.second != 0) continue;
        PolyFace pf;
        pf.points = k.first;
        pf.normal.assign(d, Integer(0));
        for (const auto& f : fs) {
            if ((k.second & ~rays_of(f)) != 0) continue;
            if (!std::includes(f.incident.begin(), f.incident.end(), k.first.begin(), k.first.end())) continue;
            for (std::size_t j = 0; j < d; ++j) pf.normal[j] += f.normal[j];
        }
        detail::make_primitive(pf.normal);
        pf.dimension = static_cast<int>(detail::affine_rank(cloud.pts, k.first));
        out.push_back(std::move(pf));
    }
    std::sort(out.begin(), out.end(), [](const PolyFace& a, const PolyFace& b) {
        if (a.dimension != b.dimension) return a.dimension < b.dimension;
        return a.points < b.points;
    });
    return out;
}

// n! times the volume of the region of R_{>=0}^n below conv(pts) + R_{>=0}^n.
// Caller guarantees convenience (a point on every coordinate axis).
inline Rational region_below_normalized(const std::vector<Point>& pts_in) {
    auto pts = minimal_elements(pts_in);
    const std::size_t n = pts[0].size();
    auto cloud = detail::integerize(pts);
    Rational total = 0;
    Integer fact = factorial(static_cast<long>(n) - 1);
    for (const auto& f : detail::int_facets(cloud.pts, n, true)) {
        bool bounded = true;
        for (const auto& x : f.normal)
            if (x == 0) bounded = false;
        if (!bounded || f.offset == 0) continue;
        const std::size_t j = 0;
        std::vector<std::vector<Integer>> proj;
        for (auto i : f.incident) {
            std::vector<Integer> q;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) q.push_back(cloud.pts[i][k]);
            proj.push_back(std::move(q));
        }
        total += Rational(fact) * Rational(f.offset) / Rational(f.normal[j]) * detail::int_volume(proj, n - 1);
    }
    return total / Rational(pow(cloud.scale, static_cast<unsigned long>(n)));
}

}  // namespace sparsemult

#endif  // SPARSEMULT_POLYHEDRA_HPP
