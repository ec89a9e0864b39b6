#ifndef SPARSEMULT_LOCAL_MULT_HPP
#define SPARSEMULT_LOCAL_MULT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsemult/newton_geometry.hpp"

namespace sparsemult {

// A system of power series (or polynomials) in `dim` variables at the origin.
struct PolySystem {
    int dim = 0;
    std::vector<Series> polys;
    std::vector<std::vector<long>> axis_hints;  // per polynomial, per axis: scan limit for the staircase
    std::optional<long> mu_bound;               // proven bound for an isolated multiplicity, when known
};

inline PolySystem polynomial_system(const std::vector<Polynomial>& polys) {
    if (polys.empty()) throw DimensionMismatch("empty system");
    PolySystem ps;
    ps.dim = polys[0].nvars();
    Integer bezout = 1;
    for (const auto& p : polys) {
        if (p.nvars() != ps.dim) throw DimensionMismatch("polynomials in different numbers of variables");
        for (const auto& [e, c] : p.terms())
            for (long x : e)
                if (x < 0) throw PreconditionError("negative exponent in a polynomial system at the origin");
        ps.polys.push_back(Series::from_polynomial(p));
        std::vector<long> hints(ps.dim, 0);
        for (const auto& [e, c] : p.terms())
            for (int l = 0; l < ps.dim; ++l) hints[l] = std::max(hints[l], e[l]);
        ps.axis_hints.push_back(hints);
        bezout *= std::max(p.degree(), 0L);
    }
    // Bezout bound on isolated intersection multiplicities in affine space
    if (polys.size() == static_cast<std::size_t>(ps.dim) && bezout.fits_slong_p()) ps.mu_bound = bezout.get_si();
    return ps;
}

// Coefficient of z^alpha in sum_j c_j prod_i (q_i + z_i)^{a_ij}.
inline Rational shifted_coefficient(const SupportConfig& c, const std::vector<Rational>& row,
                                    const std::vector<Rational>& q, const Exponent& alpha) {
    Rational s = 0;
    for (int j = 0; j < c.N; ++j) {
        if (row[j] == 0) continue;
        Rational t = row[j];
        for (int i = 0; i < c.n && t != 0; ++i) {
            long a = c.points[j][i];
            if (alpha[i] != 0) t *= binomial(Rational(a), alpha[i]);
            if (q[i] != 1) t *= pow(q[i], a - alpha[i]);
        }
        s += t;
    }
    return s;
}

// n! Vol(conv A): the BKK bound for a square system with common support A.
inline Integer normalized_volume(const SupportConfig& c) {
    std::vector<Point> pts;
    for (const auto& p : c.points) pts.push_back(to_point(p));
    Rational v = volume(pts) * Rational(factorial(c.n));
    return v.get_num();
}

// F_k(z) = f_k(q + z), expanded on demand by binomial expansion.
inline PolySystem shift_system(const SparseSystem& sys) {
    PolySystem ps;
    const SupportConfig& c = sys.config;
    ps.dim = c.n;
    auto stats = sparsity_stats(sys.C, c);
    for (int k = 0; k < c.n; ++k) {
        auto row = std::make_shared<std::vector<Rational>>(sys.C.row(k));
        auto cfg = std::make_shared<SupportConfig>(c);
        auto q = std::make_shared<std::vector<Rational>>(sys.base_point);
        ps.polys.push_back(Series::from_coefficients(
            c.n, [row, cfg, q](const Exponent& a) { return shifted_coefficient(*cfg, *row, *q, a); }));
        ps.axis_hints.push_back(stats.t);
    }
    Integer bkk = normalized_volume(c);
    if (bkk.fits_slong_p()) ps.mu_bound = bkk.get_si();
    return ps;
}

enum class MultStatus { Finite, Infinite, CeilingExceeded, Unknown };

inline std::string to_string(MultStatus s) {
    switch (s) {
        case MultStatus::Finite: return "finite";
        case MultStatus::Infinite: return "infinite";
        case MultStatus::CeilingExceeded: return "ceiling-exceeded";
        case MultStatus::Unknown: return "unknown";
    }
    return "unknown";
}

struct MultiplicityResult {
    MultStatus status = MultStatus::Unknown;
    long value = 0;           // meaningful when status == Finite
    std::vector<long> ladder;  // D_1, D_2, ...

    bool finite() const { return status == MultStatus::Finite; }
    long require() const {
        if (status == MultStatus::Unknown) throw TruncationTooShort("series truncation too short for the ladder");
        if (status != MultStatus::Finite) throw PreconditionError("multiplicity is not finite (" + to_string(status) + ")");
        return value;
    }
};

namespace detail {

// dim C[z]_{<K} / (I + m^K) from truncations of the generators below degree K.
inline long ladder_step(int dim, const std::vector<Polynomial>& truncs, long K) {
    std::map<Exponent, std::uint32_t> col;
    for (const auto& e : exponents_up_to(dim, K - 1)) col.emplace(e, static_cast<std::uint32_t>(col.size()));
    EchelonBasis basis;
    for (const auto& t : truncs) {
        if (t.is_zero()) continue;
        std::vector<Rational> cs;
        for (const auto& [e, c] : t.terms()) cs.push_back(c);
        Integer l = lcm_of_denominators(cs);
        std::vector<std::pair<Exponent, Integer>> terms;
        for (const auto& [e, c] : t.terms()) {
            Rational s = c * l;
            terms.emplace_back(e, s.get_num());
        }
        long ord = t.order();
        for (const auto& g : exponents_up_to(dim, K - 1 - ord)) {
            long dg = total_degree(g);
            EchelonBasis::Row row;
            Exponent e(dim);
            for (const auto& [te, tc] : terms) {
                if (dg + total_degree(te) >= K) continue;
                for (int i = 0; i < dim; ++i) e[i] = g[i] + te[i];
                row.emplace_back(col.at(e), tc);
            }
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            basis.insert(std::move(row));
        }
    }
    return static_cast<long>(col.size()) - static_cast<long>(basis.rank());
}

}  // namespace detail

// Local multiplicity at the origin by the truncation ladder
// D_K = dim O/(I + m^K); D_{K+1} = D_K means m^K lies in I (Nakayama).
// Before stabilization D_K >= K, so a bound on mu also bounds the ladder.
// `precision` limits the available series terms (unlimited when absent).
inline MultiplicityResult multiplicity_at_origin(const PolySystem& ps, std::optional<long> ceiling = std::nullopt,
                                                 std::optional<long> precision = std::nullopt) {
    for (const auto& s : ps.polys) {
        Exponent zero(ps.dim, 0);
        if (s.coefficient(zero) != 0) throw OriginNotRoot("a polynomial does not vanish at the origin");
    }
    constexpr long kDefaultCeiling = 64;
    long limit = kDefaultCeiling;
    bool rigorous = false;
    if (ceiling) {
        limit = *ceiling;
    } else if (ps.mu_bound && *ps.mu_bound <= kDefaultCeiling) {
        limit = *ps.mu_bound;
        rigorous = true;
    }
    MultiplicityResult res;
    long prev = -1;
    for (long K = 1;; ++K) {
        if (precision && K - 1 > *precision) {
            res.status = MultStatus::Unknown;
            return res;
        }
        std::vector<Polynomial> truncs;
        for (const auto& s : ps.polys) truncs.push_back(s.truncate(K - 1));
        long D = detail::ladder_step(ps.dim, truncs, K);
        res.ladder.push_back(D);
        if (D == prev) {
            res.status = MultStatus::Finite;
            res.value = D;
            return res;
        }
        if (D > limit) {
            res.status = rigorous ? MultStatus::Infinite : MultStatus::CeilingExceeded;
            return res;
        }
        prev = D;
    }
}

// Multiplicity of series known only through degree T.
inline MultiplicityResult multiplicity_of_series(const std::vector<Polynomial>& truncated_series, long T,
                                                 std::optional<long> ceiling = std::nullopt) {
    if (truncated_series.empty()) throw DimensionMismatch("empty system");
    PolySystem ps;
    ps.dim = truncated_series[0].nvars();
    for (const auto& p : truncated_series) {
        auto t = p.truncated(T);
        ps.polys.push_back(Series::from_polynomial(t));
        ps.axis_hints.emplace_back(ps.dim, T);
    }
    return multiplicity_at_origin(ps, ceiling, T);
}

struct TruncatedSystem {
    std::vector<int> K;                     // zero-based variable indices
    std::vector<Integer> weight;            // positive weight on K
    std::vector<Polynomial> initial_forms;  // in |K| variables
    int face_dimension = 0;
};

struct SystemStaircases {
    std::vector<Staircase> staircases;
    std::vector<std::map<Exponent, Rational>> minimal_coefficients;
};

inline SystemStaircases system_staircases(const PolySystem& ps, bool strict) {
    SystemStaircases out;
    for (std::size_t i = 0; i < ps.polys.size(); ++i) {
        const Series& s = ps.polys[i];
        Staircase st = staircase_of(
            ps.dim, [&](const Exponent& e) { return s.coefficient(e) != 0; }, ps.axis_hints[i], strict);
        std::map<Exponent, Rational> coeffs;
        for (const auto& e : st.minimal_points) coeffs.emplace(e, s.coefficient(e));
        out.staircases.push_back(std::move(st));
        out.minimal_coefficients.push_back(std::move(coeffs));
    }
    return out;
}

inline SystemStaircases convenient_staircases(const PolySystem& ps) {
    try {
        return system_staircases(ps, true);
    } catch (const VanishesOnAxis& e) {
        throw NotConvenient("a polynomial vanishes on coordinate axis " + std::to_string(e.axis() + 1));
    }
}

// Initial systems (G_i|_K)^w for every nonempty K and every bounded face of
// the Minkowski sum of the restricted Newton polyhedra.
inline std::vector<TruncatedSystem> face_truncations(const PolySystem& ps, const SystemStaircases& sc) {
    std::vector<TruncatedSystem> out;
    const int n = ps.dim;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> K;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) K.push_back(i);
        std::vector<std::vector<std::pair<Exponent, Rational>>> restricted;
        ConvenientPolytope sum;
        bool first = true;
        for (std::size_t p = 0; p < ps.polys.size(); ++p) {
            std::vector<std::pair<Exponent, Rational>> terms;
            for (const auto& [e, c] : sc.minimal_coefficients[p]) {
                bool inside = true;
                for (int i = 0; i < n && inside; ++i)
                    if (!(mask & (1u << i)) && e[i] != 0) inside = false;
                if (!inside) continue;
                Exponent f;
                for (int i : K) f.push_back(e[i]);
                terms.emplace_back(std::move(f), c);
            }
            if (terms.empty()) throw NotConvenient("restriction to a coordinate subspace vanishes");
            ConvenientPolytope P;
            for (const auto& t : terms) P.vertices.push_back(to_point(t.first));
            sum = first ? P : minkowski_sum(sum, P);
            first = false;
            restricted.push_back(std::move(terms));
        }
        auto pts = minimal_elements(sum.vertices);
        for (const auto& face : bounded_faces(pts)) {
            TruncatedSystem ts;
            ts.K = K;
            ts.weight = face.normal;
            ts.face_dimension = face.dimension;
            for (const auto& terms : restricted) {
                Integer best;
                bool have = false;
                for (const auto& t : terms) {
                    Integer v = 0;
                    for (std::size_t i = 0; i < K.size(); ++i) v += face.normal[i] * t.first[i];
                    if (!have || v < best) best = v, have = true;
                }
                Polynomial in(static_cast<int>(K.size()));
                for (const auto& t : terms) {
                    Integer v = 0;
                    for (std::size_t i = 0; i < K.size(); ++i) v += face.normal[i] * t.first[i];
                    if (v == best) in.add_term(t.first, t.second);
                }
                ts.initial_forms.push_back(std::move(in));
            }
            out.push_back(std::move(ts));
        }
    }
    return out;
}

inline std::vector<TruncatedSystem> face_truncations(const PolySystem& ps) {
    return face_truncations(ps, convenient_staircases(ps));
}

enum class FaceStatus { NonDegenerate, Degenerate, Unknown };

inline std::string to_string(FaceStatus s) {
    switch (s) {
        case FaceStatus::NonDegenerate: return "non-degenerate";
        case FaceStatus::Degenerate: return "degenerate";
        case FaceStatus::Unknown: return "unknown";
    }
    return "unknown";
}

struct FaceCertificate {
    TruncatedSystem system;
    FaceStatus status = FaceStatus::Unknown;
    std::string reason;
};

struct NondegeneracyReport {
    std::vector<FaceCertificate> faces;
    FaceStatus overall = FaceStatus::Unknown;
};

// Decide whether an initial system has a zero in the torus, when this can
// be done by a single monomial or by reduction to one variable.
inline FaceCertificate certify_face(const TruncatedSystem& ts) {
    FaceCertificate fc{ts, FaceStatus::Unknown, ""};
    for (const auto& f : ts.initial_forms)
        if (f.size() == 1) {
            fc.status = FaceStatus::NonDegenerate;
            fc.reason = "monomial initial form";
            return fc;
        }
    const std::size_t k = ts.K.size();
    std::vector<std::vector<Integer>> diffs;
    for (const auto& f : ts.initial_forms) {
        const Exponent& base = f.terms().begin()->first;
        for (const auto& [e, c] : f.terms()) {
            std::vector<Integer> d(k);
            bool nz = false;
            for (std::size_t i = 0; i < k; ++i) {
                d[i] = e[i] - base[i];
                if (d[i] != 0) nz = true;
            }
            if (nz) diffs.push_back(std::move(d));
        }
    }
    IntegerMatrix dm(diffs.size(), k);
    for (std::size_t r = 0; r < diffs.size(); ++r)
        for (std::size_t i = 0; i < k; ++i) dm(r, i) = diffs[r][i];
    if (rank(dm) >= 2) {
        fc.reason = "initial forms span a face of dimension >= 2";
        return fc;
    }
    std::vector<Integer> v = diffs[0];
    detail::make_primitive(v);
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] < 0)
        for (auto& x : v) x = -x;
    UniPoly g;
    bool first = true;
    for (const auto& f : ts.initial_forms) {
        const Exponent& base = f.terms().begin()->first;
        std::vector<std::pair<long, Rational>> ts_;
        long lo = 0;
        for (const auto& [e, c] : f.terms()) {
            Integer num = e[lead] - base[lead];
            long t = to_long(Integer(num / v[lead]));
            ts_.emplace_back(t, c);
            lo = std::min(lo, t);
        }
        UniPoly u;
        for (const auto& [t, c] : ts_) {
            std::size_t idx = static_cast<std::size_t>(t - lo);
            if (u.size() <= idx) u.resize(idx + 1, Rational(0));
            u[idx] += c;
        }
        g = first ? uni_gcd(u, UniPoly{}) : uni_gcd(g, u);
        first = false;
    }
    if (g.size() > 1) {
        fc.status = FaceStatus::Degenerate;
        fc.reason = "initial forms share a nonzero root";
    } else {
        fc.status = FaceStatus::NonDegenerate;
        fc.reason = "univariate reductions are coprime";
    }
    return fc;
}

inline NondegeneracyReport nondegeneracy_check(const PolySystem& ps, const SystemStaircases& sc) {
    NondegeneracyReport rep;
    bool any_unknown = false, any_degenerate = false;
    for (const auto& ts : face_truncations(ps, sc)) {
        FaceCertificate fc = certify_face(ts);
        if (fc.status == FaceStatus::Degenerate) any_degenerate = true;
        if (fc.status == FaceStatus::Unknown) any_unknown = true;
        rep.faces.push_back(std::move(fc));
    }
    rep.overall = any_degenerate ? FaceStatus::Degenerate
                                 : (any_unknown ? FaceStatus::Unknown : FaceStatus::NonDegenerate);
    return rep;
}

inline NondegeneracyReport nondegeneracy_check(const PolySystem& ps) {
    return nondegeneracy_check(ps, convenient_staircases(ps));
}

// Newton polytopes (as staircase point sets) of a convenient system and
// their mixed covolume.
inline Rational system_covolume(const SystemStaircases& sc) {
    std::vector<ConvenientPolytope> polys;
    for (const auto& st : sc.staircases) polys.push_back(polytope_of(st.minimal_points));
    return mixed_covolume(polys);
}

// Order of vanishing of f at q: lowest total degree in f(q + z).
inline long hypersurface_multiplicity(const Polynomial& f, const std::vector<Rational>& q) {
    if (f.is_zero()) throw PreconditionError("zero polynomial");
    const int n = f.nvars();
    if (static_cast<int>(q.size()) != n) throw DimensionMismatch("point dimension");
    long span = 0;
    for (int i = 0; i < n; ++i) {
        long lo = f.terms().begin()->first[i], hi = lo;
        for (const auto& [e, c] : f.terms()) lo = std::min(lo, e[i]), hi = std::max(hi, e[i]);
        // off the torus the Laurent shift by x^lo is unavailable
        span += q[i] == 0 ? hi : hi - lo;
    }
    for (long d = 0; d <= span; ++d)
        for (const auto& alpha : exponents_of_degree(n, d)) {
            Rational s = 0;
            for (const auto& [e, c] : f.terms()) {
                Rational t = c;
                for (int i = 0; i < n && t != 0; ++i) {
                    if (alpha[i] != 0) t *= binomial(Rational(e[i]), alpha[i]);
                    if (t != 0) t *= pow(q[i], e[i] - alpha[i]);
                }
                s += t;
            }
            if (s != 0) return d;
        }
    throw PreconditionError("no nonzero derivative found");  // unreachable for nonzero f
}

// Same quantity at the all-ones point via A^(k) kernel membership.
inline long hypersurface_multiplicity_via_kernel(const SupportConfig& c, const std::vector<Rational>& coeffs) {
    bool nz = false;
    for (const auto& x : coeffs)
        if (x != 0) nz = true;
    if (!nz) throw PreconditionError("zero coefficient vector");
    for (long k = 0;; ++k) {
        RationalMatrix Ak = to_rational(higher_matrix(c, k));
        auto v = Ak * coeffs;
        for (const auto& x : v)
            if (x != 0) return k;
    }
}

}  // namespace sparsemult

#endif  // SPARSEMULT_LOCAL_MULT_HPP
