#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsemult/sparsemult.hpp"

using namespace sparsemult;

namespace {

struct Options {
    std::vector<std::string> points;  // several only for covolume
    std::string coeffs;
    std::string file;
    std::string at = "one";
    std::optional<long> order;
    std::string format = "table";
    std::uint64_t seed = 1;
    std::optional<long> ceiling;
    int n = 0, m = 0;
    std::string d_values;
    std::string target = "all";
};

Json exps_json(const std::vector<Exponent>& v) { return points_json(v); }

Json ints_json(const std::vector<Integer>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

Json staircase_json(const Staircase& st) {
    Json j;
    j["minimal_points"] = exps_json(st.minimal_points);
    Json ax = Json::array();
    for (const auto& a : st.axis_intercepts) ax.push_back(a ? Json(*a) : Json(nullptr));
    j["axis_intercepts"] = ax;
    j["convenient"] = is_convenient(st);
    return j;
}

Json diagram_json(const Staircase& st) {
    Json j = staircase_json(st);
    NewtonDiagram nd = newton_diagram(st);
    j["vertices"] = exps_json(nd.vertices);
    Json faces = Json::array();
    for (const auto& f : nd.faces) {
        if (f.dimension == 0) continue;
        Json fj;
        fj["dimension"] = f.dimension;
        fj["normal"] = ints_json(f.normal);
        fj["vertices"] = exps_json(f.vertices);
        faces.push_back(fj);
    }
    j["faces"] = faces;
    return j;
}

Json mult_json(const MultiplicityResult& r) {
    Json j;
    j["status"] = to_string(r.status);
    j["multiplicity"] = r.finite() ? Json(r.value) : Json(nullptr);
    j["ladder"] = r.ladder;
    return j;
}

Json nondeg_json(const NondegeneracyReport& rep, const char* prefix) {
    Json j;
    j["overall"] = to_string(rep.overall);
    Json faces = Json::array();
    for (const auto& fc : rep.faces) {
        if (fc.system.face_dimension == 0 && fc.status == FaceStatus::NonDegenerate) continue;
        Json f;
        std::vector<long> vars;
        for (int k : fc.system.K) vars.push_back(k + 1);
        f["variables"] = vars;
        f["weight"] = ints_json(fc.system.weight);
        f["dimension"] = fc.system.face_dimension;
        f["status"] = to_string(fc.status);
        f["reason"] = fc.reason;
        Json forms = Json::array();
        for (const auto& p : fc.system.initial_forms) {
            // name variables by their original index
            Polynomial full(static_cast<int>(fc.system.K.empty() ? 0 : fc.system.K.back() + 1));
            for (const auto& [e, c] : p.terms()) {
                Exponent g(full.nvars(), 0);
                for (std::size_t i = 0; i < fc.system.K.size(); ++i) g[fc.system.K[i]] = e[i];
                full.add_term(g, c);
            }
            forms.push_back(full.to_string(prefix));
        }
        f["initial_forms"] = forms;
        faces.push_back(f);
    }
    j["faces_of_positive_dimension"] = faces;
    return j;
}

// Convenience, non-degeneracy and the covolume comparison for a system at the origin.
Json certificate_json(const PolySystem& ps, const MultiplicityResult& mu, const char* prefix) {
    Json j;
    SystemStaircases sc;
    try {
        sc = system_staircases(ps, true);
    } catch (const VanishesOnAxis& e) {
        j["convenient"] = false;
        j["not_convenient_axis"] = e.axis() + 1;
        return j;
    }
    j["convenient"] = true;
    Json diagrams = Json::array();
    for (const auto& st : sc.staircases) diagrams.push_back(diagram_json(st));
    j["diagrams"] = diagrams;
    auto rep = nondegeneracy_check(ps, sc);
    j["nondegeneracy"] = nondeg_json(rep, prefix);
    Rational cov = system_covolume(sc);
    j["covolume"] = cov.get_str();
    std::string claim;
    if (!mu.finite())
        claim = "multiplicity not determined";
    else if (rep.overall == FaceStatus::NonDegenerate)
        claim = Rational(mu.value) == cov ? "equal (certified non-degenerate)" : "MISMATCH despite certificate";
    else if (rep.overall == FaceStatus::Unknown)
        claim = Rational(mu.value) == cov ? "consistent (uncertified)" : "multiplicity exceeds covolume (uncertified)";
    else
        claim = Rational(mu.value) >= cov ? "multiplicity >= covolume (degenerate)" : "MISMATCH: multiplicity below covolume";
    j["covolume_vs_multiplicity"] = claim;
    return j;
}

SparseSystem system_from(const Options& o, bool need_coeffs = true) {
    ParsedInput in;
    if (!o.file.empty()) {
        in = parse_input_file(o.file);
    } else {
        if (o.points.empty()) throw ParseError("give --file or --points");
        in.config = build_config(parse_points_inline(o.points[0]));
        if (!o.coeffs.empty()) in.C = parse_matrix_inline(o.coeffs);
    }
    if (!in.C) {
        if (need_coeffs) throw ParseError("no coefficient matrix (use --coeffs or a \"C\" field)");
        return SparseSystem{in.config, RationalMatrix(0, in.config.N), {}};
    }
    std::vector<Rational> base;
    if (o.at != "one" && o.at != "origin") base = parse_vector_inline(o.at);
    return make_system(in.config, *in.C, base);
}

Json input_echo(const SparseSystem& sys, const std::string& at) {
    Json j;
    j["points"] = points_json(sys.config.points);
    j["C"] = matrix_json(sys.C);
    j["n"] = sys.config.n;
    j["m"] = sys.config.m;
    j["at"] = at;
    return j;
}

PolySystem at_origin_system(const SparseSystem& sys) {
    std::vector<Polynomial> polys;
    for (std::size_t k = 0; k < sys.C.rows(); ++k) polys.push_back(row_polynomial(sys.config, sys.C.row(k)));
    return polynomial_system(polys);
}

Json cmd_mult(const Options& o) {
    SparseSystem sys = system_from(o);
    Json j;
    j["input"] = input_echo(sys, o.at);
    PolySystem ps = o.at == "origin" ? at_origin_system(sys) : shift_system(sys);
    auto mu = multiplicity_at_origin(ps, o.ceiling);
    j["result"] = mult_json(mu);
    j["multiplicity"] = mu.finite() ? Json(mu.value) : Json(to_string(mu.status));
    Json cert = certificate_json(ps, mu, "z");
    if (!cert["convenient"].get<bool>() && o.at != "origin") {
        auto rep = repair_convenience(sys, o.seed);
        Json rj;
        rj["repaired"] = rep.repaired;
        rj["trials"] = rep.trials;
        if (rep.repaired) {
            rj["M"] = matrix_json(rep.M);
            PolySystem ps2 = shift_system(rep.system);
            rj["certificate"] = certificate_json(ps2, mu, "z");
        }
        cert["repair"] = rj;
    }
    j["certificate"] = cert;
    return j;
}

Json gale_json(const GaleData& gd) {
    Json j;
    j["B"] = matrix_json(gd.B);
    j["D"] = matrix_json(gd.D);
    GaleSystem gs = gale_system(gd);
    Json p = Json::array(), g = Json::array(), phi = Json::array();
    for (int i = 0; i < gd.config.N; ++i) p.push_back(gs.p(i).to_string("y"));
    for (int k = 0; k < gs.m; ++k) {
        g.push_back(gs.g[k].truncate(*gs.g[k].exact_degree()).to_string("y"));
        auto factor = [](const std::vector<std::pair<std::size_t, long>>& f) {
            std::string s;
            for (const auto& [i, b] : f) {
                if (!s.empty()) s += "*";
                s += "p" + std::to_string(i);
                if (b != 1) s += "^" + std::to_string(b);
            }
            if (s.empty()) return std::string("1");
            return f.size() > 1 ? "(" + s + ")" : s;
        };
        phi.push_back(factor(gs.phi[k].numerator) + " / " + factor(gs.phi[k].denominator));
    }
    j["p"] = p;
    j["g"] = g;
    j["phi"] = phi;
    return j;
}

GaleData gale_from(const Options& o, const SparseSystem& sys) {
    if (!o.file.empty()) {
        ParsedInput in = parse_input_file(o.file);
        if (in.B && in.D) return gale_data(sys, *in.B, *in.D);
        if (in.B) return gale_data(sys, *in.B, reduced_gale_dual_D(sys.C));
        if (in.D) return gale_data(sys, gale_dual_B(anchor_at_zero(sys.config, 0).config), *in.D);
    }
    return gale_data(sys);
}

Json cmd_gale(const Options& o) {
    SparseSystem sys = system_from(o);
    GaleData gd = gale_from(o, sys);
    Json j;
    j["input"] = input_echo(sys, "one");
    j["gale"] = gale_json(gd);
    PolySystem ps = gale_poly_system(gd);
    auto mu = multiplicity_at_origin(ps, o.ceiling);
    j["result"] = mult_json(mu);
    j["multiplicity"] = mu.finite() ? Json(mu.value) : Json(to_string(mu.status));
    j["certificate"] = certificate_json(ps, mu, "y");
    return j;
}

Json cmd_hdual(const Options& o) {
    SparseSystem sys = system_from(o);
    GaleData gd = gale_from(o, sys);
    PolySystem ps = hdual_poly_system(gd);
    long T = 0;
    if (o.order) {
        T = *o.order;
    } else {
        try {
            T = to_long(system_covolume(convenient_staircases(gale_poly_system(gd)))) + 2;
        } catch (const NotConvenient&) {
            T = 8;
        }
    }
    Json j;
    j["input"] = input_echo(sys, "one");
    j["order"] = T;
    Json H = Json::array();
    for (const auto& s : ps.polys) H.push_back(s.truncate(T).to_string("y"));
    j["H"] = H;
    auto mu = multiplicity_at_origin(ps, o.ceiling);
    j["result"] = mult_json(mu);
    j["multiplicity"] = mu.finite() ? Json(mu.value) : Json(to_string(mu.status));
    j["certificate"] = certificate_json(ps, mu, "y");
    return j;
}

Json square_json(const SparseSystem& sys, std::optional<long> ceiling) {
    DualitySquare sq = duality_square(sys, ceiling);
    Json j;
    j["gale"] = gale_json(sq.gale);
    j["mu_original_at_one"] = mult_json(sq.mu);
    j["mu_gale_at_origin"] = mult_json(sq.mu_gale);
    j["mu_prime_hdual_at_origin"] = mult_json(sq.mu_prime);
    j["mu_prime_phi_corner_at_origin"] = mult_json(sq.mu_phi);
    j["gale_equals_original"] = sq.mu.finite() && sq.mu_gale.finite() && sq.mu.value == sq.mu_gale.value;
    j["mu_equals_mu_prime"] = sq.mu.finite() && sq.mu_prime.finite() && sq.mu.value == sq.mu_prime.value;
    j["diagrams_equal"] = sq.diagrams_equal ? Json(*sq.diagrams_equal) : Json("not convenient");
    Json gs = Json::array();
    for (const auto& st : sq.gale_staircases) gs.push_back(exps_json(st.minimal_points));
    j["gale_staircases"] = gs;
    auto lp = multiplicity_ge_two(sq.gale);
    Json l;
    l["det_A_C"] = lp.primal_det.get_str();
    l["det_B_D"] = lp.dual_det.get_str();
    l["agree"] = lp.agree;
    j["linear_part"] = l;
    return j;
}

Json cmd_square(const Options& o) {
    SparseSystem sys = system_from(o);
    Json j;
    j["input"] = input_echo(sys, "one");
    j["square"] = square_json(sys, o.ceiling);
    return j;
}

Json cmd_diagram(const Options& o) {
    SparseSystem sys = system_from(o);
    PolySystem ps = o.at == "origin" ? at_origin_system(sys) : shift_system(sys);
    auto sc = system_staircases(ps, false);
    Json j;
    j["input"] = input_echo(sys, o.at);
    Json d = Json::array();
    for (const auto& st : sc.staircases) d.push_back(is_convenient(st) ? diagram_json(st) : staircase_json(st));
    j["diagrams"] = d;
    return j;
}

ConvenientPolytope polytope_from(const std::string& s) {
    ConvenientPolytope P;
    for (const auto& e : parse_points_inline(s)) P.vertices.push_back(to_point(e));
    return P;
}

Json cmd_covolume(const Options& o) {
    if (o.points.empty()) throw ParseError("give one --points per polytope");
    std::vector<ConvenientPolytope> polys;
    for (const auto& s : o.points) polys.push_back(polytope_from(s));
    Json j;
    Json in = Json::array();
    for (const auto& P : polys) {
        Json v = Json::array();
        for (const auto& p : P.vertices) v.push_back(vector_json(p));
        in.push_back(v);
    }
    j["polytopes"] = in;
    if (polys.size() == 1)
        j["covolume"] = covolume_single(polys[0]).get_str();
    else
        j["mixed_covolume"] = mixed_covolume(polys).get_str();
    return j;
}

template <typename T>
Json bound_json(const Bound<T>& b) {
    if (b.value) return b.value->get_str();
    return "n/a (" + b.note + ")";
}

Json bounds_json(const BoundsReport& r) {
    Json j;
    j["kouchnirenko"] = bound_json(r.kouchnirenko);
    j["gamma_covolume"] = bound_json(r.gamma_covolume);
    j["coarse"] = bound_json(r.coarse);
    j["diag"] = bound_json(r.diag);
    j["box"] = bound_json(r.box);
    j["planar"] = bound_json(r.planar);
    j["dual_kouchnirenko"] = bound_json(r.dual_kouchnirenko);
    j["dual_gamma_covolume"] = bound_json(r.dual_gamma_covolume);
    j["dual_coarse"] = bound_json(r.dual_coarse);
    j["dual_diag"] = bound_json(r.dual_diag);
    j["dual_planar"] = bound_json(r.dual_planar);
    j["conjectured"] = r.conjectured.get_str();
    j["gabrielov"] = r.gabrielov.get_str();
    return j;
}

Json cmd_bounds(const Options& o) {
    SparseSystem sys = system_from(o);
    Json j;
    j["input"] = input_echo(sys, "one");
    j["bounds"] = bounds_json(bounds_report(sys));
    PolySystem ps = shift_system(sys);
    auto mu = multiplicity_at_origin(ps, o.ceiling);
    j["multiplicity"] = mu.finite() ? Json(mu.value) : Json(to_string(mu.status));
    j["certificate"] = certificate_json(ps, mu, "z");
    return j;
}

Json witness_json(int n, int m, std::optional<long> ceiling) {
    WitnessSystem w = witness_system(n, m);
    Json j;
    j["n"] = n;
    j["m"] = m;
    j["C"] = matrix_json(w.C);
    j["A"] = matrix_json(w.A);
    Json polys = Json::array();
    for (const auto& p : w.polys) polys.push_back(p.to_string("x"));
    j["polynomials"] = polys;
    PolySystem ps = shift_system(w.system);
    auto mu = multiplicity_at_origin(ps, ceiling);
    j["multiplicity"] = mu.finite() ? Json(mu.value) : Json(to_string(mu.status));
    Integer conj = binomial(n + m, n);
    j["binomial_n_plus_m_choose_n"] = conj.get_str();
    j["equals_binomial"] = mu.finite() && Integer(mu.value) == conj;
    auto sc = convenient_staircases(ps);
    bool match = true;
    for (int k = 1; k <= n; ++k)
        if (sc.staircases[k - 1].minimal_points != witness_diagram_prediction(n, m, k).minimal_points) match = false;
    j["diagrams_match_prediction"] = match;
    return j;
}

Json cmd_witness(const Options& o) {
    if (o.n < 1 || o.m < 1) throw PreconditionError("give --n and --m (both >= 1)");
    return witness_json(o.n, o.m, o.ceiling);
}

Json cmd_cyclic(const Options& o) {
    if (o.d_values.empty()) throw ParseError("give --d values");
    auto d = parse_vector_inline(o.d_values);
    Json j;
    int n = o.n > 0 ? o.n : static_cast<int>(d.size()) - 2;
    Json pts = Json::array();
    for (const auto& p : cyclic_config(d, n)) pts.push_back(vector_json(p));
    j["configuration"] = pts;
    if (!o.points.empty()) {
        SupportConfig c = build_config(parse_points_inline(o.points[0]));
        j["certificate_valid"] = verify_cyclic(c, d);
        return j;
    }
    if (static_cast<int>(d.size()) == n + 2) {
        SparseSystem sys = max_mult_circuit_system(d);
        j["points"] = points_json(sys.config.points);
        j["C"] = matrix_json(sys.C);
        auto mu = multiplicity_at_origin(shift_system(sys), o.ceiling);
        j["multiplicity"] = mu.finite() ? Json(mu.value) : Json(to_string(mu.status));
        j["n_plus_one"] = n + 1;
    }
    return j;
}

Json cmd_hyper(const Options& o) {
    Json j;
    if (!o.points.empty() || !o.file.empty()) {
        SparseSystem sys = system_from(o, false);
        const SupportConfig& c = sys.config;
        j["points"] = points_json(c.points);
        j["n"] = c.n;
        j["m"] = c.m;
        j["uniform"] = is_uniform(c);
        if (sys.C.rows() > 0) {
            std::vector<Rational> q(c.n, Rational(1));
            if (o.at != "one") q = parse_vector_inline(o.at);
            Json mults = Json::array();
            for (std::size_t k = 0; k < sys.C.rows(); ++k)
                mults.push_back(hypersurface_multiplicity(row_polynomial(c, sys.C.row(k)), q));
            j["multiplicity"] = mults.size() == 1 ? mults[0] : mults;
        }
        auto mh = max_hypersurface_mult(c);
        j["max_multiplicity"] = mh.mu;
        j["max_multiplicity_witness"] = ints_json(mh.witness);
        j["full_row_rank"] = mh.full_row_rank;
        if (c.m >= 1) {
            auto hb = hypersurface_bounds(c.n, c.m);
            j["sigma"] = hb.sigma;
            j["b"] = hb.b;
        }
        return j;
    }
    if (o.n < 1 || o.m < 1) throw PreconditionError("give --points, or --n and --m");
    auto hb = hypersurface_bounds(o.n, o.m);
    j["n"] = o.n;
    j["m"] = o.m;
    j["sigma"] = hb.sigma;
    j["b"] = hb.b;
    j["mu0_bracket"] = std::vector<long>{hb.mu0_lo, hb.mu0_hi};
    return j;
}

// ---- reproductions ----

Json repro_fig1() {
    ConvenientPolytope P;
    for (Exponent e : {Exponent{3, 0}, Exponent{1, 1}, Exponent{0, 3}}) P.vertices.push_back(to_point(e));
    Json j;
    j["polytope"] = "conv{(3,0),(1,1),(0,3)}";
    Staircase st;
    st.dim = 2;
    st.minimal_points = {{0, 3}, {1, 1}, {3, 0}};
    st.axis_intercepts = {3, 3};
    j["diagram"] = diagram_json(st);
    j["covolume"] = covolume_single(P).get_str();
    return j;
}

Json repro_walkthrough() {
    SparseSystem sys = make_system(build_config({{0}, {1}, {2}, {3}}), RationalMatrix{{-1, 3, -3, 1}});
    Json j;
    j["system"] = "(x-1)^3 = -1 + 3x - 3x^2 + x^3";
    j["square"] = square_json(sys, std::nullopt);
    GaleData first = gale_data(sys);
    PolySystem g1 = gale_poly_system(first);
    j["first_choice"] = certificate_json(g1, multiplicity_at_origin(g1), "y");
    IntegerMatrix B2{{1, -1}, {-2, 3}, {1, -3}, {0, 1}};
    RationalMatrix D2{{1, 0, 0}, {1, 1, 0}, {1, 2, 1}, {1, 3, 3}};
    GaleData second = gale_data(sys, B2, D2);
    Json s;
    s["choice"] = "a=1, b=0, c=2, d=1 with B columns (1,-2,1,0), (-1,3,-3,1)";
    s["gale"] = gale_json(second);
    PolySystem g2 = gale_poly_system(second);
    auto mu2 = multiplicity_at_origin(g2);
    s["multiplicity"] = mu2.value;
    s["certificate"] = certificate_json(g2, mu2, "y");
    j["modified_choice"] = s;
    return j;
}

Json repro_n2() {
    Json rows = Json::array();
    for (int m = 1; m <= 4; ++m) {
        WitnessSystem w = witness_system(2, m);
        PolySystem ps = shift_system(w.system);
        auto mu = multiplicity_at_origin(ps);
        Json r;
        r["m"] = m;
        r["multiplicity"] = mu.value;
        r["binomial_m_plus_2_choose_2"] = binomial(m + 2, 2).get_str();
        r["certificate"] = certificate_json(ps, mu, "z");
        rows.push_back(r);
    }
    Json j;
    j["witness_n2"] = rows;
    return j;
}

Json repro_table1() {
    Json rows = Json::array();
    for (int m = 1; m <= 10; ++m) {
        auto h = hypersurface_bounds(2, m);
        Json r;
        r["m"] = m;
        r["sigma"] = h.sigma;
        r["b"] = h.b;
        rows.push_back(r);
    }
    Json j;
    j["table1"] = rows;
    return j;
}

Json repro_highmult() {
    Polynomial f(3);
    for (int k = 0; k <= 4; ++k) {
        Rational c(binomial(4, k));
        if (k % 2) c = -c;
        f.add_term({1, k, 0}, c);
        f.add_term({0, 0, k}, c);
    }
    std::vector<Exponent> pts;
    for (const auto& [e, c] : f.terms()) pts.push_back(e);
    SupportConfig cfg = build_config(pts);
    Json j;
    j["polynomial"] = f.to_string("x");
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    j["uniform"] = is_uniform(cfg);
    j["multiplicity_at_ones"] = hypersurface_multiplicity(f, {1, 1, 1});
    j["b_3_6"] = hypersurface_bounds(3, 6).b;
    j["max_multiplicity_of_support"] = max_hypersurface_mult(cfg).mu;
    return j;
}

Json repro_witness() {
    Json rows = Json::array();
    const int grid[][2] = {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}};
    for (const auto& g : grid) {
        Json w = witness_json(g[0], g[1], std::nullopt);
        Json r;
        r["n"] = g[0];
        r["m"] = g[1];
        r["multiplicity"] = w["multiplicity"];
        r["binomial"] = w["binomial_n_plus_m_choose_n"];
        r["equal"] = w["equals_binomial"];
        r["diagrams_match_prediction"] = w["diagrams_match_prediction"];
        rows.push_back(r);
    }
    Json j;
    j["witness_grid"] = rows;
    return j;
}

const std::vector<std::string> kReproductions = {"fig1", "walkthrough", "n2", "table1", "highmult", "witness"};

Json reproduce_json(const std::string& name) {
    if (name == "fig1") return repro_fig1();
    if (name == "walkthrough") return repro_walkthrough();
    if (name == "n2") return repro_n2();
    if (name == "table1") return repro_table1();
    if (name == "highmult") return repro_highmult();
    if (name == "witness") return repro_witness();
    throw ParseError("unknown reproduction '" + name + "'");
}

std::string reproduce_text(const std::string& name, const std::string& format) {
    if (format == "json") return emit_json(reproduce_json(name));
    if (name == "table1") return table1_text();
    return render_table(reproduce_json(name));
}

void emit(const Json& j, const std::string& format) {
    if (format == "json")
        std::cout << emit_json(j);
    else
        std::cout << render_table(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local multiplicities of sparse polynomial systems"};
    app.require_subcommand(1);
    Options o;
    std::optional<long> order, ceiling;
    bool timings = false;

    auto common = [&](CLI::App* sub, bool system_input) {
        if (system_input) {
            sub->add_option("--points", o.points, "points, e.g. 0,1,2,3 or 0,0;1,0;0,1");
            sub->add_option("--coeffs", o.coeffs, "coefficient rows split by ';', entries by ','");
            sub->add_option("--file", o.file, "JSON input file");
            sub->add_option("--at", o.at, "one, origin, or a comma separated point");
        }
        sub->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
        sub->add_option("--ceiling", ceiling, "stop the multiplicity ladder above this value");
        sub->add_option("--seed", o.seed, "seed for randomized searches");
        sub->add_flag("--timings", timings, "add wall-clock seconds to the report (output no longer reproducible)");
    };

    std::map<std::string, std::function<Json(const Options&)>> handlers = {
        {"mult", cmd_mult},     {"gale", cmd_gale},       {"hdual", cmd_hdual}, {"square", cmd_square},
        {"diagram", cmd_diagram}, {"covolume", cmd_covolume}, {"bounds", cmd_bounds}, {"witness", cmd_witness},
        {"cyclic", cmd_cyclic}, {"hyper", cmd_hyper}};
    std::map<std::string, std::string> help = {
        {"mult", "local multiplicity with convenience and non-degeneracy certificates"},
        {"gale", "Gale dual matrices and the Gale system"},
        {"hdual", "H-dual series and its multiplicity"},
        {"square", "the four dual systems and their multiplicities"},
        {"diagram", "Newton diagrams of the shifted system"},
        {"covolume", "covolume of one polytope, mixed covolume of several"},
        {"bounds", "every applicable multiplicity bound"},
        {"witness", "the witness system for given n, m"},
        {"cyclic", "cyclic configurations and circuit systems"},
        {"hyper", "hypersurface multiplicities and the sigma/b bounds"}};

    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, h] : handlers) {
        CLI::App* sub = app.add_subcommand(name, help[name]);
        common(sub, name != "witness" && name != "covolume");
        if (name == "covolume") sub->add_option("--points", o.points, "polytope points; repeat for several");
        if (name == "hdual") sub->add_option("--order", order, "truncation order T");
        if (name == "witness" || name == "hyper" || name == "cyclic") {
            sub->add_option("--n", o.n, "dimension");
            if (name != "cyclic") sub->add_option("--m", o.m, "codimension");
        }
        if (name == "cyclic") sub->add_option("--d", o.d_values, "distinct values d_0,...");
        subs[name] = sub;
    }
    CLI::App* repro = app.add_subcommand("reproduce", "regenerate a worked example or table");
    repro->add_option("target", o.target, "fig1, walkthrough, n2, table1, highmult, witness or all");
    repro->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));

    CLI11_PARSE(app, argc, argv);
    o.order = order;
    o.ceiling = ceiling;

    try {
        if (repro->parsed()) {
            if (o.target == "all") {
                for (const auto& name : kReproductions) {
                    std::cout << "== " << name << " ==\n" << reproduce_text(name, o.format);
                }
            } else {
                std::cout << reproduce_text(o.target, o.format);
            }
            return 0;
        }
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) {
                auto t0 = std::chrono::steady_clock::now();
                Json report = handlers[name](o);
                if (timings)
                    report["timings"]["seconds"] =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                emit(report, o.format);
                return 0;
            }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
