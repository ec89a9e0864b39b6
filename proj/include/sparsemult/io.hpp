#ifndef SPARSEMULT_IO_HPP
#define SPARSEMULT_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparsemult/support_config.hpp"

namespace sparsemult {

using Json = nlohmann::json;  // std::map-backed: keys come out sorted

struct ParsedInput {
    SupportConfig config;
    std::optional<RationalMatrix> C;
    std::optional<IntegerMatrix> B;
    std::optional<RationalMatrix> D;
};

inline Json to_json(Rational r) {
    r.canonicalize();
    return r.get_str();
}
inline Json to_json(const Integer& z) { return z.get_str(); }

template <typename T>
Json matrix_json(const Matrix<T>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json vector_json(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Json exponent_json(const Exponent& e) {
    Json a = Json::array();
    for (long x : e) a.push_back(x);
    return a;
}

inline Json points_json(const std::vector<Exponent>& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(exponent_json(p));
    return a;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n')
            ++line, col = 1;
        else
            ++col;
    }
    return {line, col};
}

inline Rational json_rational(const Json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw ParseError(where + ": expected a rational string such as \"-3/4\"");
}

inline long json_long(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_string()) {
        Rational r = json_rational(v, where);
        if (is_integer(r)) return to_long(r);
    }
    throw ParseError(where + ": expected an integer");
}

inline RationalMatrix json_rational_matrix(const Json& v, const std::string& name) {
    if (!v.is_array()) throw ParseError(name + ": expected an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array()) throw ParseError(name + "[" + std::to_string(i) + "]: expected a row");
        std::vector<Rational> row;
        for (std::size_t j = 0; j < v[i].size(); ++j)
            row.push_back(json_rational(v[i][j], name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
        if (!rows.empty() && row.size() != rows[0].size()) throw ShapeError(name + ": ragged rows");
        rows.push_back(std::move(row));
    }
    return RationalMatrix::from_rows(rows);
}

}  // namespace detail

inline std::vector<Exponent> json_points(const Json& v) {
    if (!v.is_array()) throw ParseError("points: expected an array");
    std::vector<Exponent> pts;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Exponent e;
        if (v[i].is_array()) {
            for (std::size_t j = 0; j < v[i].size(); ++j)
                e.push_back(detail::json_long(v[i][j], "points[" + std::to_string(i) + "]"));
        } else {
            e.push_back(detail::json_long(v[i], "points[" + std::to_string(i) + "]"));
        }
        pts.push_back(std::move(e));
    }
    return pts;
}

inline ParsedInput parse_input_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
    }
    if (!doc.is_object()) throw ParseError("line 1, column 1: top level must be an object");
    if (!doc.contains("points")) throw ParseError("missing field \"points\"");
    ParsedInput in;
    in.config = build_config(json_points(doc["points"]));
    if (doc.contains("C")) {
        RationalMatrix C = detail::json_rational_matrix(doc["C"], "C");
        if (C.cols() != static_cast<std::size_t>(in.config.N))
            throw ValidationError("C has " + std::to_string(C.cols()) + " columns, expected N = " +
                                  std::to_string(in.config.N));
        if (rank(C) != C.rows()) throw ValidationError("C must have full row rank");
        in.C = C;
    }
    if (doc.contains("B")) in.B = to_integer(detail::json_rational_matrix(doc["B"], "B"));
    if (doc.contains("D")) in.D = detail::json_rational_matrix(doc["D"], "D");
    return in;
}

inline ParsedInput parse_input_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_input_text(ss.str());
}

inline Json input_json(const ParsedInput& in) {
    Json j;
    j["points"] = points_json(in.config.points);
    if (in.C) j["C"] = matrix_json(*in.C);
    if (in.B) j["B"] = matrix_json(*in.B);
    if (in.D) j["D"] = matrix_json(*in.D);
    return j;
}

inline std::string emit_json(const Json& j) { return j.dump(2) + "\n"; }

// Inline forms: "0,1,2,3" (one dimension) or "0,0;1,0;0,1" (points split by ';').
inline std::vector<Exponent> parse_points_inline(const std::string& s) {
    std::vector<Exponent> pts;
    bool multi = s.find(';') != std::string::npos;
    std::stringstream outer(s);
    std::string chunk;
    if (!multi) {
        while (std::getline(outer, chunk, ',')) {
            Rational r = parse_rational(chunk);
            if (!is_integer(r)) throw ParseError("point coordinates must be integers");
            pts.push_back({to_long(r)});
        }
        return pts;
    }
    while (std::getline(outer, chunk, ';')) {
        Exponent e;
        std::stringstream inner(chunk);
        std::string x;
        while (std::getline(inner, x, ',')) {
            Rational r = parse_rational(x);
            if (!is_integer(r)) throw ParseError("point coordinates must be integers");
            e.push_back(to_long(r));
        }
        pts.push_back(std::move(e));
    }
    return pts;
}

// Rows split by ';', entries by ','.
inline RationalMatrix parse_matrix_inline(const std::string& s) {
    std::vector<std::vector<Rational>> rows;
    std::stringstream outer(s);
    std::string chunk;
    while (std::getline(outer, chunk, ';')) {
        std::vector<Rational> row;
        std::stringstream inner(chunk);
        std::string x;
        while (std::getline(inner, x, ',')) row.push_back(parse_rational(x));
        if (!rows.empty() && row.size() != rows[0].size()) throw ShapeError("ragged coefficient rows");
        rows.push_back(std::move(row));
    }
    return RationalMatrix::from_rows(rows);
}

inline std::vector<Rational> parse_vector_inline(const std::string& s) {
    std::vector<Rational> v;
    std::stringstream ss(s);
    std::string x;
    while (std::getline(ss, x, ',')) v.push_back(parse_rational(x));
    return v;
}

namespace detail {

inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "n/a";
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    return v.dump();
}

inline bool is_flat_array(const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& x : v)
        if (x.is_object() || (x.is_array() && !x.empty() && (x[0].is_array() || x[0].is_object()))) return false;
    return true;
}

inline std::string inline_text(const Json& v) {
    if (!v.is_array()) return scalar_text(v);
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += inline_text(v[i]);
    }
    return s + "]";
}

inline void render(std::ostream& os, const Json& v, int indent) {
    std::string pad(indent, ' ');
    for (auto it = v.begin(); it != v.end(); ++it) {
        const Json& x = it.value();
        if (x.is_object()) {
            os << pad << it.key() << ":\n";
            render(os, x, indent + 2);
        } else if (x.is_array() && !is_flat_array(x)) {
            os << pad << it.key() << ":\n";
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (x[i].is_object()) {
                    os << pad << "  -\n";
                    render(os, x[i], indent + 4);
                } else {
                    os << pad << "  " << inline_text(x[i]) << "\n";
                }
            }
        } else {
            os << pad << it.key() << ": " << inline_text(x) << "\n";
        }
    }
}

}  // namespace detail

// Plain "key: value" rendering of a report, nested blocks indented.
inline std::string render_table(const Json& report) {
    std::ostringstream os;
    detail::render(os, report, 0);
    return os.str();
}

}  // namespace sparsemult

#endif  // SPARSEMULT_IO_HPP
