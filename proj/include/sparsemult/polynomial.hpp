#ifndef SPARSEMULT_POLYNOMIAL_HPP
#define SPARSEMULT_POLYNOMIAL_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sparsemult/errors.hpp"
#include "sparsemult/rational.hpp"

namespace sparsemult {

using Exponent = std::vector<long>;

inline long total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0L); }

inline bool dominates(const Exponent& a, const Exponent& b) {  // a >= b componentwise
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

// All exponents of total degree d in n variables, ordered lexicographically
// with the first variable most significant (x1^d first).
inline std::vector<Exponent> exponents_of_degree(int n, long d) {
    std::vector<Exponent> out;
    if (n == 0) {
        if (d == 0) out.emplace_back();
        return out;
    }
    Exponent e(n, 0);
    std::function<void(int, long)> rec = [&](int i, long left) {
        if (i == n - 1) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (long v = left; v >= 0; --v) {
            e[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, d);
    return out;
}

// Exponents with total degree <= d, by degree then lex as above.
inline std::vector<Exponent> exponents_up_to(int n, long d) {
    std::vector<Exponent> out;
    for (long k = 0; k <= d; ++k) {
        auto part = exponents_of_degree(n, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// Sparse multivariate (Laurent) polynomial with exact coefficients.
class Polynomial {
public:
    using Terms = std::map<Exponent, Rational>;

    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }
    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        Exponent e(nvars, 0);
        e[i] = 1;
        p.add_term(e, 1);
        return p;
    }

    int nvars() const noexcept { return nvars_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    void add_term(const Exponent& e, const Rational& c) {
        if (static_cast<int>(e.size()) != nvars_) throw DimensionMismatch("exponent length");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    long degree() const {
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }
    // lowest total degree of a term; -1 for the zero polynomial
    long order() const {
        long d = -1;
        for (const auto& [e, c] : terms_) {
            long t = total_degree(e);
            if (d < 0 || t < d) d = t;
        }
        return d;
    }

    Polynomial truncated(long max_degree) const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) <= max_degree) r.terms_.emplace(e, c);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b, -1); }

    // Product keeping only terms of total degree <= max_degree (all if < 0).
    static Polynomial multiply(const Polynomial& a, const Polynomial& b, long max_degree) {
        a.check(b);
        Polynomial r(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            long da = total_degree(ea);
            for (const auto& [eb, cb] : b.terms_) {
                if (max_degree >= 0 && da + total_degree(eb) > max_degree) continue;
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    static Polynomial power(const Polynomial& p, long k, long max_degree = -1) {
        Polynomial r = constant(p.nvars_, 1), base = p;
        while (k > 0) {
            if (k & 1) r = multiply(r, base, max_degree);
            k >>= 1;
            if (k) base = multiply(base, base, max_degree);
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& x) const {
        Rational s = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < nvars_; ++i) t *= pow(x[i], e[i]);
            s += t;
        }
        return s;
    }

    // Terms whose exponent is supported on the listed variables, re-indexed
    // to those variables.
    Polynomial restrict_to(const std::vector<int>& vars) const {
        Polynomial r(static_cast<int>(vars.size()));
        std::vector<bool> keep(nvars_, false);
        for (int v : vars) keep[v] = true;
        for (const auto& [e, c] : terms_) {
            bool ok = true;
            for (int i = 0; i < nvars_ && ok; ++i)
                if (!keep[i] && e[i] != 0) ok = false;
            if (!ok) continue;
            Exponent f(vars.size());
            for (std::size_t j = 0; j < vars.size(); ++j) f[j] = e[vars[j]];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    // Human-readable form with variables named prefix1..prefixn, terms in
    // increasing degree.  Example: "y2 - 2*y1 - y1^2".
    std::string to_string(const std::string& prefix = "x") const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Exponent, Rational>> sorted(terms_.begin(), terms_.end());
        std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            long da = total_degree(a.first), db = total_degree(b.first);
            if (da != db) return da < db;
            return a.first < b.first;
        });
        // within a degree, later variables first reads naturally ("y2 - 2*y1")
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : sorted) {
            Rational a = abs(c);
            bool neg = c < 0;
            if (first)
                os << (neg ? "-" : "");
            else
                os << (neg ? " - " : " + ");
            first = false;
            std::string mono;
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += prefix + std::to_string(i + 1);
                if (e[i] != 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty())
                os << a.get_str();
            else if (a == 1)
                os << mono;
            else
                os << a.get_str() << "*" << mono;
        }
        return os.str();
    }

private:
    void check(const Polynomial& o) const {
        if (o.nvars_ != nvars_) throw DimensionMismatch("polynomials in different numbers of variables");
    }

    int nvars_ = 0;
    Terms terms_;
};

// Power series known through a truncation callback, optionally with a
// direct coefficient formula.  Truncations are cached.
class Series {
public:
    using Truncator = std::function<Polynomial(long)>;  // all terms of degree <= P
    using CoeffFn = std::function<Rational(const Exponent&)>;

    Series() = default;
    Series(int nvars, Truncator trunc, CoeffFn coeff = {}, std::optional<long> exact_degree = std::nullopt)
        : nvars_(nvars), state_(std::make_shared<State>()) {
        state_->trunc = std::move(trunc);
        state_->coeff = std::move(coeff);
        state_->exact_degree = exact_degree;
    }

    static Series from_polynomial(const Polynomial& p) {
        auto shared = std::make_shared<Polynomial>(p);
        return Series(
            p.nvars(), [shared](long P) { return shared->truncated(P); },
            [shared](const Exponent& e) { return shared->coefficient(e); }, p.degree());
    }

    // Series given by a coefficient formula alone.
    static Series from_coefficients(int nvars, CoeffFn raw) {
        struct Memo {
            std::mutex mu;
            std::map<Exponent, Rational> values;
        };
        auto memo = std::make_shared<Memo>();
        CoeffFn coeff = [memo, raw](const Exponent& e) {
            {
                std::lock_guard<std::mutex> lock(memo->mu);
                auto it = memo->values.find(e);
                if (it != memo->values.end()) return it->second;
            }
            Rational v = raw(e);
            std::lock_guard<std::mutex> lock(memo->mu);
            memo->values.emplace(e, v);
            return v;
        };
        return Series(
            nvars,
            [nvars, coeff](long P) {
                Polynomial r(nvars);
                for (const auto& e : exponents_up_to(nvars, P)) r.add_term(e, coeff(e));
                return r;
            },
            coeff);
    }

    int nvars() const noexcept { return nvars_; }
    std::optional<long> exact_degree() const { return state_->exact_degree; }

    Polynomial truncate(long P) const {
        std::lock_guard<std::mutex> lock(state_->mu);
        if (state_->cached_precision >= P) return state_->cache.truncated(P);
        if (state_->exact_degree && state_->cached_precision >= *state_->exact_degree)
            return state_->cache.truncated(P);
        state_->cache = state_->trunc(P);
        state_->cached_precision = P;
        return state_->cache;
    }

    Rational coefficient(const Exponent& e) const {
        if (state_->coeff) return state_->coeff(e);
        long d = total_degree(e);
        {
            std::lock_guard<std::mutex> lock(state_->mu);
            if (state_->cached_precision >= d ||
                (state_->exact_degree && state_->cached_precision >= *state_->exact_degree))
                return state_->cache.coefficient(e);
        }
        long want = d;
        {
            std::lock_guard<std::mutex> lock(state_->mu);
            want = std::max(d, 2 * std::max(state_->cached_precision, 1L));
        }
        return truncate(want).coefficient(e);
    }

private:
    struct State {
        Truncator trunc;
        CoeffFn coeff;
        std::optional<long> exact_degree;
        std::mutex mu;
        long cached_precision = -1;
        Polynomial cache;
    };
    int nvars_ = 0;
    std::shared_ptr<State> state_;
};

// Dense univariate polynomials over Q, lowest degree first.
using UniPoly = std::vector<Rational>;

inline void trim(UniPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline UniPoly uni_remainder(UniPoly a, const UniPoly& b) {
    trim(a);
    if (b.empty()) throw PreconditionError("division by the zero polynomial");
    while (a.size() >= b.size()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return a;
}

// Monic gcd; the zero polynomial if both inputs are zero.
inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UniPoly r = uni_remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

}  // namespace sparsemult

#endif  // SPARSEMULT_POLYNOMIAL_HPP
