#ifndef SPARSEMULT_RATIONAL_HPP
#define SPARSEMULT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sparsemult/errors.hpp"

namespace sparsemult {

using Integer = mpz_class;
// mpq_class keeps values canonical (lowest terms, positive denominator)
// as long as they are built through make_rational or arithmetic.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw ParseError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p", "p/q". Whitespace around the value is ignored.
inline Rational parse_rational(std::string_view text) {
    auto first = text.find_first_not_of(" \t");
    auto last = text.find_last_not_of(" \t");
    if (first == std::string_view::npos) throw ParseError("empty rational");
    std::string s(text.substr(first, last - first + 1));
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return Integer(t, 10);
    };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw ParseError("not a rational: '" + s + "'");
        return Rational(to_int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw ParseError("not a rational: '" + s + "'");
    return make_rational(to_int(num), to_int(den));
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Generalized binomial a(a-1)...(a-k+1)/k! for rational a; vanishes for
// nonnegative integer a once k > a.
inline Rational binomial(const Rational& a, long k) {
    if (k < 0) return 0;
    Rational num = 1;
    Integer fact = 1;
    for (long i = 0; i < k; ++i) {
        num *= a - i;
        fact *= i + 1;
        if (num == 0) return 0;
    }
    return num / fact;
}

inline Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Rational pow(const Rational& base, long e) {
    if (e < 0) return pow(Rational(1) / base, -e);
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer lcm_of_denominators(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

inline long to_long(const Integer& z) {
    if (!z.fits_slong_p()) throw ShapeError("integer out of machine range: " + z.get_str());
    return z.get_si();
}

inline long to_long(const Rational& r) {
    if (!is_integer(r)) throw ShapeError("expected an integer, got " + r.get_str());
    return to_long(Integer(r.get_num()));
}

}  // namespace sparsemult

#endif  // SPARSEMULT_RATIONAL_HPP
