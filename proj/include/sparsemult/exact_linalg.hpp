#ifndef SPARSEMULT_EXACT_LINALG_HPP
#define SPARSEMULT_EXACT_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sparsemult/matrix.hpp"

namespace sparsemult {

namespace detail {

// Scale each row by the lcm of its denominators so that Bareiss can run
// on integers.  Rank is unchanged; the determinant picks up the product
// of the scales, which is returned as well.
inline IntegerMatrix clear_row_denominators(const RationalMatrix& m, Integer* scale_product = nullptr) {
    IntegerMatrix r(m.rows(), m.cols());
    Integer prod = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = lcm_of_denominators(m.row(i));
        prod *= l;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational v = m(i, j) * l;
            r(i, j) = v.get_num();
        }
    }
    if (scale_product) *scale_product = prod;
    return r;
}

// Fraction-free elimination in place.  Returns rank; `sign` tracks row swaps.
inline std::size_t bareiss(IntegerMatrix& a, int* sign = nullptr) {
    std::size_t r = 0;
    Integer prev = 1;
    int s = 1;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r) {
            a.swap_rows(p, r);
            s = -s;
        }
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            for (std::size_t j = c + 1; j < a.cols(); ++j) {
                a(i, j) = a(r, c) * a(i, j) - a(i, c) * a(r, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    if (sign) *sign = s;
    return r;
}

}  // namespace detail

inline std::size_t rank(const IntegerMatrix& m) {
    IntegerMatrix a = m;
    return detail::bareiss(a);
}

inline std::size_t rank(const RationalMatrix& m) {
    IntegerMatrix a = detail::clear_row_denominators(m);
    return detail::bareiss(a);
}

inline Rational determinant(const RationalMatrix& m) {
    if (!m.square()) throw ShapeError("determinant of a non-square matrix");
    if (m.rows() == 0) return 1;
    Integer scale;
    IntegerMatrix a = detail::clear_row_denominators(m, &scale);
    int sign = 1;
    std::size_t r = detail::bareiss(a, &sign);
    if (r < a.rows()) return 0;
    Rational d(a(a.rows() - 1, a.cols() - 1));
    d *= sign;
    return d / Rational(scale);
}

inline Integer determinant(const IntegerMatrix& m) {
    Rational d = determinant(to_rational(m));
    return d.get_num();
}

struct RrefResult {
    RationalMatrix reduced;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form over Q.
inline RrefResult rref(const RationalMatrix& m) {
    RrefResult res{m, {}};
    RationalMatrix& a = res.reduced;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(p, r);
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    return res;
}

// Columns span the right kernel; one column per free variable, with a 1
// in that variable's slot.
inline RationalMatrix rational_kernel_basis(const RationalMatrix& m) {
    RrefResult e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> cols;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) v[e.pivot_cols[i]] = -e.reduced(i, f);
        cols.push_back(std::move(v));
    }
    return RationalMatrix::from_columns(cols, m.cols());
}

// Column-reduced echelon form: pivots run down the rows, each pivot
// column is zero elsewhere in its pivot row.
inline RationalMatrix column_echelon(const RationalMatrix& m) {
    RrefResult e = rref(m.transpose());
    RationalMatrix t = e.reduced.select(
        [&] {
            std::vector<std::size_t> r(e.pivot_cols.size());
            for (std::size_t i = 0; i < r.size(); ++i) r[i] = i;
            return r;
        }(),
        [&] {
            std::vector<std::size_t> c(m.rows());
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = i;
            return c;
        }());
    return t.transpose();
}

struct SmithForm {
    IntegerMatrix U;  // rows x rows, unimodular
    IntegerMatrix S;  // diagonal, nonnegative, s_i | s_{i+1}
    IntegerMatrix V;  // cols x cols, unimodular
    std::size_t rank = 0;
};

// U * M * V = S.
inline SmithForm smith_normal_form(const IntegerMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    SmithForm f{IntegerMatrix::identity(R), m, IntegerMatrix::identity(C), 0};
    IntegerMatrix& a = f.S;
    auto row_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {  // row dst -= q*row src
        for (std::size_t j = 0; j < C; ++j) a(dst, j) -= q * a(src, j);
        for (std::size_t j = 0; j < R; ++j) f.U(dst, j) -= q * f.U(src, j);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
        for (std::size_t i = 0; i < R; ++i) a(i, dst) -= q * a(i, src);
        for (std::size_t i = 0; i < C; ++i) f.V(i, dst) -= q * f.V(i, src);
    };
    auto swap_r = [&](std::size_t x, std::size_t y) {
        a.swap_rows(x, y);
        f.U.swap_rows(x, y);
    };
    auto swap_c = [&](std::size_t x, std::size_t y) {
        a.swap_cols(x, y);
        f.V.swap_cols(x, y);
    };

    std::size_t t = 0;
    for (; t < std::min(R, C); ++t) {
        // smallest nonzero entry of the trailing block
        std::size_t bi = R, bj = C;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (a(i, j) != 0 && (bi == R || abs(a(i, j)) < abs(a(bi, bj)))) bi = i, bj = j;
        if (bi == R) break;
        swap_r(t, bi);
        swap_c(t, bj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (a(i, t) == 0) continue;
                Integer q = a(i, t) / a(t, t);
                row_axpy(i, t, q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (a(t, j) == 0) continue;
                Integer q = a(t, j) / a(t, t);
                col_axpy(j, t, q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                std::size_t bi2 = t, bj2 = t;
                for (std::size_t i = t + 1; i < R; ++i)
                    if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi2, bj2))) bi2 = i, bj2 = t;
                for (std::size_t j = t + 1; j < C; ++j)
                    if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi2, bj2))) bi2 = t, bj2 = j;
                swap_r(t, bi2);
                swap_c(t, bj2);
                continue;
            }
            // divisibility of the remaining block
            std::size_t bad = R;
            for (std::size_t i = t + 1; i < R && bad == R; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == R) break;
            row_axpy(t, bad, Integer(-1));
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < C; ++j) a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < R; ++j) f.U(t, j) = -f.U(t, j);
        }
    }
    f.rank = t;
    return f;
}

// Row-style Hermite normal form: rows span the same lattice, echelon with
// positive pivots, entries above a pivot reduced into [0, pivot).  Zero
// rows are dropped.
inline IntegerMatrix hermite_normal_form(const IntegerMatrix& m) {
    IntegerMatrix a = m;
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        for (std::size_t i = row + 1; i < R; ++i) {
            if (a(i, col) == 0) continue;
            Integer g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a(row, col).get_mpz_t(),
                       a(i, col).get_mpz_t());
            Integer p = a(row, col) / g, q = a(i, col) / g;
            for (std::size_t j = 0; j < C; ++j) {
                Integer u = a(row, j), v = a(i, j);
                a(row, j) = x * u + y * v;
                a(i, j) = -q * u + p * v;
            }
        }
        if (a(row, col) == 0) continue;
        if (a(row, col) < 0)
            for (std::size_t j = 0; j < C; ++j) a(row, j) = -a(row, j);
        for (std::size_t i = 0; i < row; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(row, col).get_mpz_t());
            if (q != 0)
                for (std::size_t j = 0; j < C; ++j) a(i, j) -= q * a(row, j);
        }
        ++row;
    }
    std::vector<std::size_t> keep(row), cols(C);
    for (std::size_t i = 0; i < row; ++i) keep[i] = i;
    for (std::size_t j = 0; j < C; ++j) cols[j] = j;
    return a.select(keep, cols);
}

// Basis of the saturated integer kernel {v in Z^cols : M v = 0}, taken from
// the Smith transform and then put in Hermite form with respect to the
// reversed coordinate order (pivots sit at the bottom rows).  For the
// points 0,1,2,3 this yields the columns (1,-2,1,0) and (2,-3,0,1).
inline IntegerMatrix lattice_kernel_basis(const IntegerMatrix& m) {
    SmithForm f = smith_normal_form(m);
    const std::size_t C = m.cols();
    const std::size_t k = C - f.rank;
    if (k == 0) return IntegerMatrix(C, 0);
    IntegerMatrix kt(k, C);  // reversed coordinates, one kernel vector per row
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < C; ++i) kt(c, C - 1 - i) = f.V(i, f.rank + c);
    IntegerMatrix h = hermite_normal_form(kt);
    IntegerMatrix out(C, h.rows());
    for (std::size_t c = 0; c < h.rows(); ++c)
        for (std::size_t i = 0; i < C; ++i) out(i, h.rows() - 1 - c) = h(c, C - 1 - i);
    return out;
}

// Scale a rational vector to the primitive integer vector on the same ray.
inline std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
    Integer l = lcm_of_denominators(v);
    std::vector<Integer> r(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * l;
        r[i] = s.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[i].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return r;
}

// Incremental echelon basis over sparse integer rows.  Used by the local
// multiplicity ladder, where the matrices are large and very sparse.
class EchelonBasis {
public:
    using Entry = std::pair<std::uint32_t, Integer>;
    using Row = std::vector<Entry>;  // strictly increasing column index, no zeros

    // Returns true if the row was independent of the rows inserted so far.
    bool insert(Row row) {
        while (!row.empty()) {
            auto it = pivots_.find(row.front().first);
            if (it == pivots_.end()) {
                normalize(row);
                pivots_.emplace(row.front().first, std::move(row));
                return true;
            }
            const Row& p = it->second;
            Integer g;
            mpz_gcd(g.get_mpz_t(), p.front().second.get_mpz_t(), row.front().second.get_mpz_t());
            Integer a = p.front().second / g, b = row.front().second / g;
            Row out;
            out.reserve(row.size() + p.size());
            std::size_t i = 1, j = 1;  // leading terms cancel
            while (i < row.size() || j < p.size()) {
                if (j == p.size() || (i < row.size() && row[i].first < p[j].first)) {
                    out.emplace_back(row[i].first, a * row[i].second);
                    ++i;
                } else if (i == row.size() || p[j].first < row[i].first) {
                    out.emplace_back(p[j].first, -b * p[j].second);
                    ++j;
                } else {
                    Integer v = a * row[i].second - b * p[j].second;
                    if (v != 0) out.emplace_back(row[i].first, std::move(v));
                    ++i, ++j;
                }
            }
            row = std::move(out);
            normalize(row);
        }
        return false;
    }

    std::size_t rank() const noexcept { return pivots_.size(); }

private:
    static void normalize(Row& row) {
        if (row.empty()) return;
        Integer g = 0;
        for (const auto& e : row) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
            if (g == 1) break;
        }
        if (row.front().second < 0) g = -g;
        if (g != 1)
            for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    }

    std::unordered_map<std::uint32_t, Row> pivots_;
};

}  // namespace sparsemult

#endif  // SPARSEMULT_EXACT_LINALG_HPP
