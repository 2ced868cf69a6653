#include "twistlab/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace twistlab {

long long ck_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in lattice arithmetic");
    return r;
}

long long ck_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in lattice arithmetic");
    return r;
}

IMat identity_matrix(size_t n) {
    IMat m(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IMat transpose(const IMat& a) {
    if (a.empty()) return {};
    IMat t(a[0].size(), IVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

IMat mat_mul(const IMat& a, const IMat& b) {
    size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    IMat c(n, IVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] = ck_add(c[i][j], ck_mul(a[i][t], b[t][j]));
        }
    return c;
}

IVec mat_vec(const IMat& a, const IVec& v) {
    IVec r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], v);
    return r;
}

IVec vec_mat(const IVec& v, const IMat& a) {
    size_t m = a.empty() ? 0 : a[0].size();
    IVec r(m, 0);
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < m; ++j) r[j] = ck_add(r[j], ck_mul(v[i], a[i][j]));
    }
    return r;
}

IVec vec_add(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = ck_add(a[i], b[i]);
    return r;
}

IVec vec_sub(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = ck_add(a[i], -b[i]);
    return r;
}

IVec vec_scale(const IVec& a, long long c) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = ck_mul(a[i], c);
    return r;
}

long long dot(const IVec& a, const IVec& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s = ck_add(s, ck_mul(a[i], b[i]));
    return s;
}

bool is_zero_vec(const IVec& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

Rational determinant(const IMat& a) {
    size_t n = a.size();
    RMat m(n, RVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
    Rational det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return Rational();
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rational inv = m[c][c].inv();
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            Rational f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

RMat rational_inverse(const IMat& a) {
    size_t n = a.size();
    RMat m(n, RVec(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
        m[i][n + i] = Rational(1);
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("singular matrix");
        std::swap(m[p], m[c]);
        Rational inv = m[c][c].inv();
        for (auto& x : m[c]) x *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    RMat r(n, RVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[i][j] = m[i][n + j];
    return r;
}

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// row_i <- a*row_i + b*row_j, row_j <- c*row_i + d*row_j (simultaneously)
void row_combine(IMat& m, size_t i, size_t j, long long a, long long b, long long c, long long d) {
    for (size_t k = 0; k < m[i].size(); ++k) {
        long long x = m[i][k], y = m[j][k];
        m[i][k] = ck_add(ck_mul(a, x), ck_mul(b, y));
        m[j][k] = ck_add(ck_mul(c, x), ck_mul(d, y));
    }
}

void col_combine(IMat& m, size_t i, size_t j, long long a, long long b, long long c, long long d) {
    for (auto& row : m) {
        long long x = row[i], y = row[j];
        row[i] = ck_add(ck_mul(a, x), ck_mul(b, y));
        row[j] = ck_add(ck_mul(c, x), ck_mul(d, y));
    }
}

long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long long q = a / b;
        long long t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    x = x0;
    y = y0;
    return a;
}

}  // namespace

HNF hermite_rows(const IMat& a) {
    HNF h;
    h.H = a;
    size_t n = a.size();
    size_t m = n ? a[0].size() : 0;
    h.U = identity_matrix(n);
    size_t r = 0;
    for (size_t c = 0; c < m && r < n; ++c) {
        for (size_t i = r + 1; i < n; ++i) {
            if (h.H[i][c] == 0) continue;
            long long x, y;
            long long av = h.H[r][c], bv = h.H[i][c];
            long long g = ext_gcd(av, bv, x, y);
            long long ca = av / g, cb = bv / g;
            // [x y; -cb ca] has determinant x*ca + y*cb = 1
            row_combine(h.H, r, i, x, y, -cb, ca);
            row_combine(h.U, r, i, x, y, -cb, ca);
        }
        if (h.H[r][c] == 0) continue;
        if (h.H[r][c] < 0) {
            for (auto& v : h.H[r]) v = -v;
            for (auto& v : h.U[r]) v = -v;
        }
        long long piv = h.H[r][c];
        for (size_t i = 0; i < r; ++i) {
            long long q = floor_div(h.H[i][c], piv);
            if (q == 0) continue;
            for (size_t k = 0; k < m; ++k) h.H[i][k] = ck_add(h.H[i][k], -ck_mul(q, h.H[r][k]));
            for (size_t k = 0; k < n; ++k) h.U[i][k] = ck_add(h.U[i][k], -ck_mul(q, h.U[r][k]));
        }
        h.pivots.push_back(c);
        ++r;
    }
    h.rank = r;
    return h;
}

SNF smith(const IMat& a) {
    SNF s;
    s.D = a;
    size_t n = a.size();
    size_t m = n ? a[0].size() : 0;
    s.U = identity_matrix(n);
    s.V = identity_matrix(m);
    size_t t = 0;
    while (t < n && t < m) {
        // choose the smallest nonzero entry in the remaining block as pivot
        long long best = 0;
        size_t bi = 0, bj = 0;
        for (size_t i = t; i < n; ++i)
            for (size_t j = t; j < m; ++j) {
                long long v = s.D[i][j] < 0 ? -s.D[i][j] : s.D[i][j];
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best == 0) break;
        std::swap(s.D[t], s.D[bi]);
        std::swap(s.U[t], s.U[bi]);
        col_combine(s.D, t, bj, 0, 1, 1, 0);
        col_combine(s.V, t, bj, 0, 1, 1, 0);
        bool done = false;
        while (!done) {
            done = true;
            for (size_t i = t + 1; i < n; ++i) {
                if (s.D[i][t] == 0) continue;
                long long x, y, av = s.D[t][t], bv = s.D[i][t];
                if (bv % av == 0) {
                    row_combine(s.D, t, i, 1, 0, -bv / av, 1);
                    row_combine(s.U, t, i, 1, 0, -bv / av, 1);
                    continue;
                }
                long long g = ext_gcd(av, bv, x, y);
                row_combine(s.D, t, i, x, y, -bv / g, av / g);
                row_combine(s.U, t, i, x, y, -bv / g, av / g);
                done = false;
            }
            for (size_t j = t + 1; j < m; ++j) {
                if (s.D[t][j] == 0) continue;
                long long x, y, av = s.D[t][t], bv = s.D[t][j];
                if (bv % av == 0) {
                    col_combine(s.D, t, j, 1, 0, -bv / av, 1);
                    col_combine(s.V, t, j, 1, 0, -bv / av, 1);
                    continue;
                }
                long long g = ext_gcd(av, bv, x, y);
                col_combine(s.D, t, j, x, y, -bv / g, av / g);
                col_combine(s.V, t, j, x, y, -bv / g, av / g);
                done = false;
            }
            if (!done) continue;
            // divisibility: pivot must divide every remaining entry
            long long piv = s.D[t][t];
            for (size_t i = t + 1; i < n && done; ++i)
                for (size_t j = t + 1; j < m; ++j)
                    if (s.D[i][j] % piv != 0) {
                        for (size_t k = 0; k < m; ++k) s.D[t][k] = ck_add(s.D[t][k], s.D[i][k]);
                        for (size_t k = 0; k < n; ++k) s.U[t][k] = ck_add(s.U[t][k], s.U[i][k]);
                        done = false;
                        break;
                    }
        }
        if (s.D[t][t] < 0) {
            for (auto& v : s.D[t]) v = -v;
            for (auto& v : s.U[t]) v = -v;
        }
        ++t;
    }
    s.diag.clear();
    for (size_t i = 0; i < std::min(n, m); ++i) s.diag.push_back(s.D[i][i]);
    return s;
}

IMat left_kernel(const IMat& a) {
    HNF h = hermite_rows(a);
    IMat k;
    for (size_t i = h.rank; i < a.size(); ++i) k.push_back(h.U[i]);
    return k;
}

IVec reduce_mod_rows(const IVec& v, const HNF& h) {
    IVec r = v;
    for (size_t i = 0; i < h.rank; ++i) {
        size_t c = h.pivots[i];
        long long q = floor_div(r[c], h.H[i][c]);
        if (q == 0) continue;
        for (size_t k = 0; k < r.size(); ++k) r[k] = ck_add(r[k], -ck_mul(q, h.H[i][k]));
    }
    return r;
}

bool solve_in_row_lattice(const IMat& a, const IVec& b, IVec& x) {
    HNF h = hermite_rows(a);
    IVec r = b;
    IVec y(h.rank, 0);
    for (size_t i = 0; i < h.rank; ++i) {
        size_t c = h.pivots[i];
        // all earlier pivot columns are already cleared
        if (r[c] % h.H[i][c] != 0) return false;
        long long q = r[c] / h.H[i][c];
        y[i] = q;
        for (size_t k = 0; k < r.size(); ++k) r[k] = ck_add(r[k], -ck_mul(q, h.H[i][k]));
    }
    if (!is_zero_vec(r)) return false;
    x.assign(a.size(), 0);
    for (size_t i = 0; i < h.rank; ++i)
        for (size_t k = 0; k < a.size(); ++k) x[k] = ck_add(x[k], ck_mul(y[i], h.U[i][k]));
    return true;
}

namespace {

template <class T>
size_t eliminate(std::vector<std::vector<T>>& a, std::vector<T>* b, std::vector<size_t>& pivcol) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        if (b) std::swap((*b)[piv], (*b)[r]);
        T inv = a[r][c].inv();
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        if (b) (*b)[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            T f = a[i][c];
            for (size_t j = c; j < cols; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
            if (b) (*b)[i] -= f * (*b)[r];
        }
        pivcol.push_back(c);
        ++r;
    }
    return r;
}

template <class T>
bool solve_generic(std::vector<std::vector<T>> a, std::vector<T> b, std::vector<T>& x) {
    std::vector<size_t> piv;
    size_t r = eliminate(a, &b, piv);
    for (size_t i = r; i < b.size(); ++i)
        if (!b[i].is_zero()) return false;
    size_t cols = a.empty() ? 0 : a[0].size();
    x.assign(cols, T());
    for (size_t i = 0; i < r; ++i) x[piv[i]] = b[i];
    return true;
}

}  // namespace

size_t rank_rational(RMat a) {
    std::vector<size_t> piv;
    return eliminate<Rational>(a, nullptr, piv);
}

bool solve_rational(const RMat& a, const RVec& b, RVec& x) { return solve_generic(a, b, x); }

size_t rank_cyc(CycMat a) {
    std::vector<size_t> piv;
    return eliminate<CycScalar>(a, nullptr, piv);
}

bool solve_cyc(const CycMat& a, const CycVec& b, CycVec& x) { return solve_generic(a, b, x); }

CycMat nullspace_cyc(const CycMat& a0) {
    CycMat a = a0;
    std::vector<size_t> piv;
    size_t r = eliminate<CycScalar>(a, nullptr, piv);
    size_t cols = a.empty() ? 0 : a[0].size();
    std::vector<bool> is_piv(cols, false);
    for (size_t c : piv) is_piv[c] = true;
    CycMat basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        CycVec v(cols, CycScalar(0));
        v[f] = CycScalar(1);
        for (size_t i = 0; i < r; ++i) v[piv[i]] = -a[i][f];
        basis.push_back(v);
    }
    return basis;
}

}  // namespace twistlab
