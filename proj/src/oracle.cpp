#include "twistlab/oracle.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <stdexcept>

namespace twistlab {

namespace {

Rational obinom(const Rational& x, long long k) {
    Rational r(1);
    for (long long i = 0; i < k; ++i) r = r * (x - Rational(i)) / Rational(i + 1);
    return r;
}

Rational sign(long long e) { return Rational(e % 2 == 0 ? 1 : -1); }

bool allowed(const OpSeries& s, const Rational& m) {
    Rational f = m.frac();
    for (const auto& r : s.residues())
        if (r.frac() == f) return true;
    return false;
}

class OracleSeries : public OpSeries {
public:
    OracleSeries(OpPtr a, OpPtr b, long long n, long long N)
        : OpSeries(a->module_ptr()), a_(std::move(a)), b_(std::move(b)), n_(n), N_(N) {}
    FockVector coeff(const Rational& m, const FockVector& v) const override {
        return oracle_product_coeff(*a_, *b_, n_, N_, m, v);
    }
    Rational weight() const override { return a_->weight() + b_->weight() - Rational(n_ + 1); }
    IVec degree() const override {
        IVec d = a_->degree();
        IVec e = b_->degree();
        for (size_t i = 0; i < d.size(); ++i) d[i] += e[i];
        return d;
    }
    std::vector<Rational> residues() const override {
        std::set<Rational> r;
        for (const auto& x : a_->residues())
            for (const auto& y : b_->residues()) r.insert((x + y).frac());
        return {r.begin(), r.end()};
    }
    std::string name() const override { return "oracle(" + a_->name() + " [" + std::to_string(n_) + "] " + b_->name() + ")"; }

private:
    OpPtr a_, b_;
    long long n_, N_;
};

}  // namespace

FockVector oracle_product_coeff(const OpSeries& a, const OpSeries& b, long long n, long long N, const Rational& m,
                                const FockVector& v) {
    int sgn = (a.parity() & b.parity()) ? -1 : 1;
    FockVector out;
    out.overflow = v.overflow;
    Rational Ma = a.max_mode(v), Mb = b.max_mode(v);
    for (const auto& lam : a.residues()) {
        for (long long j = 0; j + n < N; ++j) {
            Rational cj = obinom(-lam, j);
            if (cj.is_zero()) continue;
            for (long long t = 0; t <= j; ++t) {
                Rational ct = cj * obinom(Rational(j), t) * sign(j - t);
                // a(w) b(z) with the expansion in positive powers of z/w
                for (long long i = 0;; ++i) {
                    if (n >= 0 && i > n) break;
                    Rational A = lam + Rational(t + n - i), B = Rational(i - t) - lam;
                    if (m + B > Mb) break;
                    Rational c = ct * sign(i) * obinom(Rational(n), i);
                    if (c.is_zero() || !allowed(a, A) || !allowed(b, m + B)) continue;
                    out.add(a.coeff(A, b.coeff(m + B, v)), CycScalar(c));
                }
                // b(z) a(w) with the expansion in positive powers of w/z
                for (long long i = 0;; ++i) {
                    if (n >= 0 && i > n) break;
                    Rational A = lam + Rational(t + i), B = Rational(n - i - t) - lam;
                    if (A > Ma) break;
                    Rational c = ct * sign(n + i) * obinom(Rational(n), i);
                    if (c.is_zero() || !allowed(a, A) || !allowed(b, m + B)) continue;
                    out.add(b.coeff(m + B, a.coeff(A, v)), CycScalar(-sgn * c));
                }
            }
        }
    }
    return out;
}

OpPtr oracle_product(OpPtr a, OpPtr b, long long n, long long N) {
    return std::make_shared<OracleSeries>(std::move(a), std::move(b), n, N);
}

OracleBlocks oracle_bicharacter_blocks(const std::vector<long long>& orders, const CycMat& beta) {
    size_t r = orders.size();
    size_t n = 1;
    for (auto o : orders) n *= static_cast<size_t>(o);
    if (n > 4096) throw std::invalid_argument("oracle_bicharacter_blocks: |E| > 4096");
    auto digits = [&](size_t g) {
        std::vector<long long> d(r);
        for (size_t i = 0; i < r; ++i) {
            d[i] = static_cast<long long>(g % static_cast<size_t>(orders[i]));
            g /= static_cast<size_t>(orders[i]);
        }
        return d;
    };
    auto index = [&](const std::vector<long long>& d) {
        size_t g = 0;
        for (size_t i = r; i-- > 0;) g = g * static_cast<size_t>(orders[i]) + static_cast<size_t>(((d[i] % orders[i]) + orders[i]) % orders[i]);
        return g;
    };
    // multiplication table
    std::vector<std::vector<size_t>> sum(n, std::vector<size_t>(n));
    CycMat c(n, CycVec(n));
    for (size_t g = 0; g < n; ++g)
        for (size_t h = 0; h < n; ++h) {
            auto dg = digits(g), dh = digits(h);
            CycScalar x(1);
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < i; ++j) x *= beta[i][j].pow(dg[i] * dh[j]);
            c[g][h] = x;
            std::vector<long long> d(r);
            for (size_t i = 0; i < r; ++i) d[i] = dg[i] + dh[i];
            sum[g][h] = index(d);
        }
    auto mul = [&](const CycVec& x, const CycVec& y) {
        CycVec z(n);
        for (size_t g = 0; g < n; ++g) {
            if (x[g].is_zero()) continue;
            for (size_t h = 0; h < n; ++h) {
                if (y[h].is_zero()) continue;
                z[sum[g][h]] += x[g] * y[h] * c[g][h];
            }
        }
        return z;
    };
    auto is_zero = [](const CycVec& x) {
        for (const auto& s : x)
            if (!s.is_zero()) return false;
        return true;
    };
    auto basis = [&](size_t g) {
        CycVec x(n);
        x[g] = CycScalar(1);
        return x;
    };
    // central basis elements: u_h commuting with every u_g
    std::vector<size_t> central;
    for (size_t h = 0; h < n; ++h) {
        bool ok = true;
        for (size_t g = 0; g < n && ok; ++g) ok = c[g][h] == c[h][g];
        if (ok) central.push_back(h);
    }
    std::vector<CycVec> idem{basis(0)};
    for (size_t h : central) {
        if (h == 0) continue;
        // u_h^o is a scalar s; split along the o-th roots of s
        CycVec pw = basis(0);
        long long o = 0;
        do {
            pw = mul(pw, basis(h));
            ++o;
        } while (pw[0].is_zero());
        CycScalar s = pw[0];
        std::vector<CycScalar> roots = all_roots(s, static_cast<unsigned>(o));
        std::vector<CycVec> next;
        for (const auto& e : idem) {
            for (size_t k = 0; k < roots.size(); ++k) {
                CycVec proj = e;
                for (size_t k2 = 0; k2 < roots.size(); ++k2) {
                    if (k2 == k) continue;
                    CycVec f = basis(h);
                    f[0] -= roots[k2];
                    CycScalar d = (roots[k] - roots[k2]).inv();
                    for (auto& x : f) x *= d;
                    proj = mul(proj, f);
                }
                if (!is_zero(proj)) next.push_back(proj);
            }
        }
        idem = std::move(next);
    }
    OracleBlocks out;
    out.count = idem.size();
    for (const auto& e : idem) {
        if (!(mul(e, e) == e)) throw std::logic_error("oracle_bicharacter_blocks: not idempotent");
        // left multiplication by an idempotent has rank = trace = |E| * coefficient of u_0
        CycScalar tr = e[0] * CycScalar(static_cast<long long>(n));
        out.dims.push_back(static_cast<size_t>(tr.rational_value().to_ll()));
    }
    return out;
}

long long oracle_dual_index(const IMat& gram) {
    size_t l = gram.size();
    // Gauss-Jordan over Q for the inverse and the determinant
    std::vector<std::vector<Rational>> a(l, std::vector<Rational>(2 * l));
    for (size_t i = 0; i < l; ++i) {
        for (size_t j = 0; j < l; ++j) a[i][j] = Rational(gram[i][j]);
        a[i][l + i] = Rational(1);
    }
    Rational det(1);
    for (size_t col = 0; col < l; ++col) {
        size_t piv = col;
        while (piv < l && a[piv][col].is_zero()) ++piv;
        if (piv == l) throw std::invalid_argument("oracle_dual_index: degenerate form");
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        Rational inv = a[col][col].inv();
        for (auto& x : a[col]) x *= inv;
        for (size_t i = 0; i < l; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            Rational f = a[i][col];
            for (size_t j = 0; j < 2 * l; ++j) a[i][j] -= f * a[col][j];
        }
    }
    long long d = det.to_ll();
    if (d < 0) d = -d;
    std::set<std::vector<Rational>> classes;
    std::vector<long long> x(l, 0);
    while (true) {
        std::vector<Rational> y(l);
        for (size_t i = 0; i < l; ++i) {
            Rational s(0);
            for (size_t j = 0; j < l; ++j) s += a[i][l + j] * Rational(x[j]);
            y[i] = s.frac();
        }
        classes.insert(y);
        size_t k = 0;
        while (k < l && ++x[k] == d) x[k++] = 0;
        if (k == l) break;
    }
    return static_cast<long long>(classes.size());
}

namespace {

using M2 = std::vector<std::vector<long long>>;

M2 mul2(const M2& a, const M2& b) {
    M2 r(2, std::vector<long long>(2, 0));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

std::vector<long long> app2(const M2& a, const std::vector<long long>& v) {
    return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]};
}

long long form2(const M2& g, const std::vector<long long>& a, const std::vector<long long>& b) {
    long long s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += a[i] * g[i][j] * b[j];
    return s;
}

}  // namespace

OracleObstructed oracle_find_obstructed(long long bound) {
    const M2 id = {{1, 0}, {0, 1}};
    for (long long g00 = 1; g00 <= bound; ++g00)
        for (long long g11 = 1; g11 <= bound; ++g11)
            for (long long g01 = -bound; g01 <= bound; ++g01) {
                if (g00 * g11 - g01 * g01 <= 0) continue;
                M2 g = {{g00, g01}, {g01, g11}};
                for (int code = 0; code < 81; ++code) {
                    M2 s(2, std::vector<long long>(2));
                    int c = code;
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) {
                            s[i][j] = c % 3 - 1;
                            c /= 3;
                        }
                    if (s == id) continue;
                    // isometry of finite order
                    bool iso = true;
                    for (int i = 0; i < 2 && iso; ++i)
                        for (int j = 0; j < 2 && iso; ++j) {
                            std::vector<long long> ei(2, 0), ej(2, 0);
                            ei[i] = 1;
                            ej[j] = 1;
                            iso = form2(g, app2(s, ei), app2(s, ej)) == g[i][j];
                        }
                    if (!iso) continue;
                    std::vector<M2> pw = {id};
                    while (pw.size() <= 12 && (pw.size() == 1 || pw.back() != id)) pw.push_back(mul2(pw.back(), s));
                    if (pw.back() != id) continue;
                    pw.pop_back();
                    long long p = static_cast<long long>(pw.size());
                    // sigma^{-s} = sigma^{p-s}
                    for (long long a0 = -1; a0 <= 1; ++a0)
                        for (long long a1 = -1; a1 <= 1; ++a1) {
                            std::vector<long long> a = {a0, a1};
                            for (long long j = 0; j < p; ++j) {
                                std::vector<long long> b = app2(pw[j], a);
                                long long msum = 0;
                                long long wsum = 0;
                                for (long long t = 0; t < p; ++t) {
                                    long long mt = form2(g, app2(pw[(p - t) % p], a), b);
                                    msum += mt;
                                    wsum += t * mt;
                                }
                                long long e = form2(g, a, a) * form2(g, b, b) + msum;
                                double ang = -2.0 * M_PI * static_cast<double>(wsum) / static_cast<double>(p);
                                std::complex<double> val = std::polar(1.0, ang) * (e % 2 == 0 ? 1.0 : -1.0);
                                if (std::abs(val - 1.0) > 1e-9) {
                                    OracleObstructed o;
                                    o.found = true;
                                    o.gram = g;
                                    o.sigma = s;
                                    o.alpha = a;
                                    o.j = j;
                                    return o;
                                }
                            }
                        }
                }
            }
    return {};
}

}  // namespace twistlab
