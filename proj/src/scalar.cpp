#include "twistlab/scalar.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>

namespace twistlab {

namespace {

std::atomic<long long> g_cap{-1};

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw ScalarError("cyclotomic table overflow");
    return r;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw ScalarError("cyclotomic table overflow");
    return r;
}

using IPoly = std::vector<long long>;  // coefficient i of x^i

IPoly poly_subst_pow(const IPoly& f, long long k) {
    IPoly g((f.size() - 1) * k + 1, 0);
    for (size_t i = 0; i < f.size(); ++i) g[i * k] = f[i];
    return g;
}

// Exact division by a monic polynomial.
IPoly poly_div_monic(IPoly f, const IPoly& g) {
    size_t dg = g.size() - 1;
    IPoly q(f.size() - dg, 0);
    for (size_t i = f.size(); i-- > dg;) {
        long long c = f[i];
        q[i - dg] = c;
        if (c == 0) continue;
        for (size_t j = 0; j <= dg; ++j) f[i - dg + j] = checked_add(f[i - dg + j], -checked_mul(c, g[j]));
    }
    for (size_t i = 0; i < dg; ++i)
        if (f[i] != 0) throw ScalarError("inexact cyclotomic division");
    return q;
}

std::vector<long long> prime_factors(long long n) {
    std::vector<long long> ps;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

IPoly cyclotomic_poly(long long n) {
    IPoly phi{-1, 1};
    long long rad = 1;
    for (long long p : prime_factors(n)) {
        phi = poly_div_monic(poly_subst_pow(phi, p), phi);
        rad *= p;
    }
    return poly_subst_pow(phi, n / rad);
}

struct Field {
    long long n = 1;
    long long phi = 1;
    // pw[e] = coordinates of zeta^e, 0 <= e < n
    std::vector<std::vector<long long>> pw;
};

std::shared_ptr<const Field> build_field(long long n) {
    auto f = std::make_shared<Field>();
    f->n = n;
    IPoly cyc = cyclotomic_poly(n);
    long long d = static_cast<long long>(cyc.size()) - 1;
    f->phi = d;
    f->pw.assign(n, std::vector<long long>(d, 0));
    for (long long e = 0; e < n; ++e) {
        if (e < d) {
            f->pw[e][e] = 1;
            continue;
        }
        const auto& prev = f->pw[e - 1];
        long long top = prev[d - 1];
        auto& cur = f->pw[e];
        for (long long i = d - 1; i >= 1; --i) cur[i] = prev[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (long long i = 0; i < d; ++i) cur[i] = checked_add(cur[i], -checked_mul(top, cyc[i]));
    }
    return f;
}

const Field& field(long long n) {
    static std::mutex mu;
    static std::map<long long, std::shared_ptr<const Field>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    auto f = build_field(n);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(n, f);
    return *it->second;
}

long long lcm_checked(long long a, long long b) {
    long long l = std::lcm(a, b);
    if (l > conductor_cap()) throw ScalarError("conductor " + std::to_string(l) + " exceeds cap " + std::to_string(conductor_cap()));
    return l;
}

// Exact solve of a (possibly overdetermined, consistent) rational system A x = b.
bool solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::vector<Rational>& x) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivcol;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        Rational inv = a[r][c].inv();
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rational f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return false;
    x.assign(cols, Rational());
    for (size_t i = 0; i < r; ++i) x[pivcol[i]] = b[i];
    return true;
}

}  // namespace

long long conductor_cap() {
    long long c = g_cap.load();
    if (c > 0) return c;
    long long v = 720;
    if (const char* env = std::getenv("TWISTLAB_CONDUCTOR_CAP")) {
        long long e = std::atoll(env);
        if (e > 0) v = e;
    }
    g_cap.store(v);
    return v;
}

void set_conductor_cap(long long cap) { g_cap.store(cap); }

long long euler_phi(long long n) {
    long long r = n;
    for (long long p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

CycScalar CycScalar::root_of_unity(long long N, long long k) {
    if (N < 1) throw std::invalid_argument("root_of_unity needs N >= 1");
    k %= N;
    if (k < 0) k += N;
    long long g = std::gcd(k, N);
    if (k == 0) return CycScalar(1);
    N /= g;
    k /= g;
    bool negate = false;
    if (N % 4 == 2) {
        // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
        long long m = N / 2;
        negate = (k % 2) == 1;
        k = (k * ((m + 1) / 2)) % m;
        N = m;
    }
    if (N > conductor_cap()) throw ScalarError("conductor " + std::to_string(N) + " exceeds cap " + std::to_string(conductor_cap()));
    CycScalar r;
    if (N == 1) {
        r = CycScalar(1);
    } else {
        const Field& f = field(N);
        std::vector<Rational> c(f.phi);
        for (long long i = 0; i < f.phi; ++i) c[i] = Rational(f.pw[k][i]);
        r = CycScalar(N, std::move(c));
        r.normalize();
    }
    return negate ? -r : r;
}

void CycScalar::normalize() {
    if (n_ == 1) return;
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return;
    Rational q = c_[0];
    n_ = 1;
    c_.assign(1, q);
}

bool CycScalar::is_zero() const {
    for (const auto& q : c_)
        if (!q.is_zero()) return false;
    return true;
}

bool CycScalar::is_one() const { return n_ == 1 && c_[0] == Rational(1); }

bool CycScalar::is_rational() const { return n_ == 1; }

Rational CycScalar::rational_value() const {
    if (n_ != 1) throw ScalarError("scalar is not rational: " + str());
    return c_[0];
}

CycScalar CycScalar::lift(long long M) const {
    if (M == n_) return *this;
    if (M % n_ != 0) throw std::invalid_argument("lift target must be a multiple of the conductor");
    const Field& f = field(M);
    std::vector<Rational> c(f.phi);
    long long step = M / n_;
    for (size_t e = 0; e < c_.size(); ++e) {
        if (c_[e].is_zero()) continue;
        const auto& v = f.pw[(static_cast<long long>(e) * step) % M];
        for (long long i = 0; i < f.phi; ++i)
            if (v[i] != 0) c[i] += c_[e] * Rational(v[i]);
    }
    return CycScalar(M, std::move(c));
}

CycScalar CycScalar::galois(long long a) const {
    if (n_ == 1) return *this;
    a %= n_;
    if (a < 0) a += n_;
    if (std::gcd(a, n_) != 1) throw std::invalid_argument("galois exponent must be a unit");
    const Field& f = field(n_);
    std::vector<Rational> c(f.phi);
    for (size_t e = 0; e < c_.size(); ++e) {
        if (c_[e].is_zero()) continue;
        const auto& v = f.pw[(static_cast<long long>(e) * a) % n_];
        for (long long i = 0; i < f.phi; ++i)
            if (v[i] != 0) c[i] += c_[e] * Rational(v[i]);
    }
    CycScalar r(n_, std::move(c));
    r.normalize();
    return r;
}

CycScalar CycScalar::conj() const { return galois(-1); }

CycScalar CycScalar::minimal() const {
    if (n_ == 1) return *this;
    for (long long M = 1; M < n_; ++M) {
        if (n_ % M != 0 || M % 4 == 2) continue;
        bool fixed = true;
        for (long long a = 1 + M; a < n_ && fixed; a += M)
            if (std::gcd(a, n_) == 1 && galois(a) != *this) fixed = false;
        if (!fixed) continue;
        long long pm = euler_phi(M);
        std::vector<std::vector<Rational>> A(c_.size(), std::vector<Rational>(pm));
        for (long long j = 0; j < pm; ++j) {
            CycScalar b = root_of_unity(M, j).lift(n_);
            for (size_t i = 0; i < c_.size(); ++i) A[i][j] = b.c_[i];
        }
        std::vector<Rational> x;
        if (!solve_rational(A, c_, x)) throw ScalarError("minimal conductor solve failed");
        CycScalar r(M, std::move(x));
        r.normalize();
        return r;
    }
    return *this;
}

bool CycScalar::root_form(Rational& q, long long& M, long long& k) const {
    if (is_zero()) return false;
    long long L = (n_ % 2 == 1) ? 2 * n_ : n_;
    CycScalar step = root_of_unity(L, -1);
    CycScalar t = *this;
    for (long long j = 0; j < L; ++j) {
        if (t.is_rational() && t.c_[0].sign() > 0) {
            q = t.c_[0];
            long long g = std::gcd(j, L);
            if (j == 0) {
                M = 1;
                k = 0;
            } else {
                M = L / g;
                k = j / g;
            }
            return true;
        }
        t = t * step;
    }
    return false;
}

bool CycScalar::is_root_of_unity() const {
    Rational q;
    long long M, k;
    return root_form(q, M, k) && q == Rational(1);
}

CycScalar CycScalar::operator-() const {
    std::vector<Rational> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return CycScalar(n_, std::move(c));
}

CycScalar operator+(const CycScalar& a, const CycScalar& b) {
    if (a.n_ == b.n_) {
        std::vector<Rational> c(a.c_.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
        CycScalar r(a.n_, std::move(c));
        r.normalize();
        return r;
    }
    if (b.n_ == 1) {
        CycScalar r = a;
        r.c_[0] += b.c_[0];
        return r;
    }
    if (a.n_ == 1) return b + a;
    long long M = lcm_checked(a.n_, b.n_);
    return a.lift(M) + b.lift(M);
}

CycScalar operator-(const CycScalar& a, const CycScalar& b) { return a + (-b); }

CycScalar operator*(const CycScalar& a, const CycScalar& b) {
    if (b.n_ == 1) {
        if (b.c_[0].is_zero()) return CycScalar();
        std::vector<Rational> c(a.c_.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] * b.c_[0];
        return CycScalar(a.n_, std::move(c));
    }
    if (a.n_ == 1) return b * a;
    if (a.n_ != b.n_) {
        long long M = lcm_checked(a.n_, b.n_);
        return a.lift(M) * b.lift(M);
    }
    const Field& f = field(a.n_);
    size_t d = static_cast<size_t>(f.phi);
    std::vector<Rational> conv(2 * d - 1);
    for (size_t i = 0; i < d; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < d; ++j)
            if (!b.c_[j].is_zero()) conv[i + j] += a.c_[i] * b.c_[j];
    }
    std::vector<Rational> c(conv.begin(), conv.begin() + d);
    for (size_t e = d; e < conv.size(); ++e) {
        if (conv[e].is_zero()) continue;
        const auto& v = f.pw[e % f.n];
        for (size_t i = 0; i < d; ++i)
            if (v[i] != 0) c[i] += conv[e] * Rational(v[i]);
    }
    CycScalar r(a.n_, std::move(c));
    r.normalize();
    return r;
}

CycScalar CycScalar::inv() const {
    if (is_zero()) throw ScalarError("inverse of zero scalar");
    if (n_ == 1) return CycScalar(c_[0].inv());
    // Solve (multiplication by this) x = 1 in the power basis.
    size_t d = c_.size();
    std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d));
    CycScalar z = root_of_unity(n_, 1);
    CycScalar col = *this;
    for (size_t j = 0; j < d; ++j) {
        CycScalar cl = col.lift(n_);
        for (size_t i = 0; i < d; ++i) A[i][j] = cl.c_[i];
        col = col * z;
    }
    std::vector<Rational> rhs(d), x;
    rhs[0] = Rational(1);
    if (!solve_rational(A, rhs, x)) throw ScalarError("singular multiplication matrix");
    CycScalar r(n_, std::move(x));
    r.normalize();
    return r;
}

CycScalar operator/(const CycScalar& a, const CycScalar& b) { return a * b.inv(); }

CycScalar CycScalar::pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    CycScalar r(1), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    return r;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    long long M = std::lcm(a.n_, b.n_);
    return a.lift(M).c_ == b.lift(M).c_;
}

std::complex<double> CycScalar::embed() const {
    std::complex<double> s = 0;
    const double tau = 2.0 * std::acos(-1.0);
    for (size_t e = 0; e < c_.size(); ++e)
        s += c_[e].to_double() * std::polar(1.0, tau * static_cast<double>(e) / static_cast<double>(n_));
    return s;
}

std::string CycScalar::str() const {
    CycScalar m = minimal();
    if (m.n_ == 1) return m.c_[0].str();
    std::string out;
    bool first = true;
    for (size_t e = 0; e < m.c_.size(); ++e) {
        const Rational& q = m.c_[e];
        if (q.is_zero()) continue;
        std::string term = "z(" + std::to_string(m.n_) + ")^" + std::to_string(e);
        if (first) {
            out += q.str() + "*" + term;
            first = false;
        } else if (q.sign() < 0) {
            out += " - " + (-q).str() + "*" + term;
        } else {
            out += " + " + q.str() + "*" + term;
        }
    }
    return out;
}

CycScalar CycScalar::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty scalar string");
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad scalar '" + text + "': " + why);
    };
    auto read_int = [&]() -> long long {
        size_t st = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (st == i || (i == st + 1 && !std::isdigit(static_cast<unsigned char>(s[st])))) fail("expected integer");
        return std::stoll(s.substr(st, i - st));
    };
    CycScalar total;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        Rational q(1);
        bool have_q = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            size_t st = i;
            while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
            q = Rational::parse(s.substr(st, i - st));
            have_q = true;
        }
        CycScalar term(q);
        bool star = false;
        if (have_q && i < s.size() && s[i] == '*') {
            ++i;
            star = true;
        }
        if (i + 1 < s.size() && s[i] == 'z' && s[i + 1] == '(') {
            i += 2;
            long long N = read_int();
            if (i >= s.size() || s[i] != ')') fail("expected ')'");
            ++i;
            long long k = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                k = read_int();
            }
            if (N < 1) fail("conductor must be positive");
            term = term * root_of_unity(N, k);
        } else if (star || !have_q) {
            fail("expected z(N)");
        }
        total += sign > 0 ? term : -term;
    }
    return total;
}

CycScalar canonical_root(const CycScalar& a, unsigned r) {
    if (r == 0) throw std::invalid_argument("root degree must be positive");
    Rational q;
    long long M, k;
    if (!a.root_form(q, M, k)) throw ScalarError("not a positive rational times a root of unity: " + a.str());
    Rational qr;
    if (!exact_root(q, r, qr)) throw ScalarError("no exact rational root of " + q.str());
    return CycScalar(qr) * CycScalar::root_of_unity(static_cast<long long>(r) * M, k);
}

std::vector<CycScalar> all_roots(const CycScalar& a, unsigned r) {
    CycScalar base = canonical_root(a, r);
    std::vector<CycScalar> out;
    for (unsigned j = 0; j < r; ++j) out.push_back(base * CycScalar::root_of_unity(r, j));
    return out;
}

Rational root_angle(const CycScalar& mu) {
    Rational q;
    long long M, k;
    if (!mu.root_form(q, M, k) || q != Rational(1)) throw ScalarError("not a root of unity: " + mu.str());
    return Rational(k, M);
}

std::ostream& operator<<(std::ostream& os, const CycScalar& a) { return os << a.str(); }

Phase::Phase(const Rational& q, const Rational& angle) : q_(q), angle_(angle.frac()) {
    if (q.sign() <= 0) throw ScalarError("phase modulus must be positive");
}

Phase Phase::from_scalar(const CycScalar& a) {
    Rational q;
    long long M, k;
    if (!a.root_form(q, M, k)) throw ScalarError("not a positive rational times a root of unity: " + a.str());
    return Phase(q, Rational(k, M));
}

CycScalar Phase::scalar() const {
    return CycScalar(q_) * CycScalar::root_of_unity(angle_.den_ll(), angle_.num_ll());
}

}  // namespace twistlab
