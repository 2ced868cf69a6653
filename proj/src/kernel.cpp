#include "twistlab/kernel.hpp"

#include <sstream>
#include <stdexcept>

namespace twistlab {

Rational gen_binom(const Rational& lambda, long long j) {
    if (j < 0) return Rational(0);
    Rational r(1);
    for (long long i = 0; i < j; ++i) r = r * (lambda - Rational(i)) / Rational(i + 1);
    return r;
}

KernelPoly KernelPoly::monomial(long long p, long long a, long long b, const Rational& c) {
    KernelPoly k(p);
    k.add(a, b, c);
    return k;
}

Rational KernelPoly::coeff(long long a, long long b) const {
    auto it = t_.find({a, b});
    return it == t_.end() ? Rational(0) : it->second;
}

void KernelPoly::add(long long a, long long b, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace({a, b}, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

KernelPoly KernelPoly::operator+(const KernelPoly& o) const {
    KernelPoly r = *this;
    for (const auto& [k, c] : o.t_) r.add(k.first, k.second, c);
    return r;
}

KernelPoly KernelPoly::operator-(const KernelPoly& o) const {
    KernelPoly r = *this;
    for (const auto& [k, c] : o.t_) r.add(k.first, k.second, -c);
    return r;
}

KernelPoly KernelPoly::operator*(const KernelPoly& o) const {
    if (p_ != o.p_) throw std::invalid_argument("kernel polynomials over different p");
    KernelPoly r(p_);
    for (const auto& [k1, c1] : t_)
        for (const auto& [k2, c2] : o.t_) r.add(k1.first + k2.first, k1.second + k2.second, c1 * c2);
    return r;
}

KernelPoly KernelPoly::pow(long long e) const {
    KernelPoly r = monomial(p_, 0, 0);
    for (long long i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::map<long long, Rational> KernelPoly::restrict_diagonal() const {
    std::map<long long, Rational> r;
    for (const auto& [k, c] : t_) {
        Rational& slot = r[k.first + k.second];
        slot += c;
    }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

std::string KernelPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*w^(" << Rational(k.first, p_).str() << ")*z^(" << Rational(k.second, p_).str() << ")";
    }
    return os.str();
}

KernelPoly kernel_S(long long p) {
    KernelPoly s(p);
    for (long long i = 0; i < p; ++i) s.add(i, p - 1 - i, Rational(1));
    return s;
}

KernelPoly kernel_F(long long p, long long m) {
    KernelPoly f(p);
    for (long long l = 1 - p; l <= 1 - p + m; ++l) {
        Rational c;
        for (long long q = 0; q < p; ++q) {
            // k ranges over 0 <= l + q - k p <= m + 1
            for (long long k = 0;; ++k) {
                long long t = l + q - k * p;
                if (t < 0) break;
                if (t > m + 1) continue;
                Rational b1 = gen_binom(Rational(-q, p) + Rational(k), m);
                Rational b2 = gen_binom(Rational(m + 1), t);
                Rational term = b1 * b2;
                if ((l + q + k * p) % 2 != 0) term = -term;
                c += term;
            }
        }
        // w^{(m-l+1)/p - 1} z^{l/p - m}
        f.add(m - l + 1 - p, l - m * p, c);
    }
    return f;
}

KernelPoly kernel_Delta_literal(long long p, long long n, long long N) {
    KernelPoly d(p);
    long long m = N - n - 1;
    for (long long q = 0; q < p; ++q) {
        for (long long j = 0; j <= m; ++j) {
            Rational b = gen_binom(Rational(-q, p), j);
            if (b.is_zero()) continue;
            // (w - z)^j = sum_i binom(j, i) w^{j-i} (-z)^i
            for (long long i = 0; i <= j; ++i) {
                Rational c = b * gen_binom(Rational(j), i);
                if (i % 2 != 0) c = -c;
                d.add(q + (j - i) * p, -q - j * p + i * p, c);
            }
        }
    }
    return d;
}

KernelPoly kernel_Delta(long long p, long long n, long long N) {
    if (N - n <= 0) return KernelPoly(p);
    return kernel_S(p).pow(N - n) * kernel_F(p, N - n - 1);
}

}  // namespace twistlab
