#pragma once

#include <map>
#include <string>
#include <utility>

#include "twistlab/rational.hpp"

namespace twistlab {

// Generalized binomial lambda (lambda - 1) ... (lambda - j + 1) / j!.
Rational gen_binom(const Rational& lambda, long long j);

// Laurent polynomial in u = w^{1/p}, v = z^{1/p} with rational coefficients,
// keyed by the exponent pair (a, b) of u^a v^b.
class KernelPoly {
public:
    using Terms = std::map<std::pair<long long, long long>, Rational>;

    explicit KernelPoly(long long p = 1) : p_(p) {}
    static KernelPoly monomial(long long p, long long a, long long b, const Rational& c = Rational(1));

    long long p() const { return p_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Rational coeff(long long a, long long b) const;

    void add(long long a, long long b, const Rational& c);
    KernelPoly operator+(const KernelPoly& o) const;
    KernelPoly operator-(const KernelPoly& o) const;
    KernelPoly operator*(const KernelPoly& o) const;
    KernelPoly pow(long long e) const;  // e >= 0
    bool operator==(const KernelPoly& o) const { return p_ == o.p_ && t_ == o.t_; }

    // Substitute u = v; result keyed by the exponent of v.
    std::map<long long, Rational> restrict_diagonal() const;
    std::string str() const;

private:
    long long p_;
    Terms t_;
};

// S = (w - z) / (u - v) = sum_{i<p} u^i v^{p-1-i}.
KernelPoly kernel_S(long long p);

// The double-sum polynomial F_p(m).
KernelPoly kernel_F(long long p, long long m);

// Delta(w, z) for degrees {0, 1/p, ..., (p-1)/p} and j <= N - n - 1, from the
// defining sum over degrees and binomial expansion of (w - z)^j.
KernelPoly kernel_Delta_literal(long long p, long long n, long long N);
// The same through the factorization S^{N-n} F_p(N-n-1).
KernelPoly kernel_Delta(long long p, long long n, long long N);

}  // namespace twistlab
