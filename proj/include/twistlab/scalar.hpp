#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistlab/rational.hpp"

namespace twistlab {

// Raised when a value leaves the supported scalar domain (conductor cap,
// non-root-of-unity phases, missing exact roots).
struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long long conductor_cap();
void set_conductor_cap(long long cap);

long long euler_phi(long long n);

// Element of Q(zeta_N) stored by coordinates in the power basis
// 1, z, ..., z^{phi(N)-1} modulo the N-th cyclotomic polynomial.
// N is never 2 mod 4; rational values always carry N = 1.
class CycScalar {
public:
    CycScalar() : n_(1), c_{Rational()} {}
    CycScalar(const Rational& q) : n_(1), c_{q} {}  // NOLINT(google-explicit-constructor)
    CycScalar(long long q) : n_(1), c_{Rational(q)} {}  // NOLINT(google-explicit-constructor)

    static CycScalar root_of_unity(long long N, long long k);
    static CycScalar parse(const std::string& s);

    long long conductor() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational rational_value() const;  // throws unless is_rational()

    // Same value expressed over Q(zeta_M); M must be a multiple of conductor().
    CycScalar lift(long long M) const;
    // Same value over the smallest cyclotomic field containing it.
    CycScalar minimal() const;

    // Decompose as q * zeta_M^k with q > 0, 0 <= k < M, gcd(k, M) = 1.
    bool root_form(Rational& q, long long& M, long long& k) const;
    bool is_root_of_unity() const;

    CycScalar conj() const;
    CycScalar galois(long long a) const;  // zeta -> zeta^a, gcd(a, N) = 1

    CycScalar operator-() const;
    CycScalar inv() const;
    CycScalar pow(long long e) const;

    friend CycScalar operator+(const CycScalar& a, const CycScalar& b);
    friend CycScalar operator-(const CycScalar& a, const CycScalar& b);
    friend CycScalar operator*(const CycScalar& a, const CycScalar& b);
    friend CycScalar operator/(const CycScalar& a, const CycScalar& b);
    CycScalar& operator+=(const CycScalar& b) { return *this = *this + b; }
    CycScalar& operator-=(const CycScalar& b) { return *this = *this - b; }
    CycScalar& operator*=(const CycScalar& b) { return *this = *this * b; }
    CycScalar& operator/=(const CycScalar& b) { return *this = *this / b; }

    friend bool operator==(const CycScalar& a, const CycScalar& b);
    friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

    std::complex<double> embed() const;
    std::string str() const;

private:
    CycScalar(long long N, std::vector<Rational> c) : n_(N), c_(std::move(c)) {}
    void normalize();

    long long n_;
    std::vector<Rational> c_;
};

// Canonical r-th root of q*zeta_M^k (q > 0): q^{1/r} * zeta_{rM}^k.
CycScalar canonical_root(const CycScalar& a, unsigned r);

// All r-th roots: canonical root times zeta_r^j, j = 0..r-1.
std::vector<CycScalar> all_roots(const CycScalar& a, unsigned r);

// The exact rational lambda in [0,1) with mu = exp(2 pi i lambda); mu must be a root of unity.
Rational root_angle(const CycScalar& mu);

std::ostream& operator<<(std::ostream& os, const CycScalar& a);

// q * exp(2 pi i * angle) with q > 0 rational and angle in [0,1). Cheap to
// multiply; converted to a CycScalar only when needed.
class Phase {
public:
    Phase() : q_(1), angle_(0) {}
    Phase(const Rational& q, const Rational& angle);
    static Phase root(long long N, long long k) { return Phase(Rational(1), Rational(k, N)); }
    static Phase sign(long long e) { return Phase(Rational(1), Rational(e, 2)); }
    static Phase from_scalar(const CycScalar& a);  // throws ScalarError if unsupported

    const Rational& modulus() const { return q_; }
    const Rational& angle() const { return angle_; }
    bool is_one() const { return q_ == Rational(1) && angle_.is_zero(); }

    Phase operator*(const Phase& b) const { return Phase(q_ * b.q_, angle_ + b.angle_); }
    Phase& operator*=(const Phase& b) { return *this = *this * b; }
    Phase inv() const { return Phase(q_.inv(), -angle_); }
    Phase pow(long long e) const { return Phase(q_.pow(e), angle_ * Rational(e)); }
    bool operator==(const Phase& b) const { return q_ == b.q_ && angle_ == b.angle_; }
    bool operator!=(const Phase& b) const { return !(*this == b); }

    CycScalar scalar() const;
    std::string str() const { return scalar().str(); }

private:
    Rational q_;
    Rational angle_;
};

using CycVec = std::vector<CycScalar>;
using CycMat = std::vector<CycVec>;

}  // namespace twistlab
