#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace twistlab {

// Exact rational number. Small values live in a pair of int64; anything that
// would overflow is promoted to an immutable shared mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(long long n);  // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d);
    explicit Rational(const mpq_class& q);

    static Rational parse(const std::string& s);

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_integer() const;
    bool is_small() const { return !big_; }
    int sign() const;

    // Numerator / denominator as arbitrary precision integers.
    mpz_class num() const;
    mpz_class den() const;
    mpq_class to_mpq() const;

    // Only valid when the value fits (throws std::overflow_error otherwise).
    long long num_ll() const;
    long long den_ll() const;
    long long to_ll() const;  // requires integer

    long long floor_ll() const;
    Rational frac() const { return *this - Rational(floor_ll()); }
    double to_double() const;
    std::string str() const;

    Rational operator-() const;
    Rational inv() const;
    Rational pow(long long e) const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    static Rational from_i128(__int128 n, __int128 d);
    void demote();

    long long n_ = 0;
    long long d_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

// Exact r-th root of a nonnegative rational; returns false if none exists.
bool exact_root(const Rational& q, unsigned r, Rational& out);

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace twistlab
