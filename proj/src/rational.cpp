#include "twistlab/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace twistlab {

namespace {

using i128 = __int128;

constexpr long long kMin = std::numeric_limits<long long>::min();
constexpr long long kMax = std::numeric_limits<long long>::max();

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(i128 v) { return v > static_cast<i128>(kMin) && v <= static_cast<i128>(kMax); }

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<unsigned long long>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<unsigned long long>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n) : n_(n), d_(1) {
    if (n == kMin) {
        big_ = std::make_shared<const mpq_class>(to_mpz(n));
    }
}

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    *this = from_i128(n, d);
}

Rational::Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    big_ = std::make_shared<const mpq_class>(c);
    demote();
}

Rational Rational::from_i128(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    if (n == 0) return r;
    if (fits(n) && fits(d)) {
        r.n_ = static_cast<long long>(n);
        r.d_ = static_cast<long long>(d);
        return r;
    }
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    r.big_ = std::make_shared<const mpq_class>(q);
    return r;
}

void Rational::demote() {
    if (!big_) return;
    const mpq_class& q = *big_;
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != static_cast<long>(kMin) &&
        q.get_den() != static_cast<long>(kMin)) {
        n_ = q.get_num().get_si();
        d_ = q.get_den().get_si();
        big_.reset();
    }
}

Rational Rational::parse(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("bad rational: " + s);
    return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

mpz_class Rational::num() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(n_)); }
mpz_class Rational::den() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(d_)); }
mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

long long Rational::num_ll() const {
    if (big_) throw std::overflow_error("rational numerator exceeds int64");
    return n_;
}
long long Rational::den_ll() const {
    if (big_) throw std::overflow_error("rational denominator exceeds int64");
    return d_;
}
long long Rational::to_ll() const {
    if (!is_integer()) throw std::domain_error("rational is not an integer");
    return num_ll();
}

long long Rational::floor_ll() const {
    if (big_) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
        if (!f.fits_slong_p()) throw std::overflow_error("floor exceeds int64");
        return f.get_si();
    }
    long long q = n_ / d_;
    if ((n_ % d_) != 0 && n_ < 0) --q;
    return q;
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(n_) / static_cast<double>(d_);
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    return from_i128(-static_cast<i128>(n_), d_);
}

Rational Rational::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    if (big_) return Rational(mpq_class(1 / *big_));
    return from_i128(d_, n_);
}

Rational Rational::pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    Rational r(1), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.d_ == b.d_) return Rational::from_i128(static_cast<i128>(a.n_) + b.n_, a.d_);
        i128 n = static_cast<i128>(a.n_) * b.d_ + static_cast<i128>(b.n_) * a.d_;
        i128 d = static_cast<i128>(a.d_) * b.d_;
        return Rational::from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.n_ == 0 || b.n_ == 0) return Rational();
        return Rational::from_i128(static_cast<i128>(a.n_) * b.n_, static_cast<i128>(a.d_) * b.d_);
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inv(); }

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: big values never fit in int64
}

bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        return static_cast<i128>(a.n_) * b.d_ < static_cast<i128>(b.n_) * a.d_;
    }
    return a.to_mpq() < b.to_mpq();
}

bool exact_root(const Rational& q, unsigned r, Rational& out) {
    if (r == 0) return false;
    if (q.sign() < 0) return false;
    if (q.is_zero()) {
        out = Rational();
        return true;
    }
    mpz_class n = q.num(), d = q.den(), rn, rd;
    if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), r) == 0) return false;
    if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), r) == 0) return false;
    out = Rational(mpq_class(rn, rd));
    return true;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace twistlab
