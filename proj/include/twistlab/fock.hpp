#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/cocycle.hpp"

namespace twistlab {

// Eigenbasis h_1..h_l of h (x) Q(omega) for sigma, with sigma h_j = omega^{q_j} h_j.
// Vectors of h are coordinate columns in the lattice basis.
struct GradedBasis {
    long long p = 1;
    std::vector<CycVec> h;
    std::vector<long long> q;
    CycMat pairing;  // (h_i | h_j)
    CycMat hinv;     // coordinates: x = sum_j (hinv x)_j h_j
    CycMat dual;     // dual[j] = coordinates of h_j^* in the eigenbasis, (h_i | h_j^*) = delta_ij

    CycVec coords(const CycVec& x) const;
    CycScalar pair_with(size_t j, const CycVec& x, const IMat& gram) const;  // (h_j | x)
};

GradedBasis graded_basis(const TwistedLattice& L);

CycVec to_cyc(const IVec& v);
CycVec to_cyc(const RVec& v);

// Basis label of Omega: a lattice (or degree) vector and a block index.
struct OmegaLabel {
    IVec g;
    long long k = 0;
    auto operator<=>(const OmegaLabel&) const = default;
};

// A module over the twisted group algebra of Lambda on which h^[0] acts
// diagonally: each label carries the values xi(e_k(0)) of its weight.
class Omega {
public:
    virtual ~Omega() = default;
    virtual RVec weight(const OmegaLabel& o) const = 0;
    virtual std::vector<std::pair<CycScalar, OmegaLabel>> act(const IVec& alpha, const OmegaLabel& o) const = 0;
    // Labels of the lowest layer; test vectors are built on these.
    virtual std::vector<OmegaLabel> seeds() const = 0;
    virtual std::string describe() const = 0;
};

// Omega = C{Lambda} with e(a) e^g = eps(a, g) e^{a+g}; weight of e^g is xi0 + nu(g).
class FreeOmega : public Omega {
public:
    FreeOmega(std::shared_ptr<const TwistData> twist, RVec xi0);
    RVec weight(const OmegaLabel& o) const override;
    std::vector<std::pair<CycScalar, OmegaLabel>> act(const IVec& alpha, const OmegaLabel& o) const override;
    std::vector<OmegaLabel> seeds() const override;
    std::string describe() const override;

private:
    std::shared_ptr<const TwistData> twist_;
    RVec xi0_;
};

using CreationWord = std::vector<std::pair<int, long long>>;  // (j, p * n) for h_j(-n), sorted

struct Mono {
    CreationWord w;
    OmegaLabel o;
    auto operator<=>(const Mono&) const = default;
};

class FockVector {
public:
    std::map<Mono, CycScalar> terms;
    bool overflow = false;

    bool is_zero() const { return terms.empty(); }
    void add(const Mono& m, const CycScalar& c);
    void add(const FockVector& v, const CycScalar& c = CycScalar(1));
    FockVector scaled(const CycScalar& c) const;
    bool same_terms(const FockVector& o) const { return terms == o.terms; }
    std::string str() const;
};

FockVector operator+(const FockVector& a, const FockVector& b);
FockVector operator-(const FockVector& a, const FockVector& b);

// M(1) (x) Omega truncated at creation degree T (stored in units of 1/p).
class FockModule {
public:
    FockModule(std::shared_ptr<const TwistData> twist, std::shared_ptr<const Omega> omega, Rational trunc);

    const TwistData& twist() const { return *twist_; }
    const TwistedLattice& lattice() const { return twist_->lattice(); }
    const GradedBasis& basis() const { return basis_; }
    const Omega& omega() const { return *omega_; }
    long long p() const { return basis_.p; }
    long long trunc_units() const { return trunc_; }
    Rational trunc() const { return Rational(trunc_, p()); }

    static long long units(const CreationWord& w);
    Rational degree(const Mono& m) const { return Rational(units(m.w), p()); }
    RVec weight(const Mono& m) const { return omega_->weight(m.o); }
    Rational xi_of(const RVec& xi, const IVec& a) const;  // xi(a(0))
    Rational omega_degree(const RVec& xi) const;          // (xi | xi) / 2

    FockVector vector(const Mono& m, const CycScalar& c = CycScalar(1)) const;
    // All monomials on label o with creation degree <= deg.
    std::vector<Mono> monomials(const OmegaLabel& o, const Rational& deg) const;

    // h_j(n) and x(n) for x in h (x) Q(omega) given in lattice coordinates.
    FockVector heis_act(size_t j, const Rational& n, const FockVector& v) const;
    FockVector heis_vec(const CycVec& x, const Rational& n, const FockVector& v) const;
    FockVector e_act(const IVec& a, const FockVector& v) const;

    // Coefficient of z^{-m-1} in X_a(z), applied exactly.
    FockVector vertex(const IVec& a, const Rational& m, const FockVector& v) const;
    // Largest m with X_a(m) v possibly nonzero.
    Rational vertex_max_mode(const IVec& a, const FockVector& v) const;

    // Components of E_+(a, z) v: entry J is the coefficient of z^{-J/p}.
    std::vector<FockVector> e_plus(const CycVec& a, const FockVector& v) const;
    // Coefficient of z^{K/p} in E_-(a, z), as a creation polynomial.
    std::vector<std::pair<CreationWord, CycScalar>> e_minus(const CycVec& a, long long K) const;
    FockVector multiply_creation(const std::vector<std::pair<CreationWord, CycScalar>>& poly, const FockVector& v) const;

    // upsilon(k) = 1/2 sum_j (sum_{s<0} h_j(s) h_j^*(k-1-s) + sum_{s>=0} h_j^*(k-1-s) h_j(s)).
    FockVector virasoro(long long k, const FockVector& v) const;
    CycScalar virasoro_one(const Mono& m) const;

private:
    FockVector heis_coords(const CycVec& c, const Rational& n, const FockVector& v) const;

    std::shared_ptr<const TwistData> twist_;
    std::shared_ptr<const Omega> omega_;
    GradedBasis basis_;
    long long trunc_;
    RMat gram_inv_;

    // E_- coefficient polynomials per vector, filled lazily.
    mutable std::mutex cache_mu_;
    mutable std::map<CycVec, std::vector<std::vector<std::pair<CreationWord, CycScalar>>>, bool (*)(const CycVec&, const CycVec&)>
        eminus_cache_;
};

using FockPtr = std::shared_ptr<const FockModule>;

bool cyc_vec_less(const CycVec& a, const CycVec& b);

}  // namespace twistlab
