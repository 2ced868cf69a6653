#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "twistlab/linalg.hpp"

namespace twistlab {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Orbit {
    IVec rep;                    // lexicographically smallest member
    std::vector<IVec> members;   // rep, sigma rep, ..., sigma^{len-1} rep
    long long length = 1;
    RVec degree;                 // nu(rep)
    bool degree_zero = true;
};

struct OrbitDecomposition {
    std::vector<Orbit> orbits;   // orbits with nonzero degree come first
    size_t m = 0;                // number of orbits with nonzero degree
    std::vector<IVec> pi() const;
};

// Integral lattice with Gram matrix G and a form-preserving automorphism S of
// finite order p. Vectors are integer coordinates in the lattice basis and
// sigma acts by alpha -> S alpha.
class TwistedLattice {
public:
    TwistedLattice(IMat gram, IMat sigma);

    size_t rank() const { return gram_.size(); }
    long long order() const { return p_; }
    const IMat& gram() const { return gram_; }
    const IMat& sigma() const { return sigma_; }

    IVec basis(size_t i) const;
    IVec act(const IVec& a, long long s = 1) const;  // sigma^s a, any integer s
    long long pair(const IVec& a, const IVec& b) const;

    IVec m_values(const IVec& a, const IVec& b) const;  // m_s = (sigma^{-s} a | b)
    long long m_sum(const IVec& a, const IVec& b) const;  // p (a^[0] | b^[0])
    Rational zero_pairing(const IVec& a, const IVec& b) const;  // (a^[0] | b^[0])
    Rational prime_pairing(const IVec& a, const IVec& b) const;  // (a' | b')
    RVec nu(const IVec& a) const;  // ((a^[0] | e_k))_k

    long long discriminant() const;  // |det G|

    OrbitDecomposition reduce_generating_set() const;
    Orbit orbit_of(const IVec& v) const;

private:
    IMat gram_;
    IMat sigma_;
    long long p_ = 1;
    std::vector<IMat> pows_;  // sigma^s, 0 <= s < p
};

using LatticePtr = std::shared_ptr<const TwistedLattice>;

}  // namespace twistlab
