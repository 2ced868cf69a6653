#pragma once

// Twisted modules of a lattice vertex algebra: extensions of sigma, the
// conditions (i)-(ii) on a module, the algebra A, its graded semisimple
// structure and the enumeration of simple objects.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "twistlab/fock.hpp"

namespace twistlab {

// Extension sigma-hat X_a = phi(a) X_{sigma a}: per generating orbit the
// roots mu omega^j and the coefficients k_s of the eigenvectors
// Y_j = sum_s omega^{-js} k_s X_{sigma^s a}, omega a primitive root of the
// orbit length.
struct OrbitExtension {
    Orbit orbit;
    CycScalar product;               // prod over the orbit of phi
    std::vector<CycScalar> roots;    // all mu with mu^len = product
    std::vector<std::vector<CycScalar>> k;  // k[root][s], s < len
};
struct Extension {
    std::vector<OrbitExtension> orbits;
    bool order_p = true;   // sigma-hat^p X_a = X_a on the lattice basis
    bool eigen_ok = true;  // sigma-hat Y_j = mu omega^j Y_j for every orbit, root and j
};
Extension extend_automorphism(const TwistData& T, const OrbitDecomposition& d);
Extension extend_automorphism(const TwistData& T);

// Conditions (i) and (ii) checked on the lattice basis and a few labels of
// Omega. mu(a) is read off the module as phi(a) e(sigma a) e(a)^{-1}.
struct ConditionReport {
    bool cond_i = true;
    bool cond_ii = true;
    std::vector<CycScalar> mu;     // per basis vector
    std::vector<long long> orbit_length;
    long long p = 1;
    std::vector<std::string> witnesses;
    bool ok() const { return cond_i && cond_ii; }
};
ConditionReport twisted_conditions(const FockModule& M);

// R modulo the relations e(sigma a) = mu(a) phi(a)^{-1} e(a), a in Pi: the
// twisted group algebra of Q = Lambda / K with K = (sigma - 1) Lambda, where
// e(k) acts by the scalar chi(k) for k in K. Elements of Q are represented by
// canonical lattice vectors modulo K.
class TwistedGroupAlgebra {
public:
    TwistedGroupAlgebra(std::shared_ptr<const TwistData> T, const OrbitDecomposition& d, const std::vector<CycScalar>& mu);

    bool zero() const { return zero_; }
    const std::string& witness() const { return witness_; }
    const TwistData& twist() const { return *T_; }
    std::shared_ptr<const TwistData> twist_ptr() const { return T_; }
    const IMat& k_basis() const { return kbasis_; }
    long long quotient_order() const;  // |Lambda / K|, -1 when infinite

    IVec canon(const IVec& v) const;
    // e(v) = c x_{canon(v)}; returns c.
    Phase reduce(const IVec& v) const;
    // x_a x_b = c x_{canon(a+b)} for canonical a, b; returns c.
    Phase mul(const IVec& a, const IVec& b) const;
    // e(k) acts as chi(k) for k in K.
    Phase chi(const IVec& k) const;
    // x_a^n = c x_{canon(n a)}.
    Phase power(const IVec& a, long long n) const;

private:
    Phase chi_from_basis(const IVec& coords) const;

    std::shared_ptr<const TwistData> T_;
    IMat kbasis_;
    HNF khnf_;
    std::vector<Phase> kchi_;
    bool zero_ = false;
    std::string witness_;
};
using AlgebraPtr = std::shared_ptr<const TwistedGroupAlgebra>;

// Presentation of A: generators x_j = image of e(a_j) for the orbit
// representatives (nonzero degree first), c_ij = C(a_i, a_j), and for the
// degree zero generators x_j^{len_j} = theta_j.
struct PresentedAlgebraA {
    bool zero = false;
    std::string witness;
    std::vector<CycScalar> mu;
    std::vector<IVec> gens;
    std::vector<RVec> degree;
    std::vector<long long> length;
    size_t m = 0;
    CycMat c;
    std::vector<CycScalar> theta;       // 1 for generators of nonzero degree
    std::vector<CycScalar> normalizer;  // theta_j^{-1/len_j}; (n_j x_j)^{len_j} = 1
    long long dim = -1;                 // |Lambda / K|, -1 when infinite
    AlgebraPtr model;
};
PresentedAlgebraA build_algebra_A(std::shared_ptr<const TwistData> T, const OrbitDecomposition& d,
                                  const std::vector<CycScalar>& mu);

// Twisted characters of a finite subgroup S of Q (given by canonical
// representatives): psi(a) psi(b) = c(a,b) psi(a+b) where x_a x_b = c(a,b) x_{a+b}.
using TwistedChar = std::map<IVec, CycScalar>;
std::vector<TwistedChar> twisted_characters(const TwistedGroupAlgebra& A, const std::vector<IVec>& S);

struct Block {
    TwistedChar psi;     // character of the radical
    TwistedChar psi_h;   // an extension to the Lagrangian subgroup
    CycVec idempotent;   // coordinates over the elements of E
    size_t dim = 0;      // dimension of e B_0
};
// B_0 = twisted group algebra of E = (Lambda cap h') / K split by the
// characters of the radical of the commutator form on E.
struct Decomposition {
    std::vector<IVec> E;
    std::vector<IVec> radical;
    std::vector<IVec> lagrangian;   // maximal isotropic subgroup containing the radical
    std::vector<Block> blocks;
    size_t block_dim = 0;           // |E| / |radical|
    size_t module_dim = 0;          // sqrt(block_dim), dimension of a simple B_0 module
    std::vector<std::vector<size_t>> conjugation;  // block permutation by each nonzero degree generator
    bool certified = false;
    std::vector<std::string> failures;
};
Decomposition decompose_A(const PresentedAlgebraA& A);

// Omega induced from a twisted character of the preimage of the Lagrangian
// subgroup: basis v_t for t in Lambda modulo that preimage, weight of v_t is
// base + nu(t).
class BlockOmega : public Omega {
public:
    BlockOmega(AlgebraPtr A, const std::vector<IVec>& lagrangian, TwistedChar psi, RVec base);
    RVec weight(const OmegaLabel& o) const override;
    std::vector<std::pair<CycScalar, OmegaLabel>> act(const IVec& alpha, const OmegaLabel& o) const override;
    std::vector<OmegaLabel> seeds() const override;
    std::string describe() const override;

private:
    CycScalar psi_hat(const IVec& h) const;

    AlgebraPtr A_;
    HNF hnf_;
    TwistedChar psi_;
    RVec base_;
};

struct SimpleModuleClass {
    size_t row = 0;          // index of the mu choice in the classification rows
    std::vector<CycScalar> mu;
    size_t block = 0;
    RVec eta;                // offset of the weight coset
    RVec base_weight;        // y0 + eta: weight values on the lattice basis
    size_t omega_dim = 0;    // dimension of each weight space of Omega
};

struct MuRow {
    std::vector<CycScalar> mu;
    PresentedAlgebraA A;
    Decomposition D;
    bool weights_ok = false;  // a weight coset satisfying (ii) exists
    RVec y0;
    std::string note;
    size_t classes = 0;
};

struct Classification {
    long long p = 1;
    std::vector<long long> orbit_lengths;
    OrbitDecomposition orbits;
    bool obstructed = false;
    Obstruction witness;
    bool nu_integral = true;          // nu(Lambda) pairs integrally with pi(Lambda)
    long long eta_index = 0;          // [ {y : (ii)-differences integral} : nu(Lambda) ]
    long long dual_eta_index = 0;    // [ (Lambda^[0])' : nu(Lambda) ]
    std::vector<RVec> eta_reps;
    std::vector<MuRow> rows;
    std::vector<SimpleModuleClass> classes;
    std::string refusal;              // set when the scalar domain is left
};
Classification enumerate_simple_twisted(std::shared_ptr<const TwistData> T, bool parallel = true);

// Omega and Fock module of an enumerated class.
std::shared_ptr<const Omega> class_omega(const Classification& c, const SimpleModuleClass& s);
FockPtr instantiate(const Classification& c, const SimpleModuleClass& s, const Rational& trunc);

}  // namespace twistlab
