#pragma once

#include <optional>
#include <vector>

#include "twistlab/lattice.hpp"
#include "twistlab/scalar.hpp"

namespace twistlab {

struct Obstruction {
    bool obstructed = false;
    IVec alpha;          // witness with C(alpha, sigma^j alpha) != 1
    long long j = 0;
    CycScalar value{1};  // the offending commutator value
};

// Cocycle data on a twisted lattice: epsilon seeds on basis pairs, the
// 1-cocycle phi on basis vectors and (optionally) chosen orbit roots mu.
class TwistData {
public:
    // Default epsilon (1 on i <= j, C(e_i, e_j) below the diagonal) and phi = phi_0,
    // the 1-cocycle whose basis values are square roots of eps(s e, s e)/eps(e, e).
    explicit TwistData(LatticePtr lattice);

    TwistData with_eps_seed(const std::vector<std::vector<Phase>>& seed) const;
    TwistData with_phi(const std::vector<Phase>& phi_basis) const;

    const TwistedLattice& lattice() const { return *lattice_; }
    LatticePtr lattice_ptr() const { return lattice_; }
    long long p() const { return lattice_->order(); }

    const std::vector<std::vector<Phase>>& eps_seed() const { return eps_; }
    const std::vector<Phase>& phi_basis() const { return phi_; }
    // Whether the default phi_0 sign choice yields an extension of order p.
    bool default_phi_order_p() const { return phi_order_p_; }

    CycScalar omega(long long k) const { return CycScalar::root_of_unity(p(), k); }

    Phase eps_phase(const IVec& a, const IVec& b) const;
    CycScalar eps(const IVec& a, const IVec& b) const { return eps_phase(a, b).scalar(); }
    Phase comm_phase(const IVec& a, const IVec& b) const;
    CycScalar commutator_map(const IVec& a, const IVec& b) const { return comm_phase(a, b).scalar(); }
    CycScalar kappa(const IVec& a, const IVec& b) const;
    long long locality_order(const IVec& a, const IVec& b) const;

    // 1-cocycle phi with phi(a+b) = phi(a) phi(b) eps(sa, sb) / eps(a, b).
    Phase phi_phase(const IVec& a) const;
    CycScalar phi(const IVec& a) const { return phi_phase(a).scalar(); }
    // Pointwise canonical square root of eps(sa, sa) / eps(a, a).
    CycScalar phi_zero(const IVec& a) const;

    CycScalar orbit_product(const IVec& a, long long len) const;  // prod_{s<len} phi(sigma^s a)
    std::vector<CycScalar> mu_roots(const Orbit& o) const;
    CycScalar k_coeff(const IVec& a, const CycScalar& mu, long long s) const;

    Obstruction obstruction_check(const OrbitDecomposition& d) const;

private:
    Phase dphi_phase(const IVec& a, const IVec& b) const;  // eps(sa, sb) / eps(a, b)

    LatticePtr lattice_;
    std::vector<std::vector<Phase>> eps_;
    std::vector<Phase> phi_;
    bool phi_order_p_ = true;
};

}  // namespace twistlab
