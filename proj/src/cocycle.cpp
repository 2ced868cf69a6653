#include "twistlab/cocycle.hpp"

namespace twistlab {

TwistData::TwistData(LatticePtr lattice) : lattice_(std::move(lattice)) {
    size_t l = lattice_->rank();
    eps_.assign(l, std::vector<Phase>(l));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < i; ++j) eps_[i][j] = comm_phase(lattice_->basis(i), lattice_->basis(j));
    std::vector<Phase> canon;
    for (size_t i = 0; i < l; ++i) canon.push_back(Phase::from_scalar(phi_zero(lattice_->basis(i))));
    // The pointwise roots fix phi_0 only up to a sign character. Pick the
    // first sign pattern whose extension has order p; the orbit product is a
    // character, so checking the basis is enough.
    long long p = lattice_->order();
    phi_order_p_ = false;
    for (unsigned mask = 0; mask < (1u << l) && !phi_order_p_; ++mask) {
        phi_ = canon;
        for (size_t i = 0; i < l; ++i)
            if ((mask >> i) & 1u) phi_[i] *= Phase::sign(1);
        bool ok = true;
        for (size_t i = 0; i < l && ok; ++i) ok = orbit_product(lattice_->basis(i), p).is_one();
        phi_order_p_ = ok;
    }
    if (!phi_order_p_) phi_ = canon;
}

TwistData TwistData::with_eps_seed(const std::vector<std::vector<Phase>>& seed) const {
    TwistData t = *this;
    t.eps_ = seed;
    return t;
}

TwistData TwistData::with_phi(const std::vector<Phase>& phi_basis) const {
    TwistData t = *this;
    t.phi_ = phi_basis;
    return t;
}

Phase TwistData::eps_phase(const IVec& a, const IVec& b) const {
    Phase r;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0 || eps_[i][j].is_one()) continue;
            r *= eps_[i][j].pow(ck_mul(a[i], b[j]));
        }
    }
    return r;
}

Phase TwistData::comm_phase(const IVec& a, const IVec& b) const {
    const TwistedLattice& L = *lattice_;
    IVec m = L.m_values(a, b);
    long long sgn = ck_add(ck_mul(L.pair(a, a), L.pair(b, b)), L.m_sum(a, b));
    long long w = 0;
    for (long long s = 1; s < L.order(); ++s) w = ck_add(w, ck_mul(s, m[s]));
    return Phase(Rational(1), Rational(sgn % 2 == 0 ? 0 : 1, 2) - Rational(w, L.order()));
}

CycScalar TwistData::kappa(const IVec& a, const IVec& b) const {
    const TwistedLattice& L = *lattice_;
    IVec m = L.m_values(a, b);
    CycScalar r = eps(a, b) * CycScalar(Rational(L.order()).pow(-L.pair(a, b)));
    for (long long s = 1; s < L.order(); ++s) {
        if (m[s] == 0) continue;
        r *= (CycScalar(1) - omega(s)).pow(m[s]);
    }
    return r;
}

long long TwistData::locality_order(const IVec& a, const IVec& b) const {
    long long n = 0;
    for (long long v : lattice_->m_values(a, b))
        if (-v > n) n = -v;
    return n;
}

Phase TwistData::dphi_phase(const IVec& a, const IVec& b) const {
    const TwistedLattice& L = *lattice_;
    return eps_phase(L.act(a), L.act(b)) * eps_phase(a, b).inv();
}

Phase TwistData::phi_phase(const IVec& a) const {
    const TwistedLattice& L = *lattice_;
    size_t l = L.rank();
    Phase r;
    for (size_t i = 0; i < l; ++i) {
        if (a[i] == 0) continue;
        r *= phi_[i].pow(a[i]);
        // correction from the coboundary: B is symmetric since C is sigma-invariant
        long long self = ck_mul(a[i], a[i] - 1) / 2;
        if (self != 0) r *= dphi_phase(L.basis(i), L.basis(i)).pow(self);
        for (size_t j = i + 1; j < l; ++j)
            if (a[j] != 0) r *= dphi_phase(L.basis(i), L.basis(j)).pow(ck_mul(a[i], a[j]));
    }
    return r;
}

CycScalar TwistData::phi_zero(const IVec& a) const {
    const TwistedLattice& L = *lattice_;
    IVec sa = L.act(a);
    CycScalar ratio = (eps_phase(sa, sa) * eps_phase(a, a).inv()).scalar();
    return canonical_root(ratio, 2);
}

CycScalar TwistData::orbit_product(const IVec& a, long long len) const {
    Phase r;
    IVec cur = a;
    for (long long s = 0; s < len; ++s) {
        r *= phi_phase(cur);
        cur = lattice_->act(cur);
    }
    return r.scalar();
}

std::vector<CycScalar> TwistData::mu_roots(const Orbit& o) const {
    return all_roots(orbit_product(o.rep, o.length), static_cast<unsigned>(o.length));
}

CycScalar TwistData::k_coeff(const IVec& a, const CycScalar& mu, long long s) const {
    return mu.pow(-s) * orbit_product(a, s);
}

Obstruction TwistData::obstruction_check(const OrbitDecomposition& d) const {
    const TwistedLattice& L = *lattice_;
    std::vector<IVec> pi = d.pi();
    std::vector<IVec> cands = pi;
    for (size_t a = 0; a < pi.size(); ++a)
        for (size_t b = a + 1; b < pi.size(); ++b) cands.push_back(vec_add(pi[a], pi[b]));
    Obstruction ob;
    for (const auto& v : cands) {
        for (long long j = 0; j < L.order(); ++j) {
            Phase c = comm_phase(v, L.act(v, j));
            if (!c.is_one()) {
                ob.obstructed = true;
                ob.alpha = v;
                ob.j = j;
                ob.value = c.scalar();
                return ob;
            }
        }
    }
    return ob;
}

}  // namespace twistlab
