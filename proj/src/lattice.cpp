#include "twistlab/lattice.hpp"

#include <algorithm>
#include <set>

namespace twistlab {

std::vector<IVec> OrbitDecomposition::pi() const {
    std::vector<IVec> out;
    for (const auto& o : orbits)
        for (const auto& v : o.members) out.push_back(v);
    return out;
}

TwistedLattice::TwistedLattice(IMat gram, IMat sigma) : gram_(std::move(gram)), sigma_(std::move(sigma)) {
    size_t l = gram_.size();
    if (l == 0) throw InputError("lattice rank must be positive");
    for (const auto& row : gram_)
        if (row.size() != l) throw InputError("gram matrix must be square");
    if (sigma_.size() != l) throw InputError("sigma must match the gram size");
    for (const auto& row : sigma_)
        if (row.size() != l) throw InputError("sigma must be square");
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j)
            if (gram_[i][j] != gram_[j][i]) throw InputError("gram matrix must be symmetric");
    if (determinant(gram_).is_zero()) throw InputError("gram matrix is degenerate");
    if (mat_mul(mat_mul(transpose(sigma_), gram_), sigma_) != gram_)
        throw InputError("sigma does not preserve the form (S^T G S != G)");
    IMat id = identity_matrix(l);
    pows_.push_back(id);
    IMat cur = sigma_;
    // An isometry of a nondegenerate integral lattice that has finite order
    // has order bounded well below this; give up beyond it.
    const long long max_order = 10000;
    while (cur != id) {
        pows_.push_back(cur);
        if (static_cast<long long>(pows_.size()) > max_order) throw InputError("sigma does not have finite order");
        cur = mat_mul(cur, sigma_);
    }
    p_ = static_cast<long long>(pows_.size());
}

IVec TwistedLattice::basis(size_t i) const {
    IVec v(rank(), 0);
    v[i] = 1;
    return v;
}

IVec TwistedLattice::act(const IVec& a, long long s) const {
    s %= p_;
    if (s < 0) s += p_;
    return mat_vec(pows_[s], a);
}

long long TwistedLattice::pair(const IVec& a, const IVec& b) const { return dot(a, mat_vec(gram_, b)); }

IVec TwistedLattice::m_values(const IVec& a, const IVec& b) const {
    IVec gb = mat_vec(gram_, b);
    IVec m(p_);
    for (long long s = 0; s < p_; ++s) m[s] = dot(act(a, -s), gb);
    return m;
}

long long TwistedLattice::m_sum(const IVec& a, const IVec& b) const {
    long long s = 0;
    for (long long v : m_values(a, b)) s = ck_add(s, v);
    return s;
}

Rational TwistedLattice::zero_pairing(const IVec& a, const IVec& b) const { return Rational(m_sum(a, b), p_); }

Rational TwistedLattice::prime_pairing(const IVec& a, const IVec& b) const {
    return Rational(pair(a, b)) - zero_pairing(a, b);
}

RVec TwistedLattice::nu(const IVec& a) const {
    RVec out(rank());
    for (size_t k = 0; k < rank(); ++k) out[k] = zero_pairing(a, basis(k));
    return out;
}

long long TwistedLattice::discriminant() const {
    Rational d = determinant(gram_);
    return d.sign() < 0 ? (-d).to_ll() : d.to_ll();
}

Orbit TwistedLattice::orbit_of(const IVec& v) const {
    Orbit o;
    std::vector<IVec> mem{v};
    IVec cur = act(v);
    while (cur != v) {
        mem.push_back(cur);
        cur = act(cur);
    }
    o.length = static_cast<long long>(mem.size());
    size_t best = 0;
    for (size_t i = 1; i < mem.size(); ++i)
        if (mem[i] < mem[best]) best = i;
    o.rep = mem[best];
    for (size_t s = 0; s < mem.size(); ++s) o.members.push_back(mem[(best + s) % mem.size()]);
    o.degree = nu(o.rep);
    o.degree_zero = std::all_of(o.degree.begin(), o.degree.end(), [](const Rational& q) { return q.is_zero(); });
    return o;
}

OrbitDecomposition TwistedLattice::reduce_generating_set() const {
    size_t l = rank();
    // p * nu(e_i) is integral; its row lattice is p * nu(Lambda).
    IMat N(l, IVec(l));
    for (size_t i = 0; i < l; ++i)
        for (size_t k = 0; k < l; ++k) N[i][k] = m_sum(basis(i), basis(k));
    HNF h = hermite_rows(N);
    size_t nonzero = 0;
    for (const auto& row : N)
        if (!is_zero_vec(row)) ++nonzero;
    std::vector<IVec> gens;
    if (nonzero == h.rank) {
        // the standard basis already splits into a degree basis and degree-zero vectors
        for (size_t i = 0; i < l; ++i)
            if (!is_zero_vec(N[i])) gens.push_back(basis(i));
        for (size_t i = 0; i < l; ++i)
            if (is_zero_vec(N[i])) gens.push_back(basis(i));
    } else {
        for (size_t i = 0; i < l; ++i) gens.push_back(h.U[i]);
    }
    OrbitDecomposition d;
    std::set<IVec> seen;
    for (size_t g = 0; g < gens.size(); ++g) {
        if (seen.count(gens[g])) continue;
        Orbit o = orbit_of(gens[g]);
        for (const auto& v : o.members) seen.insert(v);
        if (!o.degree_zero) ++d.m;
        d.orbits.push_back(std::move(o));
    }
    std::stable_partition(d.orbits.begin(), d.orbits.end(), [](const Orbit& o) { return !o.degree_zero; });
    return d;
}

}  // namespace twistlab
