#include "twistlab/fock.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twistlab {

bool cyc_vec_less(const CycVec& a, const CycVec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        if (a[i].conductor() != b[i].conductor()) return a[i].conductor() < b[i].conductor();
        return a[i].coeffs() < b[i].coeffs();
    }
    return false;
}

CycVec to_cyc(const IVec& v) {
    CycVec r;
    for (long long x : v) r.emplace_back(x);
    return r;
}

CycVec to_cyc(const RVec& v) {
    CycVec r;
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

namespace {

CycMat inverse(const CycMat& a) {
    size_t n = a.size();
    CycMat inv(n, CycVec(n));
    for (size_t i = 0; i < n; ++i) {
        CycVec e(n, CycScalar(0)), x;
        e[i] = CycScalar(1);
        if (!solve_cyc(a, e, x)) throw std::runtime_error("singular cyclotomic matrix");
        for (size_t j = 0; j < n; ++j) inv[j][i] = x[j];
    }
    return inv;
}

// h_j(n) with n in (1/p)Z is allowed iff p n = q_j mod p.
bool mode_fits(long long units, long long q, long long p) { return ((units - q) % p + p) % p == 0; }

}  // namespace

CycVec GradedBasis::coords(const CycVec& x) const {
    CycVec c(h.size(), CycScalar(0));
    for (size_t j = 0; j < h.size(); ++j)
        for (size_t i = 0; i < x.size(); ++i)
            if (!x[i].is_zero()) c[j] += hinv[j][i] * x[i];
    return c;
}

CycScalar GradedBasis::pair_with(size_t j, const CycVec& x, const IMat& gram) const {
    CycScalar r(0);
    for (size_t a = 0; a < x.size(); ++a) {
        if (h[j][a].is_zero()) continue;
        CycScalar s(0);
        for (size_t b = 0; b < x.size(); ++b)
            if (gram[a][b] != 0 && !x[b].is_zero()) s += CycScalar(gram[a][b]) * x[b];
        r += h[j][a] * s;
    }
    return r;
}

GradedBasis graded_basis(const TwistedLattice& L) {
    GradedBasis b;
    b.p = L.order();
    size_t l = L.rank();
    for (long long q = 0; q < b.p; ++q) {
        CycScalar w = CycScalar::root_of_unity(b.p, q);
        CycMat a(l, CycVec(l));
        for (size_t i = 0; i < l; ++i)
            for (size_t j = 0; j < l; ++j) a[i][j] = CycScalar(L.sigma()[i][j]) - (i == j ? w : CycScalar(0));
        for (auto& v : nullspace_cyc(a)) {
            b.h.push_back(v);
            b.q.push_back(q);
        }
    }
    if (b.h.size() != l) throw std::runtime_error("sigma is not diagonalizable over Q(omega)");
    CycMat H(l, CycVec(l));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) H[i][j] = b.h[j][i];
    b.hinv = inverse(H);
    b.pairing.assign(l, CycVec(l));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) b.pairing[i][j] = b.pair_with(i, b.h[j], L.gram());
    CycMat pinv = inverse(b.pairing);
    b.dual.assign(l, CycVec(l));
    for (size_t j = 0; j < l; ++j)
        for (size_t k = 0; k < l; ++k) b.dual[j][k] = pinv[k][j];
    return b;
}

FreeOmega::FreeOmega(std::shared_ptr<const TwistData> twist, RVec xi0) : twist_(std::move(twist)), xi0_(std::move(xi0)) {
    if (xi0_.empty()) xi0_.assign(twist_->lattice().rank(), Rational(0));
}

RVec FreeOmega::weight(const OmegaLabel& o) const {
    RVec n = twist_->lattice().nu(o.g);
    for (size_t k = 0; k < n.size(); ++k) n[k] += xi0_[k];
    return n;
}

std::vector<std::pair<CycScalar, OmegaLabel>> FreeOmega::act(const IVec& alpha, const OmegaLabel& o) const {
    return {{twist_->eps(alpha, o.g), OmegaLabel{vec_add(alpha, o.g), 0}}};
}

std::vector<OmegaLabel> FreeOmega::seeds() const { return {OmegaLabel{IVec(twist_->lattice().rank(), 0), 0}}; }

std::string FreeOmega::describe() const {
    std::ostringstream os;
    os << "free Omega, xi0 = (";
    for (size_t i = 0; i < xi0_.size(); ++i) os << (i ? ", " : "") << xi0_[i].str();
    os << ")";
    return os.str();
}

void FockVector::add(const Mono& m, const CycScalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.try_emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

void FockVector::add(const FockVector& v, const CycScalar& c) {
    overflow = overflow || v.overflow;
    if (c.is_zero()) return;
    for (const auto& [m, x] : v.terms) add(m, c.is_one() ? x : x * c);
}

FockVector FockVector::scaled(const CycScalar& c) const {
    FockVector r;
    r.add(*this, c);
    r.overflow = overflow;
    return r;
}

std::string FockVector::str() const {
    if (terms.empty()) return overflow ? "0 [overflow]" : "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (const auto& [j, u] : m.w) os << " h" << j << "(" << Rational(-u).str() << "/p)";
        os << " |";
        for (size_t i = 0; i < m.o.g.size(); ++i) os << (i ? "," : "") << m.o.g[i];
        os << ";" << m.o.k << ">";
    }
    if (overflow) os << " [overflow]";
    return os.str();
}

FockVector operator+(const FockVector& a, const FockVector& b) {
    FockVector r = a;
    r.add(b);
    return r;
}

FockVector operator-(const FockVector& a, const FockVector& b) {
    FockVector r = a;
    r.add(b, CycScalar(-1));
    return r;
}

FockModule::FockModule(std::shared_ptr<const TwistData> twist, std::shared_ptr<const Omega> omega, Rational trunc)
    : twist_(std::move(twist)), omega_(std::move(omega)), eminus_cache_(cyc_vec_less) {
    basis_ = graded_basis(twist_->lattice());
    Rational t = trunc * Rational(basis_.p);
    trunc_ = t.floor_ll();
    gram_inv_ = rational_inverse(twist_->lattice().gram());
}

long long FockModule::units(const CreationWord& w) {
    long long s = 0;
    for (const auto& f : w) s += f.second;
    return s;
}

Rational FockModule::xi_of(const RVec& xi, const IVec& a) const {
    Rational r;
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] != 0) r += xi[k] * Rational(a[k]);
    return r;
}

Rational FockModule::omega_degree(const RVec& xi) const {
    Rational r;
    for (size_t i = 0; i < xi.size(); ++i)
        for (size_t j = 0; j < xi.size(); ++j) r += xi[i] * gram_inv_[i][j] * xi[j];
    return r / Rational(2);
}

FockVector FockModule::vector(const Mono& m, const CycScalar& c) const {
    FockVector v;
    v.add(m, c);
    return v;
}

std::vector<Mono> FockModule::monomials(const OmegaLabel& o, const Rational& deg) const {
    long long maxu = (deg * Rational(p())).floor_ll();
    std::vector<std::pair<int, long long>> kinds;  // allowed (j, units), ordered
    for (size_t j = 0; j < basis_.h.size(); ++j)
        for (long long u = 1; u <= maxu; ++u)
            if (mode_fits(-u, basis_.q[j], p())) kinds.emplace_back(static_cast<int>(j), u);
    std::sort(kinds.begin(), kinds.end());
    std::vector<Mono> out;
    CreationWord cur;
    // multisets of kinds with nondecreasing index
    auto rec = [&](auto&& self, size_t start, long long left) -> void {
        out.push_back(Mono{cur, o});
        for (size_t i = start; i < kinds.size(); ++i) {
            if (kinds[i].second > left) continue;
            cur.push_back(kinds[i]);
            self(self, i, left - kinds[i].second);
            cur.pop_back();
        }
    };
    rec(rec, 0, maxu);
    return out;
}

FockVector FockModule::heis_coords(const CycVec& c, const Rational& n, const FockVector& v) const {
    FockVector out;
    out.overflow = v.overflow;
    Rational np = n * Rational(p());
    if (!np.is_integer()) return out;
    long long N = np.to_ll();
    size_t l = basis_.h.size();
    if (N < 0) {
        for (const auto& [m, x] : v.terms) {
            if (units(m.w) - N > trunc_) {
                out.overflow = true;
                continue;
            }
            for (size_t j = 0; j < l; ++j) {
                if (c[j].is_zero() || !mode_fits(N, basis_.q[j], p())) continue;
                Mono r = m;
                auto f = std::make_pair(static_cast<int>(j), -N);
                r.w.insert(std::upper_bound(r.w.begin(), r.w.end(), f), f);
                out.add(r, x * c[j]);
            }
        }
    } else if (N > 0) {
        for (const auto& [m, x] : v.terms) {
            for (size_t pos = 0; pos < m.w.size(); ++pos) {
                if (m.w[pos].second != N) continue;
                size_t k = static_cast<size_t>(m.w[pos].first);
                CycScalar pr(0);
                for (size_t j = 0; j < l; ++j)
                    if (!c[j].is_zero() && !basis_.pairing[j][k].is_zero()) pr += c[j] * basis_.pairing[j][k];
                if (pr.is_zero()) continue;
                Mono r = m;
                r.w.erase(r.w.begin() + static_cast<long>(pos));
                out.add(r, x * pr * CycScalar(n));
            }
        }
    } else {
        for (const auto& [m, x] : v.terms) {
            RVec xi = weight(m);
            CycScalar z(0);
            for (size_t j = 0; j < l; ++j) {
                if (basis_.q[j] != 0 || c[j].is_zero()) continue;
                CycScalar xj(0);
                for (size_t k = 0; k < xi.size(); ++k)
                    if (!xi[k].is_zero()) xj += basis_.h[j][k] * CycScalar(xi[k]);
                z += c[j] * xj;
            }
            out.add(m, x * z);
        }
    }
    return out;
}

FockVector FockModule::heis_act(size_t j, const Rational& n, const FockVector& v) const {
    CycVec c(basis_.h.size(), CycScalar(0));
    c[j] = CycScalar(1);
    return heis_coords(c, n, v);
}

FockVector FockModule::heis_vec(const CycVec& x, const Rational& n, const FockVector& v) const {
    return heis_coords(basis_.coords(x), n, v);
}

FockVector FockModule::e_act(const IVec& a, const FockVector& v) const {
    FockVector out;
    out.overflow = v.overflow;
    for (const auto& [m, x] : v.terms)
        for (const auto& [c, o] : omega_->act(a, m.o)) out.add(Mono{m.w, o}, x * c);
    return out;
}

std::vector<FockVector> FockModule::e_plus(const CycVec& a, const FockVector& v) const {
    long long D = 0;
    for (const auto& t : v.terms) D = std::max(D, units(t.first.w));
    CycVec c = basis_.coords(a);
    std::vector<FockVector> E{v};
    for (long long J = 1; J <= D; ++J) {
        FockVector acc;
        for (long long N = 1; N <= J; ++N) {
            if (E[J - N].is_zero()) continue;
            acc.add(heis_coords(c, Rational(N, p()), E[J - N]), CycScalar(-1));
        }
        E.push_back(acc.scaled(CycScalar(Rational(p(), J))));
    }
    return E;
}

std::vector<std::pair<CreationWord, CycScalar>> FockModule::e_minus(const CycVec& a, long long K) const {
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = eminus_cache_.find(a);
        if (it != eminus_cache_.end() && static_cast<long long>(it->second.size()) > K) return it->second[K];
    }
    CycVec c = basis_.coords(a);
    size_t l = basis_.h.size();
    using Poly = std::map<CreationWord, CycScalar>;
    std::vector<Poly> E(1);
    E[0][CreationWord{}] = CycScalar(1);
    for (long long k = 1; k <= K; ++k) {
        Poly acc;
        for (long long N = 1; N <= k; ++N) {
            for (size_t j = 0; j < l; ++j) {
                if (c[j].is_zero() || !mode_fits(-N, basis_.q[j], p())) continue;
                for (const auto& [w, x] : E[k - N]) {
                    CreationWord r = w;
                    auto f = std::make_pair(static_cast<int>(j), N);
                    r.insert(std::upper_bound(r.begin(), r.end(), f), f);
                    CycScalar& slot = acc[r];
                    slot += x * c[j];
                }
            }
        }
        Poly clean;
        CycScalar s(Rational(p(), k));
        for (auto& [w, x] : acc)
            if (!x.is_zero()) clean[w] = x * s;
        E.push_back(std::move(clean));
    }
    std::vector<std::vector<std::pair<CreationWord, CycScalar>>> flat;
    for (const auto& e : E) flat.emplace_back(e.begin(), e.end());
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto& slot = eminus_cache_[a];
    if (slot.size() < flat.size()) slot = flat;
    return flat[K];
}

FockVector FockModule::multiply_creation(const std::vector<std::pair<CreationWord, CycScalar>>& poly,
                                         const FockVector& v) const {
    FockVector out;
    out.overflow = v.overflow;
    for (const auto& [m, x] : v.terms) {
        long long base = units(m.w);
        for (const auto& [w, c] : poly) {
            if (base + units(w) > trunc_) {
                out.overflow = true;
                continue;
            }
            Mono r = m;
            CreationWord merged;
            std::merge(m.w.begin(), m.w.end(), w.begin(), w.end(), std::back_inserter(merged));
            r.w = std::move(merged);
            out.add(r, x * c);
        }
    }
    return out;
}

FockVector FockModule::vertex(const IVec& a, const Rational& m, const FockVector& v) const {
    FockVector out;
    out.overflow = v.overflow;
    CycVec ac = to_cyc(a);
    Rational half = lattice().prime_pairing(a, a) / Rational(2);
    for (const auto& [mono, x] : v.terms) {
        Rational base = xi_of(weight(mono), a) - half;
        // K/p = -m - 1 - base + J/p
        Rational k0 = (-m - Rational(1) - base) * Rational(p());
        if (!k0.is_integer()) continue;
        long long K0 = k0.to_ll();
        long long D = units(mono.w);
        if (K0 + D < 0) continue;
        std::vector<FockVector> ep = e_plus(ac, vector(mono, x));
        for (long long J = 0; J <= D; ++J) {
            long long K = K0 + J;
            if (K < 0 || ep[J].is_zero()) continue;
            if (D - J + K > trunc_) {
                out.overflow = true;
                continue;
            }
            out.add(e_act(a, multiply_creation(e_minus(ac, K), ep[J])));
        }
    }
    return out;
}

Rational FockModule::vertex_max_mode(const IVec& a, const FockVector& v) const {
    Rational half = lattice().prime_pairing(a, a) / Rational(2);
    bool first = true;
    Rational best;
    for (const auto& [mono, x] : v.terms) {
        Rational mm = degree(mono) - Rational(1) - xi_of(weight(mono), a) + half;
        if (first || mm > best) best = mm;
        first = false;
    }
    return first ? Rational(-1000000) : best;
}

FockVector FockModule::virasoro(long long k, const FockVector& v) const {
    FockVector out;
    out.overflow = v.overflow;
    long long D = 0;
    for (const auto& t : v.terms) D = std::max(D, units(t.first.w));
    size_t l = basis_.h.size();
    long long P = p();
    for (size_t j = 0; j < l; ++j) {
        CycVec unit(l, CycScalar(0));
        unit[j] = CycScalar(1);
        const CycVec& dual = basis_.dual[j];
        // s = S / p with S = q_j mod p
        long long lo = (k - 1) * P - D;  // smallest S with k-1-s <= D/p
        for (long long S = lo; S <= D; ++S) {
            if (!mode_fits(S, basis_.q[j], P)) continue;
            Rational s(S, P);
            Rational t = Rational(k - 1) - s;
            if (S < 0) {
                FockVector y = heis_coords(dual, t, v);
                if (!y.is_zero() || y.overflow) out.add(heis_coords(unit, s, y));
            } else {
                FockVector y = heis_coords(unit, s, v);
                if (!y.is_zero() || y.overflow) out.add(heis_coords(dual, t, y));
            }
        }
    }
    return out.scaled(CycScalar(Rational(1, 2)));
}

CycScalar FockModule::virasoro_one(const Mono& m) const {
    FockVector r = virasoro(1, vector(m));
    if (r.terms.empty()) return CycScalar(0);
    auto it = r.terms.find(m);
    if (r.terms.size() != 1 || it == r.terms.end()) throw std::runtime_error("monomial is not a upsilon(1) eigenvector");
    return it->second;
}

}  // namespace twistlab
