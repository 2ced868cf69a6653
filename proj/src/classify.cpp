#include "twistlab/classify.hpp"

#include <deque>
#include <exception>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twistlab {

namespace {

Phase ph(const CycScalar& c) { return Phase::from_scalar(c); }

IVec neg(const IVec& v) { return vec_scale(v, -1); }

std::string vstr(const IVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

// prod_i eps(g_i, g_i)^{c_i (c_i - 1) / 2} prod_{i<j} eps(g_i, g_j)^{c_i c_j}:
// prod_i e(g_i)^{c_i} (in order) = F e(sum c_i g_i).
Phase ordered_factor(const TwistData& T, const std::vector<IVec>& g, const IVec& c) {
    Phase f;
    for (size_t i = 0; i < g.size(); ++i) {
        if (c[i] == 0) continue;
        f *= T.eps_phase(g[i], g[i]).pow(c[i] * (c[i] - 1) / 2);
        for (size_t j = i + 1; j < g.size(); ++j)
            if (c[j] != 0) f *= T.eps_phase(g[i], g[j]).pow(c[i] * c[j]);
    }
    return f;
}

// Coordinates of v in the nonzero rows of an HNF; throws if v is not in the row lattice.
IVec echelon_coords(const HNF& h, const IVec& v) {
    IVec r = v;
    IVec c(h.rank, 0);
    for (size_t i = 0; i < h.rank; ++i) {
        size_t col = h.pivots[i];
        if (r[col] % h.H[i][col] != 0) throw std::logic_error("vector outside the row lattice");
        c[i] = r[col] / h.H[i][col];
        for (size_t k = 0; k < r.size(); ++k) r[k] = ck_add(r[k], -ck_mul(c[i], h.H[i][k]));
    }
    if (!is_zero_vec(r)) throw std::logic_error("vector outside the row lattice");
    return c;
}

std::map<OmegaLabel, CycScalar> as_map(const std::vector<std::pair<CycScalar, OmegaLabel>>& v) {
    std::map<OmegaLabel, CycScalar> m;
    for (const auto& [c, o] : v) m[o] += c;
    for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
    return m;
}

// Closure of a set of canonical elements under addition in Q.
std::set<IVec> closure(const TwistedGroupAlgebra& A, std::set<IVec> span, const std::vector<IVec>& gens, size_t cap) {
    std::deque<IVec> q(span.begin(), span.end());
    while (!q.empty()) {
        IVec x = q.front();
        q.pop_front();
        for (const auto& g : gens) {
            IVec y = A.canon(vec_add(x, g));
            if (span.insert(y).second) {
                if (span.size() > cap) throw std::runtime_error("finite quotient too large");
                q.push_back(y);
            }
        }
    }
    return span;
}

constexpr size_t kGroupCap = 4096;

}  // namespace

// ---------------------------------------------------------------- extension

Extension extend_automorphism(const TwistData& T, const OrbitDecomposition& d) {
    Extension ex;
    const TwistedLattice& L = T.lattice();
    for (const Orbit& o : d.orbits) {
        OrbitExtension oe;
        oe.orbit = o;
        oe.product = T.orbit_product(o.rep, o.length);
        oe.roots = T.mu_roots(o);
        long long len = o.length;
        CycScalar w = CycScalar::root_of_unity(len, 1);
        for (const auto& mu : oe.roots) {
            std::vector<CycScalar> k(len);
            for (long long s = 0; s < len; ++s) k[s] = T.k_coeff(o.rep, mu, s);
            for (long long j = 0; j < len; ++j) {
                std::vector<CycScalar> img(len);
                for (long long s = 0; s < len; ++s) img[(s + 1) % len] += w.pow(-j * s) * k[s] * T.phi(o.members[s]);
                for (long long s = 0; s < len; ++s)
                    if (img[s] != mu * w.pow(j) * w.pow(-j * s) * k[s]) ex.eigen_ok = false;
            }
            oe.k.push_back(std::move(k));
        }
        ex.orbits.push_back(std::move(oe));
    }
    for (size_t i = 0; i < L.rank(); ++i)
        if (!T.orbit_product(L.basis(i), L.order()).is_one()) ex.order_p = false;
    return ex;
}

Extension extend_automorphism(const TwistData& T) { return extend_automorphism(T, T.lattice().reduce_generating_set()); }

// ---------------------------------------------------------------- conditions

ConditionReport twisted_conditions(const FockModule& M) {
    ConditionReport r;
    const TwistData& T = M.twist();
    const TwistedLattice& L = M.lattice();
    const Omega& om = M.omega();
    r.p = L.order();
    size_t l = L.rank();

    std::set<OmegaLabel> labels;
    for (const auto& s : om.seeds()) {
        labels.insert(s);
        for (size_t k = 0; k < l; ++k)
            for (long long sg : {1LL, -1LL})
                for (const auto& [c, o] : om.act(vec_scale(L.basis(k), sg), s)) labels.insert(o);
    }

    for (size_t i = 0; i < l; ++i) {
        IVec a = L.basis(i);
        long long len = L.orbit_of(a).length;
        r.orbit_length.push_back(len);
        // e(sigma a) = c e(a) with one c on every label
        bool prop = true;
        bool have = false;
        CycScalar c;
        for (const auto& lab : labels) {
            auto ea = as_map(om.act(a, lab));
            auto es = as_map(om.act(L.act(a), lab));
            if (ea.empty() || ea.size() != es.size()) {
                prop = false;
                break;
            }
            for (const auto& [o, v] : ea) {
                auto it = es.find(o);
                if (it == es.end()) {
                    prop = false;
                    break;
                }
                CycScalar q = it->second / v;
                if (!have) {
                    c = q;
                    have = true;
                } else if (q != c) {
                    prop = false;
                }
            }
            if (!prop) break;
        }
        if (!prop || !have) {
            r.cond_i = false;
            r.cond_ii = false;
            r.mu.push_back(CycScalar(0));
            r.witnesses.push_back("e(sigma a) is not a multiple of e(a) for a = " + vstr(a));
            continue;
        }
        CycScalar mu = c * T.phi(a);
        r.mu.push_back(mu);
        if (mu.pow(len) != T.orbit_product(a, len)) {
            r.cond_i = false;
            r.witnesses.push_back("mu^len differs from the orbit product for a = " + vstr(a));
        }
        for (long long s = 1; s < len; ++s) {
            CycScalar kinv = T.k_coeff(a, mu, s).inv();
            IVec b = L.act(a, s);
            for (const auto& lab : labels) {
                auto ea = as_map(om.act(a, lab));
                auto eb = as_map(om.act(b, lab));
                bool same = ea.size() == eb.size();
                for (const auto& [o, v] : ea) {
                    auto it = eb.find(o);
                    if (it == eb.end() || it->second != kinv * v) same = false;
                }
                if (!same) {
                    r.cond_i = false;
                    r.witnesses.push_back("(i) fails at s = " + std::to_string(s) + " for a = " + vstr(a));
                    break;
                }
            }
        }
        if (!mu.is_root_of_unity()) {
            r.cond_ii = false;
            r.witnesses.push_back("mu is not a root of unity for a = " + vstr(a));
            continue;
        }
        Rational angle = root_angle(mu);
        for (const auto& lab : labels) {
            Rational x = M.xi_of(om.weight(lab), a) - L.prime_pairing(a, a) / Rational(2) + angle;
            if (!x.is_integer()) {
                r.cond_ii = false;
                r.witnesses.push_back("(ii) fails for a = " + vstr(a) + ": " + x.str());
                break;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------- A

TwistedGroupAlgebra::TwistedGroupAlgebra(std::shared_ptr<const TwistData> T, const OrbitDecomposition& d,
                                         const std::vector<CycScalar>& mu)
    : T_(std::move(T)) {
    const TwistedLattice& L = T_->lattice();
    size_t l = L.rank();
    if (mu.size() != d.orbits.size()) throw std::invalid_argument("one mu per orbit expected");
    std::vector<IVec> gens;
    std::vector<Phase> gchi;
    for (size_t j = 0; j < d.orbits.size(); ++j) {
        Phase m = ph(mu[j]);
        for (const auto& a : d.orbits[j].members) {
            IVec sa = L.act(a);
            gens.push_back(vec_sub(sa, a));
            gchi.push_back(m * T_->phi_phase(a).inv() * T_->eps_phase(a, neg(a)) * T_->eps_phase(sa, neg(a)).inv());
        }
    }
    IMat rows = gens;
    rows.push_back(IVec(l, 0));
    khnf_ = hermite_rows(rows);
    for (size_t i = 0; i < khnf_.rank; ++i) {
        kbasis_.push_back(khnf_.H[i]);
        IVec u(khnf_.U[i].begin(), khnf_.U[i].begin() + static_cast<long>(gens.size()));
        Phase v;
        for (size_t j = 0; j < gens.size(); ++j)
            if (u[j] != 0) v *= gchi[j].pow(u[j]);
        kchi_.push_back(v * ordered_factor(*T_, gens, u).inv());
    }
    for (size_t i = 0; i < kbasis_.size() && !zero_; ++i)
        for (size_t k = 0; k < l; ++k)
            if (!T_->comm_phase(kbasis_[i], L.basis(k)).is_one()) {
                zero_ = true;
                witness_ = "e(k) is not central: k = " + vstr(kbasis_[i]) + ", e_" + std::to_string(k);
                break;
            }
    for (size_t j = 0; j < gens.size() && !zero_; ++j)
        if (chi_from_basis(echelon_coords(khnf_, gens[j])) != gchi[j]) {
            zero_ = true;
            witness_ = "relations disagree on k = " + vstr(gens[j]);
        }
}

long long TwistedGroupAlgebra::quotient_order() const {
    size_t l = T_->lattice().rank();
    if (khnf_.rank < l) return -1;
    long long n = 1;
    for (size_t i = 0; i < khnf_.rank; ++i) n = ck_mul(n, khnf_.H[i][khnf_.pivots[i]]);
    return n;
}

Phase TwistedGroupAlgebra::chi_from_basis(const IVec& c) const {
    Phase v;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) v *= kchi_[i].pow(c[i]);
    return v * ordered_factor(*T_, kbasis_, c).inv();
}

IVec TwistedGroupAlgebra::canon(const IVec& v) const { return reduce_mod_rows(v, khnf_); }

Phase TwistedGroupAlgebra::chi(const IVec& k) const { return chi_from_basis(echelon_coords(khnf_, k)); }

Phase TwistedGroupAlgebra::reduce(const IVec& v) const {
    IVec r = canon(v);
    IVec k = vec_sub(v, r);
    return T_->eps_phase(r, k).inv() * chi(k);
}

Phase TwistedGroupAlgebra::mul(const IVec& a, const IVec& b) const { return T_->eps_phase(a, b) * reduce(vec_add(a, b)); }

Phase TwistedGroupAlgebra::power(const IVec& a0, long long n) const {
    IVec a = canon(a0);
    IVec cur(a.size(), 0);
    Phase c;
    for (long long i = 0; i < n; ++i) {
        c *= mul(cur, a);
        cur = canon(vec_add(cur, a));
    }
    return c;
}

PresentedAlgebraA build_algebra_A(std::shared_ptr<const TwistData> T, const OrbitDecomposition& d,
                                  const std::vector<CycScalar>& mu) {
    PresentedAlgebraA P;
    P.mu = mu;
    auto model = std::make_shared<const TwistedGroupAlgebra>(T, d, mu);
    P.model = model;
    P.zero = model->zero();
    P.witness = model->witness();
    P.m = d.m;
    for (const auto& o : d.orbits) {
        P.gens.push_back(o.rep);
        P.degree.push_back(o.degree);
        P.length.push_back(o.length);
    }
    size_t g = P.gens.size();
    P.c.assign(g, CycVec(g));
    for (size_t i = 0; i < g; ++i)
        for (size_t j = 0; j < g; ++j) P.c[i][j] = T->commutator_map(P.gens[i], P.gens[j]);
    for (size_t j = 0; j < g; ++j) {
        if (j < d.m || P.zero) {
            P.theta.emplace_back(1);
            P.normalizer.emplace_back(1);
            continue;
        }
        long long len = P.length[j];
        const IVec& a = P.gens[j];
        IVec la = vec_scale(a, len);
        if (!is_zero_vec(model->canon(la))) throw std::logic_error("degree zero orbit with len a outside K");
        Phase th = T->eps_phase(a, a).pow(len * (len - 1) / 2) * model->reduce(la);
        P.theta.push_back(th.scalar());
        P.normalizer.push_back(canonical_root(P.theta.back(), static_cast<unsigned>(len)).inv());
    }
    P.dim = model->quotient_order();
    return P;
}

// ---------------------------------------------------------------- characters

std::vector<TwistedChar> twisted_characters(const TwistedGroupAlgebra& A, const std::vector<IVec>& S) {
    std::set<IVec> sset(S.begin(), S.end());
    size_t l = A.twist().lattice().rank();
    IVec zero(l, 0);
    std::vector<IVec> gens;
    std::set<IVec> span{zero};
    for (const auto& s : S)
        if (!span.count(s)) {
            gens.push_back(s);
            span = closure(A, span, gens, kGroupCap);
        }
    if (span != sset) throw std::invalid_argument("twisted_characters: not a subgroup");

    std::vector<std::vector<Phase>> roots;
    for (const auto& g : gens) {
        long long o = 1;
        IVec cur = g;
        while (!is_zero_vec(A.canon(cur))) {
            cur = vec_add(cur, g);
            ++o;
        }
        std::vector<Phase> rs;
        for (const auto& r : all_roots(A.power(g, o).scalar(), static_cast<unsigned>(o))) rs.push_back(ph(r));
        roots.push_back(std::move(rs));
    }

    std::vector<TwistedChar> out;
    std::vector<size_t> pick(gens.size(), 0);
    while (true) {
        std::map<IVec, Phase> psi{{zero, Phase()}};
        std::deque<IVec> q{zero};
        bool ok = true;
        while (!q.empty() && ok) {
            IVec a = q.front();
            q.pop_front();
            for (size_t i = 0; i < gens.size(); ++i) {
                IVec b = A.canon(vec_add(a, gens[i]));
                Phase v = psi[a] * roots[i][pick[i]] * A.mul(a, gens[i]).inv();
                auto it = psi.find(b);
                if (it == psi.end()) {
                    psi.emplace(b, v);
                    q.push_back(b);
                } else if (it->second != v) {
                    ok = false;
                    break;
                }
            }
        }
        for (auto ia = psi.begin(); ok && ia != psi.end(); ++ia)
            for (auto ib = psi.begin(); ok && ib != psi.end(); ++ib)
                if (ia->second * ib->second != A.mul(ia->first, ib->first) * psi.at(A.canon(vec_add(ia->first, ib->first))))
                    ok = false;
        if (ok) {
            TwistedChar t;
            for (const auto& [k, v] : psi) t.emplace(k, v.scalar());
            out.push_back(std::move(t));
        }
        size_t i = 0;
        while (i < gens.size() && ++pick[i] == roots[i].size()) pick[i++] = 0;
        if (i == gens.size()) break;
    }
    return out;
}

// ---------------------------------------------------------------- blocks

namespace {

struct Table {
    std::vector<IVec> E;
    std::map<IVec, size_t> idx;
    std::vector<std::vector<std::pair<size_t, CycScalar>>> mul;
};

CycVec mulv(const Table& t, const CycVec& u, const CycVec& w) {
    CycVec r(t.E.size());
    for (size_t a = 0; a < u.size(); ++a) {
        if (u[a].is_zero()) continue;
        for (size_t b = 0; b < w.size(); ++b) {
            if (w[b].is_zero()) continue;
            const auto& [c, s] = t.mul[a][b];
            r[c] += u[a] * w[b] * s;
        }
    }
    return r;
}

}  // namespace

Decomposition decompose_A(const PresentedAlgebraA& P) {
    Decomposition D;
    if (P.zero) {
        D.failures.push_back("A = 0: " + P.witness);
        return D;
    }
    const TwistedGroupAlgebra& A = *P.model;
    const TwistData& T = A.twist();
    const TwistedLattice& L = T.lattice();
    size_t l = L.rank();

    IMat nint(l, IVec(l));
    for (size_t i = 0; i < l; ++i)
        for (size_t k = 0; k < l; ++k) nint[i][k] = L.m_sum(L.basis(i), L.basis(k));
    IMat z0 = left_kernel(nint);
    std::vector<IVec> z0gens;
    for (const auto& z : z0) z0gens.push_back(A.canon(z));

    Table t;
    IVec zero(l, 0);
    t.E.push_back(zero);
    t.idx[zero] = 0;
    for (size_t h = 0; h < t.E.size(); ++h)
        for (const auto& g : z0gens) {
            IVec y = A.canon(vec_add(t.E[h], g));
            if (!t.idx.count(y)) {
                if (t.E.size() >= kGroupCap) throw std::runtime_error("E too large");
                t.idx[y] = t.E.size();
                t.E.push_back(y);
            }
        }
    size_t n = t.E.size();
    D.E = t.E;
    t.mul.assign(n, std::vector<std::pair<size_t, CycScalar>>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            t.mul[a][b] = {t.idx.at(A.canon(vec_add(t.E[a], t.E[b]))), A.mul(t.E[a], t.E[b]).scalar()};

    for (const auto& e : t.E) {
        bool rad = true;
        for (const auto& f : t.E)
            if (!T.comm_phase(e, f).is_one()) {
                rad = false;
                break;
            }
        if (rad) D.radical.push_back(e);
    }

    // maximal isotropic subgroup containing the radical
    std::set<IVec> H(D.radical.begin(), D.radical.end());
    std::vector<IVec> hg = D.radical;
    for (const auto& f : t.E) {
        if (H.count(f)) continue;
        bool iso = true;
        for (const auto& h : H)
            if (!T.comm_phase(f, h).is_one()) {
                iso = false;
                break;
            }
        if (!iso) continue;
        hg.push_back(f);
        H = closure(A, H, hg, kGroupCap);
    }
    D.lagrangian.assign(H.begin(), H.end());

    size_t r = D.radical.size();
    D.block_dim = n / r;
    size_t d = 0;
    while ((d + 1) * (d + 1) <= D.block_dim) ++d;
    D.module_dim = d;
    if (d * d != D.block_dim || n % r != 0) D.failures.push_back("|E / Rad| is not a square");
    if (D.lagrangian.size() != r * d) D.failures.push_back("Lagrangian subgroup has the wrong order");

    std::vector<TwistedChar> psis = twisted_characters(A, D.radical);
    std::vector<TwistedChar> hchars = twisted_characters(A, D.lagrangian);
    if (psis.size() != r) D.failures.push_back("number of radical characters differs from |Rad|");
    CycScalar inv_r = CycScalar(Rational(1, static_cast<long long>(r)));
    for (auto& psi : psis) {
        Block b;
        b.idempotent.assign(n, CycScalar(0));
        for (const auto& [k, v] : psi) b.idempotent[t.idx.at(k)] = v.inv() * inv_r;
        for (const auto& hc : hchars) {
            bool ext = true;
            for (const auto& [k, v] : psi)
                if (hc.at(k) != v) {
                    ext = false;
                    break;
                }
            if (ext) {
                b.psi_h = hc;
                break;
            }
        }
        if (b.psi_h.empty()) D.failures.push_back("radical character without an extension");
        b.psi = std::move(psi);
        D.blocks.push_back(std::move(b));
    }

    // certificate
    CycVec one(n, CycScalar(0));
    one[0] = CycScalar(1);
    CycVec sum(n, CycScalar(0));
    for (size_t i = 0; i < D.blocks.size(); ++i) {
        const CycVec& e = D.blocks[i].idempotent;
        for (size_t k = 0; k < n; ++k) sum[k] += e[k];
        if (mulv(t, e, e) != e) D.failures.push_back("block " + std::to_string(i) + ": e^2 != e");
        for (size_t j = i + 1; j < D.blocks.size(); ++j)
            if (mulv(t, e, D.blocks[j].idempotent) != CycVec(n, CycScalar(0)))
                D.failures.push_back("blocks " + std::to_string(i) + ", " + std::to_string(j) + " not orthogonal");
        CycMat span;
        for (size_t f = 0; f < n; ++f) {
            CycVec x(n, CycScalar(0));
            x[f] = CycScalar(1);
            CycVec xe = mulv(t, x, e);
            if (xe != mulv(t, e, x)) {
                D.failures.push_back("block " + std::to_string(i) + ": idempotent not central");
                break;
            }
            span.push_back(std::move(xe));
        }
        D.blocks[i].dim = rank_cyc(span);
        if (D.blocks[i].dim != D.block_dim) D.failures.push_back("block " + std::to_string(i) + ": wrong dimension");
    }
    if (sum != one) D.failures.push_back("idempotents do not sum to 1");

    for (size_t j = 0; j < P.m; ++j) {
        std::vector<size_t> perm;
        for (const auto& b : D.blocks) {
            TwistedChar conj;
            for (const auto& [k, v] : b.psi) conj.emplace(k, v * T.commutator_map(P.gens[j], k).inv());
            size_t found = D.blocks.size();
            for (size_t i = 0; i < D.blocks.size(); ++i)
                if (D.blocks[i].psi == conj) found = i;
            if (found == D.blocks.size()) D.failures.push_back("conjugate of a block is not a block");
            perm.push_back(found);
        }
        D.conjugation.push_back(std::move(perm));
    }
    D.certified = D.failures.empty();
    return D;
}

// ---------------------------------------------------------------- Omega

BlockOmega::BlockOmega(AlgebraPtr A, const std::vector<IVec>& lagrangian, TwistedChar psi, RVec base)
    : A_(std::move(A)), psi_(std::move(psi)), base_(std::move(base)) {
    size_t l = A_->twist().lattice().rank();
    IMat rows = A_->k_basis();
    for (const auto& h : lagrangian) rows.push_back(h);
    rows.push_back(IVec(l, 0));
    hnf_ = hermite_rows(rows);
}

CycScalar BlockOmega::psi_hat(const IVec& h) const { return A_->reduce(h).scalar() * psi_.at(A_->canon(h)); }

RVec BlockOmega::weight(const OmegaLabel& o) const {
    RVec w = base_;
    RVec n = A_->twist().lattice().nu(o.g);
    for (size_t k = 0; k < w.size(); ++k) w[k] += n[k];
    return w;
}

std::vector<std::pair<CycScalar, OmegaLabel>> BlockOmega::act(const IVec& alpha, const OmegaLabel& o) const {
    const TwistData& T = A_->twist();
    IVec s = vec_add(alpha, o.g);
    IVec t = reduce_mod_rows(s, hnf_);
    IVec h = vec_sub(s, t);
    CycScalar c = (T.eps_phase(alpha, o.g) * T.eps_phase(t, h).inv()).scalar() * psi_hat(h);
    return {{c, OmegaLabel{t, 0}}};
}

std::vector<OmegaLabel> BlockOmega::seeds() const { return {OmegaLabel{IVec(A_->twist().lattice().rank(), 0), 0}}; }

std::string BlockOmega::describe() const {
    std::ostringstream os;
    os << "induced Omega, |H| = " << psi_.size() << ", base weight (";
    for (size_t k = 0; k < base_.size(); ++k) os << (k ? "," : "") << base_[k].str();
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------- enumeration

namespace {

void fill_row(const std::shared_ptr<const TwistData>& T, const Classification& C, const IMat& z0, MuRow& row) {
    const TwistedLattice& L = T->lattice();
    size_t l = L.rank();
    row.A = build_algebra_A(T, C.orbits, row.mu);
    if (row.A.zero) {
        row.note = "A = 0: " + row.A.witness;
        return;
    }
    row.D = decompose_A(row.A);
    if (!row.D.certified) {
        row.note = "decomposition not certified: " + row.D.failures.front();
        return;
    }
    if (!C.nu_integral) {
        row.note = "nu(Lambda) is not integral on the lattice basis";
        return;
    }
    const TwistedGroupAlgebra& A = *row.A.model;
    RVec c(l);
    for (size_t i = 0; i < l; ++i) {
        IVec e = L.basis(i);
        CycScalar mu = T->phi(e) * (A.reduce(L.act(e)) * A.reduce(e).inv()).scalar();
        c[i] = L.prime_pairing(e, e) / Rational(2) - root_angle(mu);
    }
    IVec z(l, 0);
    if (!z0.empty()) {
        IVec rhs;
        for (const auto& zr : z0) {
            Rational s;
            for (size_t i = 0; i < l; ++i) s += Rational(zr[i]) * c[i];
            if (!s.is_integer()) {
                row.note = "no weight satisfies (ii) on Lambda cap h'";
                return;
            }
            rhs.push_back(-s.to_ll());
        }
        if (!solve_in_row_lattice(transpose(z0), rhs, z)) {
            row.note = "no weight satisfies (ii) on Lambda cap h'";
            return;
        }
    }
    row.y0 = c;
    for (size_t i = 0; i < l; ++i) row.y0[i] += Rational(z[i]);
    row.weights_ok = true;
    row.classes = row.D.blocks.size() * C.eta_reps.size();
}

}  // namespace

Classification enumerate_simple_twisted(std::shared_ptr<const TwistData> T, bool parallel) {
    Classification C;
    const TwistedLattice& L = T->lattice();
    size_t l = L.rank();
    C.p = L.order();
    C.orbits = L.reduce_generating_set();
    for (const auto& o : C.orbits.orbits) C.orbit_lengths.push_back(o.length);
    for (const auto& o : C.orbits.orbits)
        if (!T->orbit_product(o.rep, o.length).is_root_of_unity()) {
            C.refusal = "orbit product of phi is not a root of unity at " + vstr(o.rep);
            return C;
        }
    C.witness = T->obstruction_check(C.orbits);
    C.obstructed = C.witness.obstructed;
    if (C.obstructed) return C;

    IMat nint(l, IVec(l));
    IMat nuint(l, IVec(l));
    for (size_t i = 0; i < l; ++i) {
        RVec nu = L.nu(L.basis(i));
        for (size_t k = 0; k < l; ++k) {
            nint[i][k] = L.m_sum(L.basis(i), L.basis(k));
            if (!nu[k].is_integer()) C.nu_integral = false;
            else nuint[i][k] = nu[k].to_ll();
        }
    }
    IMat z0 = left_kernel(nint);
    IMat Y = z0.empty() ? identity_matrix(l) : left_kernel(transpose(z0));

    // [(Lambda^[0])' : nu(Lambda)] from the Smith form of G V, V a basis of Lambda^[0]
    {
        IMat sm = L.sigma();
        for (size_t i = 0; i < l; ++i) sm[i][i] -= 1;
        IMat fixed = left_kernel(transpose(sm));
        C.dual_eta_index = 1;
        if (!fixed.empty()) {
            SNF s = smith(mat_mul(L.gram(), transpose(fixed)));
            for (long long d : s.diag)
                if (d != 0) C.dual_eta_index = ck_mul(C.dual_eta_index, d);
        }
    }

    if (C.nu_integral) {
        if (Y.empty()) {
            C.eta_index = 1;
            C.eta_reps.push_back(RVec(l, Rational(0)));
        } else {
            IMat nc;
            for (const auto& v : nuint) {
                IVec x;
                if (!solve_in_row_lattice(Y, v, x)) throw std::logic_error("nu outside the weight lattice");
                nc.push_back(x);
            }
            SNF s = smith(nc);
            size_t rr = Y.size();
            C.eta_index = 1;
            for (size_t i = 0; i < rr; ++i) {
                long long d = i < s.diag.size() ? s.diag[i] : 0;
                if (d == 0) throw std::logic_error("nu(Lambda) has infinite index");
                C.eta_index = ck_mul(C.eta_index, d);
            }
            if (C.eta_index > static_cast<long long>(kGroupCap)) throw std::runtime_error("too many weight cosets");
            RMat vinv = rational_inverse(s.V);
            IVec w(rr, 0);
            while (true) {
                RVec y(l, Rational(0));
                for (size_t j = 0; j < rr; ++j) {
                    Rational cj;
                    for (size_t i = 0; i < rr; ++i) cj += Rational(w[i]) * vinv[i][j];
                    for (size_t k = 0; k < l; ++k) y[k] += cj * Rational(Y[j][k]);
                }
                C.eta_reps.push_back(std::move(y));
                size_t i = 0;
                while (i < rr && ++w[i] == s.diag[i]) w[i++] = 0;
                if (i == rr) break;
            }
        }
    }

    std::vector<std::vector<CycScalar>> roots;
    for (const auto& o : C.orbits.orbits) roots.push_back(T->mu_roots(o));
    std::vector<size_t> pick(roots.size(), 0);
    while (true) {
        MuRow row;
        for (size_t j = 0; j < roots.size(); ++j) row.mu.push_back(roots[j][pick[j]]);
        C.rows.push_back(std::move(row));
        size_t i = 0;
        while (i < roots.size() && ++pick[i] == roots[i].size()) pick[i++] = 0;
        if (i == roots.size()) break;
    }

    long long nrows = static_cast<long long>(C.rows.size());
    std::vector<std::string> errors(C.rows.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long i = 0; i < nrows; ++i) {
        try {
            fill_row(T, C, z0, C.rows[i]);
        } catch (const ScalarError& e) {
            errors[i] = e.what();
        }
    }
    for (size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty() && C.refusal.empty()) C.refusal = errors[i];

    for (size_t i = 0; i < C.rows.size(); ++i) {
        const MuRow& row = C.rows[i];
        if (!row.weights_ok) continue;
        for (size_t b = 0; b < row.D.blocks.size(); ++b)
            for (const auto& eta : C.eta_reps) {
                SimpleModuleClass s;
                s.row = i;
                s.mu = row.mu;
                s.block = b;
                s.eta = eta;
                s.base_weight = row.y0;
                for (size_t k = 0; k < l; ++k) s.base_weight[k] += eta[k];
                s.omega_dim = row.D.module_dim;
                C.classes.push_back(std::move(s));
            }
    }
    return C;
}

std::shared_ptr<const Omega> class_omega(const Classification& c, const SimpleModuleClass& s) {
    const MuRow& row = c.rows.at(s.row);
    return std::make_shared<const BlockOmega>(row.A.model, row.D.lagrangian, row.D.blocks.at(s.block).psi_h, s.base_weight);
}

FockPtr instantiate(const Classification& c, const SimpleModuleClass& s, const Rational& trunc) {
    return std::make_shared<const FockModule>(c.rows.at(s.row).A.model->twist_ptr(), class_omega(c, s), trunc);
}

}  // namespace twistlab
