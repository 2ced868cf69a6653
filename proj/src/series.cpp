#include "twistlab/series.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>

#include <omp.h>

namespace twistlab {

void CheckReport::merge(const CheckReport& o) {
    passed += o.passed;
    failed += o.failed;
    untestable += o.untestable;
    for (const auto& f : o.failures)
        if (failures.size() < 20) failures.push_back(f);
}

void CheckReport::record(bool equal, bool untestable_slot, const std::string& slot) {
    if (untestable_slot) {
        ++untestable;
    } else if (equal) {
        ++passed;
    } else {
        ++failed;
        if (failures.size() < 20) failures.push_back(slot);
    }
}

void CheckReport::record(const FockVector& lhs, const FockVector& rhs, const std::string& slot) {
    bool eq = lhs.same_terms(rhs);
    std::string s = slot;
    if (!eq && !(lhs.overflow || rhs.overflow)) s += ": " + lhs.str() + " vs " + rhs.str();
    record(eq, lhs.overflow || rhs.overflow, s);
}

std::string CheckReport::summary() const {
    std::ostringstream os;
    os << name << ": " << passed << " passed, " << failed << " failed, " << untestable << " untestable";
    if (passed == 0 && failed == 0) os << " (untestable)";
    return os.str();
}

namespace {

std::atomic<bool> g_parallel{true};

Rational lattice_half_norm0(const TwistedLattice& L, const IVec& g) { return L.zero_pairing(g, g) / Rational(2); }

std::vector<Rational> dedupe(std::vector<Rational> r) {
    for (auto& x : r) x = x.frac();
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

std::string mode_str(const Rational& m) { return m.str(); }

}  // namespace

bool parallel_default() { return g_parallel.load(); }
void set_parallel_default(bool on) { g_parallel.store(on); }

Rational OpSeries::max_mode(const FockVector& v) const {
    const FockModule& M = *M_;
    IVec g = degree();
    Rational half = lattice_half_norm0(M.lattice(), g);
    Rational wt = weight();
    bool first = true;
    Rational best(-1000000);
    for (const auto& [mono, x] : v.terms) {
        Rational mm = M.degree(mono) + wt - Rational(1) - M.xi_of(M.weight(mono), g) - half;
        if (first || mm > best) best = mm;
        first = false;
    }
    return best;
}

std::vector<Rational> OpSeries::residues() const {
    const FockModule& M = *M_;
    IVec g = degree();
    RVec xi = M.omega().weight(M.omega().seeds().front());
    Rational c = weight() - Rational(1) - M.xi_of(xi, g) - lattice_half_norm0(M.lattice(), g);
    std::vector<Rational> r;
    for (long long q = 0; q < M.p(); ++q) r.push_back(c + Rational(q, M.p()));
    return dedupe(r);
}

bool OpSeries::mode_allowed(const Rational& m) const {
    Rational f = m.frac();
    for (const auto& r : residues())
        if (r == f) return true;
    return false;
}

int OpSeries::parity() const {
    IVec g = degree();
    return static_cast<int>(((M_->lattice().pair(g, g) % 2) + 2) % 2);
}

namespace {

class IdentitySeries : public OpSeries {
public:
    using OpSeries::OpSeries;
    FockVector coeff(const Rational& m, const FockVector& v) const override {
        if (m == Rational(-1)) return v;
        FockVector z;
        z.overflow = v.overflow;
        return z;
    }
    Rational weight() const override { return Rational(0); }
    IVec degree() const override { return IVec(M_->lattice().rank(), 0); }
    std::string name() const override { return "1"; }
};

class HeisSeries : public OpSeries {
public:
    HeisSeries(FockPtr M, CycVec h) : OpSeries(std::move(M)), h_(std::move(h)) {}
    FockVector coeff(const Rational& m, const FockVector& v) const override { return M_->heis_vec(h_, m, v); }
    Rational weight() const override { return Rational(1); }
    IVec degree() const override { return IVec(M_->lattice().rank(), 0); }
    std::vector<Rational> residues() const override {
        CycVec c = M_->basis().coords(h_);
        std::vector<Rational> r;
        for (size_t j = 0; j < c.size(); ++j)
            if (!c[j].is_zero()) r.push_back(Rational(M_->basis().q[j], M_->p()));
        if (r.empty()) r.push_back(Rational(0));
        return dedupe(r);
    }
    std::string name() const override {
        std::ostringstream os;
        os << "h~(";
        for (size_t i = 0; i < h_.size(); ++i) os << (i ? "," : "") << h_[i].str();
        os << ")";
        return os.str();
    }

private:
    CycVec h_;
};

class VertexSeries : public OpSeries {
public:
    VertexSeries(FockPtr M, IVec a) : OpSeries(std::move(M)), a_(std::move(a)) {}
    FockVector coeff(const Rational& m, const FockVector& v) const override { return M_->vertex(a_, m, v); }
    Rational weight() const override { return Rational(M_->lattice().pair(a_, a_), 2); }
    IVec degree() const override { return a_; }
    Rational max_mode(const FockVector& v) const override { return M_->vertex_max_mode(a_, v); }
    std::string name() const override {
        std::ostringstream os;
        os << "X(";
        for (size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << a_[i];
        os << ")";
        return os.str();
    }

private:
    IVec a_;
};

class VirasoroSeries : public OpSeries {
public:
    using OpSeries::OpSeries;
    FockVector coeff(const Rational& m, const FockVector& v) const override {
        if (!m.is_integer()) {
            FockVector z;
            z.overflow = v.overflow;
            return z;
        }
        return M_->virasoro(m.to_ll(), v);
    }
    Rational weight() const override { return Rational(2); }
    IVec degree() const override { return IVec(M_->lattice().rank(), 0); }
    std::vector<Rational> residues() const override { return {Rational(0)}; }
    std::string name() const override { return "upsilon"; }
};

class SumSeries : public OpSeries {
public:
    explicit SumSeries(std::vector<std::pair<CycScalar, OpPtr>> t) : OpSeries(t.front().second->module_ptr()), t_(std::move(t)) {
        std::vector<Rational> r;
        for (const auto& [c, s] : t_) {
            auto q = s->residues();
            r.insert(r.end(), q.begin(), q.end());
        }
        res_ = dedupe(r);
    }
    FockVector coeff(const Rational& m, const FockVector& v) const override {
        FockVector out;
        out.overflow = v.overflow;
        for (const auto& [c, s] : t_) {
            if (!s->mode_allowed(m)) continue;
            out.add(s->coeff(m, v), c);
        }
        return out;
    }
    Rational weight() const override {
        Rational w = t_.front().second->weight();
        for (const auto& t : t_) w = std::max(w, t.second->weight());
        return w;
    }
    IVec degree() const override { return t_.front().second->degree(); }
    Rational max_mode(const FockVector& v) const override {
        Rational best = t_.front().second->max_mode(v);
        for (const auto& t : t_) best = std::max(best, t.second->max_mode(v));
        return best;
    }
    std::vector<Rational> residues() const override { return res_; }
    std::string name() const override {
        std::ostringstream os;
        for (size_t i = 0; i < t_.size(); ++i) os << (i ? " + " : "") << "(" << t_[i].first.str() << ")" << t_[i].second->name();
        return os.str();
    }

private:
    std::vector<std::pair<CycScalar, OpPtr>> t_;
    std::vector<Rational> res_;
};

class ZShiftSeries : public OpSeries {
public:
    ZShiftSeries(OpPtr a, Rational k) : OpSeries(a->module_ptr()), a_(std::move(a)), k_(std::move(k)) {}
    FockVector coeff(const Rational& m, const FockVector& v) const override { return a_->coeff(m + k_, v); }
    Rational weight() const override { return a_->weight() - k_; }
    IVec degree() const override { return a_->degree(); }
    Rational max_mode(const FockVector& v) const override { return a_->max_mode(v) - k_; }
    std::vector<Rational> residues() const override {
        auto r = a_->residues();
        for (auto& x : r) x = x - k_;
        return dedupe(r);
    }
    std::string name() const override { return "z^(" + k_.str() + ")" + a_->name(); }

private:
    OpPtr a_;
    Rational k_;
};

class DeriveSeries : public OpSeries {
public:
    explicit DeriveSeries(OpPtr a) : OpSeries(a->module_ptr()), a_(std::move(a)) {}
    FockVector coeff(const Rational& m, const FockVector& v) const override {
        return a_->coeff(m - Rational(1), v).scaled(CycScalar(-m));
    }
    Rational weight() const override { return a_->weight() + Rational(1); }
    IVec degree() const override { return a_->degree(); }
    Rational max_mode(const FockVector& v) const override { return a_->max_mode(v) + Rational(1); }
    std::vector<Rational> residues() const override { return a_->residues(); }
    std::string name() const override { return "D" + a_->name(); }

private:
    OpPtr a_;
};

class ProductSeries : public OpSeries {
public:
    ProductSeries(OpPtr a, OpPtr b, long long n, long long N, ProductPath path)
        : OpSeries(a->module_ptr()), a_(std::move(a)), b_(std::move(b)), n_(n), N_(N), path_(path) {
        std::vector<Rational> r;
        for (const auto& x : a_->residues())
            for (const auto& y : b_->residues()) r.push_back(x + y);
        res_ = dedupe(r);
    }
    FockVector coeff(const Rational& m, const FockVector& v) const override {
        return product_coeff(*a_, *b_, n_, N_, path_, m, v);
    }
    Rational weight() const override { return a_->weight() + b_->weight() - Rational(n_ + 1); }
    IVec degree() const override { return vec_add(a_->degree(), b_->degree()); }
    std::vector<Rational> residues() const override { return res_; }
    std::string name() const override {
        return "(" + a_->name() + " [" + std::to_string(n_) + "] " + b_->name() + ")";
    }

private:
    OpPtr a_, b_;
    long long n_, N_;
    ProductPath path_;
    std::vector<Rational> res_;
};

// (a_lambda [k] b)(m') for the integral component a_lambda(k) = a(k + lambda).
FockVector expl_component(const OpSeries& a, const OpSeries& b, const Rational& lambda, long long k, const Rational& mp,
                          const FockVector& v, int sgn) {
    FockVector out;
    out.overflow = v.overflow;
    Rational Mb = b.max_mode(v);
    for (long long s = 0;; ++s) {
        if (k >= 0 && s > k) break;
        Rational bm = mp + Rational(s);
        if (bm > Mb) break;
        if (!b.mode_allowed(bm)) continue;
        Rational c = gen_binom(Rational(k), s);
        if (c.is_zero()) continue;
        FockVector w = b.coeff(bm, v);
        if (w.is_zero() && !w.overflow) continue;
        Rational am = Rational(k - s) + lambda;
        if (!a.mode_allowed(am)) continue;
        out.add(a.coeff(am, w), CycScalar(s % 2 == 0 ? c : -c));
    }
    Rational Ma = a.max_mode(v);
    // s >= k + lambda - Ma
    Rational lo = Rational(k) + lambda - Ma;
    long long s0 = lo.floor_ll();
    if (Rational(s0) < lo) ++s0;
    if (k >= 0) s0 = std::max<long long>(s0, 0);
    for (long long s = s0; s <= k; ++s) {
        Rational am = Rational(k - s) + lambda;
        if (!a.mode_allowed(am)) continue;
        Rational c = gen_binom(Rational(k), k - s);
        if (c.is_zero()) continue;
        FockVector w = a.coeff(am, v);
        if (w.is_zero() && !w.overflow) continue;
        Rational bm = mp + Rational(s);
        if (!b.mode_allowed(bm)) continue;
        Rational sign = Rational((s % 2 == 0 ? 1 : -1) * -sgn);
        out.add(b.coeff(bm, w), CycScalar(sign * c));
    }
    return out;
}

FockVector lambda_path(const OpSeries& a, const OpSeries& b, long long n, long long N, const Rational& m, const FockVector& v) {
    int sgn = (a.parity() & b.parity()) ? -1 : 1;
    FockVector out;
    out.overflow = v.overflow;
    for (const auto& lam : a.residues()) {
        for (long long j = 0; j <= N - n - 1; ++j) {
            Rational c = gen_binom(-lam, j);
            if (c.is_zero()) continue;
            out.add(expl_component(a, b, lam, n + j, m - lam - Rational(j), v, sgn), CycScalar(c));
        }
    }
    return out;
}

long long common_denominator(const std::vector<Rational>& r) {
    long long d = 1;
    for (const auto& x : r) d = std::lcm(d, x.den_ll());
    return d;
}

FockVector lprod_path(const OpSeries& a, const OpSeries& b, long long n, long long N, const Rational& m, const FockVector& v) {
    int sgn = (a.parity() & b.parity()) ? -1 : 1;
    FockVector out;
    out.overflow = v.overflow;
    if (N - n <= 0) return out;
    long long P = common_denominator(a.residues());
    KernelPoly K = kernel_Delta(P, n, N);
    Rational Ma = a.max_mode(v), Mb = b.max_mode(v);
    for (const auto& [ab, c] : K.terms()) {
        Rational A(ab.first, P), B(ab.second, P);
        // first part: sum_i (-1)^i binom(n, i) a(n - i + A) b(m + i + B)
        if (a.mode_allowed(Rational(n) + A) && b.mode_allowed(m + B)) {
            for (long long i = 0;; ++i) {
                if (n >= 0 && i > n) break;
                Rational bm = m + Rational(i) + B;
                if (bm > Mb) break;
                Rational bin = gen_binom(Rational(n), i);
                if (bin.is_zero()) continue;
                FockVector w = b.coeff(bm, v);
                if (w.is_zero() && !w.overflow) continue;
                Rational coef = c * (i % 2 == 0 ? bin : -bin);
                out.add(a.coeff(Rational(n - i) + A, w), CycScalar(coef));
            }
        }
        // second part: -sgn sum_i (-1)^{n+i} binom(n, i) b(m + n - i + B) a(i + A)
        if (a.mode_allowed(A) && b.mode_allowed(m + B)) {
            for (long long i = 0;; ++i) {
                if (n >= 0 && i > n) break;
                Rational am = Rational(i) + A;
                if (am > Ma) break;
                Rational bin = gen_binom(Rational(n), i);
                if (bin.is_zero()) continue;
                FockVector w = a.coeff(am, v);
                if (w.is_zero() && !w.overflow) continue;
                Rational coef = c * bin * Rational(((n + i) % 2 == 0 ? 1 : -1) * -sgn);
                out.add(b.coeff(m + Rational(n - i) + B, w), CycScalar(coef));
            }
        }
    }
    return out;
}

}  // namespace

OpPtr identity_series(FockPtr M) { return std::make_shared<IdentitySeries>(std::move(M)); }
OpPtr heis_series(FockPtr M, const CycVec& h) { return std::make_shared<HeisSeries>(std::move(M), h); }
OpPtr vertex_series(FockPtr M, const IVec& a) { return std::make_shared<VertexSeries>(std::move(M), a); }
OpPtr virasoro_series(FockPtr M) { return std::make_shared<VirasoroSeries>(std::move(M)); }
OpPtr sum_series(std::vector<std::pair<CycScalar, OpPtr>> terms) { return std::make_shared<SumSeries>(std::move(terms)); }
OpPtr zshift(OpPtr a, const Rational& k) { return std::make_shared<ZShiftSeries>(std::move(a), k); }
OpPtr derive(OpPtr a) { return std::make_shared<DeriveSeries>(std::move(a)); }

OpPtr nth_product(OpPtr a, OpPtr b, long long n, long long N, ProductPath path) {
    return std::make_shared<ProductSeries>(std::move(a), std::move(b), n, N, path);
}

FockVector product_coeff(const OpSeries& a, const OpSeries& b, long long n, long long N, ProductPath path,
                         const Rational& m, const FockVector& v) {
    if (path == ProductPath::LProd) return lprod_path(a, b, n, N, m, v);
    return lambda_path(a, b, n, N, m, v);
}

FockVector bracket_apply(const OpSeries& a, const Rational& m, const OpSeries& b, const Rational& n, const FockVector& v) {
    int sgn = (a.parity() & b.parity()) ? -1 : 1;
    FockVector r = a.coeff(m, b.coeff(n, v));
    r.add(b.coeff(n, a.coeff(m, v)), CycScalar(-sgn));
    return r;
}

std::vector<FockVector> window_vectors(const FockModule& M, const SlotWindow& w) {
    std::vector<OmegaLabel> labels = w.labels.empty() ? M.omega().seeds() : w.labels;
    std::vector<FockVector> out;
    for (const auto& o : labels)
        for (const auto& m : M.monomials(o, w.vec_degree)) out.push_back(M.vector(m));
    return out;
}

std::vector<Rational> window_modes(const OpSeries& a, const FockVector& v, long long depth) {
    Rational top = a.max_mode(v);
    std::vector<Rational> out;
    for (const auto& lam : a.residues()) {
        Rational m = lam + Rational((top - lam).floor_ll());
        for (; m >= top - Rational(depth); m -= Rational(1)) out.push_back(m);
    }
    std::sort(out.begin(), out.end(), [](const Rational& x, const Rational& y) { return y < x; });
    return out;
}

bool locality_test(const OpSeries& a, const OpSeries& b, long long N, const SlotWindow& w, CheckReport* rep) {
    CheckReport local;
    local.name = "locality (z-w)^" + std::to_string(N) + " [" + a.name() + ", " + b.name() + "]";
    for (const auto& v : window_vectors(a.module(), w)) {
        for (const auto& n0 : window_modes(a, v, w.depth)) {
            for (const auto& m0 : window_modes(b, v, w.depth)) {
                FockVector acc;
                for (long long s = 0; s <= N; ++s) {
                    Rational c = gen_binom(Rational(N), s);
                    acc.add(bracket_apply(a, n0 - Rational(s), b, m0 + Rational(s), v), CycScalar(s % 2 == 0 ? c : -c));
                }
                local.record(acc, FockVector{}, "n=" + mode_str(n0) + " m=" + mode_str(m0));
            }
        }
    }
    if (rep) *rep = local;
    return local.failed == 0;
}

CheckReport lie_from_products(OpPtr a, OpPtr b, long long N, const SlotWindow& w) {
    CheckReport rep;
    rep.name = "bracket from products";
    for (const auto& v : window_vectors(a->module(), w)) {
        for (const auto& m : window_modes(*a, v, w.depth)) {
            for (const auto& n : window_modes(*b, v, w.depth)) {
                FockVector direct = bracket_apply(*a, m, *b, n, v);
                FockVector via;
                // m is congruent to a degree of a: write m = lambda + k
                Rational lam = m.frac();
                long long k = m.floor_ll();
                for (long long s = 0; s < N; ++s) {
                    if (k >= 0 && s > k) break;
                    Rational c = gen_binom(m, s);
                    if (c.is_zero()) continue;
                    via.add(product_coeff(*a, *b, s, N, ProductPath::LambdaProd, m + n - Rational(s), v), CycScalar(c));
                }
                (void)lam;
                rep.record(direct, via, "m=" + mode_str(m) + " n=" + mode_str(n));
            }
        }
    }
    return rep;
}

bool weight_of(const OpSeries& phi, const std::function<FockVector(const FockVector&)>& D, const SlotWindow& w,
               Rational& lambda, bool* untestable) {
    bool have = false, unt = false, ok = true;
    for (const auto& v : window_vectors(phi.module(), w)) {
        for (const auto& m : window_modes(phi, v, w.depth)) {
            // (Delta phi)(m) = -m phi(m - 1) - [D, phi(m)] against lambda phi(m - 1)
            FockVector prev = phi.coeff(m - Rational(1), v);
            FockVector delta = prev.scaled(CycScalar(-m));
            delta.add(D(phi.coeff(m, v)), CycScalar(-1));
            delta.add(phi.coeff(m, D(v)));
            if (delta.overflow || prev.overflow) {
                unt = true;
                continue;
            }
            if (prev.is_zero()) {
                if (!delta.is_zero()) ok = false;
                continue;
            }
            // ratio from the first term
            const auto& [mono, c] = *prev.terms.begin();
            auto it = delta.terms.find(mono);
            CycScalar r = it == delta.terms.end() ? CycScalar(0) : it->second / c;
            if (!r.is_rational()) {
                ok = false;
                continue;
            }
            Rational lam = r.rational_value();
            if (!have) {
                lambda = lam;
                have = true;
            } else if (lam != lambda) {
                ok = false;
            }
            if (!delta.same_terms(prev.scaled(CycScalar(lam)))) ok = false;
        }
    }
    if (untestable) *untestable = unt && !have;
    return ok && have;
}

CheckReport run_slots(const std::string& name, std::vector<std::function<CheckReport()>> tasks, bool parallel) {
    std::vector<CheckReport> parts(tasks.size());
    if (parallel) {
        long long n = static_cast<long long>(tasks.size());
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < n; ++i) parts[static_cast<size_t>(i)] = tasks[static_cast<size_t>(i)]();
    } else {
        for (size_t i = 0; i < tasks.size(); ++i) parts[i] = tasks[i]();
    }
    CheckReport rep;
    rep.name = name;
    for (const auto& p : parts) rep.merge(p);
    return rep;
}

namespace {

// Dong bound for the locality order of a and b[n]c.
long long dong(long long ab, long long ac, long long bc, long long n) {
    return std::max<long long>(0, ab + ac + bc - n - 1);
}

OpPtr iterate_derive(OpPtr a, long long i) {
    for (long long k = 0; k < i; ++k) a = derive(a);
    return a;
}

Rational factorial(long long i) {
    Rational r(1);
    for (long long k = 2; k <= i; ++k) r *= Rational(k);
    return r;
}

}  // namespace

// Compares lhs and rhs coefficientwise on the window.
CheckReport compare_series(const std::string& name, OpPtr lhs, OpPtr rhs, const SlotWindow& w) {
    OpPtr diff = sum_series({{CycScalar(1), lhs}, {CycScalar(-1), rhs}});
    CheckReport rep;
    rep.name = name;
    for (const auto& v : window_vectors(lhs->module(), w))
        for (const auto& m : window_modes(*diff, v, w.depth)) rep.record(diff->coeff(m, v), FockVector{}, name + " m=" + m.str());
    return rep;
}


CheckReport verify_axioms(const LocalFamily& fam, Axiom which, const SlotWindow& w, long long nmin, long long nmax) {
    std::vector<std::function<CheckReport()>> tasks;
    size_t k = fam.members.size();
    std::string tag;
    auto sgn_of = [](const OpPtr& a, const OpPtr& b) { return (a->parity() & b->parity()) ? -1 : 1; };
    switch (which) {
    case Axiom::C2:
        tag = "C2";
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                for (long long n = nmin; n <= nmax; ++n) {
                    tasks.push_back([=, &fam]() {
                        OpPtr a = fam.members[i], b = fam.members[j];
                        long long N = fam.order(i, j);
                        OpPtr lhs = derive(nth_product(a, b, n, N));
                        OpPtr da = nth_product(derive(a), b, n, N + 1);
                        OpPtr db = nth_product(a, derive(b), n, N + 1);
                        CheckReport r = compare_series("C2 D(a[n]b)", lhs, sum_series({{CycScalar(1), da}, {CycScalar(1), db}}), w);
                        OpPtr alt = sum_series({{CycScalar(-n), nth_product(a, b, n - 1, N)}, {CycScalar(1), db}});
                        r.merge(compare_series("C2 -n a[n-1]b", lhs, alt, w));
                        return r;
                    });
                }
        break;
    case Axiom::C3:
        tag = "C3";
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                for (long long n = nmin; n <= nmax; ++n) {
                    tasks.push_back([=, &fam]() {
                        OpPtr a = fam.members[i], b = fam.members[j];
                        long long N = fam.order(i, j);
                        OpPtr lhs = nth_product(a, b, n, N);
                        std::vector<std::pair<CycScalar, OpPtr>> terms;
                        int sg = sgn_of(a, b);
                        for (long long t = 0; n + t < N; ++t) {
                            Rational c = Rational(-sg * (((n + t) % 2 == 0) ? 1 : -1)) / factorial(t);
                            terms.emplace_back(CycScalar(c), iterate_derive(nth_product(b, a, n + t, fam.order(j, i)), t));
                        }
                        if (terms.empty()) terms.emplace_back(CycScalar(0), lhs);
                        return compare_series("C3 quasisymmetry", lhs, sum_series(terms), w);
                    });
                }
        break;
    case Axiom::V2:
        tag = "V2";
        for (size_t i = 0; i < k; ++i)
            for (long long n = nmin; n <= nmax; ++n) {
                tasks.push_back([=, &fam]() {
                    OpPtr a = fam.members[i];
                    OpPtr one = identity_series(a->module_ptr());
                    OpPtr l1 = nth_product(one, a, n, 0);
                    OpPtr r1 = sum_series({{CycScalar(n == -1 ? 1 : 0), a}});
                    CheckReport r = compare_series("V2 1[n]a", l1, r1, w);
                    OpPtr l2 = nth_product(a, one, n, 0);
                    OpPtr r2 = n >= 0 ? sum_series({{CycScalar(0), a}})
                                      : sum_series({{CycScalar(factorial(-n - 1).inv()), iterate_derive(a, -n - 1)}});
                    r.merge(compare_series("V2 a[n]1", l2, r2, w));
                    return r;
                });
            }
        break;
    case Axiom::C4:
    case Axiom::V3:
    case Axiom::V4:
        tag = which == Axiom::C4 ? "C4" : which == Axiom::V3 ? "V3" : "V4";
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                for (size_t l = 0; l < k; ++l)
                    for (long long n = nmin; n <= nmax; ++n)
                        for (long long m = nmin; m <= nmax; ++m) {
                            if (which == Axiom::C4 && (n < 0 || m < 0)) continue;
                            tasks.push_back([=, &fam]() {
                                OpPtr a = fam.members[i], b = fam.members[j], c = fam.members[l];
                                long long Nab = fam.order(i, j), Nac = fam.order(i, l), Nbc = fam.order(j, l);
                                int sab = sgn_of(a, b);
                                if (which == Axiom::V4) {
                                    // a[m](b[n]c) - b[n](a[m]c) = sum_t binom(m, t) (a[t]b)[m+n-t]c
                                    OpPtr bc = nth_product(b, c, n, Nbc), ac = nth_product(a, c, m, Nac);
                                    OpPtr lhs = sum_series({{CycScalar(1), nth_product(a, bc, m, dong(Nab, Nac, Nbc, n))},
                                                            {CycScalar(-sab), nth_product(b, ac, n, dong(Nab, Nbc, Nac, m))}});
                                    std::vector<std::pair<CycScalar, OpPtr>> terms;
                                    for (long long t = 0; t < Nab; ++t) {
                                        if (m >= 0 && t > m) break;
                                        Rational cf = gen_binom(Rational(m), t);
                                        terms.emplace_back(CycScalar(cf), nth_product(nth_product(a, b, t, Nab), c, m + n - t,
                                                                                      dong(Nac, Nbc, Nab, t)));
                                    }
                                    if (terms.empty()) terms.emplace_back(CycScalar(0), lhs);
                                    return compare_series(tag + " commutation", lhs, sum_series(terms), w);
                                }
                                // (a[n]b)[m]c = sum_{t>=0} (-1)^t binom(n,t) a[n-t](b[m+t]c)
                                //             - sab sum_{t<=n} (-1)^t binom(n,n-t) b[m+t](a[n-t]c)
                                OpPtr lhs = nth_product(nth_product(a, b, n, Nab), c, m, dong(Nac, Nbc, Nab, n));
                                std::vector<std::pair<CycScalar, OpPtr>> terms;
                                for (long long t = 0; m + t < Nbc; ++t) {
                                    if (n >= 0 && t > n) break;
                                    Rational cf = gen_binom(Rational(n), t);
                                    if (t % 2) cf = -cf;
                                    terms.emplace_back(CycScalar(cf),
                                                       nth_product(a, nth_product(b, c, m + t, Nbc), n - t, dong(Nab, Nac, Nbc, m + t)));
                                }
                                for (long long t = n; n - t < Nac; --t) {
                                    if (n >= 0 && t < 0) break;
                                    Rational cf = gen_binom(Rational(n), n - t);
                                    if (t % 2) cf = -cf;
                                    terms.emplace_back(CycScalar(-sab * cf),
                                                       nth_product(b, nth_product(a, c, n - t, Nac), m + t, dong(Nab, Nbc, Nac, n - t)));
                                }
                                if (terms.empty()) terms.emplace_back(CycScalar(0), lhs);
                                return compare_series(tag + " associativity", lhs, sum_series(terms), w);
                            });
                        }
        break;
    }
    return run_slots(tag, std::move(tasks), parallel_default());
}

}  // namespace twistlab
