#include "twistlab/lie.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "twistlab/kernel.hpp"

namespace twistlab {

namespace {

long long mod(long long a, long long p) { return ((a % p) + p) % p; }

RVec zero_vec(size_t n) { return RVec(n, Rational(0)); }

RVec bracket_vec(const QuadLie& g, const RVec& a, const RVec& b) {
    RVec out = zero_vec(g.dim());
    for (size_t i = 0; i < g.dim(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < g.dim(); ++j) {
            if (b[j].is_zero()) continue;
            Rational c = a[i] * b[j];
            for (size_t k = 0; k < g.dim(); ++k)
                if (!g.bracket[i][j][k].is_zero()) out[k] += c * g.bracket[i][j][k];
        }
    }
    return out;
}

Rational form_of(const QuadLie& g, const RVec& a, const RVec& b) {
    Rational s(0);
    for (size_t i = 0; i < g.dim(); ++i)
        for (size_t j = 0; j < g.dim(); ++j)
            if (!a[i].is_zero() && !b[j].is_zero()) s += a[i] * b[j] * g.form[i][j];
    return s;
}

RVec unit(size_t n, size_t i) {
    RVec v = zero_vec(n);
    v[i] = Rational(1);
    return v;
}

std::vector<Rational> fold(std::vector<Rational> r) {
    for (auto& x : r) x = x.frac();
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

}  // namespace

std::string QuadLie::validate() const {
    size_t d = dim();
    if (bracket.size() != d || form.size() != d) return "dimension mismatch";
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            if (form[i][j] != form[j][i]) return "form not symmetric";
            if (!form[i][j].is_zero() && mod(q[i] + q[j], p) != 0) return "form does not pair degree l with -l";
            for (size_t k = 0; k < d; ++k) {
                if (bracket[i][j][k] != -bracket[j][i][k]) return "bracket not antisymmetric";
                if (!bracket[i][j][k].is_zero() && mod(q[i] + q[j] - q[k], p) != 0) return "bracket not graded";
            }
        }
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k) {
                RVec ei = unit(d, i), ej = unit(d, j), ek = unit(d, k);
                RVec s = bracket_vec(*this, ei, bracket_vec(*this, ej, ek));
                RVec t = bracket_vec(*this, ej, bracket_vec(*this, ek, ei));
                RVec u = bracket_vec(*this, ek, bracket_vec(*this, ei, ej));
                for (size_t r = 0; r < d; ++r)
                    if (!(s[r] + t[r] + u[r]).is_zero()) return "Jacobi fails";
                if (form_of(*this, bracket_vec(*this, ei, ej), ek) != form_of(*this, ei, bracket_vec(*this, ej, ek)))
                    return "form not invariant";
            }
    return "";
}

QuadLie gl_inner(size_t n, long long p, const std::vector<long long>& k) {
    QuadLie g;
    g.name = "gl" + std::to_string(n) + "/p" + std::to_string(p);
    g.p = p;
    size_t d = n * n;
    g.q.resize(d);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g.q[i * n + j] = mod(k[i] - k[j], p);
    g.bracket.assign(d, std::vector<RVec>(d, zero_vec(d)));
    g.form.assign(d, zero_vec(d));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b) {
                    size_t x = i * n + j, y = a * n + b;
                    // [E_ij, E_ab] = delta_ja E_ib - delta_bi E_aj
                    if (j == a) g.bracket[x][y][i * n + b] += Rational(1);
                    if (b == i) g.bracket[x][y][a * n + j] -= Rational(1);
                    if (j == a && i == b) g.form[x][y] = Rational(1);
                }
    return g;
}

QuadLie sl2_chevalley() {
    // basis x = e - f (even), y = e + f, h (odd)
    QuadLie g;
    g.name = "sl2/chevalley";
    g.p = 2;
    g.q = {0, 1, 1};
    g.bracket.assign(3, std::vector<RVec>(3, zero_vec(3)));
    auto set = [&](size_t a, size_t b, size_t c, long long v) {
        g.bracket[a][b][c] = Rational(v);
        g.bracket[b][a][c] = Rational(-v);
    };
    set(2, 0, 1, 2);  // [h, x] = 2y
    set(2, 1, 0, 2);  // [h, y] = 2x
    set(0, 1, 2, 2);  // [x, y] = 2h
    g.form = {{Rational(-2), Rational(0), Rational(0)},
              {Rational(0), Rational(2), Rational(0)},
              {Rational(0), Rational(0), Rational(2)}};
    return g;
}

QuadLie abelian_graded(long long p, const std::vector<long long>& q, size_t z0) {
    QuadLie g;
    g.name = "abelian/p" + std::to_string(p);
    g.p = p;
    for (long long x : q) {
        g.q.push_back(mod(x, p));
        g.q.push_back(mod(-x, p));
    }
    for (size_t i = 0; i < z0; ++i) g.q.push_back(0);
    size_t d = g.q.size();
    g.bracket.assign(d, std::vector<RVec>(d, zero_vec(d)));
    g.form.assign(d, zero_vec(d));
    for (size_t i = 0; i < q.size(); ++i) {
        g.form[2 * i][2 * i + 1] = Rational(1);
        g.form[2 * i + 1][2 * i] = Rational(1);
    }
    for (size_t i = 2 * q.size(); i < d; ++i) g.form[i][i] = Rational(1);
    return g;
}

void AffElem::add_term(size_t i, const Rational& n, const Rational& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(i, n);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

void AffElem::add(const AffElem& o, const Rational& s) {
    if (s.is_zero()) return;
    for (const auto& [k, c] : o.terms) add_term(k.first, k.second, c * s);
    central += o.central * s;
}

std::string AffElem::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        os << (first ? "" : " + ") << c << " e" << k.first << "(" << k.second << ")";
        first = false;
    }
    if (!central.is_zero() || first) os << (first ? "" : " + ") << central << " c";
    return os.str();
}

AffElem aff_bracket(const QuadLie& g, const AffElem& x, const AffElem& y) {
    AffElem out;
    for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms) {
            size_t i = kx.first, j = ky.first;
            Rational c = cx * cy;
            Rational mn = kx.second + ky.second;
            for (size_t k = 0; k < g.dim(); ++k)
                if (!g.bracket[i][j][k].is_zero()) out.add_term(k, mn, c * g.bracket[i][j][k]);
            if (mn.is_zero() && !g.form[i][j].is_zero()) out.central += c * kx.second * g.form[i][j];
        }
    return out;
}

namespace {

class TildeSeries : public AffSeries {
public:
    TildeSeries(LiePtr g, RVec a) : AffSeries(std::move(g)), a_(std::move(a)) {
        for (size_t i = 0; i < a_.size(); ++i)
            if (!a_[i].is_zero()) res_.push_back(g_->degree(i));
        res_ = fold(res_);
    }
    AffElem coeff(const Rational& m) const override {
        AffElem out;
        for (size_t i = 0; i < a_.size(); ++i)
            if (!a_[i].is_zero() && (m - g_->degree(i)).is_integer()) out.add_term(i, m, a_[i]);
        return out;
    }
    std::vector<Rational> residues() const override { return res_; }
    std::string name() const override {
        std::ostringstream os;
        os << "~(";
        for (size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << a_[i];
        os << ")";
        return os.str();
    }

private:
    RVec a_;
    std::vector<Rational> res_;
};

class CentralSeries : public AffSeries {
public:
    using AffSeries::AffSeries;
    AffElem coeff(const Rational& m) const override {
        AffElem out;
        if (m == Rational(-1)) out.central = Rational(1);
        return out;
    }
    std::vector<Rational> residues() const override { return {Rational(0)}; }
    std::string name() const override { return "c"; }
};

class AffSumSeries : public AffSeries {
public:
    explicit AffSumSeries(std::vector<std::pair<Rational, AffPtr>> t)
        : AffSeries(t.front().second->lie_ptr()), t_(std::move(t)) {
        for (const auto& [c, s] : t_)
            for (const auto& r : s->residues()) res_.push_back(r);
        res_ = fold(res_);
    }
    AffElem coeff(const Rational& m) const override {
        AffElem out;
        for (const auto& [c, s] : t_) out.add(s->coeff(m), c);
        return out;
    }
    std::vector<Rational> residues() const override { return res_; }
    std::string name() const override {
        std::string s;
        for (const auto& [c, a] : t_) s += (s.empty() ? "" : " + ") + c.str() + " " + a->name();
        return s;
    }

private:
    std::vector<std::pair<Rational, AffPtr>> t_;
    std::vector<Rational> res_;
};

class AffShiftSeries : public AffSeries {
public:
    AffShiftSeries(AffPtr a, Rational k) : AffSeries(a->lie_ptr()), a_(std::move(a)), k_(std::move(k)) {
        for (const auto& r : a_->residues()) res_.push_back(r - k_);
        res_ = fold(res_);
    }
    AffElem coeff(const Rational& m) const override { return a_->coeff(m + k_); }
    std::vector<Rational> residues() const override { return res_; }
    std::string name() const override { return "z^" + k_.str() + " " + a_->name(); }

private:
    AffPtr a_;
    Rational k_;
    std::vector<Rational> res_;
};

class AffDeriveSeries : public AffSeries {
public:
    explicit AffDeriveSeries(AffPtr a) : AffSeries(a->lie_ptr()), a_(std::move(a)) {}
    AffElem coeff(const Rational& m) const override {
        AffElem out;
        out.add(a_->coeff(m - Rational(1)), -m);
        return out;
    }
    std::vector<Rational> residues() const override { return a_->residues(); }
    std::string name() const override { return "D " + a_->name(); }

private:
    AffPtr a_;
};

// (a [n] b)(m) = sum over residues lambda of a and j < N - n of
// binom(-lambda, j) (a_0 [n+j] b)(m - lambda - j), where a_0(k) = a(k + lambda)
// and a_0 [k] b for k >= 0 is a finite sum of brackets.
class AffProductSeries : public AffSeries {
public:
    AffProductSeries(AffPtr a, AffPtr b, long long n, long long N)
        : AffSeries(a->lie_ptr()), a_(std::move(a)), b_(std::move(b)), n_(n), N_(N) {
        for (const auto& x : a_->residues())
            for (const auto& y : b_->residues()) res_.push_back(x + y);
        res_ = fold(res_);
    }
    AffElem coeff(const Rational& m) const override {
        AffElem out;
        for (const auto& lam : a_->residues())
            for (long long j = 0; j <= N_ - n_ - 1; ++j) {
                Rational c = gen_binom(-lam, j);
                if (c.is_zero()) continue;
                long long k = n_ + j;
                Rational mp = m - lam - Rational(j);
                for (long long s = 0; s <= k; ++s) {
                    Rational cs = gen_binom(Rational(k), s);
                    if (s % 2) cs = -cs;
                    AffElem x = a_->coeff(Rational(k - s) + lam);
                    if (x.is_zero()) continue;
                    AffElem y = b_->coeff(mp + Rational(s));
                    if (y.is_zero()) continue;
                    out.add(aff_bracket(*g_, x, y), c * cs);
                }
            }
        return out;
    }
    std::vector<Rational> residues() const override { return res_; }
    std::string name() const override { return "(" + a_->name() + " [" + std::to_string(n_) + "] " + b_->name() + ")"; }

private:
    AffPtr a_, b_;
    long long n_, N_;
    std::vector<Rational> res_;
};

Rational factorial(long long i) {
    Rational r(1);
    for (long long k = 2; k <= i; ++k) r *= Rational(k);
    return r;
}

AffPtr iterate(AffPtr a, long long t) {
    for (long long i = 0; i < t; ++i) a = aff_derive(a);
    return a;
}

long long dong(long long ab, long long ac, long long bc, long long n) { return std::max<long long>(0, ab + ac + bc - n - 1); }

AffPtr zero_series(const AffPtr& like) { return aff_sum({{Rational(0), like}}); }

}  // namespace

AffPtr aff_tilde(LiePtr g, const RVec& a) { return std::make_shared<TildeSeries>(std::move(g), a); }
AffPtr aff_central(LiePtr g) { return std::make_shared<CentralSeries>(std::move(g)); }
AffPtr aff_tau(LiePtr g, size_t i) {
    Rational lam = g->degree(i);
    RVec e = unit(g->dim(), i);
    return aff_zshift(aff_tilde(std::move(g), e), lam);
}
AffPtr aff_tau_vec(LiePtr g, const RVec& a, const Rational& lambda) { return aff_zshift(aff_tilde(std::move(g), a), lambda); }
AffPtr aff_sum(std::vector<std::pair<Rational, AffPtr>> terms) { return std::make_shared<AffSumSeries>(std::move(terms)); }
AffPtr aff_zshift(AffPtr a, const Rational& k) { return std::make_shared<AffShiftSeries>(std::move(a), k); }
AffPtr aff_derive(AffPtr a) { return std::make_shared<AffDeriveSeries>(std::move(a)); }
AffPtr aff_product(AffPtr a, AffPtr b, long long n, long long N) {
    if (n < 0) throw std::invalid_argument("n-th product with n < 0 needs normal ordering, undefined for Lie coefficients");
    return std::make_shared<AffProductSeries>(std::move(a), std::move(b), n, N);
}

CheckReport aff_compare(const std::string& name, const AffPtr& lhs, const AffPtr& rhs, long long lo, long long hi) {
    CheckReport rep;
    rep.name = name;
    std::vector<Rational> res = lhs->residues();
    for (const auto& r : rhs->residues()) res.push_back(r);
    res = fold(res);
    for (const auto& r : res)
        for (long long t = lo; t <= hi; ++t) {
            Rational m = r + Rational(t);
            AffElem x = lhs->coeff(m), y = rhs->coeff(m);
            bool eq = x == y;
            std::string slot = name + " m=" + m.str();
            if (!eq) slot += ": " + x.str() + " vs " + y.str();
            rep.record(eq, false, slot);
        }
    return rep;
}

bool aff_locality(const AffSeries& a, const AffSeries& b, long long N, long long lo, long long hi) {
    const QuadLie& g = a.lie();
    for (const auto& ra : a.residues())
        for (const auto& rb : b.residues())
            for (long long x = lo; x <= hi; ++x)
                for (long long y = lo; y <= hi; ++y) {
                    AffElem sum;
                    for (long long s = 0; s <= N; ++s) {
                        Rational c = gen_binom(Rational(N), s);
                        if (s % 2) c = -c;
                        sum.add(aff_bracket(g, a.coeff(ra + Rational(x + N - s)), b.coeff(rb + Rational(y + s))), c);
                    }
                    if (!sum.is_zero()) return false;
                }
    return true;
}

CheckReport aff_lie_from_products(const AffPtr& a, const AffPtr& b, long long N, long long lo, long long hi) {
    CheckReport rep;
    rep.name = "bracket from products";
    std::vector<AffPtr> prods;
    for (long long s = 0; s < N; ++s) prods.push_back(aff_product(a, b, s, N));
    for (const auto& ra : a->residues())
        for (const auto& rb : b->residues())
            for (long long x = lo; x <= hi; ++x)
                for (long long y = lo; y <= hi; ++y) {
                    Rational m = ra + Rational(x), n = rb + Rational(y);
                    AffElem direct = aff_bracket(a->lie(), a->coeff(m), b->coeff(n));
                    AffElem viaprod;
                    for (long long s = 0; s < N; ++s) viaprod.add(prods[s]->coeff(m + n - Rational(s)), gen_binom(m, s));
                    rep.record(direct == viaprod, false, "m=" + m.str() + " n=" + n.str());
                }
    return rep;
}

AffFamily tau_family(LiePtr g) {
    AffFamily f;
    f.g = g;
    for (size_t i = 0; i < g->dim(); ++i) {
        f.members.push_back(aff_tau(g, i));
        f.central.push_back(false);
    }
    f.members.push_back(aff_central(g));
    f.central.push_back(true);
    return f;
}

CheckReport aff_axioms(const AffFamily& fam, Axiom which, long long nmax, long long lo, long long hi, bool parallel) {
    std::vector<std::function<CheckReport()>> tasks;
    size_t k = fam.members.size();
    std::string tag;
    switch (which) {
    case Axiom::C2:
        tag = "C2";
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                for (long long n = 0; n <= nmax; ++n)
                    tasks.push_back([=, &fam]() {
                        AffPtr a = fam.members[i], b = fam.members[j];
                        long long N = fam.order(i, j);
                        AffPtr lhs = aff_derive(aff_product(a, b, n, N));
                        AffPtr da = aff_product(aff_derive(a), b, n, N + 1);
                        AffPtr db = aff_product(a, aff_derive(b), n, N + 1);
                        CheckReport r = aff_compare("C2 Leibniz", lhs, aff_sum({{Rational(1), da}, {Rational(1), db}}), lo, hi);
                        // (Da)[n]b = -n a[n-1]b
                        AffPtr rhs = n == 0 ? zero_series(da) : aff_sum({{Rational(-n), aff_product(a, b, n - 1, N)}});
                        r.merge(aff_compare("C2 (Da)[n]b", da, rhs, lo, hi));
                        return r;
                    });
        break;
    case Axiom::C3:
        tag = "C3";
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                for (long long n = 0; n <= nmax; ++n)
                    tasks.push_back([=, &fam]() {
                        AffPtr a = fam.members[i], b = fam.members[j];
                        long long N = fam.order(i, j);
                        AffPtr lhs = aff_product(a, b, n, N);
                        std::vector<std::pair<Rational, AffPtr>> terms;
                        for (long long t = 0; n + t < N; ++t) {
                            Rational c = Rational(((n + t) % 2 == 0) ? -1 : 1) / factorial(t);
                            terms.emplace_back(c, iterate(aff_product(b, a, n + t, N), t));
                        }
                        AffPtr rhs = terms.empty() ? zero_series(lhs) : aff_sum(terms);
                        return aff_compare("C3 quasisymmetry", lhs, rhs, lo, hi);
                    });
        break;
    case Axiom::C4:
        tag = "C4";
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                for (size_t l = 0; l < k; ++l)
                    for (long long m = 0; m <= nmax; ++m)
                        for (long long n = 0; n <= nmax; ++n)
                            tasks.push_back([=, &fam]() {
                                AffPtr a = fam.members[i], b = fam.members[j], c = fam.members[l];
                                long long Nab = fam.order(i, j), Nac = fam.order(i, l), Nbc = fam.order(j, l);
                                // a[m](b[n]c) - b[n](a[m]c) = sum_t binom(m, t) (a[t]b)[m+n-t]c
                                AffPtr bc = aff_product(b, c, n, Nbc), ac = aff_product(a, c, m, Nac);
                                AffPtr lhs = aff_sum({{Rational(1), aff_product(a, bc, m, dong(Nab, Nac, Nbc, n))},
                                                      {Rational(-1), aff_product(b, ac, n, dong(Nab, Nbc, Nac, m))}});
                                std::vector<std::pair<Rational, AffPtr>> terms;
                                for (long long t = 0; t <= m && t < Nab; ++t)
                                    terms.emplace_back(gen_binom(Rational(m), t),
                                                       aff_product(aff_product(a, b, t, Nab), c, m + n - t, dong(Nac, Nbc, Nab, t)));
                                AffPtr rhs = terms.empty() ? zero_series(lhs) : aff_sum(terms);
                                return aff_compare("C4 Jacobi", lhs, rhs, lo, hi);
                            });
        break;
    default:
        throw std::invalid_argument("only C2, C3, C4 apply to Lie coefficients");
    }
    return run_slots(tag, std::move(tasks), parallel);
}

CheckReport tau_products(const LiePtr& g, long long lo, long long hi) {
    CheckReport rep;
    rep.name = "tau products";
    size_t d = g->dim();
    AffPtr cc = aff_central(g);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Rational lam = g->degree(i), mu = g->degree(j);
            AffPtr ta = aff_tau(g, i), tb = aff_tau(g, j);
            RVec ab = g->bracket[i][j];
            Rational form = g->form[i][j];
            Rational s = lam + mu;
            Rational nu = s.frac();
            AffPtr tab = aff_tau_vec(g, ab, nu);
            std::string tag = " e" + std::to_string(i) + ",e" + std::to_string(j);
            // general form: z^{lambda+mu} [ab]~ + lambda z^{lambda+mu-1} (a|b) c
            AffPtr gen0 = aff_sum({{Rational(1), aff_zshift(aff_tilde(g, ab), s)},
                                   {lam * form, aff_zshift(cc, s - Rational(1))}});
            AffPtr case0 = s >= Rational(1) ? aff_sum({{Rational(1), aff_zshift(tab, Rational(1))}, {lam * form, cc}})
                                            : aff_sum({{Rational(1), tab}});
            AffPtr p0 = aff_product(ta, tb, 0, 2), p1 = aff_product(ta, tb, 1, 2);
            rep.merge(aff_compare("tau[0]tau" + tag, p0, gen0, lo, hi));
            rep.merge(aff_compare("tau[0]tau cases" + tag, p0, case0, lo, hi));
            AffPtr case1;
            if (lam.is_zero() && mu.is_zero())
                case1 = aff_sum({{form, cc}});
            else if (s == Rational(1))
                case1 = aff_sum({{form, aff_zshift(cc, Rational(1))}});
            else
                case1 = zero_series(cc);
            rep.merge(aff_compare("tau[1]tau" + tag, p1, aff_sum({{form, aff_zshift(cc, s)}}), lo, hi));
            rep.merge(aff_compare("tau[1]tau cases" + tag, p1, case1, lo, hi));
            // products n >= 2 vanish
            rep.merge(aff_compare("tau[2]tau" + tag, aff_product(ta, tb, 2, 2), zero_series(cc), lo, hi));
        }
    return rep;
}

}  // namespace twistlab
