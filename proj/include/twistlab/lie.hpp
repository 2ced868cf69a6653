#pragma once

// Twisted affine Lie algebras L_Gamma over a graded quadratic Lie algebra g
// and series with coefficients in L_Gamma. Only products with n >= 0 are
// defined here; normal ordering needs operator coefficients.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/linalg.hpp"
#include "twistlab/series.hpp"

namespace twistlab {

// Lie algebra with a homogeneous basis, Z/p grading deg(e_i) = q_i / p and an
// invariant symmetric form. bracket[i][j] holds the coordinates of [e_i, e_j].
struct QuadLie {
    std::string name;
    long long p = 1;
    std::vector<long long> q;
    std::vector<std::vector<RVec>> bracket;
    RMat form;

    size_t dim() const { return q.size(); }
    Rational degree(size_t i) const { return Rational(q[i], p); }
    // Empty if antisymmetry, Jacobi, invariance, grading and form
    // compatibility all hold; otherwise the first violation.
    std::string validate() const;
};

// gl_n graded by Ad(diag(omega^{k_1}, ..., omega^{k_n})) with the trace form.
QuadLie gl_inner(size_t n, long long p, const std::vector<long long>& k);
// sl_2 graded by the Chevalley involution (p = 2), trace form.
QuadLie sl2_chevalley();
// Abelian algebra: pairs e, f of degrees q/p and -q/p with (e|f) = 1 for each
// entry of q, plus z0 self-dual degree zero vectors with (x|x) = 1.
QuadLie abelian_graded(long long p, const std::vector<long long>& q, size_t z0);

// Element sum c_{i,n} e_i(n) + c0 c of L_Gamma. Terms with n not congruent to
// deg e_i are zero and never stored.
struct AffElem {
    std::map<std::pair<size_t, Rational>, Rational> terms;
    Rational central;

    bool is_zero() const { return terms.empty() && central.is_zero(); }
    void add(const AffElem& o, const Rational& s = Rational(1));
    void add_term(size_t i, const Rational& n, const Rational& c);
    std::string str() const;
    friend bool operator==(const AffElem& a, const AffElem& b) { return a.terms == b.terms && a.central == b.central; }
};

// [a(m), b(n)] = [a,b](m+n) + delta_{m+n,0} m (a|b) c, extended bilinearly.
AffElem aff_bracket(const QuadLie& g, const AffElem& x, const AffElem& y);

class AffSeries;
using AffPtr = std::shared_ptr<const AffSeries>;
using LiePtr = std::shared_ptr<const QuadLie>;

// Series sum_m x(m) z^{-m-1} with x(m) in L_Gamma, m rational.
class AffSeries {
public:
    explicit AffSeries(LiePtr g) : g_(std::move(g)) {}
    virtual ~AffSeries() = default;
    virtual AffElem coeff(const Rational& m) const = 0;
    // Mode residues in [0, 1) that can carry nonzero coefficients.
    virtual std::vector<Rational> residues() const = 0;
    virtual std::string name() const = 0;
    const QuadLie& lie() const { return *g_; }
    const LiePtr& lie_ptr() const { return g_; }

protected:
    LiePtr g_;
};

// a~ for a vector a of g (any grading); the central series c z^0.
AffPtr aff_tilde(LiePtr g, const RVec& a);
AffPtr aff_central(LiePtr g);
// tau_a = z^lambda a~ for homogeneous basis vector e_i of degree lambda in [0, 1).
AffPtr aff_tau(LiePtr g, size_t i);
// tau for a homogeneous vector a of degree lambda.
AffPtr aff_tau_vec(LiePtr g, const RVec& a, const Rational& lambda);
AffPtr aff_sum(std::vector<std::pair<Rational, AffPtr>> terms);
AffPtr aff_zshift(AffPtr a, const Rational& k);
AffPtr aff_derive(AffPtr a);
// a [n] b for a pair local of order at most N; throws std::invalid_argument
// for n < 0.
AffPtr aff_product(AffPtr a, AffPtr b, long long n, long long N);

// Comparison of coefficients for modes in [lo, hi] on every residue class.
CheckReport aff_compare(const std::string& name, const AffPtr& lhs, const AffPtr& rhs, long long lo, long long hi);
bool aff_locality(const AffSeries& a, const AffSeries& b, long long N, long long lo, long long hi);
// sum_s binom(m, s) (a[s]b)(m+n-s) against [a(m), b(n)] on the mode range.
CheckReport aff_lie_from_products(const AffPtr& a, const AffPtr& b, long long N, long long lo, long long hi);

// Family tau_{e_i} for every basis vector plus c, with locality orders 2
// between taus and 0 with c.
struct AffFamily {
    LiePtr g;
    std::vector<AffPtr> members;
    std::vector<bool> central;
    long long order(size_t i, size_t j) const { return (central[i] || central[j]) ? 0 : 2; }
};
AffFamily tau_family(LiePtr g);

// C2, C3, C4 on all pairs / triples of the family with 0 <= n, m <= nmax.
CheckReport aff_axioms(const AffFamily& fam, Axiom which, long long nmax, long long lo, long long hi,
                       bool parallel = true);
// The two displayed tau product formulas on all basis pairs.
CheckReport tau_products(const LiePtr& g, long long lo, long long hi);

}  // namespace twistlab
