#pragma once

// Identities of twisted vertex operators on a Fock module: the five items of
// the vertex operator proposition, Virasoro relations, lattice products and
// the recovery of e(alpha) from X_alpha.

#include <vector>

#include "twistlab/series.hpp"

namespace twistlab {

// [h(n), X_a(m)] = (a|h) X_a(m+n) for every graded basis vector h.
CheckReport vo_commutator(const FockPtr& M, const IVec& a, const SlotWindow& w);
// h~ [0] X_a = (a|h) X_a and h~ [n] X_a = 0 for n = 1, 2.
CheckReport vo_heisenberg_products(const FockPtr& M, const IVec& a, const SlotWindow& w);
// D X_a = a~ [-1] X_a.
CheckReport vo_derivative(const FockPtr& M, const IVec& a, const SlotWindow& w);
// upsilon [0] X_a = D X_a and upsilon [1] X_a = (a|a)/2 X_a.
CheckReport vo_virasoro(const FockPtr& M, const IVec& a, const SlotWindow& w);
// X_a(w) X_b(z) against eps(a,b) X_{a,b}(w,z) times the expansion of
// prod_s (w^{1/p} - omega^s z^{1/p})^{(sigma^{-s} a|b)} in powers of z/w,
// coefficient by coefficient in w^{1/p} and z^{1/p}.
CheckReport vo_two_point(const FockPtr& M, const IVec& a, const IVec& b, const SlotWindow& w);

struct VOSuite {
    CheckReport a, b, c, d, e;
    bool ok() const { return a.ok() && b.ok() && c.ok() && d.ok() && e.ok(); }
    bool tested() const { return a.tested() && b.tested() && c.tested() && d.tested() && e.tested(); }
    std::vector<const CheckReport*> items() const { return {&a, &b, &c, &d, &e}; }
};
// All five items over the given lattice vectors (pairs for the last item).
VOSuite vo_suite(const FockPtr& M, const std::vector<IVec>& vectors, const SlotWindow& w, bool parallel = true);

// sum_j lambda_j (1 - lambda_j) / 4 over the graded basis, lambda_j = q_j / p.
Rational vacuum_energy(const FockModule& M);
// upsilon with upsilon(1) shifted by the vacuum energy; this is the series
// that closes under the Virasoro products on a twisted module.
OpPtr virasoro_field(const FockPtr& M);

// For virasoro_field: upsilon [0] upsilon = D upsilon, upsilon [1] upsilon = 2 upsilon,
// upsilon [2] upsilon = 0, upsilon [3] upsilon = (rank/2) 1, plus the item (d)
// relations for the given vectors and weight(X_a) = 0 against D = upsilon(0).
CheckReport virasoro_element_checks(const FockPtr& M, const std::vector<IVec>& vectors, const SlotWindow& w);

// Locality order of X_a, X_b: order N passes, N - 1 fails (when N > 0).
CheckReport locality_order_check(const FockPtr& M, const IVec& a, const IVec& b, const SlotWindow& w);

// Right-hand sides of the lattice product formula for X_a [n] X_b with
// n = -(a|b) - k - 1: Schur polynomial form sum_r prod_j (1/r_j!) (a~[-j]/j)^{r_j},
// and the divided power form (1/k!) (D - b~[-1])^k applied to X_{a+b}.
OpPtr lattice_product_schur(const FockPtr& M, const IVec& a, const IVec& b, long long k);
OpPtr lattice_product_divided(const FockPtr& M, const IVec& a, const IVec& b, long long k);
// The literal partition form with factors (a(-j)/j!)^{r_j}.
OpPtr lattice_product_literal(const FockPtr& M, const IVec& a, const IVec& b, long long k);

// X_a [n] X_b on the window: for n >= -(a|b) it must vanish, otherwise it
// must equal both right-hand sides above. The left side uses the given path.
CheckReport product_check(const FockPtr& M, const IVec& a, const IVec& b, long long n, const SlotWindow& w,
                          ProductPath path = ProductPath::LProd);

// E_-(-a,z) X_a(z) E_+(-a,z) z^{-a(0)} z^{(a'|a')/2} must have only the
// constant coefficient, equal to e(a). Also checks the group law and the
// commutator map of e on the window vectors.
CheckReport reconstruct_e(const FockPtr& M, const IVec& a, const IVec& b, const SlotWindow& w);

// Weight of X_a against D = upsilon(0), shifted by k for z^k X_a.
bool vertex_weight(const FockPtr& M, const IVec& a, const Rational& k, const SlotWindow& w, Rational& lambda,
                   bool* untestable = nullptr);

}  // namespace twistlab
