#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "twistlab/fock.hpp"
#include "twistlab/kernel.hpp"

namespace twistlab {

// Outcome of an exact identity check over coefficient slots. A slot whose
// evaluation touched the truncation is untestable, never passed.
struct CheckReport {
    std::string name;
    long long passed = 0;
    long long failed = 0;
    long long untestable = 0;
    std::vector<std::string> failures;

    bool ok() const { return failed == 0; }
    bool tested() const { return passed > 0; }
    void merge(const CheckReport& o);
    void record(const FockVector& lhs, const FockVector& rhs, const std::string& slot);
    void record(bool equal, bool untestable_slot, const std::string& slot);
    std::string summary() const;
};

class OpSeries;
using OpPtr = std::shared_ptr<const OpSeries>;

// Series sum_m phi(m) z^{-m-1} whose coefficients are operators on a Fock
// module. Modes are rational; phi(m) v is computed exactly on demand.
class OpSeries {
public:
    explicit OpSeries(FockPtr module) : M_(std::move(module)) {}
    virtual ~OpSeries() = default;

    virtual FockVector coeff(const Rational& m, const FockVector& v) const = 0;
    // Conformal weight: phi(m) lowers the upsilon(1)-degree by m + 1 - weight.
    virtual Rational weight() const = 0;
    virtual IVec degree() const = 0;  // lattice degree
    virtual std::string name() const = 0;

    // Upper bound for modes with phi(m) v != 0.
    virtual Rational max_mode(const FockVector& v) const;
    // Residues mod Z (in [0, 1)) of all modes that can act nontrivially.
    virtual std::vector<Rational> residues() const;
    bool mode_allowed(const Rational& m) const;

    int parity() const;
    const FockModule& module() const { return *M_; }
    FockPtr module_ptr() const { return M_; }

protected:
    FockPtr M_;
};

OpPtr identity_series(FockPtr M);
OpPtr heis_series(FockPtr M, const CycVec& h);
OpPtr vertex_series(FockPtr M, const IVec& a);
OpPtr virasoro_series(FockPtr M);
OpPtr sum_series(std::vector<std::pair<CycScalar, OpPtr>> terms);
OpPtr zshift(OpPtr a, const Rational& k);  // z^k a
OpPtr derive(OpPtr a);

enum class ProductPath { LambdaProd, LProd };
// n-th product for a pair local of order N.
OpPtr nth_product(OpPtr a, OpPtr b, long long n, long long N, ProductPath path = ProductPath::LambdaProd);

// Coefficient of the product computed directly by either path.
FockVector product_coeff(const OpSeries& a, const OpSeries& b, long long n, long long N, ProductPath path,
                         const Rational& m, const FockVector& v);

// Super-bracket [a(m), b(n)] applied to v.
FockVector bracket_apply(const OpSeries& a, const Rational& m, const OpSeries& b, const Rational& n, const FockVector& v);

// Test vectors and modes: every monomial of degree <= vec_degree on the given
// labels, and for each the modes max_mode, max_mode - 1/p, ... (depth steps).
struct SlotWindow {
    std::vector<OmegaLabel> labels;
    Rational vec_degree{1};
    long long depth = 2;  // in units of 1
};
std::vector<FockVector> window_vectors(const FockModule& M, const SlotWindow& w);
std::vector<Rational> window_modes(const OpSeries& a, const FockVector& v, long long depth);

// lhs - rhs vanishes on every slot of the window.
CheckReport compare_series(const std::string& name, OpPtr lhs, OpPtr rhs, const SlotWindow& w);

bool locality_test(const OpSeries& a, const OpSeries& b, long long N, const SlotWindow& w, CheckReport* rep = nullptr);

// sum_s binom(m, s) (a[s]b)(m+n-s) against [a(m), b(n)].
CheckReport lie_from_products(OpPtr a, OpPtr b, long long N, const SlotWindow& w);

// lambda with (d/dz) phi - [D, phi] = lambda z^{-1} phi on the window, where D
// is the supplied module operator; returns false if not homogeneous.
bool weight_of(const OpSeries& phi, const std::function<FockVector(const FockVector&)>& D, const SlotWindow& w,
               Rational& lambda, bool* untestable = nullptr);

// Axiom instances on the Fock realization.
enum class Axiom { C2, C3, C4, V2, V3, V4 };
struct LocalFamily {
    std::vector<OpPtr> members;
    std::function<long long(size_t, size_t)> order;  // locality order of members i, j
};
CheckReport verify_axioms(const LocalFamily& fam, Axiom which, const SlotWindow& w, long long nmin = -1,
                          long long nmax = 1);

// Runs the slot tasks either serially or with OpenMP, merging in task order.
CheckReport run_slots(const std::string& name, std::vector<std::function<CheckReport()>> tasks, bool parallel);
bool parallel_default();
void set_parallel_default(bool on);

}  // namespace twistlab
