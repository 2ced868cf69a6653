// Acceptance run: one PASS/FAIL line per criterion. All identities are exact
// (zero tolerance); the numeric thresholds below are the required sample sizes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pairs.hpp"
#include "twistlab/classify.hpp"
#include "twistlab/kernel.hpp"
#include "twistlab/lie.hpp"
#include "twistlab/oracle.hpp"
#include "twistlab/vertex.hpp"

using namespace twistlab;

namespace {

constexpr long long kKernelMaxP = 5;
constexpr long long kKernelMaxM = 6;
constexpr long long kPairsPerP = 50;
constexpr long long kPathMaxP = 4;
constexpr int kQuadSpaces = 4;  // at least 3
constexpr long long kVoTrunc = 6;
constexpr long long kLatticeTrunc = 4;
constexpr int kKappaPairs = 200;
constexpr size_t kKappaMaxRank = 4;
constexpr long long kKappaMaxP = 6;
constexpr int kDualLattices = 5;
constexpr size_t kDualMaxRank = 3;
constexpr long long kRoundTripTrunc = 4;
constexpr long long kHeisenMaxDegree = 5;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::shared_ptr<const TwistData> twist_of(IMat g, IMat s) { return ex::twist(ex::lattice(std::move(g), std::move(s))); }

IMat minus_one(size_t n) {
    IMat s(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i) s[i][i] = -1;
    return s;
}

std::vector<IVec> generators(size_t l) {
    std::vector<IVec> out;
    for (size_t i = 0; i < l; ++i) {
        IVec e(l, 0);
        e[i] = 1;
        out.push_back(e);
        e[i] = -1;
        out.push_back(e);
    }
    return out;
}

std::string mat_str(const IMat& m) {
    std::ostringstream s;
    s << "[";
    for (size_t i = 0; i < m.size(); ++i) {
        s << (i ? ", [" : "[");
        for (size_t j = 0; j < m[i].size(); ++j) s << (j ? ", " : "") << m[i][j];
        s << "]";
    }
    s << "]";
    return s.str();
}

CycScalar sign_pow(long long e) { return CycScalar(e % 2 == 0 ? 1 : -1); }

SlotWindow depth_one() {
    SlotWindow w;
    w.depth = 1;
    return w;
}

// 1. F_p(m) on the diagonal u = v.
Outcome kernel_identity() {
    Outcome o;
    long long n = 0;
    for (long long p = 1; p <= kKernelMaxP; ++p)
        for (long long m = 0; m <= kKernelMaxM; ++m) {
            auto d = kernel_F(p, m).restrict_diagonal();
            bool ok = d.size() == 1 && d.begin()->first == (m + 1) * (1 - p) && d.begin()->second == Rational(p).pow(-m);
            if (!ok && o.pass) o.detail = "mismatch at p = " + std::to_string(p) + ", m = " + std::to_string(m);
            o.pass = o.pass && ok;
            ++n;
        }
    if (o.pass) o.detail = std::to_string(n) + " (p, m) instances";
    return o;
}

// 2. lambda-product path, l-product path and residue oracle.
Outcome product_paths() {
    Outcome o;
    std::mt19937 rng(202);
    SlotWindow w = depth_one();
    std::ostringstream d;
    for (long long p = 1; p <= kPathMaxP; ++p) {
        // pairs whose slots all exceed the truncation are drawn again
        long long good = 0, skipped = 0, slots = 0;
        FockPtr M;
        for (long long k = 0; good < kPairsPerP && k < 20 * kPairsPerP; ++k) {
            if (k % 10 == 0) M = gen::free_module(gen::lattice_of_order(rng, p, 2), Rational(3));
            auto pr = gen::random_pair(rng, M);
            bool ok = true, tested = false;
            for (long long n = pr.order - 2; n < pr.order; ++n) {
                OpPtr x = nth_product(pr.a, pr.b, n, pr.order, ProductPath::LambdaProd);
                OpPtr y = nth_product(pr.a, pr.b, n, pr.order, ProductPath::LProd);
                OpPtr z = oracle_product(pr.a, pr.b, n, pr.order);
                CheckReport r1 = compare_series("lambda vs l", x, y, w);
                CheckReport r2 = compare_series("lambda vs oracle", x, z, w);
                ok = ok && r1.ok() && r2.ok();
                tested = tested || (r1.tested() && r2.tested());
                slots += r1.passed + r2.passed;
            }
            if (!ok && o.pass) o.detail = "p = " + std::to_string(p) + " pair " + std::to_string(k) + " disagrees; ";
            o.pass = o.pass && ok;
            if (ok && tested) ++good;
            if (!tested) ++skipped;
        }
        o.pass = o.pass && good >= kPairsPerP;
        d << "p=" << p << ": " << good << " pairs (" << slots << " slots, " << skipped << " untestable draws) ";
    }
    o.detail += d.str();
    return o;
}

// 3. C2, C3, C4 and the displayed tau products.
Outcome conformal_axioms() {
    Outcome o;
    std::vector<LiePtr> spaces = {
        std::make_shared<QuadLie>(gl_inner(2, 3, {0, 1})),
        std::make_shared<QuadLie>(abelian_graded(4, {1, 3}, 1)),
        std::make_shared<QuadLie>(sl2_chevalley()),
    };
    std::mt19937 rng(303);
    while (static_cast<int>(spaces.size()) < kQuadSpaces) {
        long long p = 2 + static_cast<long long>(rng() % 3);
        std::vector<long long> k(3);
        for (auto& x : k) x = static_cast<long long>(rng() % p);
        spaces.push_back(std::make_shared<QuadLie>(gl_inner(3, p, k)));
    }
    long long passed = 0;
    for (const auto& g : spaces) {
        AffFamily fam = tau_family(g);
        for (Axiom ax : {Axiom::C2, Axiom::C3, Axiom::C4}) {
            CheckReport r = aff_axioms(fam, ax, ax == Axiom::C4 ? 1 : 2, -2, 2);
            if (!(r.ok() && r.tested()) && o.pass) o.detail = g->name + ": " + r.summary() + "; ";
            o.pass = o.pass && r.ok() && r.tested();
            passed += r.passed;
        }
        CheckReport t = tau_products(g, -3, 3);
        if (!(t.ok() && t.tested()) && o.pass) o.detail = g->name + ": " + t.summary() + "; ";
        o.pass = o.pass && t.ok() && t.tested();
        passed += t.passed;
    }
    o.detail += std::to_string(spaces.size()) + " spaces, " + std::to_string(passed) + " coefficient checks";
    return o;
}

// 4. The five vertex operator identities on the example lattices.
Outcome vo_examples() {
    Outcome o;
    SlotWindow w = depth_one();
    long long passed = 0;
    for (auto L : {ex::ex0(), ex::ex1(), ex::ex2()}) {
        auto M = gen::free_module(L, Rational(kVoTrunc));
        VOSuite s = vo_suite(M, {{1, 0}, {0, -1}, {1, 1}}, w);
        for (const CheckReport* r : s.items()) {
            if (!(r->ok() && r->tested()) && o.pass) o.detail = r->summary() + "; ";
            passed += r->passed;
        }
        o.pass = o.pass && s.ok() && s.tested();
    }
    o.detail += "T = " + std::to_string(kVoTrunc) + ", " + std::to_string(passed) + " slots";
    return o;
}

// 5. Locality order, vanishing and lattice products against the oracle.
Outcome lattice_products() {
    Outcome o;
    SlotWindow w = depth_one();
    long long pairs = 0, passed = 0;
    auto note = [&](const CheckReport& r) {
        if (!r.ok() && o.pass) o.detail = r.summary() + "; ";
        o.pass = o.pass && r.ok();
        passed += r.passed;
    };
    for (auto L : {ex::ex0(), ex::ex1(), ex::ex2()}) {
        auto M = gen::free_module(L, Rational(kLatticeTrunc));
        auto gens = generators(L->rank());
        for (const auto& a : gens)
            for (const auto& b : gens) {
                ++pairs;
                note(locality_order_check(M, a, b, w));
                long long ab = L->pair(a, b), N = M->twist().locality_order(a, b);
                for (long long n = -ab - 2; n <= -ab; ++n) note(product_check(M, a, b, n, w));
                OpPtr xa = vertex_series(M, a), xb = vertex_series(M, b);
                for (long long n = -ab - 2; n < N; ++n) {
                    OpPtr orc = oracle_product(xa, xb, n, N);
                    if (n >= -ab) {
                        note(compare_series("oracle vanishing", orc, sum_series({{CycScalar(0), orc}}), w));
                    } else {
                        long long k = -ab - n - 1;
                        note(compare_series("oracle vs Schur form", orc, lattice_product_schur(M, a, b, k), w));
                        note(compare_series("oracle vs divided powers", orc, lattice_product_divided(M, a, b, k), w));
                    }
                }
            }
    }
    o.detail += std::to_string(pairs) + " generator pairs, " + std::to_string(passed) + " slots";
    return o;
}

// 6. kappa(a,b) / kappa(b,a).
Outcome kappa_commutator() {
    Outcome o;
    std::mt19937 rng(606);
    long long max_p = 0;
    size_t max_rank = 0;
    int done = 0;
    for (; done < kKappaPairs; ++done) {
        auto L = std::make_shared<const TwistedLattice>(gen::random_lattice(rng, kKappaMaxRank, kKappaMaxP));
        TwistData T(L);
        IVec a = gen::random_vector(rng, L->rank()), b = gen::random_vector(rng, L->rank());
        long long e = L->pair(a, a) * L->pair(b, b) + L->pair(a, b);
        bool ok = T.kappa(a, b) / T.kappa(b, a) == sign_pow(e);
        if (!ok && o.pass) o.detail = "failure at pair " + std::to_string(done) + "; ";
        o.pass = o.pass && ok;
        max_p = std::max(max_p, L->order());
        max_rank = std::max(max_rank, L->rank());
    }
    o.detail += std::to_string(done) + " pairs, rank <= " + std::to_string(max_rank) + ", p <= " + std::to_string(max_p);
    return o;
}

// 7. sigma = id against the coset-count oracle.
Outcome identity_count() {
    Outcome o;
    std::mt19937 rng(707);
    std::ostringstream d;
    for (int t = 0; t < kDualLattices; ++t) {
        // only the order 1 block is allowed, so S = 1
        TwistedLattice L = gen::random_lattice(rng, kDualMaxRank, 1, true);
        auto T = ex::twist(std::make_shared<const TwistedLattice>(L));
        Classification c = enumerate_simple_twisted(T);
        long long want = oracle_dual_index(L.gram());
        bool ok = !c.obstructed && static_cast<long long>(c.classes.size()) == want;
        o.pass = o.pass && ok;
        d << "rank " << L.rank() << ": " << c.classes.size() << " vs " << want << (ok ? "" : " MISMATCH") << "; ";
    }
    o.detail = d.str();
    return o;
}

// 8. sigma = -1: dim A and certified decomposition for both sign patterns.
Outcome minus_one_algebra() {
    Outcome o;
    std::vector<IMat> grams = {{{2}}, {{2, -1}, {-1, 2}}, {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}};
    std::ostringstream d;
    for (const IMat& g : grams) {
        size_t l = g.size();
        auto T = twist_of(g, minus_one(l));
        Classification c = enumerate_simple_twisted(T);
        for (int sign : {1, -1}) {
            const MuRow* row = nullptr;
            for (const auto& r : c.rows) {
                bool all = true;
                for (const auto& m : r.mu) all = all && m == CycScalar(sign);
                if (all) row = &r;
            }
            bool ok = row && !row->A.zero && row->A.dim == (1LL << l) && row->D.certified &&
                      row->D.blocks.size() * row->D.block_dim == static_cast<size_t>(row->A.dim);
            o.pass = o.pass && ok;
            d << "l=" << l << " mu=" << (sign > 0 ? "+" : "-") << ": ";
            if (row)
                d << "dim " << row->A.dim << ", " << row->D.blocks.size() << "x" << row->D.block_dim
                  << (row->D.certified ? " certified" : " NOT certified");
            else
                d << "row missing";
            d << "; ";
        }
    }
    o.detail = d.str();
    return o;
}

// 9. Rotation: two classes for each norm and each phi.
Outcome rotation_classes() {
    Outcome o;
    std::ostringstream d;
    for (long long n : {2LL, 4LL}) {
        TwistData base(ex::ex2(n));
        std::vector<Phase> flipped = base.phi_basis();
        for (auto& f : flipped) f *= Phase::sign(1);
        std::vector<Phase> mixed = base.phi_basis();
        mixed[0] *= Phase::sign(1);
        int choice = 0;
        for (const auto& T : {std::make_shared<const TwistData>(base), std::make_shared<const TwistData>(base.with_phi(flipped)),
                              std::make_shared<const TwistData>(base.with_phi(mixed))}) {
            Classification c = enumerate_simple_twisted(T);
            o.pass = o.pass && c.classes.size() == 2;
            d << "n=" << n << " phi#" << choice++ << ": " << c.classes.size() << "; ";
        }
    }
    o.detail = d.str();
    return o;
}

// 10. An obstructed instance found by brute force.
Outcome obstructed_instance() {
    Outcome o;
    OracleObstructed f = oracle_find_obstructed(2);
    if (!f.found) return {false, "oracle found no instance"};
    auto T = twist_of(f.gram, f.sigma);
    Classification c = enumerate_simple_twisted(T);
    bool witness = c.obstructed &&
                   !T->commutator_map(c.witness.alpha, T->lattice().act(c.witness.alpha, c.witness.j)).is_one();
    size_t l = f.gram.size();
    auto M = std::make_shared<const FockModule>(T, std::make_shared<const FreeOmega>(T, RVec(l, Rational(0))), Rational(1));
    ConditionReport r = twisted_conditions(*M);
    o.pass = c.classes.empty() && witness && !r.ok();
    std::ostringstream d;
    d << "G = " << mat_str(f.gram) << ", S = " << mat_str(f.sigma) << ": " << c.classes.size() << " classes, witness "
      << (witness ? "valid" : "INVALID") << ", Fock build " << (r.ok() ? "PASSES conditions" : "fails conditions");
    o.detail = d.str();
    return o;
}

std::vector<std::shared_ptr<const TwistData>> example_twists() {
    return {ex::twist(ex::ex0()), ex::twist(ex::ex1()), ex::twist(ex::ex2(2)), ex::twist(ex::ex2(4)), ex::twist(ex::ex2(1)),
            twist_of({{2, 0}, {0, 2}}, {{0, 1}, {1, 0}})};
}

// 11. Every enumerated class satisfies (i), (ii) and the VO suite.
Outcome round_trip() {
    Outcome o;
    SlotWindow w = depth_one();
    long long classes = 0, slots = 0;
    for (const auto& T : example_twists()) {
        Classification c = enumerate_simple_twisted(T);
        if (c.classes.empty()) {
            o.pass = false;
            o.detail += "no classes for a non-obstructed example; ";
        }
        for (const auto& s : c.classes) {
            ++classes;
            auto M = instantiate(c, s, Rational(kRoundTripTrunc));
            ConditionReport r = twisted_conditions(*M);
            VOSuite v = vo_suite(M, {{1, 0}, {0, 1}, {1, -1}}, w);
            for (const CheckReport* x : v.items()) slots += x->passed;
            bool ok = r.ok() && v.ok() && v.tested();
            if (!ok && o.pass) o.detail += "class " + std::to_string(classes) + " fails; ";
            o.pass = o.pass && ok;
        }
    }
    o.detail += std::to_string(classes) + " classes at T = " + std::to_string(kRoundTripTrunc) + ", " +
                std::to_string(slots) + " slots";
    return o;
}

// 12. upsilon(1) on M(1) monomials.
Outcome heisenberg_degree() {
    Outcome o;
    std::vector<FockPtr> modules;
    for (auto L : {ex::ex0(), ex::ex1(), ex::ex2()}) modules.push_back(gen::free_module(L, Rational(kHeisenMaxDegree)));
    for (const auto& T : example_twists()) {
        Classification c = enumerate_simple_twisted(T);
        for (const auto& s : c.classes) modules.push_back(instantiate(c, s, Rational(kHeisenMaxDegree)));
    }
    long long monos = 0;
    for (const auto& M : modules)
        for (const OmegaLabel& seed : M->omega().seeds())
            for (const Mono& m : M->monomials(seed, Rational(kHeisenMaxDegree))) {
                Rational want = M->degree(m) + M->omega_degree(M->weight(m));
                bool ok = M->virasoro_one(m) == CycScalar(want);
                if (!ok && o.pass) o.detail = "eigenvalue mismatch; ";
                o.pass = o.pass && ok;
                ++monos;
            }
    o.detail += std::to_string(modules.size()) + " modules, " + std::to_string(monos) + " monomials";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {"kernel identity F_p(m) on the diagonal", kernel_identity},
        {"product paths vs residue oracle", product_paths},
        {"conformal axioms C2-C4 and tau products", conformal_axioms},
        {"vertex operator suite on examples 0-2", vo_examples},
        {"lattice locality, vanishing and products", lattice_products},
        {"kappa commutator", kappa_commutator},
        {"sigma = id count vs dual index", identity_count},
        {"sigma = -1 algebra dimension and blocks", minus_one_algebra},
        {"rotation: two classes per extension", rotation_classes},
        {"obstructed instance has no modules", obstructed_instance},
        {"enumerated classes round trip", round_trip},
        {"upsilon(1) grades M(1) by degree", heisenberg_degree},
    };
    int failed = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2zu %s [%.1fs] %s\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, s, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
