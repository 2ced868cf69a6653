#include "doctest.h"

#include <random>
#include <set>

#include "gen.hpp"
#include "lattices.hpp"
#include "twistlab/classify.hpp"
#include "twistlab/oracle.hpp"
#include "twistlab/vertex.hpp"

using namespace twistlab;

namespace {

std::shared_ptr<const TwistData> twist_of(IMat g, IMat s) { return ex::twist(ex::lattice(std::move(g), std::move(s))); }

IMat minus_one(size_t n) {
    IMat s(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i) s[i][i] = -1;
    return s;
}

const IMat kD4 = {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};

// Blocks of B_0 for sigma = -1, where E = Lambda / 2 Lambda, from the oracle's
// multiplication table.
OracleBlocks oracle_minus_one(const TwistData& T) {
    size_t l = T.lattice().rank();
    CycMat beta(l, CycVec(l));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) beta[i][j] = T.commutator_map(T.lattice().basis(i), T.lattice().basis(j));
    return oracle_bicharacter_blocks(std::vector<long long>(l, 2), beta);
}

size_t surviving_rows(const Classification& c) {
    size_t n = 0;
    for (const auto& r : c.rows) n += r.weights_ok;
    return n;
}

}  // namespace

TEST_CASE("extension of sigma: eigenvectors Y_j and order p") {
    for (auto L : {ex::ex0(), ex::ex1(), ex::ex2(2), ex::ex2(1)}) {
        auto T = ex::twist(L);
        Extension e = extend_automorphism(*T);
        CHECK(e.eigen_ok);
        CHECK(e.order_p == T->default_phi_order_p());
        for (const auto& o : e.orbits) {
            CHECK(o.roots.size() == static_cast<size_t>(o.orbit.length));
            for (const auto& mu : o.roots) CHECK(mu.pow(o.orbit.length) == o.product);
        }
    }
    std::mt19937 rng(101);
    for (int t = 0; t < 12; ++t) {
        auto T = std::make_shared<const TwistData>(std::make_shared<const TwistedLattice>(gen::random_lattice(rng, 3, 6, true)));
        CHECK(extend_automorphism(*T).eigen_ok);
    }
}

TEST_CASE("identity automorphism: classes are the dual quotient") {
    for (IMat g : {IMat{{2, -1}, {-1, 2}}, IMat{{2}}, IMat{{4, 1}, {1, 2}}, kD4}) {
        auto T = twist_of(g, identity_matrix(g.size()));
        Classification c = enumerate_simple_twisted(T);
        CHECK_FALSE(c.obstructed);
        CHECK(c.classes.size() == static_cast<size_t>(oracle_dual_index(g)));
        CHECK(c.eta_index == oracle_dual_index(g));
        CHECK(c.dual_eta_index == c.eta_index);
    }
}

TEST_CASE("A2 with sigma = -1: A has dimension 4 for every mu, one block") {
    auto T = ex::twist(ex::ex1());
    Classification c = enumerate_simple_twisted(T);
    REQUIRE(c.rows.size() == 4);
    OracleBlocks ob = oracle_minus_one(*T);
    for (const auto& r : c.rows) {
        CHECK_FALSE(r.A.zero);
        CHECK(r.A.dim == 4);
        CHECK(r.D.certified);
        CHECK(r.D.blocks.size() == ob.count);
        for (size_t d : ob.dims) CHECK(d == r.D.block_dim);
        CHECK(r.D.module_dim == 2);
        // degree zero generators: (n_j x_j)^2 = 1 and c_ij^p = 1
        for (size_t j = 0; j < r.A.gens.size(); ++j) {
            CHECK((r.A.normalizer[j].pow(r.A.length[j]) * r.A.theta[j]).is_one());
            for (size_t i = 0; i < r.A.gens.size(); ++i) CHECK(r.A.c[i][j].pow(c.p).is_one());
        }
    }
    CHECK(c.classes.size() == 1);
    CHECK(c.classes[0].omega_dim == 2);
}

TEST_CASE("sigma = -1 on A1 and D4 against the oracle block count") {
    for (IMat g : {IMat{{2}}, kD4, IMat{{2, 1}, {1, 2}}, IMat{{4, 1}, {1, 4}}}) {
        auto T = twist_of(g, minus_one(g.size()));
        Classification c = enumerate_simple_twisted(T);
        REQUIRE_FALSE(c.obstructed);
        OracleBlocks ob = oracle_minus_one(*T);
        size_t total = 0;
        for (const auto& r : c.rows) {
            CHECK(r.A.dim == (1LL << g.size()));
            REQUIRE(r.D.certified);
            CHECK(r.D.blocks.size() == ob.count);
            for (size_t d : ob.dims) CHECK(d == r.D.block_dim);
            total += r.classes;
        }
        CHECK(total == c.classes.size());
        CHECK(c.classes.size() == ob.count * surviving_rows(c));
    }
    // D4: four classes, each with a two dimensional Omega
    Classification d4 = enumerate_simple_twisted(twist_of(kD4, minus_one(4)));
    CHECK(d4.classes.size() == 4);
    for (const auto& s : d4.classes) CHECK(s.omega_dim == 2);
}

TEST_CASE("rotation of order 4: x_alpha^2 and the surviving mu") {
    for (long long n : {2LL, 4LL}) {
        auto T = ex::twist(ex::ex2(n));
        Classification c = enumerate_simple_twisted(T);
        CHECK(c.p == 4);
        REQUIRE(c.orbits.orbits.size() == 1);
        CHECK(c.orbits.orbits[0].length == 4);
        CHECK(c.classes.size() == 2);
        for (const auto& s : c.classes) CHECK(s.mu[0] == CycScalar(1));
        IVec a = {1, 0};
        IVec sa = T->lattice().act(a);
        for (const auto& r : c.rows) {
            if (r.A.zero) continue;
            CHECK(r.A.dim == 2);
            // e(a)^2 = eps(a,a)^{-1} phi(a) phi(sigma a) mu^{-2}
            const auto& A = *r.A.model;
            Phase sq = T->eps_phase(a, a) * A.reduce(vec_scale(a, 2));
            CycScalar want = T->eps(a, a).inv() * T->phi(a) * T->phi(sa) * r.mu[0].pow(-2);
            CHECK(sq.scalar() == want);
            // with the default seeds eps(a,a) = 1 and mu^2 = 1, this is x^2 = mu^2 phi_1 phi_2
            CHECK(sq.scalar() == r.mu[0].pow(2) * T->phi(a) * T->phi(sa));
            CHECK(r.D.blocks.size() == 2);
        }
        // mu^2 is fixed by e(a) e(-a) = e(sigma a) e(-sigma a) up to scalars; only two rows survive
        size_t nonzero = 0;
        for (const auto& r : c.rows) nonzero += !r.A.zero;
        CHECK(nonzero == 2);
    }
    // norm 1: mu = -1 is the surviving root
    Classification c1 = enumerate_simple_twisted(ex::twist(ex::ex2(1)));
    CHECK(c1.classes.size() == 2);
    for (const auto& s : c1.classes) CHECK(s.mu[0] == CycScalar(-1));
}

TEST_CASE("the class count does not depend on the choice of phi") {
    for (long long n : {2LL, 4LL}) {
        auto L = ex::ex2(n);
        TwistData base(L);
        std::vector<Phase> flipped = base.phi_basis();
        for (auto& f : flipped) f *= Phase::sign(1);
        auto T1 = std::make_shared<const TwistData>(base);
        auto T2 = std::make_shared<const TwistData>(base.with_phi(flipped));
        Classification c1 = enumerate_simple_twisted(T1), c2 = enumerate_simple_twisted(T2);
        CHECK(c1.classes.size() == 2);
        CHECK(c2.classes.size() == 2);
        for (const auto& s : c2.classes) {
            auto M = instantiate(c2, s, Rational(2));
            CHECK(twisted_conditions(*M).ok());
        }
    }
}

TEST_CASE("obstructed automorphism: no twisted modules") {
    auto T = twist_of({{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
    Classification c = enumerate_simple_twisted(T);
    CHECK(c.obstructed);
    CHECK(c.classes.empty());
    CHECK_FALSE(T->commutator_map(c.witness.alpha, T->lattice().act(c.witness.alpha, c.witness.j)).is_one());
    auto M = std::make_shared<const FockModule>(T, std::make_shared<const FreeOmega>(T, RVec(2, Rational(0))), Rational(1));
    ConditionReport r = twisted_conditions(*M);
    CHECK_FALSE(r.cond_i);

    OracleObstructed o = oracle_find_obstructed(2);
    REQUIRE(o.found);
    auto To = twist_of(o.gram, o.sigma);
    Classification co = enumerate_simple_twisted(To);
    CHECK(co.obstructed);
    CHECK(co.classes.empty());
    CHECK_FALSE(To->commutator_map(o.alpha, To->lattice().act(o.alpha, o.j)).is_one());
}

TEST_CASE("free Omega is not a twisted module when sigma moves the lattice") {
    for (auto L : {ex::ex1(), ex::ex2()}) {
        auto T = ex::twist(L);
        auto M = std::make_shared<const FockModule>(T, std::make_shared<const FreeOmega>(T, RVec(2, Rational(0))), Rational(1));
        ConditionReport r = twisted_conditions(*M);
        CHECK_FALSE(r.cond_i);
        CHECK_FALSE(r.witnesses.empty());
    }
    // sigma = 1: the free module with weight 0 satisfies both conditions
    auto T0 = ex::twist(ex::ex0());
    auto M0 = std::make_shared<const FockModule>(T0, std::make_shared<const FreeOmega>(T0, RVec(2, Rational(0))), Rational(1));
    CHECK(twisted_conditions(*M0).ok());
}

TEST_CASE("a weight outside the admissible coset breaks condition (ii)") {
    auto T = ex::twist(ex::ex0());
    Classification c = enumerate_simple_twisted(T);
    REQUIRE_FALSE(c.classes.empty());
    SimpleModuleClass s = c.classes[0];
    s.base_weight[0] += Rational(1, 2);
    auto M = instantiate(c, s, Rational(1));
    ConditionReport r = twisted_conditions(*M);
    CHECK(r.cond_i);
    CHECK_FALSE(r.cond_ii);
}

TEST_CASE("enumerated classes are twisted modules") {
    std::vector<std::shared_ptr<const TwistData>> cases = {
        ex::twist(ex::ex0()), ex::twist(ex::ex1()), ex::twist(ex::ex2(2)), ex::twist(ex::ex2(1)),
        twist_of({{2, 0}, {0, 2}}, {{0, 1}, {1, 0}}), twist_of(kD4, minus_one(4))};
    SlotWindow w;
    w.depth = 1;
    for (const auto& T : cases) {
        Classification c = enumerate_simple_twisted(T);
        REQUIRE_FALSE(c.classes.empty());
        for (const auto& s : c.classes) {
            auto M = instantiate(c, s, Rational(2));
            ConditionReport r = twisted_conditions(*M);
            CHECK_MESSAGE(r.ok(), (r.witnesses.empty() ? "" : r.witnesses.front()));
            for (size_t i = 0; i < r.mu.size(); ++i) CHECK(r.mu[i].pow(c.p).is_root_of_unity());
        }
        if (T->lattice().rank() > 2) continue;
        auto M = instantiate(c, c.classes.back(), Rational(3));
        VOSuite v = vo_suite(M, {{1, 0}, {0, 1}, {1, -1}}, w);
        for (const CheckReport* r : v.items()) {
            CHECK_MESSAGE(r->ok(), r->summary());
            CHECK(r->tested());
        }
    }
}

TEST_CASE("block Omega: weight spaces have the module dimension") {
    auto T = twist_of(kD4, minus_one(4));
    Classification c = enumerate_simple_twisted(T);
    for (const auto& s : c.classes) {
        auto om = class_omega(c, s);
        // labels reached from the seed by lattice vectors of degree zero (all of them here)
        std::set<OmegaLabel> seen;
        for (long long a = 0; a < 2; ++a)
            for (long long b = 0; b < 2; ++b)
                for (long long x = 0; x < 2; ++x)
                    for (long long y = 0; y < 2; ++y)
                        for (const auto& [coef, o] : om->act({a, b, x, y}, om->seeds()[0])) seen.insert(o);
        CHECK(seen.size() == s.omega_dim);
    }
}

TEST_CASE("random lattices: certified blocks, counts and serial agreement") {
    std::mt19937 rng(2024);
    int checked = 0;
    for (int t = 0; t < 30; ++t) {
        auto T = std::make_shared<const TwistData>(std::make_shared<const TwistedLattice>(gen::random_lattice(rng, 3, 4, true)));
        Classification c = enumerate_simple_twisted(T, true);
        Classification cs = enumerate_simple_twisted(T, false);
        CHECK(c.classes.size() == cs.classes.size());
        CHECK(c.obstructed == cs.obstructed);
        if (c.obstructed) continue;
        CHECK(c.refusal.empty());
        for (size_t i = 0; i < c.rows.size(); ++i) {
            const MuRow& r = c.rows[i];
            CHECK(r.note == cs.rows[i].note);
            if (r.A.zero) continue;
            CHECK_MESSAGE(r.D.certified, (r.D.failures.empty() ? "" : r.D.failures.front()));
            CHECK(r.D.radical.size() * r.D.block_dim == r.D.E.size());
            CHECK(r.D.module_dim * r.D.module_dim == r.D.block_dim);
            CHECK(r.D.blocks.size() == r.D.radical.size());
            for (const auto& perm : r.D.conjugation) {
                std::set<size_t> img(perm.begin(), perm.end());
                CHECK(img.size() == perm.size());
            }
        }
        for (const auto& s : c.classes) {
            auto M = instantiate(c, s, Rational(1));
            CHECK(twisted_conditions(*M).ok());
        }
        ++checked;
    }
    CHECK(checked > 10);
}
