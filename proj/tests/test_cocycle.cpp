#include "doctest.h"

#include <memory>

#include "gen.hpp"
#include "twistlab/cocycle.hpp"

using namespace twistlab;

namespace {

std::shared_ptr<const TwistedLattice> make(IMat g, IMat s) {
    return std::make_shared<const TwistedLattice>(std::move(g), std::move(s));
}

CycScalar sign_pow(long long e) { return CycScalar(e % 2 == 0 ? 1 : -1); }

}  // namespace

TEST_CASE("commutator map examples") {
    auto L = make({{1, 1}, {1, 3}}, {{1, 0}, {0, 1}});
    TwistData T(L);
    IVec a{1, 0}, b{0, 1};
    CHECK(T.commutator_map(a, b) == sign_pow(1 * 3 + 1));
    CHECK(T.commutator_map(a, a) == CycScalar(1));
    CHECK(T.commutator_map(a, b) * T.commutator_map(b, a) == CycScalar(1));
    CHECK(T.eps(a, b) == CycScalar(1));
    CHECK(T.eps(IVec{0, 0}, b) == CycScalar(1));
}

TEST_CASE("epsilon realizes the commutator map") {
    std::mt19937 rng(23);
    int pairs = 0;
    for (int t = 0; t < 25; ++t) {
        auto L = std::make_shared<const TwistedLattice>(gen::random_lattice(rng, 4, 6));
        TwistData T(L);
        size_t l = L->rank();
        for (int k = 0; k < 4; ++k, ++pairs) {
            IVec a = gen::random_vector(rng, l), b = gen::random_vector(rng, l), c = gen::random_vector(rng, l);
            CHECK(T.eps(a, b) / T.eps(b, a) == T.commutator_map(a, b));
            CHECK(T.commutator_map(a, a) == CycScalar(1));
            CHECK(T.eps(vec_add(a, c), b) == T.eps(a, b) * T.eps(c, b));
            CHECK(T.eps(a, vec_add(b, c)) == T.eps(a, b) * T.eps(a, c));
            // brute-force product over coordinates
            CycScalar brute(1);
            for (size_t i = 0; i < l; ++i)
                for (size_t j = 0; j < l; ++j)
                    brute *= T.eps(L->basis(i), L->basis(j)).pow(a[i] * b[j]);
            CHECK(brute == T.eps(a, b));
        }
    }
    CHECK(pairs == 100);
}

TEST_CASE("p = 1, 2 commutator is sigma independent") {
    std::mt19937 rng(29);
    for (int t = 0; t < 30; ++t) {
        auto L = std::make_shared<const TwistedLattice>(gen::random_lattice(rng, 4, 2));
        TwistData T(L);
        IVec a = gen::random_vector(rng, L->rank()), b = gen::random_vector(rng, L->rank());
        long long e = L->pair(a, a) * L->pair(b, b) + L->pair(a, b);
        CHECK(T.commutator_map(a, b) == sign_pow(e));
    }
}

TEST_CASE("kappa") {
    auto L = make({{2, 1}, {1, 2}}, {{1, 0}, {0, 1}});
    TwistData T(L);
    CHECK(T.kappa({1, 0}, {0, 1}) == T.eps({1, 0}, {0, 1}));
    auto N = make({{2}}, {{-1}});
    TwistData U(N);
    // hand expansion: eps = 1, 2^{-2} (1 - omega)^{m_1}, m = (2, -2), omega = -1
    CHECK(U.kappa({1}, {1}) == CycScalar(Rational(1, 4)) * CycScalar(2).pow(-2));
    std::mt19937 rng(31);
    for (int t = 0; t < 40; ++t) {
        auto R = std::make_shared<const TwistedLattice>(gen::random_lattice(rng, 4, 6));
        TwistData V(R);
        IVec a = gen::random_vector(rng, R->rank()), b = gen::random_vector(rng, R->rank());
        long long e = R->pair(a, a) * R->pair(b, b) + R->pair(a, b);
        CHECK(V.kappa(a, b) / V.kappa(b, a) == sign_pow(e));
        // the sigma-twist ratio of kappa reduces to that of epsilon
        IVec sa = R->act(a), sb = R->act(b);
        CHECK(V.kappa(sa, sb) / V.kappa(a, b) == V.eps(sa, sb) / V.eps(a, b));
    }
}

TEST_CASE("locality order") {
    auto L = make({{2}}, {{1}});
    TwistData T(L);
    CHECK(T.locality_order({1}, {-1}) == 2);
    CHECK(T.locality_order({1}, {1}) == 0);
    auto N = make({{2, 0}, {0, 2}}, {{-1, 0}, {0, -1}});
    TwistData U(N);
    CHECK(U.locality_order({1, 0}, {1, 0}) == 2);
}

TEST_CASE("phi_zero and the extension cocycle") {
    auto L = make({{2, 1}, {1, 2}}, {{1, 0}, {0, 1}});
    TwistData T(L);
    CHECK(T.phi_zero({1, 1}) == CycScalar(1));
    auto R = make({{2, 0}, {0, 2}}, {{0, -1}, {1, 0}});
    TwistData U(R);
    for (const auto& v : {IVec{1, 0}, IVec{0, 1}, IVec{1, 1}, IVec{2, -1}}) CHECK(U.phi_zero(v) == CycScalar(1));

    std::mt19937 rng(37);
    for (int t = 0; t < 80; ++t) {
        auto M = std::make_shared<const TwistedLattice>(gen::random_lattice(rng, 4, 6));
        TwistData V(M);
        size_t l = M->rank();
        IVec a = gen::random_vector(rng, l), b = gen::random_vector(rng, l);
        IVec sa = M->act(a), sb = M->act(b);
        // phi is a 1-cocycle with coboundary eps(sa, sb)/eps(a, b)
        CHECK(V.phi(vec_add(a, b)) == V.phi(a) * V.phi(b) * V.eps(sa, sb) / V.eps(a, b));
        // pointwise phi_0 squares to the ratio
        CHECK(V.phi_zero(a).pow(2) == V.eps(sa, sa) / V.eps(a, a));
        // the default extension is a square root of the ratio everywhere
        CHECK(V.phi(a).pow(2) == V.eps(sa, sa) / V.eps(a, a));
        for (size_t i = 0; i < l; ++i) {
            CycScalar r = V.phi(M->basis(i)) / V.phi_zero(M->basis(i));
            CHECK((r == CycScalar(1) || r == CycScalar(-1)));
        }
        // and has order p
        REQUIRE(V.default_phi_order_p());
        CHECK(V.orbit_product(a, M->order()) == CycScalar(1));
        // mu roots
        OrbitDecomposition d = M->reduce_generating_set();
        for (const auto& o : d.orbits) {
            auto roots = V.mu_roots(o);
            CHECK(static_cast<long long>(roots.size()) == o.length);
            for (const auto& mu : roots) CHECK(mu.pow(o.length) == V.orbit_product(o.rep, o.length));
        }
    }
}

TEST_CASE("obstruction check") {
    auto L = make({{2, 1}, {1, 2}}, {{1, 0}, {0, 1}});
    TwistData T(L);
    CHECK_FALSE(T.obstruction_check(L->reduce_generating_set()).obstructed);
    auto R = make({{2, 0}, {0, 2}}, {{0, -1}, {1, 0}});
    TwistData U(R);
    CHECK_FALSE(U.obstruction_check(R->reduce_generating_set()).obstructed);
    auto S = make({{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
    TwistData V(S);
    Obstruction ob = V.obstruction_check(S->reduce_generating_set());
    CHECK(ob.obstructed);
    CHECK(V.commutator_map(ob.alpha, S->act(ob.alpha, ob.j)) != CycScalar(1));
}
