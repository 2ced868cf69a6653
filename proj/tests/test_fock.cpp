#include "doctest.h"

#include <random>

#include "gen.hpp"
#include "lattices.hpp"
#include "twistlab/fock.hpp"

using namespace twistlab;

namespace {

FockPtr free_module(std::shared_ptr<const TwistedLattice> L, Rational T, RVec xi0 = {}) {
    auto t = ex::twist(std::move(L));
    return std::make_shared<const FockModule>(t, std::make_shared<const FreeOmega>(t, std::move(xi0)), T);
}

Mono vac(const FockModule& M) { return Mono{{}, M.omega().seeds().front()}; }

}  // namespace

TEST_CASE("graded basis") {
    std::mt19937 rng(41);
    for (int t = 0; t < 30; ++t) {
        auto L = std::make_shared<const TwistedLattice>(gen::random_lattice(rng, 4, 6));
        GradedBasis b = graded_basis(*L);
        size_t l = L->rank();
        REQUIRE(b.h.size() == l);
        CycScalar w = CycScalar::root_of_unity(b.p, 1);
        for (size_t j = 0; j < l; ++j) {
            // sigma h_j = omega^{q_j} h_j
            for (size_t a = 0; a < l; ++a) {
                CycScalar s(0);
                for (size_t c = 0; c < l; ++c) s += CycScalar(L->sigma()[a][c]) * b.h[j][c];
                CHECK(s == w.pow(b.q[j]) * b.h[j][a]);
            }
            for (size_t k = 0; k < l; ++k)
                if ((b.q[j] + b.q[k]) % b.p != 0) CHECK(b.pairing[j][k].is_zero());
        }
        // projections sum back to the vector
        IVec v = gen::random_vector(rng, l);
        CycVec c = b.coords(to_cyc(v));
        for (size_t a = 0; a < l; ++a) {
            CycScalar s(0);
            for (size_t j = 0; j < l; ++j) s += c[j] * b.h[j][a];
            CHECK(s == CycScalar(v[a]));
        }
    }
}

TEST_CASE("Heisenberg action") {
    for (auto L : {ex::ex0(), ex::ex1(), ex::ex2()}) {
        auto M = free_module(L, Rational(4));
        const auto& b = M->basis();
        FockVector one = M->vector(vac(*M));
        size_t l = b.h.size();
        for (size_t j = 0; j < l; ++j) {
            for (long long u = 1; u <= 2 * M->p(); ++u) {
                Rational n(u, M->p());
                CHECK(M->heis_act(j, n, one).is_zero());
            }
        }
        // [h_j(n), h_k(-n)] = n (h_j | h_k)
        for (const Mono& m : M->monomials(vac(*M).o, Rational(2))) {
            FockVector v = M->vector(m);
            for (size_t j = 0; j < l; ++j)
                for (size_t k = 0; k < l; ++k)
                    for (long long u = 1; u <= M->p(); ++u) {
                        Rational n = Rational(b.q[j], M->p()) + Rational(u - 1);
                        if (n.is_zero()) continue;
                        FockVector lhs = M->heis_act(j, n, M->heis_act(k, -n, v)) - M->heis_act(k, -n, M->heis_act(j, n, v));
                        if (lhs.overflow) continue;
                        CHECK(lhs.same_terms(v.scaled(b.pairing[j][k] * CycScalar(n))));
                    }
        }
    }
}

TEST_CASE("relations between h(n) and e(alpha)") {
    std::mt19937 rng(43);
    for (auto L : {ex::ex0(), ex::ex1(), ex::ex2()}) {
        auto M = free_module(L, Rational(3));
        size_t l = L->rank();
        for (int t = 0; t < 6; ++t) {
            IVec a = gen::random_vector(rng, l);
            auto mons = M->monomials(OmegaLabel{gen::random_vector(rng, l), 0}, Rational(2));
            FockVector v = M->vector(mons[rng() % mons.size()]);
            for (size_t j = 0; j < l; ++j) {
                for (long long u = -M->p(); u <= M->p(); ++u) {
                    Rational n(u, M->p());
                    FockVector lhs = M->heis_act(j, n, M->e_act(a, v)) - M->e_act(a, M->heis_act(j, n, v));
                    FockVector rhs;
                    if (u == 0 && M->basis().q[j] == 0) rhs = M->e_act(a, v).scaled(M->basis().pair_with(j, to_cyc(a), L->gram()));
                    CHECK(lhs.same_terms(rhs));
                }
            }
        }
    }
}

TEST_CASE("upsilon(1) grades by degree") {
    for (auto L : {ex::ex0(), ex::ex1(), ex::ex2(), ex::ex2(4)}) {
        auto M = free_module(L, Rational(5));
        for (const OmegaLabel& o : {OmegaLabel{{0, 0}, 0}, OmegaLabel{{1, -1}, 0}}) {
            for (const Mono& m : M->monomials(o, Rational(5))) {
                Rational want = M->degree(m) + M->omega_degree(M->weight(m));
                CHECK(M->virasoro_one(m) == CycScalar(want));
            }
        }
    }
    // fractional modes on the rotation lattice: h(-1/4) has degree 1/4
    auto M = free_module(ex::ex2(), Rational(2));
    bool seen = false;
    for (const Mono& m : M->monomials(OmegaLabel{{0, 0}, 0}, Rational(1, 4)))
        if (!m.w.empty()) {
            CHECK(M->virasoro_one(m) == CycScalar(Rational(1, 4)));
            seen = true;
        }
    CHECK(seen);
}

TEST_CASE("untwisted vertex operator on the vacuum") {
    auto M = free_module(ex::lattice({{2}}, {{1}}), Rational(4));
    FockVector one = M->vector(vac(*M));
    FockVector r = M->vertex({1}, Rational(-1), one);
    CHECK(r.same_terms(M->vector(Mono{{}, OmegaLabel{{1}, 0}})));
    CHECK(M->vertex({1}, Rational(0), one).is_zero());
    CHECK(M->vertex_max_mode({1}, one) == Rational(-1));
    // X_a(-2) 1 = a(-1) e^a
    FockVector two = M->vertex({1}, Rational(-2), one);
    CHECK(two.same_terms(M->heis_vec(to_cyc(IVec{1}), Rational(-1), M->e_act({1}, one))));
}

TEST_CASE("[h(n), X_a(m)] = (a|h) X_a(m+n)") {
    std::mt19937 rng(47);
    for (auto L : {ex::ex0(), ex::ex1(), ex::ex2()}) {
        auto M = free_module(L, Rational(5));
        size_t l = L->rank();
        long long P = M->p();
        for (int t = 0; t < 4; ++t) {
            IVec a = gen::random_vector(rng, l, 1);
            auto mons = M->monomials(OmegaLabel{gen::random_vector(rng, l, 1), 0}, Rational(1));
            FockVector v = M->vector(mons[rng() % mons.size()]);
            Rational top = M->vertex_max_mode(a, v);
            for (size_t j = 0; j < l; ++j) {
                CycScalar ah = M->basis().pair_with(j, to_cyc(a), L->gram());
                for (long long u = -P; u <= P; ++u) {
                    Rational n = Rational(M->basis().q[j], P) + Rational(u);
                    for (long long k = 0; k <= 2 * P; ++k) {
                        Rational m = top - Rational(k, P);
                        FockVector lhs = M->heis_act(j, n, M->vertex(a, m, v)) - M->vertex(a, m, M->heis_act(j, n, v));
                        FockVector rhs = M->vertex(a, m + n, v).scaled(ah);
                        if (lhs.overflow || rhs.overflow) continue;
                        CHECK(lhs.same_terms(rhs));
                    }
                }
            }
        }
    }
}
