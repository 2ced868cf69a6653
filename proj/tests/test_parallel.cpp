#include "doctest.h"

#include <random>

#include "pairs.hpp"
#include "twistlab/classify.hpp"
#include "twistlab/lie.hpp"
#include "twistlab/vertex.hpp"

using namespace twistlab;

// The OpenMP kernels must reproduce the serial reference exactly, including
// the order of recorded failures.

namespace {

void same(const CheckReport& a, const CheckReport& b) {
    CHECK(a.name == b.name);
    CHECK(a.passed == b.passed);
    CHECK(a.failed == b.failed);
    CHECK(a.untestable == b.untestable);
    CHECK(a.failures == b.failures);
}

}  // namespace

TEST_CASE("run_slots merges in task order") {
    std::vector<std::function<CheckReport()>> tasks;
    for (int i = 0; i < 40; ++i)
        tasks.push_back([i] {
            CheckReport r;
            r.record(i % 7 != 3, i % 11 == 5, "slot " + std::to_string(i));
            return r;
        });
    CheckReport s = run_slots("tasks", tasks, false);
    CheckReport p = run_slots("tasks", tasks, true);
    same(s, p);
    CHECK(s.failed > 0);
    CHECK(s.untestable > 0);
}

TEST_CASE("vertex operator suite: serial and parallel agree") {
    SlotWindow w;
    w.depth = 1;
    for (auto L : {ex::ex0(), ex::ex1(), ex::ex2()}) {
        auto M = gen::free_module(L, Rational(4));
        std::vector<IVec> v = {{1, 0}, {0, -1}, {1, 1}};
        VOSuite s = vo_suite(M, v, w, false);
        VOSuite p = vo_suite(M, v, w, true);
        auto si = s.items(), pi = p.items();
        for (size_t i = 0; i < si.size(); ++i) same(*si[i], *pi[i]);
    }
    // a nonzero zero-mode weight
    auto t = ex::twist(ex::ex0());
    auto bad = std::make_shared<const FockModule>(t, std::make_shared<const FreeOmega>(t, RVec{Rational(1, 3), Rational(0)}),
                                                  Rational(3));
    VOSuite s = vo_suite(bad, {{1, 0}}, w, false);
    VOSuite p = vo_suite(bad, {{1, 0}}, w, true);
    auto si = s.items(), pi = p.items();
    for (size_t i = 0; i < si.size(); ++i) same(*si[i], *pi[i]);
}

TEST_CASE("affine axioms: serial and parallel agree") {
    auto g = std::make_shared<QuadLie>(gl_inner(2, 3, {0, 1}));
    AffFamily fam = tau_family(g);
    for (Axiom ax : {Axiom::C2, Axiom::C3, Axiom::C4}) {
        long long nmax = ax == Axiom::C4 ? 1 : 2;
        same(aff_axioms(fam, ax, nmax, -2, 2, false), aff_axioms(fam, ax, nmax, -2, 2, true));
    }
}

TEST_CASE("classification: serial and parallel agree") {
    std::mt19937 rng(71);
    std::vector<std::shared_ptr<const TwistedLattice>> ls = {ex::ex0(), ex::ex1(), ex::ex2(), ex::ex2(1)};
    for (int t = 0; t < 6; ++t)
        ls.push_back(std::make_shared<const TwistedLattice>(gen::random_lattice(rng, 3, 4, true)));
    for (const auto& L : ls) {
        auto T = ex::twist(L);
        Classification s = enumerate_simple_twisted(T, false);
        Classification p = enumerate_simple_twisted(T, true);
        CHECK(s.obstructed == p.obstructed);
        CHECK(s.refusal == p.refusal);
        REQUIRE(s.classes.size() == p.classes.size());
        for (size_t i = 0; i < s.classes.size(); ++i) {
            CHECK(s.classes[i].row == p.classes[i].row);
            CHECK(s.classes[i].mu == p.classes[i].mu);
            CHECK(s.classes[i].block == p.classes[i].block);
            CHECK(s.classes[i].base_weight == p.classes[i].base_weight);
            CHECK(s.classes[i].omega_dim == p.classes[i].omega_dim);
        }
    }
}
