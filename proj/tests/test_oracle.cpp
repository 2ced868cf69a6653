#include "doctest.h"

#include <random>

#include "pairs.hpp"
#include "twistlab/oracle.hpp"

using namespace twistlab;

TEST_CASE("oracle Heisenberg first product") {
    for (auto L : {ex::ex0(), ex::ex2()}) {
        auto M = gen::free_module(L, Rational(4));
        const auto& b = M->basis();
        OpPtr one = identity_series(M);
        SlotWindow w;
        for (size_t j = 0; j < 2; ++j)
            for (size_t k = 0; k < 2; ++k) {
                OpPtr p = oracle_product(heis_series(M, b.h[j]), heis_series(M, b.h[k]), 1, 2);
                for (const auto& v : window_vectors(*M, w))
                    for (long long m = -2; m <= 1; ++m) {
                        FockVector got = p->coeff(Rational(m), v);
                        if (got.overflow) continue;
                        CHECK(got.same_terms(one->coeff(Rational(m), v).scaled(b.pairing[j][k])));
                    }
            }
    }
}

TEST_CASE("oracle agrees with both product paths") {
    std::mt19937 rng(61);
    SlotWindow w;
    w.depth = 1;
    for (long long p = 1; p <= 4; ++p) {
        long long tested = 0;
        for (int trial = 0; trial < 6; ++trial) {
            auto M = gen::free_module(gen::lattice_of_order(rng, p, 2), Rational(4));
            auto pr = gen::random_pair(rng, M);
            for (long long n = pr.order - 2; n <= pr.order; ++n) {
                for (const auto& v : window_vectors(*M, w)) {
                    OpPtr o = oracle_product(pr.a, pr.b, n, pr.order);
                    for (const auto& m : window_modes(*o, v, w.depth)) {
                        FockVector x = o->coeff(m, v);
                        FockVector y = product_coeff(*pr.a, *pr.b, n, pr.order, ProductPath::LambdaProd, m, v);
                        FockVector z = product_coeff(*pr.a, *pr.b, n, pr.order, ProductPath::LProd, m, v);
                        if (x.overflow || y.overflow || z.overflow) continue;
                        CHECK(x.same_terms(y));
                        CHECK(x.same_terms(z));
                        if (n >= pr.order) CHECK(x.is_zero());
                        ++tested;
                    }
                }
            }
        }
        CHECK(tested > 0);
    }
}

TEST_CASE("oracle blocks of twisted group algebras") {
    // trivial commutator: ordinary group algebra, |E| one-dimensional blocks
    OracleBlocks t = oracle_bicharacter_blocks({2, 3}, {{1, 1}, {1, 1}});
    CHECK(t.count == 6);
    for (auto d : t.dims) CHECK(d == 1);
    // (Z/2)^2 with b(e1, e2) = -1: a single 2x2 matrix block
    OracleBlocks q = oracle_bicharacter_blocks({2, 2}, {{1, -1}, {-1, 1}});
    CHECK(q.count == 1);
    CHECK(q.dims == std::vector<size_t>{4});
    // Z/4 x Z/2 with b(e1, e2) = -1: radical generated by 2 e1, two blocks
    OracleBlocks r = oracle_bicharacter_blocks({4, 2}, {{1, -1}, {-1, 1}});
    CHECK(r.count == 2);
    CHECK(r.dims == std::vector<size_t>{4, 4});
    // Z/3 x Z/3 with a primitive cube root: one 3x3 block
    CycScalar w = CycScalar::root_of_unity(3, 1);
    OracleBlocks s = oracle_bicharacter_blocks({3, 3}, {{1, w.inv()}, {w, 1}});
    CHECK(s.count == 1);
    CHECK(s.dims == std::vector<size_t>{9});
}

TEST_CASE("oracle dual index") {
    CHECK(oracle_dual_index({{2}}) == 2);
    CHECK(oracle_dual_index({{2, -1}, {-1, 2}}) == 3);
    CHECK(oracle_dual_index({{2, 0}, {0, 2}}) == 4);
    CHECK(oracle_dual_index({{1}}) == 1);
}
