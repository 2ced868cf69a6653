#pragma once

// Random local pairs of operator series on a free Fock module.

#include <random>

#include "gen.hpp"
#include "lattices.hpp"
#include "twistlab/series.hpp"

namespace gen {

using twistlab::FockPtr;
using twistlab::OpPtr;

inline FockPtr free_module(std::shared_ptr<const twistlab::TwistedLattice> L, twistlab::Rational T) {
    auto t = ex::twist(std::move(L));
    return std::make_shared<const twistlab::FockModule>(t, std::make_shared<const twistlab::FreeOmega>(t, twistlab::RVec{}),
                                                        T);
}

// Random positive definite lattice whose automorphism has order exactly p.
inline std::shared_ptr<const twistlab::TwistedLattice> lattice_of_order(std::mt19937& rng, long long p, size_t max_rank = 3) {
    while (true) {
        auto L = random_lattice(rng, max_rank, p, true);
        if (L.order() == p) return std::make_shared<const twistlab::TwistedLattice>(L);
    }
}

struct LocalPair {
    OpPtr a, b;
    long long order;
};

struct Field {
    OpPtr s;
    bool vertex;
    IVec deg;
    int derivs;
};

inline Field random_field(std::mt19937& rng, const FockPtr& M) {
    size_t l = M->lattice().rank();
    Field f;
    f.derivs = 0;
    if (rng() % 3 == 0) {
        f.s = twistlab::heis_series(M, M->basis().h[rng() % l]);
        f.vertex = false;
        f.deg = IVec(l, 0);
    } else {
        f.deg = random_vector(rng, l, 1);
        f.s = twistlab::vertex_series(M, f.deg);
        f.vertex = true;
    }
    if (rng() % 4 == 0) {
        f.s = twistlab::derive(f.s);
        f.derivs = 1;
    }
    return f;
}

// Locality order of the pair; derivatives raise it by one each.
inline LocalPair random_pair(std::mt19937& rng, const FockPtr& M) {
    Field x = random_field(rng, M), y = random_field(rng, M);
    long long N;
    if (!x.vertex && !y.vertex)
        N = 2;
    else if (!x.vertex || !y.vertex)
        N = 1;
    else
        N = M->twist().locality_order(x.deg, y.deg);
    return {x.s, y.s, N + x.derivs + y.derivs};
}

}  // namespace gen
