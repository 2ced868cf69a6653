#pragma once

// Slow reference computations. Nothing here calls the product kernels,
// the classifier or the Smith form code.

#include <string>
#include <vector>

#include "twistlab/series.hpp"

namespace twistlab {

struct OracleReport {
    std::string identity;
    std::string instance;
    std::string main_value;
    std::string oracle_value;
    bool agree = false;
};

// Coefficient of a [n] b at mode m on v by residue extraction against the
// kernel sum_lambda sum_{j < N-n} binom(-lambda, j) w^lambda z^{-lambda-j} (w-z)^j,
// expanding both orderings of (w-z)^n term by term.
FockVector oracle_product_coeff(const OpSeries& a, const OpSeries& b, long long n, long long N, const Rational& m,
                                const FockVector& v);
OpPtr oracle_product(OpPtr a, OpPtr b, long long n, long long N);

struct OracleBlocks {
    size_t count = 0;
    std::vector<size_t> dims;  // dimension of each block as an algebra
};

// Twisted group algebra of E = Z/o_1 x ... x Z/o_r with u_g u_h = c(g,h) u_{g+h},
// c(g,h) = prod_{i>j} beta_ij^{g_i h_j}; beta is the commutator bicharacter on
// generators (beta_ii = 1, beta_ji = beta_ij^{-1}). Blocks are found from the
// full multiplication table by splitting 1 into central idempotents.
OracleBlocks oracle_bicharacter_blocks(const std::vector<long long>& orders, const CycMat& beta);

// |L'/L| by listing the classes of G^{-1} x, x in a box.
long long oracle_dual_index(const IMat& gram);

struct OracleObstructed {
    bool found = false;
    IMat gram;
    IMat sigma;
    IVec alpha;
    long long j = 0;
};
// First rank 2 pair (G, S) in a fixed search order (G positive definite with
// entries in [-bound, bound], S with entries in {-1, 0, 1}, S != 1) that has
// C(a, S^j a) != 1 for some a with entries in {-1, 0, 1}. The commutator is
// evaluated as a complex number from its defining product.
OracleObstructed oracle_find_obstructed(long long bound);

}  // namespace twistlab
