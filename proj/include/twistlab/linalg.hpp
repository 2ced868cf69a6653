#pragma once

#include <vector>

#include "twistlab/rational.hpp"
#include "twistlab/scalar.hpp"

namespace twistlab {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;
using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

long long ck_add(long long a, long long b);
long long ck_mul(long long a, long long b);

IMat identity_matrix(size_t n);
IMat transpose(const IMat& a);
IMat mat_mul(const IMat& a, const IMat& b);
IVec mat_vec(const IMat& a, const IVec& v);   // a * v
IVec vec_mat(const IVec& v, const IMat& a);   // v^T * a
IVec vec_add(const IVec& a, const IVec& b);
IVec vec_sub(const IVec& a, const IVec& b);
IVec vec_scale(const IVec& a, long long c);
long long dot(const IVec& a, const IVec& b);
bool is_zero_vec(const IVec& v);
Rational determinant(const IMat& a);
RMat rational_inverse(const IMat& a);

// Row Hermite normal form: U * A = H with U unimodular, H in row echelon form
// with positive pivots and entries above each pivot reduced into [0, pivot).
struct HNF {
    IMat H;
    IMat U;
    size_t rank = 0;
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};
HNF hermite_rows(const IMat& a);

// Smith normal form: U * A * V = D (diagonal, d_i | d_{i+1}, d_i >= 0).
struct SNF {
    IMat D;
    IMat U;
    IMat V;
    IVec diag;
};
SNF smith(const IMat& a);

// Basis (rows) of the Z-module {x : x * A = 0}.
IMat left_kernel(const IMat& a);

// Canonical representative of v modulo the row lattice of an HNF matrix.
IVec reduce_mod_rows(const IVec& v, const HNF& h);

// Integer solution x of x * A = b (rows of A as generators); false if none.
bool solve_in_row_lattice(const IMat& a, const IVec& b, IVec& x);

// Exact rational and cyclotomic Gaussian elimination.
size_t rank_rational(RMat a);
bool solve_rational(const RMat& a, const RVec& b, RVec& x);
size_t rank_cyc(CycMat a);
bool solve_cyc(const CycMat& a, const CycVec& b, CycVec& x);
CycMat nullspace_cyc(const CycMat& a);

}  // namespace twistlab
