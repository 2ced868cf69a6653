#include "doctest.h"

#include <random>
#include <set>

#include "twistlab/linalg.hpp"

using namespace twistlab;

namespace {

IMat random_matrix(std::mt19937& rng, size_t r, size_t c, int range) {
    std::uniform_int_distribution<int> d(-range, range);
    IMat m(r, IVec(c));
    for (auto& row : m)
        for (auto& x : row) x = d(rng);
    return m;
}

long long abs_det(const IMat& a) {
    Rational d = determinant(a);
    long long v = d.to_ll();
    return v < 0 ? -v : v;
}

// |Z^n / row lattice| for a full rank square matrix by counting distinct
// reductions of a box of vectors modulo the lattice (brute force).
size_t quotient_size(const IMat& a) {
    HNF h = hermite_rows(a);
    size_t n = a.size();
    long long d = abs_det(a);
    std::set<IVec> reps;
    IVec x(n, 0);
    while (true) {
        reps.insert(reduce_mod_rows(x, h));
        size_t k = 0;
        while (k < n && ++x[k] == d) x[k++] = 0;
        if (k == n) break;
    }
    return reps.size();
}

}  // namespace

TEST_CASE("Hermite form: U A = H, U unimodular, echelon with reduced entries") {
    std::mt19937 rng(3);
    for (int t = 0; t < 60; ++t) {
        size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IMat a = random_matrix(rng, r, c, 4);
        HNF h = hermite_rows(a);
        CHECK(mat_mul(h.U, a) == h.H);
        CHECK((abs_det(h.U) == 1));
        for (size_t i = 0; i < h.rank; ++i) {
            size_t p = h.pivots[i];
            CHECK(h.H[i][p] > 0);
            if (i > 0) CHECK(h.pivots[i - 1] < p);
            for (size_t j = 0; j < p; ++j) CHECK(h.H[i][j] == 0);
            for (size_t k = 0; k < i; ++k) {
                CHECK(h.H[k][p] >= 0);
                CHECK(h.H[k][p] < h.H[i][p]);
            }
        }
        for (size_t i = h.rank; i < r; ++i) CHECK(is_zero_vec(h.H[i]));
    }
}

TEST_CASE("Smith form: U A V = D with the divisibility chain") {
    std::mt19937 rng(4);
    for (int t = 0; t < 60; ++t) {
        size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IMat a = random_matrix(rng, r, c, 5);
        SNF s = smith(a);
        CHECK(mat_mul(mat_mul(s.U, a), s.V) == s.D);
        CHECK(abs_det(s.U) == 1);
        CHECK(abs_det(s.V) == 1);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j)
                if (i != j) CHECK(s.D[i][j] == 0);
        for (size_t i = 0; i + 1 < s.diag.size(); ++i)
            if (s.diag[i] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
        if (r == c && !determinant(a).is_zero()) {
            long long prod = 1;
            for (long long d : s.diag) prod *= d;
            CHECK(prod == abs_det(a));
            double box = 1;
            for (size_t i = 0; i < r; ++i) box *= static_cast<double>(prod);
            if (box <= 2e5) CHECK(quotient_size(a) == static_cast<size_t>(prod));
        }
    }
}

TEST_CASE("left kernels and lattice solves") {
    std::mt19937 rng(5);
    for (int t = 0; t < 60; ++t) {
        size_t r = 1 + rng() % 4, c = 1 + rng() % 3;
        IMat a = random_matrix(rng, r, c, 3);
        IMat k = left_kernel(a);
        for (const auto& x : k) CHECK(is_zero_vec(vec_mat(x, a)));
        RMat ra(r, RVec(c));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) ra[i][j] = Rational(a[i][j]);
        CHECK(k.size() + rank_rational(ra) == r);
        // x a = b is solvable for b in the row lattice, and the solution is integral
        std::uniform_int_distribution<int> d(-3, 3);
        IVec coef(r);
        for (auto& x : coef) x = d(rng);
        IVec b = vec_mat(coef, a);
        IVec x;
        REQUIRE(solve_in_row_lattice(a, b, x));
        CHECK(vec_mat(x, a) == b);
    }
    // 2 Z is not hit by 1
    IVec x;
    CHECK_FALSE(solve_in_row_lattice({{2}}, {1}, x));
}

TEST_CASE("overflow is detected, never wrapped") {
    long long big = 1LL << 62;
    CHECK_THROWS(ck_mul(big, 4));
    CHECK_THROWS(ck_add(big, big));
}

TEST_CASE("cyclotomic elimination") {
    CycScalar i = CycScalar::root_of_unity(4, 1);
    CycMat a = {{CycScalar(1), i}, {i, CycScalar(-1)}};
    CHECK(rank_cyc(a) == 1);
    CycMat n = nullspace_cyc(a);
    REQUIRE(n.size() == 1);
    CHECK((a[0][0] * n[0][0] + a[0][1] * n[0][1]).is_zero());
    CycVec x;
    CycMat b = {{CycScalar(1), i}, {CycScalar(0), CycScalar(2)}};
    REQUIRE(solve_cyc(b, {i, CycScalar(1)}, x));
    CHECK(b[0][0] * x[0] + b[0][1] * x[1] == i);
    CHECK(b[1][0] * x[0] + b[1][1] * x[1] == CycScalar(1));
}
