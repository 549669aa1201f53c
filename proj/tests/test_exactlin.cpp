#include <random>

#include <gtest/gtest.h>

#include "sdclab/matrix.hpp"
#include "sdclab/sparse.hpp"

using namespace sdclab;

namespace {

constexpr int kIterations = 150;

// Naive Gauss-Jordan over Q with rational pivots; independent of the Bareiss path.
int naive_rank(Matrix<Rationals> m) {
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int sel = -1;
        for (int i = r; i < m.rows(); ++i)
            if (sgn(m(i, c)) != 0) { sel = i; break; }
        if (sel < 0) continue;
        for (int j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
        for (int i = r + 1; i < m.rows(); ++i) {
            mpq_class t = m(i, c) / m(r, c);
            for (int j = 0; j < m.cols(); ++j) m(i, j) -= t * m(r, j);
        }
        ++r;
    }
    return r;
}

template <class F>
Matrix<F> random_matrix(const F& f, std::mt19937_64& rng, int rows, int cols, int rank_target) {
    // Product of a rows x k and a k x cols matrix has rank at most k.
    std::uniform_int_distribution<int> small(-3, 3);
    Matrix<F> a(f, rows, rank_target), b(f, rank_target, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rank_target; ++j) a(i, j) = f.from_int(small(rng));
    for (int i = 0; i < rank_target; ++i)
        for (int j = 0; j < cols; ++j) b(i, j) = f.from_int(small(rng));
    return a * b;
}

}  // namespace

TEST(Rank, IdentityOverQ) { EXPECT_EQ(rank(Matrix<Rationals>::identity(Rationals{}, 2)), 2); }

TEST(Rank, ZeroMatrix) { EXPECT_EQ(rank(Matrix<Rationals>(Rationals{}, 3, 4)), 0); }

TEST(Rank, DependentRowsOverQ) {
    auto m = Matrix<Rationals>::from_ints(Rationals{}, {{1, 2}, {2, 4}});
    EXPECT_EQ(rank(m), 1);
}

TEST(KernelBasis, IdentityHasEmptyKernel) {
    auto k = kernel_basis(Matrix<PrimeField>::identity(PrimeField(5), 3));
    EXPECT_EQ(k.rows(), 3);
    EXPECT_EQ(k.cols(), 0);
}

TEST(KernelBasis, ZeroMatrixSpansEverything) {
    auto k = kernel_basis(Matrix<Rationals>(Rationals{}, 2, 3));
    EXPECT_EQ(k.cols(), 3);
    EXPECT_EQ(rank(k), 3);
}

TEST(KernelBasis, CanonicalVectorOverF5) {
    PrimeField f5(5);
    auto k = kernel_basis(Matrix<PrimeField>::from_ints(f5, {{1, 1}}));
    ASSERT_EQ(k.cols(), 1);
    EXPECT_EQ(k(0, 0), 4u);  // -1 mod 5
    EXPECT_EQ(k(1, 0), 1u);
}

TEST(Solve, IdentityReturnsRightHandSide) {
    Rationals q;
    auto b = Matrix<Rationals>::from_ints(q, {{3, -1}, {2, 7}});
    auto x = solve(Matrix<Rationals>::identity(q, 2), b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, b);
}

TEST(Solve, ZeroMatrixNonzeroRhsIsInconsistent) {
    Rationals q;
    auto b = Matrix<Rationals>::from_ints(q, {{1}, {0}});
    EXPECT_FALSE(solve(Matrix<Rationals>(q, 2, 2), b).has_value());
}

TEST(Solve, HalfOverQ) {
    Rationals q;
    auto x = solve(Matrix<Rationals>::from_ints(q, {{2}}), Matrix<Rationals>::from_ints(q, {{1}}));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ((*x)(0, 0), mpq_class(1, 2));
}

TEST(Solve, DimensionMismatchThrows) {
    Rationals q;
    EXPECT_THROW(solve(Matrix<Rationals>(q, 2, 2), Matrix<Rationals>(q, 3, 1)), std::invalid_argument);
}

TEST(Bareiss, RationalEntriesStayCanonical) {
    Rationals q;
    Matrix<Rationals> m(q, 2, 2);
    m(0, 0) = mpq_class(1, 3);
    m(0, 1) = mpq_class(2, 6);
    m(1, 0) = mpq_class(1, 2);
    m(1, 1) = mpq_class(5, 7);
    auto e = echelon(m);
    EXPECT_EQ(e.pivots.size(), 2u);
    EXPECT_EQ(e.rref, Matrix<Rationals>::identity(q, 2));
}

TEST(ExactlinProperty, BareissRankMatchesNaiveOracle) {
    std::mt19937_64 rng(11);
    Rationals q;
    for (int it = 0; it < kIterations; ++it) {
        int r = 1 + rng() % 6, c = 1 + rng() % 6, k = rng() % 5;
        auto m = random_matrix(q, rng, r, c, k);
        if (it % 3 == 0) m(0, 0) = mpq_class(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 5));
        EXPECT_EQ(rank(m), naive_rank(m)) << m.str();
    }
}

template <class F>
void check_rank_nullity(const F& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int it = 0; it < kIterations; ++it) {
        int r = 1 + rng() % 7, c = 1 + rng() % 7, k = rng() % 6;
        auto m = random_matrix(f, rng, r, c, k);
        auto kb = kernel_basis(m);
        EXPECT_EQ(rank(m) + kb.cols(), m.cols());
        EXPECT_TRUE((m * kb).is_zero());
        EXPECT_EQ(kernel_basis(m), kb);  // deterministic
        // solve: consistent right-hand sides come from the column space.
        Matrix<F> x0(f, c, 1);
        for (int i = 0; i < c; ++i) x0(i, 0) = f.from_int(static_cast<long long>(rng() % 9) - 4);
        auto b = m * x0;
        auto x = solve(m, b);
        ASSERT_TRUE(x.has_value());
        EXPECT_EQ(m * *x, b);
        Matrix<F> b2(f, r, 1);
        for (int i = 0; i < r; ++i) b2(i, 0) = f.from_int(static_cast<long long>(rng() % 9) - 4);
        auto x2 = solve(m, b2);
        if (x2)
            EXPECT_EQ(m * *x2, b2);
        else
            EXPECT_GT(rank(m.hcat(b2)), rank(m));
    }
}

TEST(ExactlinProperty, RankNullityAndSolveOverQ) { check_rank_nullity(Rationals{}, 21); }
TEST(ExactlinProperty, RankNullityAndSolveOverF32003) { check_rank_nullity(PrimeField(32003), 22); }
TEST(ExactlinProperty, RankNullityAndSolveOverF3) { check_rank_nullity(PrimeField(3), 23); }

template <class F>
void check_sparse_agrees(const F& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int it = 0; it < kIterations; ++it) {
        int r = 1 + rng() % 9, c = 1 + rng() % 9, k = rng() % 6;
        auto m = random_matrix(f, rng, r, c, k);
        auto s = SparseMat<F>::from_dense(m);
        EXPECT_EQ(rank(f, s), rank(m));
        auto ker = kernel(f, s);
        EXPECT_EQ(static_cast<int>(ker.size()), c - rank(m));
        for (const auto& v : ker) EXPECT_TRUE(apply(f, s, v).empty());
    }
}

TEST(SparseProperty, AgreesWithDenseOverQ) { check_sparse_agrees(Rationals{}, 31); }
TEST(SparseProperty, AgreesWithDenseOverF7) { check_sparse_agrees(PrimeField(7), 32); }

TEST(FieldSpec, RejectsComposite) {
    EXPECT_THROW(FieldSpec::prime(32004), std::invalid_argument);
    EXPECT_THROW(FieldSpec::prime(1), std::invalid_argument);
    EXPECT_NO_THROW(FieldSpec::prime(2));
}
