#include <gtest/gtest.h>

#include "dhstab/cholesky.hpp"
#include "dhstab/matrix.hpp"
#include "dhstab/rng.hpp"
#include "test_util.hpp"

using namespace dhstab;
using testutil::expect_near_mat;

TEST(Matrix, ConstructionValidates) {
    EXPECT_THROW(Matrix(0, 3), DimensionError);
    EXPECT_THROW(Matrix(3, 0), DimensionError);
    Matrix m(2, 3);
    EXPECT_EQ(m.rows(), 2);
    EXPECT_EQ(m.cols(), 3);
    EXPECT_EQ(m.size(), 6u);
    EXPECT_TRUE(m.is_real());
}

TEST(Matrix, RealModeKeepsImagExactlyZero) {
    Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            EXPECT_EQ(m(i, j).imag(), 0.0);
    Matrix p = m.promoted();
    EXPECT_FALSE(p.is_real());
    Matrix d = p.demoted(0.0);
    EXPECT_TRUE(d.is_real());
}

TEST(Matrix, Arithmetic) {
    Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
    Matrix b = Matrix::from_rows({{5, 6}, {7, 8}});
    expect_near_mat(a * b, Matrix::from_rows({{19, 22}, {43, 50}}), 0.0);
    expect_near_mat(a + b, Matrix::from_rows({{6, 8}, {10, 12}}), 0.0);
    expect_near_mat(b - a, Matrix::from_rows({{4, 4}, {4, 4}}), 0.0);
    expect_near_mat(2.0 * a, Matrix::from_rows({{2, 4}, {6, 8}}), 0.0);
    EXPECT_EQ(trace(a), cdouble(5.0));
    EXPECT_DOUBLE_EQ(frob_norm(Matrix::from_rows({{3, 4}})), 5.0);
    EXPECT_DOUBLE_EQ(max_abs(a), 4.0);
}

TEST(Matrix, ComplexScalarPromotes) {
    Matrix a = Matrix::from_rows({{1, 0}, {0, 1}});
    Matrix ia = cdouble(0, 1) * a;
    EXPECT_FALSE(ia.is_real());
    EXPECT_EQ(ia(0, 0), cdouble(0, 1));
    Matrix still_real = cdouble(2, 0) * a;
    EXPECT_TRUE(still_real.is_real());
}

TEST(Matrix, ConjTranspose) {
    Matrix m = Matrix::from_rows_complex({{{1, 2}, {3, -1}}, {{0, 0}, {5, 4}}});
    Matrix h = conj_transpose(m);
    EXPECT_EQ(h(0, 0), cdouble(1, -2));
    EXPECT_EQ(h(1, 0), cdouble(3, 1));
    EXPECT_EQ(h(0, 1), cdouble(0, 0));
    EXPECT_EQ(h(1, 1), cdouble(5, -4));
    Matrix r = Matrix::from_rows({{1, 2}, {3, 4}});
    expect_near_mat(transpose(r), Matrix::from_rows({{1, 3}, {2, 4}}), 0.0);
}

TEST(Matrix, KronIdentityFactor) {
    Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
    Matrix k = kron(Matrix::identity(2, Mode::real), m);
    Matrix expected = Matrix::zero(4, 4, Mode::real);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            expected(i, j) = m(i, j);
            expected(i + 2, j + 2) = m(i, j);
        }
    expect_near_mat(k, expected, 0.0);
}

TEST(Matrix, KronScalarFactor) {
    Matrix k = kron(Matrix::from_rows({{0, 1}, {0, 0}}), Matrix::from_rows({{5}}));
    expect_near_mat(k, Matrix::from_rows({{0, 5}, {0, 0}}), 0.0);
}

TEST(Matrix, KronDirectExpansion) {
    Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
    Matrix b = Matrix::from_rows({{0, 1}, {1, 0}});
    Matrix k = kron(a, b);
    EXPECT_EQ(k(0, 0), cdouble(0.0));
    EXPECT_EQ(k(0, 1), cdouble(1.0));
    expect_near_mat(k, Matrix::from_rows({{0, 1, 0, 2}, {1, 0, 2, 0}, {0, 3, 0, 4}, {3, 0, 4, 0}}),
                    0.0);
}

TEST(Matrix, KronMixedProductProperty) {
    GaussianStream g(11);
    for (int rep = 0; rep < 5; ++rep) {
        Matrix a = testutil::random_real(g, 3, 4), c = testutil::random_real(g, 4, 2);
        Matrix b = testutil::random_cplx(g, 2, 3), d = testutil::random_cplx(g, 3, 2);
        expect_near_mat(kron(a, b) * kron(c, d), kron(a * c, b * d), 1e-12,
                        "kron mixed product");
    }
}

TEST(Matrix, SplitSymSkew) {
    Matrix m = Matrix::from_rows({{1, 2}, {0, 1}});
    auto [s, k] = split_sym_skew(m);
    expect_near_mat(s, Matrix::from_rows({{1, 1}, {1, 1}}), 0.0);
    expect_near_mat(k, Matrix::from_rows({{0, 1}, {-1, 0}}), 0.0);
    expect_near_mat(s + k, m, 0.0);

    Matrix sym = Matrix::from_rows({{2, 5}, {5, -1}});
    auto [s2, k2] = split_sym_skew(sym);
    expect_near_mat(s2, sym, 0.0);
    EXPECT_DOUBLE_EQ(frob_norm(k2), 0.0);

    Matrix skew = Matrix::from_rows({{0, 3}, {-3, 0}});
    auto [s3, k3] = split_sym_skew(skew);
    EXPECT_DOUBLE_EQ(frob_norm(s3), 0.0);
    expect_near_mat(k3, skew, 0.0);
}

TEST(Matrix, SplitSymSkewComplex) {
    GaussianStream g(7);
    Matrix m = testutil::random_cplx(g, 5, 5);
    auto [s, k] = split_sym_skew(m);
    EXPECT_LE(frob_norm(s - conj_transpose(s)), 1e-15);
    EXPECT_LE(frob_norm(k + conj_transpose(k)), 1e-15);
    expect_near_mat(s + k, m, 1e-15 * frob_norm(m), "sym+skew reassembly");
}

TEST(Matrix, BlockHelpers) {
    Matrix a = Matrix::from_rows({{1}});
    Matrix b = Matrix::from_rows({{2}});
    expect_near_mat(block2(a, b, b, a), Matrix::from_rows({{1, 2}, {2, 1}}), 0.0);
    Matrix d = block_diag({Matrix::from_rows({{1, 1}, {1, 1}}), Matrix::from_rows({{7}})});
    expect_near_mat(d, Matrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 7}}), 0.0);
    EXPECT_THROW(block_diag({}), DimensionError);
}

TEST(Matrix, HermitianCheck) {
    EXPECT_TRUE(is_hermitian(Matrix::from_rows({{1, 2}, {2, 3}}), 0.0));
    EXPECT_FALSE(is_hermitian(Matrix::from_rows({{1, 2}, {0, 3}}), 1e-12));
    Matrix h = Matrix::from_rows_complex({{{1, 0}, {2, 1}}, {{2, -1}, {0, 0}}});
    EXPECT_TRUE(is_hermitian(h, 0.0));
}

TEST(Cholesky, TrivialSolves) {
    Matrix b = Matrix::from_rows({{1, 2}, {3, 4}});
    expect_near_mat(chol_solve(Matrix::identity(2, Mode::real), b), b, 1e-14);
    expect_near_mat(chol_solve(Matrix::from_rows({{4}}), Matrix::from_rows({{2}})),
                    Matrix::from_rows({{0.5}}), 1e-15);
}

TEST(Cholesky, TwoByTwoInverse) {
    Matrix p = Matrix::from_rows({{2, 1}, {1, 2}});
    Matrix x = chol_solve(p, Matrix::identity(2, Mode::real));
    expect_near_mat(x, (1.0 / 3.0) * Matrix::from_rows({{2, -1}, {-1, 2}}), 1e-14);
}

TEST(Cholesky, SolveAgainstItselfGivesIdentity) {
    GaussianStream g(23);
    for (Mode mode : {Mode::real, Mode::cplx}) {
        for (int n : {1, 4, 9}) {
            Matrix p = testutil::random_pd(g, n, mode);
            expect_near_mat(chol_solve(p, p), Matrix::identity(n, mode), 1e-10,
                            "chol_solve(P, P)");
            Matrix b = (mode == Mode::real) ? testutil::random_real(g, n, 2)
                                            : testutil::random_cplx(g, n, 2);
            Matrix x = chol_solve(p, b);
            EXPECT_LE(frob_norm(p * x - b), 1e-10 * (1.0 + frob_norm(b)));
        }
    }
}

TEST(Cholesky, RejectsIndefinite) {
    EXPECT_THROW(chol_solve(Matrix::from_rows({{1, 2}, {2, 1}}), Matrix::identity(2, Mode::real)),
                 NotPositiveDefiniteError);
    EXPECT_THROW(CholeskyFactor(Matrix::from_rows({{0}})), NotPositiveDefiniteError);
}

TEST(Rng, DeterministicAndPortable) {
    GaussianStream a(42), b(42);
    for (int i = 0; i < 100; ++i)
        EXPECT_EQ(a.next(), b.next());
    GaussianStream c(43);
    bool same = true;
    GaussianStream a2(42);
    for (int i = 0; i < 10; ++i)
        same = same && (a2.next() == c.next());
    EXPECT_FALSE(same);
}

TEST(Rng, RowMajorFillAndMoments) {
    GaussianStream g(5);
    std::vector<double> seq;
    for (int i = 0; i < 6; ++i)
        seq.push_back(g.next());
    GaussianStream g2(5);
    Matrix m = g2.matrix(2, 3);
    int k = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_EQ(m(i, j).real(), seq[k++]);

    GaussianStream g3(99);
    double sum = 0.0, sq = 0.0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        double x = g3.next();
        sum += x;
        sq += x * x;
    }
    EXPECT_NEAR(sum / draws, 0.0, 0.05);
    EXPECT_NEAR(sq / draws, 1.0, 0.05);
}
