#include <gtest/gtest.h>

#include <cmath>

#include "dhstab/eig.hpp"
#include "test_util.hpp"

using namespace dhstab;
using testutil::expect_near_mat;

namespace {

// Independent determinant oracle: partial-pivot LU, no shared code with the
// QR eigensolver.
cdouble det_lu(const Matrix& m) {
    const int n = m.rows();
    Matrix a = m.promoted();
    cdouble det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k)))
                piv = i;
        if (std::abs(a(piv, k)) == 0.0)
            return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        det *= a(k, k);
        for (int i = k + 1; i < n; ++i) {
            cdouble f = a(i, k) / a(k, k);
            for (int j = k + 1; j < n; ++j)
                a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

Matrix reconstruct(const EigResult& r) {
    const Matrix& v = *r.vectors;
    const int n = v.rows();
    Matrix lam = Matrix::zero(n, n, v.mode());
    for (int i = 0; i < n; ++i)
        lam(i, i) = r.values[i];
    return v * lam * conj_transpose(v);
}

} // namespace

TEST(HermEig, DiagonalInput) {
    EigResult r = herm_eig(Matrix::from_rows({{3, 0}, {0, -1}}));
    ASSERT_EQ(r.values.size(), 2u);
    EXPECT_DOUBLE_EQ(r.values[0].real(), 3.0);
    EXPECT_DOUBLE_EQ(r.values[1].real(), -1.0);
}

TEST(HermEig, ExchangeMatrix) {
    EigResult r = herm_eig(Matrix::from_rows({{0, 1}, {1, 0}}));
    EXPECT_NEAR(r.values[0].real(), 1.0, 1e-14);
    EXPECT_NEAR(r.values[1].real(), -1.0, 1e-14);
}

TEST(HermEig, TwoByTwoCharPoly) {
    // characteristic polynomial lambda^2 - 4 lambda + 3 -> roots 3, 1
    EigResult r = herm_eig(Matrix::from_rows({{2, 1}, {1, 2}}));
    EXPECT_NEAR(r.values[0].real(), 3.0, 1e-13);
    EXPECT_NEAR(r.values[1].real(), 1.0, 1e-13);
}

TEST(HermEig, ComplexPauliLike) {
    Matrix m = Matrix::from_rows_complex({{{0, 0}, {0, 1}}, {{0, -1}, {0, 0}}});
    EigResult r = herm_eig(m);
    EXPECT_NEAR(r.values[0].real(), 1.0, 1e-14);
    EXPECT_NEAR(r.values[1].real(), -1.0, 1e-14);
    // char poly of [[2, 1-i], [1+i, 3]]: lambda^2 - 5 lambda + 4 -> 4, 1
    Matrix m2 = Matrix::from_rows_complex({{{2, 0}, {1, -1}}, {{1, 1}, {3, 0}}});
    EigResult r2 = herm_eig(m2);
    EXPECT_NEAR(r2.values[0].real(), 4.0, 1e-13);
    EXPECT_NEAR(r2.values[1].real(), 1.0, 1e-13);
}

TEST(HermEig, RandomReconstructionReal) {
    GaussianStream g(301);
    for (int n : {2, 7, 17, 40}) {
        Matrix m = testutil::random_sym(g, n, Mode::real);
        EigResult r = herm_eig(m);
        const double scale = 1.0 + frob_norm(m);
        expect_near_mat(reconstruct(r), m, 1e-9 * scale, "herm_eig reconstruction");
        expect_near_mat(conj_transpose(*r.vectors) * *r.vectors, Matrix::identity(n, Mode::real),
                        1e-10, "orthonormality");
        EXPECT_LE(r.residual, 1e-10 * scale);
        for (std::size_t i = 1; i < r.values.size(); ++i)
            EXPECT_GE(r.values[i - 1].real(), r.values[i].real());
        for (cdouble v : r.values)
            EXPECT_EQ(v.imag(), 0.0);
    }
}

TEST(HermEig, RandomReconstructionComplex) {
    GaussianStream g(302);
    for (int n : {2, 6, 25}) {
        Matrix m = testutil::random_sym(g, n, Mode::cplx);
        EigResult r = herm_eig(m);
        const double scale = 1.0 + frob_norm(m);
        expect_near_mat(reconstruct(r), m, 1e-9 * scale, "herm_eig reconstruction");
        expect_near_mat(conj_transpose(*r.vectors) * *r.vectors, Matrix::identity(n, Mode::cplx),
                        1e-10, "orthonormality");
        EXPECT_LE(r.residual, 1e-10 * scale);
    }
}

TEST(HermEig, NonSquareRejected) {
    EXPECT_THROW(herm_eig(Matrix(2, 3)), DimensionError);
}

TEST(HermEig, ZeroMatrix) {
    EigResult r = herm_eig(Matrix::zero(3, 3, Mode::real));
    for (cdouble v : r.values)
        EXPECT_EQ(v, cdouble(0.0));
}

TEST(GeneralEig, RotationMatrix) {
    EigResult r = general_eig(Matrix::from_rows({{0, 1}, {-1, 0}}));
    ASSERT_EQ(r.values.size(), 2u);
    EXPECT_NEAR(r.values[0].real(), 0.0, 1e-14);
    EXPECT_NEAR(r.values[0].imag(), 1.0, 1e-14);
    EXPECT_NEAR(r.values[1].imag(), -1.0, 1e-14);
}

TEST(GeneralEig, Scalar) {
    EigResult r = general_eig(Matrix::from_rows({{2}}));
    EXPECT_EQ(r.values[0], cdouble(2.0));
}

TEST(GeneralEig, CompanionCharPoly) {
    // lambda^2 + lambda + 1 = 0 -> (-1 +- i sqrt 3)/2
    EigResult r = general_eig(Matrix::from_rows({{0, 1}, {-1, -1}}));
    const double s3 = std::sqrt(3.0) / 2.0;
    EXPECT_NEAR(r.values[0].real(), -0.5, 1e-12);
    EXPECT_NEAR(r.values[0].imag(), s3, 1e-12);
    EXPECT_NEAR(r.values[1].real(), -0.5, 1e-12);
    EXPECT_NEAR(r.values[1].imag(), -s3, 1e-12);
}

TEST(GeneralEig, DefectiveJordanBlock) {
    EigResult r = general_eig(Matrix::from_rows({{1, 1}, {0, 1}}));
    EXPECT_NEAR(r.values[0].real(), 1.0, 1e-7);
    EXPECT_NEAR(r.values[1].real(), 1.0, 1e-7);
}

TEST(GeneralEig, TraceAndDeterminant) {
    GaussianStream g(303);
    for (int n : {2, 5, 11, 20}) {
        for (Mode mode : {Mode::real, Mode::cplx}) {
            Matrix m = (mode == Mode::real) ? testutil::random_real(g, n, n)
                                            : testutil::random_cplx(g, n, n);
            EigResult r = general_eig(m, false);
            const double tol = 1e-8 * (1.0 + frob_norm(m));
            cdouble sum = 0.0, prod = 1.0;
            for (cdouble v : r.values) {
                sum += v;
                prod *= v;
            }
            EXPECT_LE(std::abs(sum - trace(m)), tol) << "trace mismatch, n=" << n;
            cdouble det = det_lu(m);
            EXPECT_LE(std::abs(prod - det), 1e-8 * (1.0 + std::abs(det)) * (1.0 + frob_norm(m)))
                << "det mismatch, n=" << n;
        }
    }
}

TEST(GeneralEig, EigenvectorResiduals) {
    GaussianStream g(304);
    for (Mode mode : {Mode::real, Mode::cplx}) {
        Matrix m = (mode == Mode::real) ? testutil::random_real(g, 12, 12)
                                        : testutil::random_cplx(g, 12, 12);
        EigResult r = general_eig(m);
        ASSERT_TRUE(r.vectors.has_value());
        EXPECT_LE(r.residual, 1e-8 * (1.0 + frob_norm(m)));
    }
}

TEST(GeneralEig, OrderingDeterministic) {
    Matrix m = Matrix::from_rows({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
    EigResult r = general_eig(m, false);
    // eigenvalues i, -i, 0: descending by re then by im
    EXPECT_NEAR(r.values[0].imag(), 1.0, 1e-12);
    EXPECT_NEAR(r.values[1].imag(), 0.0, 1e-12);
    EXPECT_NEAR(r.values[2].imag(), -1.0, 1e-12);
}

TEST(GeneralEig, HermitianAgreesWithJacobi) {
    GaussianStream g(305);
    Matrix m = testutil::random_sym(g, 9, Mode::real);
    EigResult qr = general_eig(m, false);
    EigResult jac = herm_eig(m, false);
    for (int i = 0; i < 9; ++i) {
        EXPECT_NEAR(qr.values[i].real(), jac.values[i].real(), 1e-9 * (1.0 + frob_norm(m)));
        EXPECT_NEAR(qr.values[i].imag(), 0.0, 1e-9 * (1.0 + frob_norm(m)));
    }
}
