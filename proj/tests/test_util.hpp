#pragma once

#include <gtest/gtest.h>

#include "dhstab/dh.hpp"
#include "dhstab/matrix.hpp"
#include "dhstab/rng.hpp"

namespace dhstab::testutil {

inline double mat_dist(const Matrix& a, const Matrix& b) { return frob_norm(a - b); }

inline void expect_near_mat(const Matrix& a, const Matrix& b, double tol,
                            const char* what = "matrices") {
    ASSERT_EQ(a.rows(), b.rows());
    ASSERT_EQ(a.cols(), b.cols());
    EXPECT_LE(mat_dist(a, b), tol) << what << " differ:\n"
                                   << to_string(a) << "\nvs\n"
                                   << to_string(b);
}

inline Matrix random_real(GaussianStream& g, int rows, int cols) { return g.matrix(rows, cols); }

inline Matrix random_cplx(GaussianStream& g, int rows, int cols) {
    Matrix re = g.matrix(rows, cols);
    Matrix im = g.matrix(rows, cols);
    Matrix m(rows, cols, Mode::cplx);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = cdouble(re(i, j).real(), im(i, j).real());
    return m;
}

inline Matrix random_sym(GaussianStream& g, int n, Mode mode) {
    Matrix m = (mode == Mode::real) ? random_real(g, n, n) : random_cplx(g, n, n);
    return sym_part(m);
}

inline Matrix random_skew(GaussianStream& g, int n, Mode mode) {
    Matrix m = (mode == Mode::real) ? random_real(g, n, n) : random_cplx(g, n, n);
    return skew_part(m);
}

/// Well-conditioned random positive definite matrix G G^H + I.
inline Matrix random_pd(GaussianStream& g, int n, Mode mode) {
    Matrix m = (mode == Mode::real) ? random_real(g, n, n) : random_cplx(g, n, n);
    return sym_part(m * conj_transpose(m) + Matrix::identity(n, mode));
}

/// Random structurally valid triplet (feasibility for a region not implied).
inline DHTriplet random_triplet(GaussianStream& g, int n, Mode mode) {
    return DHTriplet{random_skew(g, n, mode), random_sym(g, n, mode), random_pd(g, n, mode)};
}

/// Spectral norm via the Hermitian eigensolver.
inline double spec_norm(const Matrix& a) {
    return std::sqrt(lambda_max(sym_part(conj_transpose(a) * a)));
}

} // namespace dhstab::testutil
