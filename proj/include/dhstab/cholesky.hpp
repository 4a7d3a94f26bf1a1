#pragma once

#include <cmath>

#include "dhstab/matrix.hpp"

namespace dhstab {

/// Lower-triangular Cholesky factor of a Hermitian positive definite matrix,
/// P = L L^H. Construction throws NotPositiveDefiniteError when a pivot is
/// not strictly positive.
class CholeskyFactor {
  public:
    explicit CholeskyFactor(const Matrix& p_in) : l_(sym_part(p_in)) {
        require_square(p_in, "cholesky");
        const int n = l_.rows();
        for (int j = 0; j < n; ++j) {
            double d = l_(j, j).real();
            for (int k = 0; k < j; ++k)
                d -= std::norm(l_(j, k));
            if (!(d > 0.0))
                throw NotPositiveDefiniteError("cholesky: pivot " + std::to_string(j) +
                                               " is " + std::to_string(d));
            const double ljj = std::sqrt(d);
            l_(j, j) = ljj;
            for (int i = j + 1; i < n; ++i) {
                cdouble s = l_(i, j);
                for (int k = 0; k < j; ++k)
                    s -= l_(i, k) * std::conj(l_(j, k));
                l_(i, j) = s / ljj;
            }
            for (int i = 0; i < j; ++i)
                l_(i, j) = 0.0;
        }
    }

    const Matrix& lower() const { return l_; }
    int dim() const { return l_.rows(); }

    /// Solves P X = B for X.
    Matrix solve(const Matrix& b) const {
        if (b.rows() != l_.rows())
            throw DimensionError("cholesky solve: rhs has " + std::to_string(b.rows()) +
                                 " rows, factor has " + std::to_string(l_.rows()));
        const int n = l_.rows(), m = b.cols();
        Matrix x = (l_.mode() == Mode::cplx) ? b.promoted() : b;
        // forward: L y = b
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < n; ++i) {
                cdouble s = x(i, j);
                for (int k = 0; k < i; ++k)
                    s -= l_(i, k) * x(k, j);
                x(i, j) = s / l_(i, i);
            }
            // backward: L^H x = y
            for (int i = n - 1; i >= 0; --i) {
                cdouble s = x(i, j);
                for (int k = i + 1; k < n; ++k)
                    s -= std::conj(l_(k, i)) * x(k, j);
                x(i, j) = s / l_(i, i);
            }
        }
        if (x.is_real())
            x.scrub_real();
        return x;
    }

    /// log(det P) from the factor diagonal.
    double log_det() const {
        double s = 0.0;
        for (int i = 0; i < l_.rows(); ++i)
            s += std::log(l_(i, i).real());
        return 2.0 * s;
    }

  private:
    Matrix l_;
};

/// One-shot solve of P X = B with P Hermitian positive definite.
inline Matrix chol_solve(const Matrix& p, const Matrix& b) {
    return CholeskyFactor(p).solve(b);
}

/// Inverse of a Hermitian positive definite matrix.
inline Matrix chol_inverse(const Matrix& p) {
    return CholeskyFactor(p).solve(Matrix::identity(p.rows(), p.mode()));
}

} // namespace dhstab
