#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dhstab/errors.hpp"

namespace dhstab {

using cdouble = std::complex<double>;

/// Storage mode of a matrix. A real-mode matrix keeps all imaginary parts
/// exactly zero; complex-mode matrices are unrestricted.
enum class Mode { real, cplx };

inline Mode join_modes(Mode a, Mode b) {
    return (a == Mode::cplx || b == Mode::cplx) ? Mode::cplx : Mode::real;
}

/// Dense row-major matrix over complex doubles with a real/complex mode flag.
///
/// This is the single matrix type used throughout the library. Sizes are
/// desk-scale (intended n <= 64); there is no blocking or sparsity.
class Matrix {
  public:
    Matrix() = default;

    Matrix(int rows, int cols, Mode mode = Mode::real)
        : rows_(rows), cols_(cols), mode_(mode), data_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 1 || cols < 1)
            throw DimensionError("matrix dimensions must be >= 1, got " + std::to_string(rows) +
                                 "x" + std::to_string(cols));
    }

    static Matrix zero(int rows, int cols, Mode mode = Mode::real) { return Matrix(rows, cols, mode); }

    static Matrix identity(int n, Mode mode = Mode::real) {
        Matrix m(n, n, mode);
        for (int i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    /// Build a real-mode matrix from nested brace lists (row major).
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const int r = static_cast<int>(rows.size());
        const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
        Matrix m(r, c, Mode::real);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c)
                throw DimensionError("ragged row in matrix literal");
            int j = 0;
            for (double v : row)
                m(i, j++) = v;
            ++i;
        }
        return m;
    }

    static Matrix from_rows_complex(std::initializer_list<std::initializer_list<cdouble>> rows) {
        const int r = static_cast<int>(rows.size());
        const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
        Matrix m(r, c, Mode::cplx);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c)
                throw DimensionError("ragged row in matrix literal");
            int j = 0;
            for (cdouble v : row)
                m(i, j++) = v;
            ++i;
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Mode mode() const { return mode_; }
    bool is_real() const { return mode_ == Mode::real; }
    bool is_square() const { return rows_ == cols_; }
    std::size_t size() const { return data_.size(); }

    cdouble operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    cdouble& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<cdouble>& data() const { return data_; }
    std::vector<cdouble>& data() { return data_; }

    /// Return a complex-mode copy (no-op duplicate if already complex).
    Matrix promoted() const {
        Matrix m = *this;
        m.mode_ = Mode::cplx;
        return m;
    }

    /// Drop imaginary parts and mark the matrix real-mode. Throws if any
    /// imaginary part exceeds `tol` in magnitude.
    Matrix demoted(double tol = 0.0) const {
        Matrix m = *this;
        for (auto& v : m.data_) {
            if (std::abs(v.imag()) > tol)
                throw ModeError("cannot demote: imaginary part " + std::to_string(v.imag()) +
                                " exceeds tolerance");
            v = cdouble(v.real(), 0.0);
        }
        m.mode_ = Mode::real;
        return m;
    }

    /// Zero out imaginary parts when in real mode (used after complex-safe
    /// kernels that may leave signed zeros behind).
    void scrub_real() {
        if (mode_ != Mode::real)
            return;
        for (auto& v : data_)
            v = cdouble(v.real(), 0.0);
    }

    void set_mode(Mode m) { mode_ = m; }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  private:
    int rows_ = 0;
    int cols_ = 0;
    Mode mode_ = Mode::real;
    std::vector<cdouble> data_;
};

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (!a.same_shape(b))
        throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
}

inline void require_square(const Matrix& a, const char* op) {
    if (!a.is_square())
        throw DimensionError(std::string(op) + ": matrix must be square, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "add");
    Matrix r(a.rows(), a.cols(), join_modes(a.mode(), b.mode()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r.data()[i] = a.data()[i] + b.data()[i];
    r.scrub_real();
    return r;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "sub");
    Matrix r(a.rows(), a.cols(), join_modes(a.mode(), b.mode()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r.data()[i] = a.data()[i] - b.data()[i];
    r.scrub_real();
    return r;
}

inline Matrix operator-(const Matrix& a) {
    Matrix r = a;
    for (auto& v : r.data())
        v = -v;
    r.scrub_real();
    return r;
}

inline Matrix operator*(double s, const Matrix& a) {
    Matrix r = a;
    for (auto& v : r.data())
        v *= s;
    r.scrub_real();
    return r;
}

inline Matrix operator*(const Matrix& a, double s) { return s * a; }

inline Matrix operator*(cdouble s, const Matrix& a) {
    Matrix r = (s.imag() == 0.0) ? a : a.promoted();
    for (auto& v : r.data())
        v *= s;
    r.scrub_real();
    return r;
}

/// Matrix product. Real-mode operands take a real-arithmetic fast path.
inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul: inner dimensions differ, " + std::to_string(a.cols()) +
                             " vs " + std::to_string(b.rows()));
    Matrix r(a.rows(), b.cols(), join_modes(a.mode(), b.mode()));
    const int n = a.rows(), k = a.cols(), m = b.cols();
    if (r.is_real()) {
        for (int i = 0; i < n; ++i) {
            for (int p = 0; p < k; ++p) {
                const double aip = a(i, p).real();
                if (aip == 0.0)
                    continue;
                for (int j = 0; j < m; ++j) {
                    cdouble& rij = r(i, j);
                    rij = cdouble(rij.real() + aip * b(p, j).real(), 0.0);
                }
            }
        }
    } else {
        for (int i = 0; i < n; ++i) {
            for (int p = 0; p < k; ++p) {
                const cdouble aip = a(i, p);
                if (aip == 0.0)
                    continue;
                for (int j = 0; j < m; ++j)
                    r(i, j) += aip * b(p, j);
            }
        }
    }
    return r;
}

inline Matrix transpose(const Matrix& a) {
    Matrix r(a.cols(), a.rows(), a.mode());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(j, i) = a(i, j);
    return r;
}

/// Conjugate transpose; equals transpose for real-mode matrices.
inline Matrix conj_transpose(const Matrix& a) {
    Matrix r(a.cols(), a.rows(), a.mode());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(j, i) = std::conj(a(i, j));
    r.scrub_real();
    return r;
}

inline double frob_norm(const Matrix& a) {
    double s = 0.0;
    for (const auto& v : a.data())
        s += std::norm(v);
    return std::sqrt(s);
}

inline double max_abs(const Matrix& a) {
    double m = 0.0;
    for (const auto& v : a.data())
        m = std::max(m, std::abs(v));
    return m;
}

inline cdouble trace(const Matrix& a) {
    require_square(a, "trace");
    cdouble t = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        t += a(i, i);
    return t;
}

/// Kronecker product, (rows_a*rows_b) x (cols_a*cols_b).
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols(), join_modes(a.mode(), b.mode()));
    for (int ia = 0; ia < a.rows(); ++ia) {
        for (int ja = 0; ja < a.cols(); ++ja) {
            const cdouble f = a(ia, ja);
            if (f == 0.0)
                continue;
            for (int ib = 0; ib < b.rows(); ++ib)
                for (int jb = 0; jb < b.cols(); ++jb)
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
        }
    }
    r.scrub_real();
    return r;
}

/// Hermitian part (M + M^H)/2.
inline Matrix sym_part(const Matrix& m) {
    require_square(m, "sym_part");
    Matrix r(m.rows(), m.cols(), m.mode());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    r.scrub_real();
    return r;
}

/// Skew-Hermitian part (M - M^H)/2. sym_part(m) + skew_part(m) == m exactly.
inline Matrix skew_part(const Matrix& m);

/// (Hermitian part, skew part) of a square matrix.
inline std::pair<Matrix, Matrix> split_sym_skew(const Matrix& m) {
    return {sym_part(m), skew_part(m)};
}

inline Matrix skew_part(const Matrix& m) {
    require_square(m, "skew_part");
    Matrix r(m.rows(), m.cols(), m.mode());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r(i, j) = 0.5 * (m(i, j) - std::conj(m(j, i)));
    r.scrub_real();
    return r;
}

inline bool is_hermitian(const Matrix& m, double tol) {
    if (!m.is_square())
        return false;
    double dev = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i; j < m.cols(); ++j)
            dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    return dev <= tol;
}

/// Assemble [[a11, a12], [a21, a22]] from equally sized square blocks.
inline Matrix block2(const Matrix& a11, const Matrix& a12, const Matrix& a21, const Matrix& a22) {
    const int n = a11.rows();
    if (a12.rows() != n || a21.rows() != n || a22.rows() != n || a11.cols() != n ||
        a12.cols() != n || a21.cols() != n || a22.cols() != n)
        throw DimensionError("block2: all blocks must be square of equal size");
    Mode mode = join_modes(join_modes(a11.mode(), a12.mode()), join_modes(a21.mode(), a22.mode()));
    Matrix r(2 * n, 2 * n, mode);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            r(i, j) = a11(i, j);
            r(i, j + n) = a12(i, j);
            r(i + n, j) = a21(i, j);
            r(i + n, j + n) = a22(i, j);
        }
    }
    return r;
}

/// Block-diagonal assembly of square blocks.
inline Matrix block_diag(const std::vector<Matrix>& blocks) {
    if (blocks.empty())
        throw DimensionError("block_diag: empty block list");
    int n = 0;
    Mode mode = Mode::real;
    for (const Matrix& b : blocks) {
        require_square(b, "block_diag");
        n += b.rows();
        mode = join_modes(mode, b.mode());
    }
    Matrix r = Matrix::zero(n, n, mode);
    int off = 0;
    for (const Matrix& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j)
                r(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return r;
}

inline std::string to_string(const Matrix& m, int precision = 6) {
    std::ostringstream os;
    os.precision(precision);
    for (int i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < m.cols(); ++j) {
            cdouble v = m(i, j);
            if (m.is_real())
                os << v.real();
            else
                os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
            if (j + 1 < m.cols())
                os << ", ";
        }
        os << (i + 1 < m.rows() ? ";\n" : "]");
    }
    return os.str();
}

} // namespace dhstab
