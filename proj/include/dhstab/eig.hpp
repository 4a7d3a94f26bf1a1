#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "dhstab/matrix.hpp"

namespace dhstab {

/// Eigendecomposition result. `values` are sorted by descending real part,
/// ties broken by descending imaginary part. For Hermitian input all values
/// have zero imaginary part. `residual` is a bound on
/// max_i ||A v_i - lambda_i v_i|| / (1 + ||A||_F).
struct EigResult {
    std::vector<cdouble> values;
    std::optional<Matrix> vectors; // column eigenvectors
    double residual = 0.0;
};

namespace detail {

inline void sort_descending(std::vector<cdouble>& values, Matrix* vectors) {
    const int n = static_cast<int>(values.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (values[a].real() != values[b].real())
            return values[a].real() > values[b].real();
        return values[a].imag() > values[b].imag();
    });
    std::vector<cdouble> sorted(n);
    for (int i = 0; i < n; ++i)
        sorted[i] = values[perm[i]];
    values = std::move(sorted);
    if (vectors) {
        Matrix v(vectors->rows(), n, vectors->mode());
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < vectors->rows(); ++i)
                v(i, j) = (*vectors)(i, perm[j]);
        *vectors = std::move(v);
    }
}

// Cyclic Jacobi on a real symmetric matrix held in a flat double buffer.
// Off-diagonal Frobenius mass below `tol_off` terminates the sweep loop.
inline void jacobi_real(std::vector<double>& a, int n, std::vector<double>* v, double tol_off,
                        int max_sweeps, double& off_out) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    auto off_fro = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                s += 2.0 * at(i, j) * at(i, j);
        return std::sqrt(s);
    };
    double off = off_fro();
    int sweep = 0;
    while (off > tol_off && sweep < max_sweeps) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (apq == 0.0)
                    continue;
                double app = at(p, p), aqq = at(q, q);
                // drop elements that can no longer affect the diagonal
                if (sweep > 3 && std::abs(apq) <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
                    at(p, q) = at(q, p) = 0.0;
                    continue;
                }
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = at(q, p) = 0.0;
                if (v) {
                    for (int k = 0; k < n; ++k) {
                        double vkp = (*v)[static_cast<std::size_t>(k) * n + p];
                        double vkq = (*v)[static_cast<std::size_t>(k) * n + q];
                        (*v)[static_cast<std::size_t>(k) * n + p] = c * vkp - s * vkq;
                        (*v)[static_cast<std::size_t>(k) * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        off = off_fro();
        ++sweep;
    }
    off_out = off;
    if (off > tol_off)
        throw ConvergenceError("jacobi_real: no convergence after " + std::to_string(max_sweeps) +
                               " sweeps");
}

// Complex Hermitian Jacobi. The off-diagonal phase is absorbed into the
// rotation so the 2x2 subproblem reduces to the real case.
inline void jacobi_complex(std::vector<cdouble>& a, int n, std::vector<cdouble>* v, double tol_off,
                           int max_sweeps, double& off_out) {
    auto at = [&](int i, int j) -> cdouble& { return a[static_cast<std::size_t>(i) * n + j]; };
    auto off_fro = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                s += 2.0 * std::norm(at(i, j));
        return std::sqrt(s);
    };
    double off = off_fro();
    int sweep = 0;
    while (off > tol_off && sweep < max_sweeps) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                cdouble apq = at(p, q);
                double b = std::abs(apq);
                if (b == 0.0)
                    continue;
                double app = at(p, p).real(), aqq = at(q, q).real();
                if (sweep > 3 && b <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
                    at(p, q) = at(q, p) = 0.0;
                    continue;
                }
                cdouble u = apq / b;
                double tau = (aqq - app) / (2.0 * b);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                const cdouble uc = u * c, us = u * s;
                // A <- G^H A G with G = [[u c, u s], [-s, c]] in the (p,q) plane
                for (int k = 0; k < n; ++k) {
                    cdouble akp = at(k, p), akq = at(k, q);
                    at(k, p) = uc * akp - s * akq;
                    at(k, q) = us * akp + c * akq;
                }
                const cdouble cu = std::conj(u);
                for (int k = 0; k < n; ++k) {
                    cdouble apk = at(p, k), aqk = at(q, k);
                    at(p, k) = cu * c * apk - s * aqk;
                    at(q, k) = cu * s * apk + c * aqk;
                }
                at(p, p) = app - t * b;
                at(q, q) = aqq + t * b;
                at(p, q) = at(q, p) = 0.0;
                if (v) {
                    for (int k = 0; k < n; ++k) {
                        cdouble vkp = (*v)[static_cast<std::size_t>(k) * n + p];
                        cdouble vkq = (*v)[static_cast<std::size_t>(k) * n + q];
                        (*v)[static_cast<std::size_t>(k) * n + p] = uc * vkp - s * vkq;
                        (*v)[static_cast<std::size_t>(k) * n + q] = us * vkp + c * vkq;
                    }
                }
            }
        }
        off = off_fro();
        ++sweep;
    }
    off_out = off;
    if (off > tol_off)
        throw ConvergenceError("jacobi_complex: no convergence after " +
                               std::to_string(max_sweeps) + " sweeps");
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// The input is symmetrized internally; eigenvalues are real and sorted
/// descending; eigenvectors (columns) are orthonormal.
inline EigResult herm_eig(const Matrix& m_in, bool with_vectors = true) {
    require_square(m_in, "herm_eig");
    const int n = m_in.rows();
    const Matrix m = sym_part(m_in);
    const double scale = frob_norm(m);
    const double tol_off = 1e-14 * scale;
    const int max_sweeps = 128;

    EigResult res;
    res.values.resize(n);
    double off = 0.0;
    if (m.is_real()) {
        std::vector<double> a(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a[static_cast<std::size_t>(i) * n + j] = m(i, j).real();
        std::vector<double> v;
        if (with_vectors) {
            v.assign(static_cast<std::size_t>(n) * n, 0.0);
            for (int i = 0; i < n; ++i)
                v[static_cast<std::size_t>(i) * n + i] = 1.0;
        }
        detail::jacobi_real(a, n, with_vectors ? &v : nullptr, tol_off, max_sweeps, off);
        for (int i = 0; i < n; ++i)
            res.values[i] = a[static_cast<std::size_t>(i) * n + i];
        if (with_vectors) {
            Matrix vm(n, n, Mode::real);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    vm(i, j) = v[static_cast<std::size_t>(i) * n + j];
            res.vectors = std::move(vm);
        }
    } else {
        std::vector<cdouble> a(m.data());
        std::vector<cdouble> v;
        if (with_vectors) {
            v.assign(static_cast<std::size_t>(n) * n, cdouble(0.0));
            for (int i = 0; i < n; ++i)
                v[static_cast<std::size_t>(i) * n + i] = 1.0;
        }
        detail::jacobi_complex(a, n, with_vectors ? &v : nullptr, tol_off, max_sweeps, off);
        for (int i = 0; i < n; ++i)
            res.values[i] = a[static_cast<std::size_t>(i) * n + i].real();
        if (with_vectors) {
            Matrix vm(n, n, Mode::cplx);
            vm.data() = std::move(v);
            res.vectors = std::move(vm);
        }
    }
    res.residual = off / (1.0 + scale);
    detail::sort_descending(res.values, res.vectors ? &*res.vectors : nullptr);
    return res;
}

/// Largest eigenvalue of a Hermitian matrix.
inline double lambda_max(const Matrix& m) { return herm_eig(m, false).values.front().real(); }

/// Smallest eigenvalue of a Hermitian matrix.
inline double lambda_min(const Matrix& m) { return herm_eig(m, false).values.back().real(); }

namespace detail {

// c real >= 0 and s complex with c^2+|s|^2 = 1 such that
// [c s; -conj(s) c] [x; y] = [r; 0].
inline void cgivens(cdouble x, cdouble y, double& c, cdouble& s) {
    double ax = std::abs(x), ay = std::abs(y);
    if (ay == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    if (ax == 0.0) {
        c = 0.0;
        s = std::conj(y) / ay;
        return;
    }
    double d = std::hypot(ax, ay);
    c = ax / d;
    s = (x / ax) * std::conj(y) / d;
}

} // namespace detail

/// Eigenvalues (and eigenvectors) of a general square matrix: complex
/// Hessenberg reduction followed by implicit single-shift QR with Wilkinson
/// shifts. Real input is promoted to complex arithmetic internally.
/// Throws ConvergenceError (with the already-deflated eigenvalues attached)
/// if the iteration cap of 100*n is exceeded.
inline EigResult general_eig(const Matrix& m_in, bool with_vectors = true) {
    require_square(m_in, "general_eig");
    const int n = m_in.rows();
    const double scale = frob_norm(m_in);
    Matrix h = m_in.promoted();
    Matrix u = Matrix::identity(n, Mode::cplx);

    // Householder reduction to upper Hessenberg form, accumulating u.
    for (int k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (int i = k + 1; i < n; ++i)
            xnorm += std::norm(h(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0)
            continue;
        cdouble x0 = h(k + 1, k);
        cdouble phase = (std::abs(x0) == 0.0) ? cdouble(1.0) : x0 / std::abs(x0);
        cdouble alpha = -phase * xnorm;
        std::vector<cdouble> w(n, cdouble(0.0));
        for (int i = k + 1; i < n; ++i)
            w[i] = h(i, k);
        w[k + 1] -= alpha;
        double wnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i)
            wnorm2 += std::norm(w[i]);
        if (wnorm2 == 0.0)
            continue;
        const double beta = 2.0 / wnorm2;
        // h <- (I - beta w w^H) h
        for (int j = k; j < n; ++j) {
            cdouble dot = 0.0;
            for (int i = k + 1; i < n; ++i)
                dot += std::conj(w[i]) * h(i, j);
            dot *= beta;
            for (int i = k + 1; i < n; ++i)
                h(i, j) -= dot * w[i];
        }
        // h <- h (I - beta w w^H)
        for (int i = 0; i < n; ++i) {
            cdouble dot = 0.0;
            for (int j = k + 1; j < n; ++j)
                dot += h(i, j) * w[j];
            dot *= beta;
            for (int j = k + 1; j < n; ++j)
                h(i, j) -= dot * std::conj(w[j]);
        }
        for (int i = 0; i < n; ++i) {
            cdouble dot = 0.0;
            for (int j = k + 1; j < n; ++j)
                dot += u(i, j) * w[j];
            dot *= beta;
            for (int j = k + 1; j < n; ++j)
                u(i, j) -= dot * std::conj(w[j]);
        }
        for (int i = k + 2; i < n; ++i)
            h(i, k) = 0.0;
    }

    const double eps = 2.2e-16;
    const int iter_cap = 100 * n;
    int iters = 0;
    int hi = n - 1;
    int stagnation = 0;

    auto subdiag_small = [&](int i) {
        double bound = eps * (std::abs(h(i - 1, i - 1)) + std::abs(h(i, i)));
        if (bound == 0.0)
            bound = eps * scale;
        return std::abs(h(i, i - 1)) <= bound;
    };

    while (hi > 0) {
        // deflate converged trailing entries
        if (subdiag_small(hi)) {
            h(hi, hi - 1) = 0.0;
            --hi;
            stagnation = 0;
            continue;
        }
        int lo = hi;
        while (lo > 0 && !subdiag_small(lo))
            --lo;
        if (lo > 0)
            h(lo, lo - 1) = 0.0;

        if (++iters > iter_cap) {
            std::vector<cdouble> partial;
            for (int i = hi + 1; i < n; ++i)
                partial.push_back(h(i, i));
            throw ConvergenceError("general_eig: QR iteration cap " + std::to_string(iter_cap) +
                                       " exceeded",
                                   std::move(partial));
        }

        // Wilkinson shift from the trailing 2x2 block, or an exceptional
        // shift if progress has stalled.
        cdouble mu;
        if (++stagnation % 12 == 0) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            cdouble a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
            cdouble c = h(hi, hi - 1), d = h(hi, hi);
            cdouble tr2 = 0.5 * (a + d);
            cdouble disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
            cdouble r1 = tr2 + disc, r2 = tr2 - disc;
            mu = (std::abs(r1 - d) < std::abs(r2 - d)) ? r1 : r2;
        }

        // implicit single-shift sweep over [lo, hi]
        cdouble x = h(lo, lo) - mu;
        cdouble y = h(lo + 1, lo);
        for (int k = lo; k < hi; ++k) {
            double c;
            cdouble s;
            detail::cgivens(x, y, c, s);
            const int jstart = std::max(lo, k - 1);
            for (int j = jstart; j < n; ++j) {
                cdouble hkj = h(k, j), hk1j = h(k + 1, j);
                h(k, j) = c * hkj + s * hk1j;
                h(k + 1, j) = -std::conj(s) * hkj + c * hk1j;
            }
            const int iend = std::min(k + 2, hi);
            for (int i = 0; i <= iend; ++i) {
                cdouble hik = h(i, k), hik1 = h(i, k + 1);
                h(i, k) = c * hik + std::conj(s) * hik1;
                h(i, k + 1) = -s * hik + c * hik1;
            }
            for (int i = 0; i < n; ++i) {
                cdouble uik = u(i, k), uik1 = u(i, k + 1);
                u(i, k) = c * uik + std::conj(s) * uik1;
                u(i, k + 1) = -s * uik + c * uik1;
            }
            if (k + 2 <= hi) {
                x = h(k + 1, k);
                y = h(k + 2, k);
            }
        }
    }

    EigResult res;
    res.values.resize(n);
    for (int i = 0; i < n; ++i)
        res.values[i] = h(i, i);

    if (with_vectors) {
        // Back-substitution on the Schur form: (T - lambda) y = 0 with a
        // guarded denominator, then map through u and normalize.
        const double tnorm = frob_norm(h);
        Matrix vecs(n, n, Mode::cplx);
        for (int k = 0; k < n; ++k) {
            std::vector<cdouble> y(n, cdouble(0.0));
            y[k] = 1.0;
            for (int i = k - 1; i >= 0; --i) {
                cdouble acc = 0.0;
                for (int j = i + 1; j <= k; ++j)
                    acc += h(i, j) * y[j];
                cdouble den = h(i, i) - res.values[k];
                if (std::abs(den) < eps * (1.0 + tnorm))
                    den = cdouble(eps * (1.0 + tnorm), 0.0);
                y[i] = -acc / den;
            }
            double norm2 = 0.0;
            for (int i = 0; i <= k; ++i)
                norm2 += std::norm(y[i]);
            double inv = 1.0 / std::sqrt(norm2);
            for (int i = 0; i < n; ++i) {
                cdouble acc = 0.0;
                for (int j = 0; j <= k; ++j)
                    acc += u(i, j) * y[j];
                vecs(i, k) = acc * inv;
            }
        }
        res.vectors = std::move(vecs);
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            double r2 = 0.0;
            for (int i = 0; i < n; ++i) {
                cdouble acc = 0.0;
                for (int j = 0; j < n; ++j)
                    acc += m_in(i, j) * (*res.vectors)(j, k);
                acc -= res.values[k] * (*res.vectors)(i, k);
                r2 += std::norm(acc);
            }
            worst = std::max(worst, std::sqrt(r2));
        }
        res.residual = worst / (1.0 + scale);
    } else {
        res.residual = eps * n;
    }
    detail::sort_descending(res.values, res.vectors ? &*res.vectors : nullptr);
    return res;
}

} // namespace dhstab
