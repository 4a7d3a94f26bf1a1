#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dhstab/eig.hpp"
#include "dhstab/matrix.hpp"

namespace dhstab {

/// Frobenius-nearest matrix to M (symmetrized) whose eigenvalues are all
/// >= floor: eigendecompose and clip.
inline Matrix psd_project(const Matrix& m, double floor = 0.0) {
    Matrix sm = sym_part(m);
    EigResult e = herm_eig(sm, true);
    if (e.values.back().real() >= floor)
        return sm;
    const int n = sm.rows();
    Matrix lam = Matrix::zero(n, n, sm.mode());
    for (int i = 0; i < n; ++i)
        lam(i, i) = std::max(e.values[i].real(), floor);
    return sym_part(*e.vectors * lam * conj_transpose(*e.vectors));
}

/// Structure of a square matrix variable block. `symmetric` and `skew` mean
/// Hermitian and skew-Hermitian when the block mode is complex.
enum class BlockStructure { full, symmetric, skew, hermitian, skew_hermitian };

struct VariableBlock {
    std::string name;
    BlockStructure structure = BlockStructure::full;
    int dim = 1;
    Mode mode = Mode::real;
};

namespace detail {

// Orthonormal coordinates (w.r.t. the real Frobenius inner product) for a
// structured matrix space. vec() of an unstructured matrix orthogonally
// projects onto the space.
struct StructBasis {
    BlockStructure structure = BlockStructure::full;
    int n = 1;
    Mode mode = Mode::real;

    static BlockStructure canonical(BlockStructure s, Mode mode) {
        if (mode == Mode::cplx && s == BlockStructure::symmetric)
            return BlockStructure::hermitian;
        if (mode == Mode::cplx && s == BlockStructure::skew)
            return BlockStructure::skew_hermitian;
        if (mode == Mode::real && s == BlockStructure::hermitian)
            return BlockStructure::symmetric;
        if (mode == Mode::real && s == BlockStructure::skew_hermitian)
            return BlockStructure::skew;
        return s;
    }

    StructBasis() = default;
    StructBasis(BlockStructure s, int dim, Mode m) : structure(canonical(s, m)), n(dim), mode(m) {}

    int coords() const {
        switch (structure) {
        case BlockStructure::symmetric: return n * (n + 1) / 2;
        case BlockStructure::skew: return n * (n - 1) / 2;
        case BlockStructure::hermitian:
        case BlockStructure::skew_hermitian: return n * n;
        case BlockStructure::full: return (mode == Mode::cplx) ? 2 * n * n : n * n;
        }
        return 0;
    }

    void vec(const Matrix& m, double* out) const {
        static const double isq2 = 0.7071067811865475244;
        int k = 0;
        switch (structure) {
        case BlockStructure::symmetric:
            for (int i = 0; i < n; ++i) {
                out[k++] = m(i, i).real();
                for (int j = i + 1; j < n; ++j)
                    out[k++] = (m(i, j).real() + m(j, i).real()) * isq2;
            }
            break;
        case BlockStructure::skew:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    out[k++] = (m(i, j).real() - m(j, i).real()) * isq2;
            break;
        case BlockStructure::hermitian:
            for (int i = 0; i < n; ++i) {
                out[k++] = m(i, i).real();
                for (int j = i + 1; j < n; ++j) {
                    out[k++] = (m(i, j).real() + m(j, i).real()) * isq2;
                    out[k++] = (m(i, j).imag() - m(j, i).imag()) * isq2;
                }
            }
            break;
        case BlockStructure::skew_hermitian:
            for (int i = 0; i < n; ++i) {
                out[k++] = m(i, i).imag();
                for (int j = i + 1; j < n; ++j) {
                    out[k++] = (m(i, j).real() - m(j, i).real()) * isq2;
                    out[k++] = (m(i, j).imag() + m(j, i).imag()) * isq2;
                }
            }
            break;
        case BlockStructure::full:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    out[k++] = m(i, j).real();
                    if (mode == Mode::cplx)
                        out[k++] = m(i, j).imag();
                }
            break;
        }
    }

    Matrix unvec(const double* v) const {
        static const double isq2 = 0.7071067811865475244;
        Matrix m = Matrix::zero(n, n, mode);
        int k = 0;
        switch (structure) {
        case BlockStructure::symmetric:
            for (int i = 0; i < n; ++i) {
                m(i, i) = v[k++];
                for (int j = i + 1; j < n; ++j) {
                    m(i, j) = m(j, i) = v[k++] * isq2;
                }
            }
            break;
        case BlockStructure::skew:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    m(i, j) = v[k] * isq2;
                    m(j, i) = -v[k] * isq2;
                    ++k;
                }
            break;
        case BlockStructure::hermitian:
            for (int i = 0; i < n; ++i) {
                m(i, i) = v[k++];
                for (int j = i + 1; j < n; ++j) {
                    const double re = v[k++] * isq2;
                    const double im = v[k++] * isq2;
                    m(i, j) = cdouble(re, im);
                    m(j, i) = cdouble(re, -im);
                }
            }
            break;
        case BlockStructure::skew_hermitian:
            for (int i = 0; i < n; ++i) {
                m(i, i) = cdouble(0.0, v[k++]);
                for (int j = i + 1; j < n; ++j) {
                    const double re = v[k++] * isq2;
                    const double im = v[k++] * isq2;
                    m(i, j) = cdouble(re, im);
                    m(j, i) = cdouble(-re, im);
                }
            }
            break;
        case BlockStructure::full:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double re = v[k++];
                    const double im = (mode == Mode::cplx) ? v[k++] : 0.0;
                    m(i, j) = cdouble(re, im);
                }
            break;
        }
        return m;
    }
};

// Coordinates for a fixed-shape dense output (the objective map's codomain).
struct ShapeVec {
    int rows = 1, cols = 1;
    Mode mode = Mode::real;
    int coords() const { return rows * cols * (mode == Mode::cplx ? 2 : 1); }
    void vec(const Matrix& m, double* out) const {
        int k = 0;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                out[k++] = m(i, j).real();
                if (mode == Mode::cplx)
                    out[k++] = m(i, j).imag();
            }
    }
};

// Dense real Cholesky (lower triangular, row-major) for the ADMM normal
// equations; plain doubles keep the per-iteration solves cheap.
class RealCholesky {
  public:
    void factor(const std::vector<double>& h, int d) {
        d_ = d;
        l_ = h;
        for (int j = 0; j < d; ++j) {
            double* lj = l_.data() + static_cast<std::size_t>(j) * d;
            double diag = lj[j];
            for (int k = 0; k < j; ++k)
                diag -= lj[k] * lj[k];
            if (!(diag > 0.0))
                throw NotPositiveDefiniteError("normal equations not positive definite at pivot " +
                                               std::to_string(j));
            const double ljj = std::sqrt(diag);
            lj[j] = ljj;
            for (int i = j + 1; i < d; ++i) {
                double* li = l_.data() + static_cast<std::size_t>(i) * d;
                double acc = li[j];
                for (int k = 0; k < j; ++k)
                    acc -= li[k] * lj[k];
                li[j] = acc / ljj;
            }
        }
    }

    void solve(const double* b, double* x) const {
        for (int i = 0; i < d_; ++i) {
            const double* li = l_.data() + static_cast<std::size_t>(i) * d_;
            double acc = b[i];
            for (int k = 0; k < i; ++k)
                acc -= li[k] * x[k];
            x[i] = acc / li[i];
        }
        for (int i = d_ - 1; i >= 0; --i) {
            double acc = x[i];
            for (int k = i + 1; k < d_; ++k)
                acc -= l_[static_cast<std::size_t>(k) * d_ + i] * x[k];
            x[i] = acc / l_[static_cast<std::size_t>(i) * d_ + i];
        }
    }

  private:
    int d_ = 0;
    std::vector<double> l_;
};

} // namespace detail

/// Affine constraint W(x) + offset >= 0 (PSD sense); `map` must produce a
/// Hermitian matrix of the declared size for any structured input.
struct ConicConstraint {
    std::function<Matrix(const std::vector<Matrix>&)> map;
    int out_dim = 1;
    Mode out_mode = Mode::real;
    std::string name;
};

/// minimize  1/2 ||L(x) - target||_F^2 + mu/2 ||x - prox_center||_F^2
/// s.t.      constraint_i(x) >= 0 for all i
/// over structured matrix blocks x. Strong convexity requires mu > 0 or L
/// injective on the structured space.
struct ConicProgram {
    std::vector<VariableBlock> blocks;
    std::function<Matrix(const std::vector<Matrix>&)> objective_map; // may be empty
    std::optional<Matrix> objective_target;
    double mu = 1.0;
    std::vector<Matrix> prox_center; // empty = origin
    std::vector<ConicConstraint> constraints;
};

struct ConicConfig {
    double tol_p = 1e-7;
    double tol_d = 1e-7;
    int max_iterations = 20000;
    double rho_init = 1.0;
};

enum class SolveStatus { optimal, max_iterations, infeasible_suspected };

inline const char* status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::infeasible_suspected: return "infeasible_suspected";
    }
    return "?";
}

struct ConicSolution {
    std::vector<Matrix> x;
    SolveStatus status = SolveStatus::max_iterations;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    int iterations = 0;
    double objective_value = 0.0;
    std::vector<Matrix> duals; // PSD multiplier estimate per constraint
};

/// A ConicProgram with its affine maps realized as dense coordinate
/// matrices (by probing basis vectors) and the ADMM normal-equations
/// factorization cached. Building once and re-solving amortizes the
/// realization across repeated projections.
class RealizedProgram {
  public:
    explicit RealizedProgram(const ConicProgram& prog) : mu_(prog.mu) {
        if (prog.blocks.empty())
            throw ValidationError("ConicProgram: no variable blocks");
        for (const VariableBlock& b : prog.blocks) {
            if (b.dim < 1)
                throw ValidationError("ConicProgram: block dimension must be >= 1");
            bases_.emplace_back(b.structure, b.dim, b.mode);
            offsets_.push_back(d_);
            d_ += bases_.back().coords();
        }
        if (prog.mu < 0.0)
            throw ValidationError("ConicProgram: mu must be >= 0");

        x0_.assign(d_, 0.0);
        if (!prog.prox_center.empty()) {
            if (prog.prox_center.size() != bases_.size())
                throw DimensionError("ConicProgram: prox_center block count mismatch");
            for (std::size_t i = 0; i < bases_.size(); ++i)
                bases_[i].vec(prog.prox_center[i], x0_.data() + offsets_[i]);
        }

        const std::vector<Matrix> zero_blocks = unpack(std::vector<double>(d_, 0.0));

        if (prog.objective_map) {
            Matrix l0 = prog.objective_map(zero_blocks);
            out_shape_ = {l0.rows(), l0.cols(),
                          prog.objective_target ? join_modes(l0.mode(), prog.objective_target->mode())
                                                : l0.mode()};
            q_ = out_shape_.coords();
            lmat_.assign(static_cast<std::size_t>(q_) * d_, 0.0);
            std::vector<double> col(q_), off(q_);
            out_shape_.vec(l0, off.data());
            std::vector<double> probe(d_, 0.0);
            for (int k = 0; k < d_; ++k) {
                probe[k] = 1.0;
                Matrix lk = prog.objective_map(unpack(probe));
                probe[k] = 0.0;
                out_shape_.vec(lk, col.data());
                for (int r = 0; r < q_; ++r)
                    lmat_[static_cast<std::size_t>(r) * d_ + k] = col[r] - off[r];
            }
            bvec_.assign(q_, 0.0);
            if (prog.objective_target) {
                if (prog.objective_target->rows() != out_shape_.rows ||
                    prog.objective_target->cols() != out_shape_.cols)
                    throw DimensionError("ConicProgram: objective target shape mismatch");
                out_shape_.vec(*prog.objective_target, bvec_.data());
            }
            for (int r = 0; r < q_; ++r)
                bvec_[r] -= off[r];
            has_l_ = true;
        }

        for (const ConicConstraint& c : prog.constraints) {
            if (!c.map)
                throw ValidationError("ConicProgram: constraint without a map");
            RC rc;
            rc.out = detail::StructBasis(BlockStructure::symmetric, c.out_dim, c.out_mode);
            rc.name = c.name;
            rc.rows = rc.out.coords();
            Matrix w0 = c.map(zero_blocks);
            check_constraint_output(w0, c);
            rc.off.assign(rc.rows, 0.0);
            rc.out.vec(w0, rc.off.data());
            rc.c.assign(static_cast<std::size_t>(rc.rows) * d_, 0.0);
            std::vector<double> col(rc.rows), probe(d_, 0.0);
            for (int k = 0; k < d_; ++k) {
                probe[k] = 1.0;
                Matrix wk = c.map(unpack(probe));
                probe[k] = 0.0;
                check_constraint_output(wk, c);
                rc.out.vec(wk, col.data());
                for (int r = 0; r < rc.rows; ++r)
                    rc.c[static_cast<std::size_t>(r) * d_ + k] = col[r] - rc.off[r];
            }
            rc.off_norm = norm2(rc.off);
            cons_.push_back(std::move(rc));
        }

        // normal-equations pieces: H(rho) = L^T L + mu I + rho sum C_i^T C_i
        h0_.assign(static_cast<std::size_t>(d_) * d_, 0.0);
        if (has_l_)
            accumulate_gram(lmat_, q_, h0_);
        for (int k = 0; k < d_; ++k)
            h0_[static_cast<std::size_t>(k) * d_ + k] += mu_;
        g_.assign(static_cast<std::size_t>(d_) * d_, 0.0);
        for (const RC& rc : cons_)
            accumulate_gram(rc.c, rc.rows, g_);

        refresh_rhs0();
    }

    int total_coords() const { return d_; }

    /// Re-vectorizes a new proximal center (same block shapes).
    void set_prox_center(const std::vector<Matrix>& center) {
        if (center.size() != bases_.size())
            throw DimensionError("set_prox_center: block count mismatch");
        for (std::size_t i = 0; i < bases_.size(); ++i)
            bases_[i].vec(center[i], x0_.data() + offsets_[i]);
        refresh_rhs0();
    }

    ConicSolution solve(const ConicConfig& cfg, const std::vector<Matrix>* initial_x = nullptr) {
        double rho = cfg.rho_init;
        refactor(rho);

        std::vector<double> x = x0_;
        if (initial_x) {
            if (initial_x->size() != bases_.size())
                throw DimensionError("solve: initial_x block count mismatch");
            for (std::size_t i = 0; i < bases_.size(); ++i)
                bases_[i].vec((*initial_x)[i], x.data() + offsets_[i]);
        }

        const int m = static_cast<int>(cons_.size());
        std::vector<std::vector<double>> s(m), u(m), w(m);
        double s_init_norm = 1.0;
        for (int i = 0; i < m; ++i) {
            w[i].assign(cons_[i].rows, 0.0);
            apply(cons_[i], x, w[i]);
            Matrix si = psd_project(cons_[i].out.unvec(w[i].data()));
            s[i].assign(cons_[i].rows, 0.0);
            cons_[i].out.vec(si, s[i].data());
            u[i].assign(cons_[i].rows, 0.0);
            s_init_norm = std::max(s_init_norm, norm2(s[i]));
        }

        ConicSolution sol;
        double max_off = 0.0;
        for (const RC& rc : cons_)
            max_off = std::max(max_off, rc.off_norm);
        const double dual_scale = 1.0 + ((mu_ > 0.0) ? norm2(x0_) : norm2(bvec_));

        int stagnant = 0;
        double window_best = std::numeric_limits<double>::infinity();
        double prev_window_best = std::numeric_limits<double>::infinity();
        double last_rp = 0.0, last_rd = 0.0;
        std::vector<double> rhs(d_), dual_accum(d_), wu, s_prev;
        for (int it = 1; it <= cfg.max_iterations; ++it) {
            // x-update
            rhs = rhs0_;
            for (int i = 0; i < m; ++i) {
                const RC& rc = cons_[i];
                for (int r = 0; r < rc.rows; ++r) {
                    const double f = rho * (s[i][r] - u[i][r] - rc.off[r]);
                    if (f == 0.0)
                        continue;
                    const double* crow = rc.c.data() + static_cast<std::size_t>(r) * d_;
                    for (int k = 0; k < d_; ++k)
                        rhs[k] += crow[k] * f;
                }
            }
            chol_.solve(rhs.data(), x.data());

            // S-update and scaled dual update
            bool primal_ok = true;
            double rp2 = 0.0, rd2 = 0.0;
            std::fill(dual_accum.begin(), dual_accum.end(), 0.0);
            for (int i = 0; i < m; ++i) {
                const RC& rc = cons_[i];
                apply(rc, x, w[i]);
                wu.resize(rc.rows);
                for (int r = 0; r < rc.rows; ++r)
                    wu[r] = w[i][r] + u[i][r];
                Matrix si = psd_project(rc.out.unvec(wu.data()));
                s_prev = std::move(s[i]);
                s[i].assign(rc.rows, 0.0);
                rc.out.vec(si, s[i].data());
                double rpi2 = 0.0;
                for (int r = 0; r < rc.rows; ++r) {
                    const double pr = w[i][r] - s[i][r];
                    u[i][r] += pr;
                    rpi2 += pr * pr;
                    const double ds = s[i][r] - s_prev[r];
                    if (ds != 0.0) {
                        const double* crow = rc.c.data() + static_cast<std::size_t>(r) * d_;
                        for (int k = 0; k < d_; ++k)
                            dual_accum[k] += crow[k] * ds;
                    }
                }
                rp2 += rpi2;
                if (std::sqrt(rpi2) > cfg.tol_p * (1.0 + rc.off_norm))
                    primal_ok = false;
                if (norm2(s[i]) > 1e6 * s_init_norm) {
                    sol.status = SolveStatus::infeasible_suspected;
                    finish(sol, x, u, rho, std::sqrt(rp2), 0.0, it);
                    return sol;
                }
            }
            for (double v : dual_accum)
                rd2 += v * v;
            const double rp = std::sqrt(rp2);
            const double rd = rho * std::sqrt(rd2);
            last_rp = rp;
            last_rd = rd;

            if (m == 0 || (primal_ok && rd <= cfg.tol_d * dual_scale)) {
                sol.status = SolveStatus::optimal;
                finish(sol, x, u, rho, rp, rd, it);
                return sol;
            }

            // stagnation heuristic (never a proof of infeasibility): the
            // best primal residual seen in a 2000-iteration window stays
            // above 1e-2 scale and stopped improving against the previous
            // window. Feasible-but-slow solves keep shrinking the residual
            // and are left alone.
            window_best = std::min(window_best, rp);
            if (++stagnant >= 2000) {
                if (window_best > 1e-2 * (1.0 + max_off) && window_best > 0.99 * prev_window_best) {
                    sol.status = SolveStatus::infeasible_suspected;
                    finish(sol, x, u, rho, rp, rd, it);
                    return sol;
                }
                prev_window_best = window_best;
                window_best = std::numeric_limits<double>::infinity();
                stagnant = 0;
            }

            // residual balancing
            if (it % 25 == 0) {
                double new_rho = rho;
                if (rp > 10.0 * rd)
                    new_rho = std::min(rho * 2.0, 1e4);
                else if (rd > 10.0 * rp)
                    new_rho = std::max(rho * 0.5, 1e-4);
                if (new_rho != rho) {
                    const double scale = rho / new_rho;
                    for (auto& ui : u)
                        for (double& v : ui)
                            v *= scale;
                    rho = new_rho;
                    refactor(rho);
                }
            }
        }
        sol.status = SolveStatus::max_iterations;
        finish(sol, x, u, rho, last_rp, last_rd, cfg.max_iterations);
        return sol;
    }

  private:
    struct RC {
        std::vector<double> c; // rows x d, row-major
        std::vector<double> off;
        int rows = 0;
        detail::StructBasis out;
        std::string name;
        double off_norm = 0.0;
    };

    static double norm2(const std::vector<double>& v) {
        double s = 0.0;
        for (double a : v)
            s += a * a;
        return std::sqrt(s);
    }

    std::vector<Matrix> unpack(const std::vector<double>& x) const {
        std::vector<Matrix> blocks;
        for (std::size_t i = 0; i < bases_.size(); ++i)
            blocks.push_back(bases_[i].unvec(x.data() + offsets_[i]));
        return blocks;
    }

    // out += Mt * M for a rows x d row-major M (upper part only, mirrored)
    void accumulate_gram(const std::vector<double>& mat, int rows, std::vector<double>& out) const {
        for (int r = 0; r < rows; ++r) {
            const double* row = mat.data() + static_cast<std::size_t>(r) * d_;
            for (int i = 0; i < d_; ++i) {
                const double ri = row[i];
                if (ri == 0.0)
                    continue;
                double* orow = out.data() + static_cast<std::size_t>(i) * d_;
                for (int j = i; j < d_; ++j)
                    orow[j] += ri * row[j];
            }
        }
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < i; ++j)
                out[static_cast<std::size_t>(i) * d_ + j] = out[static_cast<std::size_t>(j) * d_ + i];
    }

    void apply(const RC& rc, const std::vector<double>& x, std::vector<double>& out) const {
        for (int r = 0; r < rc.rows; ++r) {
            const double* crow = rc.c.data() + static_cast<std::size_t>(r) * d_;
            double acc = rc.off[r];
            for (int k = 0; k < d_; ++k)
                acc += crow[k] * x[k];
            out[r] = acc;
        }
    }

    void refresh_rhs0() {
        rhs0_.assign(d_, 0.0);
        if (has_l_) {
            for (int r = 0; r < q_; ++r) {
                const double br = bvec_[r];
                if (br == 0.0)
                    continue;
                const double* lrow = lmat_.data() + static_cast<std::size_t>(r) * d_;
                for (int k = 0; k < d_; ++k)
                    rhs0_[k] += lrow[k] * br;
            }
        }
        for (int k = 0; k < d_; ++k)
            rhs0_[k] += mu_ * x0_[k];
    }

    void check_constraint_output(const Matrix& w, const ConicConstraint& c) const {
        if (w.rows() != c.out_dim || w.cols() != c.out_dim)
            throw DimensionError("constraint '" + c.name + "' output is " +
                                 std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                                 ", declared " + std::to_string(c.out_dim));
        if (!is_hermitian(w, 1e-10 * (1.0 + frob_norm(w))))
            throw ValidationError("constraint '" + c.name + "' output is not Hermitian");
        if (c.out_mode == Mode::real && w.mode() != Mode::real)
            throw ModeError("constraint '" + c.name + "' output mode is complex, declared real");
    }

    void refactor(double rho) {
        if (factored_ && factored_rho_ == rho)
            return;
        std::vector<double> h = h0_;
        const std::size_t total = static_cast<std::size_t>(d_) * d_;
        for (std::size_t i = 0; i < total; ++i)
            h[i] += rho * g_[i];
        try {
            chol_.factor(h, d_);
        } catch (const NotPositiveDefiniteError&) {
            throw SolverError("conicqp: normal-equations system is not positive definite "
                              "(program lacks strong convexity)");
        }
        factored_ = true;
        factored_rho_ = rho;
    }

    void finish(ConicSolution& sol, const std::vector<double>& x,
                const std::vector<std::vector<double>>& u, double rho, double rp, double rd,
                int iterations) const {
        sol.x = unpack(x);
        sol.primal_residual = rp;
        sol.dual_residual = rd;
        sol.iterations = iterations;
        double obj = 0.0;
        if (has_l_) {
            for (int r = 0; r < q_; ++r) {
                const double* lrow = lmat_.data() + static_cast<std::size_t>(r) * d_;
                double acc = -bvec_[r];
                for (int k = 0; k < d_; ++k)
                    acc += lrow[k] * x[k];
                obj += acc * acc;
            }
        }
        for (int k = 0; k < d_; ++k)
            obj += mu_ * (x[k] - x0_[k]) * (x[k] - x0_[k]);
        sol.objective_value = 0.5 * obj;
        sol.duals.clear();
        for (std::size_t i = 0; i < cons_.size(); ++i) {
            std::vector<double> y(u[i].size());
            for (std::size_t r = 0; r < y.size(); ++r)
                y[r] = -rho * u[i][r];
            sol.duals.push_back(cons_[i].out.unvec(y.data()));
        }
    }

    std::vector<detail::StructBasis> bases_;
    std::vector<int> offsets_;
    int d_ = 0;
    double mu_ = 1.0;
    bool has_l_ = false;
    int q_ = 0;
    std::vector<double> lmat_; // q x d, row-major
    detail::ShapeVec out_shape_;
    std::vector<double> bvec_;
    std::vector<double> x0_;
    std::vector<RC> cons_;
    std::vector<double> g_;  // sum C^T C, d x d
    std::vector<double> h0_; // L^T L + mu I, d x d
    std::vector<double> rhs0_;
    bool factored_ = false;
    double factored_rho_ = -1.0;
    detail::RealCholesky chol_;
};

/// One-shot solve: realize the program and run ADMM.
inline ConicSolution solve(const ConicProgram& prog, const ConicConfig& cfg = {},
                           const std::vector<Matrix>* initial_x = nullptr) {
    RealizedProgram realized(prog);
    return realized.solve(cfg, initial_x);
}

} // namespace dhstab
