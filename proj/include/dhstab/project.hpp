#pragma once

#include <optional>
#include <vector>

#include "dhstab/conicqp.hpp"
#include "dhstab/dh.hpp"
#include "dhstab/region.hpp"

namespace dhstab {

/// Frobenius projection onto the feasible set
///   DH(region, delta, eps) = { (J,R,P) structured :
///       M(region, J,R,P) <= -delta*I,  P >= eps*I }.
/// Intersections contribute one PSD constraint per leaf member, which keeps
/// the cone blocks small. The realized program (probing + normal-equations
/// assembly) is built once and reused across project() calls, so repeated
/// projections inside an optimization loop only pay for the ADMM iterations.
class TripletProjector {
  public:
    TripletProjector(const Region& region, int n, Mode mode, double delta, double eps)
        : region_(region), n_(n), mode_(join_modes(region.mode(), mode)), delta_(delta),
          eps_(eps) {
        if (n < 1)
            throw ValidationError("TripletProjector: n must be >= 1");
        if (delta <= 0.0 || eps <= 0.0)
            throw ValidationError("TripletProjector: delta and eps must be positive");

        ConicProgram prog;
        prog.blocks = {{"J", BlockStructure::skew, n, mode_},
                       {"R", BlockStructure::symmetric, n, mode_},
                       {"P", BlockStructure::symmetric, n, mode_}};
        prog.mu = 1.0;

        for (const Region* leafp : leaf_members(region_)) {
            const Region leaf = *leafp;
            const Mode out_mode = join_modes(leaf.mode(), mode_);
            ConicConstraint c;
            c.name = std::string("lmi:") + kind_name(leaf.descriptor().kind);
            c.out_dim = leaf.order() * n;
            c.out_mode = out_mode;
            const double d = delta;
            c.map = [leaf, d, out_mode](const std::vector<Matrix>& x) {
                DHTriplet t{x[0], x[1], x[2]};
                Matrix m = assemble_M_triplet(leaf, t);
                return -1.0 * m - d * Matrix::identity(m.rows(), out_mode);
            };
            prog.constraints.push_back(std::move(c));
        }
        {
            ConicConstraint c;
            c.name = "P_floor";
            c.out_dim = n;
            c.out_mode = mode_;
            const double e = eps;
            const Mode m = mode_;
            c.map = [e, n, m](const std::vector<Matrix>& x) {
                return x[2] - e * Matrix::identity(n, m);
            };
            prog.constraints.push_back(std::move(c));
        }
        realized_.emplace(prog);
    }

    /// Projects t (promoting real input into a complex-mode projector).
    DHTriplet project(const DHTriplet& t, const ConicConfig& cfg = {}) {
        if (t.dim() != n_)
            throw DimensionError("project: triplet dimension mismatch");
        if (join_modes(t.mode(), mode_) != mode_)
            throw ModeError("project: complex triplet passed to a real-mode projector");
        std::vector<Matrix> center{t.J, t.R, t.P};
        if (mode_ == Mode::cplx)
            for (Matrix& m : center)
                m = m.promoted();
        realized_->set_prox_center(center);
        last_ = realized_->solve(cfg, &center);
        return DHTriplet{last_.x[0], last_.x[1], last_.x[2]};
    }

    const ConicSolution& last_solution() const { return last_; }
    const Region& region() const { return region_; }
    double delta() const { return delta_; }
    double eps() const { return eps_; }

  private:
    Region region_;
    int n_;
    Mode mode_;
    double delta_;
    double eps_;
    std::optional<RealizedProgram> realized_;
    ConicSolution last_;
};

/// One-shot projection. The feasible set is nonempty for every valid region
/// (scale P down and pick (J,R) from an interior point), so a non-optimal
/// status signals a solver or configuration problem and is raised as an
/// error rather than returned.
inline DHTriplet project_triplet(const Region& region, const DHTriplet& t, double delta,
                                 double eps, const ConicConfig& cfg = {}) {
    TripletProjector proj(region, t.dim(), t.mode(), delta, eps);
    DHTriplet out = proj.project(t, cfg);
    const ConicSolution& sol = proj.last_solution();
    if (sol.status != SolveStatus::optimal)
        throw SolverError(std::string("project_triplet: solve ended with status ") +
                          status_name(sol.status) + " after " + std::to_string(sol.iterations) +
                          " iterations (primal residual " + std::to_string(sol.primal_residual) +
                          "); the target set is nonempty, so this indicates a solver problem");
    return out;
}

enum class CertifyStatus { certified, infeasible, iteration_cap };

inline const char* certify_status_name(CertifyStatus s) {
    switch (s) {
    case CertifyStatus::certified: return "certified";
    case CertifyStatus::infeasible: return "infeasible";
    case CertifyStatus::iteration_cap: return "iteration_cap";
    }
    return "?";
}

struct CertifyReport {
    CertifyStatus status = CertifyStatus::infeasible;
    std::optional<StabilityCertificate> certificate;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double delta_target = 0.0; // margin requested on the final attempt
};

namespace detail {

inline ConicSolution certify_attempt(const Region& region, const Matrix& a, Mode mode_x,
                                     double delta0, const ConicConfig& cfg) {
    const int n = a.rows();
    ConicProgram prog;
    prog.blocks = {{"X", BlockStructure::symmetric, n, mode_x}};
    prog.mu = 1.0;
    std::vector<Matrix> center{Matrix::identity(n, mode_x)};
    prog.prox_center = center;
    {
        ConicConstraint c;
        c.name = "X_floor";
        c.out_dim = n;
        c.out_mode = mode_x;
        c.map = [n, mode_x](const std::vector<Matrix>& x) {
            return x[0] - Matrix::identity(n, mode_x);
        };
        prog.constraints.push_back(std::move(c));
    }
    const Matrix ax = (mode_x == Mode::cplx) ? a.promoted() : a;
    for (const Region* leafp : leaf_members(region)) {
        const Region leaf = *leafp;
        const Mode out_mode = join_modes(leaf.mode(), mode_x);
        ConicConstraint c;
        c.name = std::string("lmi:") + kind_name(leaf.descriptor().kind);
        c.out_dim = leaf.order() * n;
        c.out_mode = out_mode;
        c.map = [leaf, ax, delta0, out_mode](const std::vector<Matrix>& x) {
            Matrix m = assemble_M_AX(leaf, ax, x[0]);
            return -1.0 * m - delta0 * Matrix::identity(m.rows(), out_mode);
        };
        prog.constraints.push_back(std::move(c));
    }
    return solve(prog, cfg, &center);
}

} // namespace detail

/// Default solver settings for certification. Feasibility solves whose
/// X >= I block ends up active converge slowly in the tail, so the budget
/// is deeper than the general-purpose default; well-conditioned hyperbola
/// instances have needed ~150k iterations.
inline ConicConfig certify_config() {
    ConicConfig cfg;
    cfg.max_iterations = 250000;
    return cfg;
}

/// Searches for a Lyapunov-type certificate X >= I with M(region, A, X)
/// <= -delta0*I via a proximal feasibility solve from X0 = I. Feasibility of
/// the LMI is scale-invariant in X, so the X >= I normalization loses no
/// generality. One retry at delta0/100 before giving up. An infeasible
/// outcome is a numerical report, not a verdict; callers should cross-check
/// with is_stable_eig.
inline CertifyReport certify_stability(const Region& region, const Matrix& a,
                                       const ConicConfig& cfg = certify_config()) {
    if (a.rows() != a.cols())
        throw DimensionError("certify_stability: A must be square");
    const Mode mode_x = join_modes(region.mode(), a.mode());
    const double delta_base = 1e-6 * (1.0 + frob_norm(a));

    CertifyReport report;
    for (double delta0 : {delta_base, delta_base / 100.0}) {
        ConicSolution sol = detail::certify_attempt(region, a, mode_x, delta0, cfg);
        report.iterations = sol.iterations;
        report.primal_residual = sol.primal_residual;
        report.dual_residual = sol.dual_residual;
        report.delta_target = delta0;

        // A certificate validates itself: check the iterate exactly even if
        // the solver stopped at its cap, and rescale so that X >= I.
        Matrix x = sol.x[0];
        const double lam_min = lambda_min(x);
        if (lam_min <= 0.0 && sol.status == SolveStatus::optimal)
            throw PostconditionError("certify_stability: solver returned X with "
                                     "lambda_min <= 0");
        if (lam_min > 0.0) {
            if (lam_min < 1.0)
                x = (1.0 / lam_min) * x;
            const double delta = -lambda_max(assemble_M_AX(region, a, x));
            if (delta > 0.0) {
                report.status = CertifyStatus::certified;
                report.certificate = StabilityCertificate{x, delta};
                return report;
            }
        }
        // margin consumed by solver tolerance or no convergence: retry once
        report.status = (sol.status == SolveStatus::max_iterations)
                            ? CertifyStatus::iteration_cap
                            : CertifyStatus::infeasible;
    }
    report.certificate.reset();
    return report;
}

} // namespace dhstab
