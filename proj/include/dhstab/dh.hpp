#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dhstab/cholesky.hpp"
#include "dhstab/eig.hpp"
#include "dhstab/matrix.hpp"
#include "dhstab/region.hpp"

namespace dhstab {

/// DH triplet (J, R, P): J skew(-Hermitian), R symmetric (Hermitian),
/// P positive definite with P = Q^{-1}, representing A = (J - R) P^{-1}.
struct DHTriplet {
    Matrix J, R, P;

    int dim() const { return J.rows(); }
    Mode mode() const { return join_modes(join_modes(J.mode(), R.mode()), P.mode()); }
};

/// Checks the structural triplet invariants: J skew, R Hermitian (both to
/// 1e-12 relative), matching dimensions, P positive definite via Cholesky.
inline void validate_triplet(const DHTriplet& t) {
    require_square(t.J, "DHTriplet J");
    if (t.R.rows() != t.J.rows() || t.P.rows() != t.J.rows() || !t.R.is_square() ||
        !t.P.is_square())
        throw DimensionError("DHTriplet: J, R, P must be square of equal dimension");
    if (frob_norm(t.J + conj_transpose(t.J)) > 1e-12 * (1.0 + frob_norm(t.J)))
        throw ValidationError("DHTriplet: J is not skew");
    if (frob_norm(t.R - conj_transpose(t.R)) > 1e-12 * (1.0 + frob_norm(t.R)))
        throw ValidationError("DHTriplet: R is not Hermitian");
    CholeskyFactor(t.P); // throws NotPositiveDefiniteError if P is not pd
}

/// Exactly (anti)symmetrizes the triplet parts (roundoff cleanup).
inline DHTriplet structured(const DHTriplet& t) {
    return DHTriplet{skew_part(t.J), sym_part(t.R), sym_part(t.P)};
}

/// M_Omega(J, R, P) = B (x) P + (C - C^H) (x) J - (C + C^H) (x) R,
/// Hermitian of order s*n. Real triplets combine with extended regions by
/// promotion.
inline Matrix assemble_M_triplet(const Region& region, const DHTriplet& t) {
    const Matrix& c = region.C();
    const Matrix ch = conj_transpose(c);
    Matrix m = kron(region.B(), t.P) + kron(c - ch, t.J) - kron(c + ch, t.R);
    return sym_part(m);
}

/// M_Omega(A, X) = B (x) X + C (x) (AX) + (C (x) AX)^H, Hermitian of order
/// s*n.
inline Matrix assemble_M_AX(const Region& region, const Matrix& a, const Matrix& x) {
    require_square(a, "assemble_M_AX A");
    require_square(x, "assemble_M_AX X");
    if (a.rows() != x.rows())
        throw DimensionError("assemble_M_AX: A is " + std::to_string(a.rows()) +
                             "-dim but X is " + std::to_string(x.rows()) + "-dim");
    const Matrix k = kron(region.C(), a * x);
    Matrix m = kron(region.B(), x) + k + conj_transpose(k);
    return sym_part(m);
}

/// A = (J - R) P^{-1}, computed by solving P Y = (J - R)^H and returning Y^H.
inline Matrix compose(const DHTriplet& t) {
    return conj_transpose(chol_solve(t.P, conj_transpose(t.J - t.R)));
}

/// Lyapunov-type certificate: X > 0 with lambda_max(M_Omega(A, X)) = -delta.
struct StabilityCertificate {
    Matrix X;
    double delta = 0.0;
};

/// Constructive converse: P = X, J = skew(AX), R = -sym(AX), so that
/// (J - R) P^{-1} = A exactly.
inline DHTriplet triplet_from_certificate(const Matrix& a, const StabilityCertificate& cert) {
    require_square(a, "triplet_from_certificate A");
    if (a.rows() != cert.X.rows())
        throw DimensionError("triplet_from_certificate: A and X dimensions differ");
    CholeskyFactor(cert.X); // certificate must carry a positive definite X
    const Matrix ax = a * cert.X;
    return DHTriplet{skew_part(ax), -1.0 * sym_part(ax), sym_part(cert.X)};
}

struct StabilityVerdict {
    bool stable = false;
    std::vector<cdouble> eigenvalues;
    std::vector<double> margins; // membership margin per eigenvalue
    double worst_margin = 0.0;
};

/// Eigenvalue oracle for Omega-stability: every eigenvalue must have a
/// strictly negative membership margin.
inline StabilityVerdict is_stable_eig(const Region& region, const Matrix& a) {
    StabilityVerdict v;
    EigResult eig = general_eig(a, false);
    v.eigenvalues = eig.values;
    v.worst_margin = -std::numeric_limits<double>::infinity();
    for (cdouble lambda : eig.values) {
        double m = membership_margin(region, lambda);
        v.margins.push_back(m);
        v.worst_margin = std::max(v.worst_margin, m);
    }
    v.stable = v.worst_margin < 0.0;
    return v;
}

/// Strictness band for definiteness comparisons involving a triplet:
/// 1e-8 * (1 + |B||P| + |C|(|J|+|R|)) in Frobenius norms.
inline double strictness_band(const Region& region, const DHTriplet& t) {
    return 1e-8 * (1.0 + frob_norm(region.B()) * frob_norm(t.P) +
                   frob_norm(region.C()) * (frob_norm(t.J) + frob_norm(t.R)));
}

/// The printed Table-1 block form for a catalog region (with Q^{-1}
/// replaced by P); the region is Omega-stable-parametrizing iff the result
/// is positive definite. The region must be an untransformed catalog kind
/// (or hurwitz).
inline Matrix table1_constraint(const Region& region, const DHTriplet& t) {
    const RegionDescriptor& d = region.descriptor();
    const CatalogParams& p = d.params;
    const Matrix &J = t.J, &R = t.R, &P = t.P;
    auto param = [&](const char* key) { return detail::need(p, key, kind_name(d.kind)); };
    switch (d.kind) {
    case RegionKind::left_conic_sector:
    case RegionKind::right_conic_sector: {
        const double s = std::sin(param("theta")), c = std::cos(param("theta"));
        const double sgn = (d.kind == RegionKind::left_conic_sector) ? 1.0 : -1.0;
        Matrix diag = (sgn * s) * (param("a") * P + R);
        return block2(diag, (-c) * J, c * J, diag);
    }
    case RegionKind::disk: {
        const double q = param("q"), r = param("r");
        return block2(r * P, q * P - J + R, q * P + J + R, r * P);
    }
    case RegionKind::vertical_strip: {
        const double h = param("h"), k = param("k");
        if (std::isinf(h))
            return k * P + R;
        if (std::isinf(k))
            return -1.0 * (h * P + R);
        Matrix z = Matrix::zero(P.rows(), P.cols(), P.mode());
        return block2(k * P + R, z, z, -1.0 * (h * P + R));
    }
    case RegionKind::left_half_plane:
        return param("k") * P + R;
    case RegionKind::right_half_plane:
        return -1.0 * (param("h") * P + R);
    case RegionKind::hurwitz:
        return R;
    case RegionKind::ellipse: {
        const double q = param("q"), a = param("a"), rho = a / param("b");
        return block2(a * P, q * P - rho * J + R, q * P + rho * J + R, a * P);
    }
    case RegionKind::left_parabola:
    case RegionKind::right_parabola: {
        const double q = param("q"), g = std::sqrt(0.5 * param("c"));
        const double sgn = (d.kind == RegionKind::left_parabola) ? 1.0 : -1.0;
        return block2(P, (-g) * J, g * J, sgn * (q * P + R));
    }
    case RegionKind::left_hyperbola:
    case RegionKind::right_hyperbola: {
        const double a = param("a"), b = param("b");
        const double sgn = (d.kind == RegionKind::left_hyperbola) ? 1.0 : -1.0;
        return block2((sgn / a) * R, -1.0 * P - (1.0 / b) * J, -1.0 * P + (1.0 / b) * J,
                      (sgn / a) * R);
    }
    case RegionKind::horizontal_strip: {
        const double w = param("w");
        return block2(w * P, -1.0 * J, J, w * P);
    }
    default:
        throw ValidationError(std::string("table1_constraint: '") + kind_name(d.kind) +
                              "' is not a catalog kind");
    }
}

/// Appendix-A horizontal-strip test: -w P^{-1}-scaled form, realized as the
/// Hermitian pair wP +- iJ. Holds iff both are positive definite; the margin
/// is the smaller of the two minimum eigenvalues.
inline std::pair<bool, double> hstrip_appendix_check(const DHTriplet& t, double w) {
    if (!(w > 0.0))
        throw ValidationError("hstrip_appendix_check: need w > 0, got " + std::to_string(w));
    const cdouble i_unit(0.0, 1.0);
    Matrix plus = sym_part(w * t.P.promoted() + i_unit * t.J);
    Matrix minus = sym_part(w * t.P.promoted() - i_unit * t.J);
    const double margin = std::min(lambda_min(plus), lambda_min(minus));
    return {margin > 0.0, margin};
}

} // namespace dhstab
