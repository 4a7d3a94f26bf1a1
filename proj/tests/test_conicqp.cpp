#include <gtest/gtest.h>

#include "dhstab/conicqp.hpp"
#include "dhstab/project.hpp"
#include "test_util.hpp"

using namespace dhstab;

namespace {

Matrix clip_eigs(const Matrix& m, double floor) {
    EigResult e = herm_eig(sym_part(m), true);
    const int n = m.rows();
    Matrix lam = Matrix::zero(n, n, m.mode());
    for (int i = 0; i < n; ++i)
        lam(i, i) = std::max(e.values[i].real(), floor);
    return sym_part(*e.vectors * lam * conj_transpose(*e.vectors));
}

} // namespace

TEST(PsdProject, FeasibleInputUnchanged) {
    Matrix m = Matrix::from_rows({{2, 1}, {1, 2}});
    testutil::expect_near_mat(psd_project(m), m, 1e-12);
    testutil::expect_near_mat(psd_project(m, 0.5), m, 1e-12);
    testutil::expect_near_mat(psd_project(Matrix::zero(3, 3, Mode::real)), Matrix::zero(3, 3, Mode::real), 0.0);
}

TEST(PsdProject, ClipsNegativeEigenvalues) {
    Matrix d = Matrix::from_rows({{3, 0}, {0, -1}});
    testutil::expect_near_mat(psd_project(d), Matrix::from_rows({{3, 0}, {0, 0}}), 1e-13);
    testutil::expect_near_mat(psd_project(d, 0.5), Matrix::from_rows({{3, 0}, {0, 0.5}}), 1e-13);

    Matrix offdiag = Matrix::from_rows({{0, 2}, {2, 0}});
    testutil::expect_near_mat(psd_project(offdiag), Matrix::from_rows({{1, 1}, {1, 1}}), 1e-13);
}

TEST(PsdProject, ComplexHermitian) {
    const cdouble i(0.0, 1.0);
    Matrix m = Matrix::from_rows_complex({{0.0, i}, {-i, 0.0}});
    Matrix want = Matrix::from_rows_complex({{0.5, 0.5 * i}, {-0.5 * i, 0.5}});
    testutil::expect_near_mat(psd_project(m), want, 1e-13);
    EXPECT_EQ(psd_project(m).mode(), Mode::cplx);
}

TEST(PsdProject, SymmetrizesFirst) {
    Matrix m = Matrix::from_rows({{1, 2}, {0, 1}});
    testutil::expect_near_mat(psd_project(m), sym_part(m), 1e-13);
}

TEST(StructBasis, RoundTripAndOrthonormality) {
    GaussianStream g(91);
    struct Case {
        BlockStructure s;
        Mode mode;
        int expect_coords;
    };
    const int n = 4;
    const std::vector<Case> cases = {
        {BlockStructure::symmetric, Mode::real, 10},
        {BlockStructure::skew, Mode::real, 6},
        {BlockStructure::full, Mode::real, 16},
        {BlockStructure::symmetric, Mode::cplx, 16},
        {BlockStructure::skew, Mode::cplx, 16},
        {BlockStructure::hermitian, Mode::cplx, 16},
        {BlockStructure::skew_hermitian, Mode::cplx, 16},
        {BlockStructure::full, Mode::cplx, 32},
    };
    for (const Case& c : cases) {
        detail::StructBasis basis(c.s, n, c.mode);
        ASSERT_EQ(basis.coords(), c.expect_coords);

        Matrix m(n, n, c.mode);
        switch (detail::StructBasis::canonical(c.s, c.mode)) {
        case BlockStructure::symmetric: m = testutil::random_sym(g, n, Mode::real); break;
        case BlockStructure::hermitian: m = testutil::random_sym(g, n, Mode::cplx); break;
        case BlockStructure::skew: m = testutil::random_skew(g, n, Mode::real); break;
        case BlockStructure::skew_hermitian: m = testutil::random_skew(g, n, Mode::cplx); break;
        case BlockStructure::full:
            m = (c.mode == Mode::real) ? testutil::random_real(g, n, n) : testutil::random_cplx(g, n, n);
            break;
        }
        std::vector<double> v(basis.coords());
        basis.vec(m, v.data());
        testutil::expect_near_mat(basis.unvec(v.data()), m, 1e-13);

        // Parseval: coordinates carry the full Frobenius norm
        double nrm2 = 0.0;
        for (double a : v)
            nrm2 += a * a;
        EXPECT_NEAR(nrm2, frob_norm(m) * frob_norm(m), 1e-10 * (1.0 + nrm2));

        // unit coordinate vectors map to unit-norm structured matrices
        for (int k = 0; k < basis.coords(); ++k) {
            std::vector<double> e(basis.coords(), 0.0);
            e[k] = 1.0;
            Matrix bk = basis.unvec(e.data());
            EXPECT_NEAR(frob_norm(bk), 1.0, 1e-14);
            std::vector<double> back(basis.coords());
            basis.vec(bk, back.data());
            for (int r = 0; r < basis.coords(); ++r)
                EXPECT_NEAR(back[r], (r == k) ? 1.0 : 0.0, 1e-14);
        }
    }
}

TEST(StructBasis, VecProjectsOntoStructure) {
    GaussianStream g(17);
    Matrix any = testutil::random_real(g, 3, 3);
    detail::StructBasis sym(BlockStructure::symmetric, 3, Mode::real);
    std::vector<double> v(sym.coords());
    sym.vec(any, v.data());
    testutil::expect_near_mat(sym.unvec(v.data()), sym_part(any), 1e-14);

    detail::StructBasis skw(BlockStructure::skew, 3, Mode::real);
    std::vector<double> w(skw.coords());
    skw.vec(any, w.data());
    testutil::expect_near_mat(skw.unvec(w.data()), skew_part(any), 1e-14);
}

TEST(Solve, NoConstraintsReturnsProxCenter) {
    GaussianStream g(3);
    Matrix x0 = testutil::random_sym(g, 3, Mode::real);
    ConicProgram prog;
    prog.blocks = {{"X", BlockStructure::symmetric, 3, Mode::real}};
    prog.mu = 1.0;
    prog.prox_center = {x0};
    ConicSolution sol = solve(prog);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    EXPECT_EQ(sol.iterations, 1);
    testutil::expect_near_mat(sol.x[0], x0, 1e-12);
    EXPECT_NEAR(sol.objective_value, 0.0, 1e-14);
}

TEST(Solve, UnconstrainedLeastSquares) {
    GaussianStream g(4);
    Matrix b = testutil::random_real(g, 3, 3);
    ConicProgram prog;
    prog.blocks = {{"X", BlockStructure::full, 3, Mode::real}};
    prog.mu = 0.0;
    prog.objective_map = [](const std::vector<Matrix>& x) { return x[0]; };
    prog.objective_target = b;
    ConicSolution sol = solve(prog);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    testutil::expect_near_mat(sol.x[0], b, 1e-10);
    EXPECT_NEAR(sol.objective_value, 0.0, 1e-12);
}

TEST(Solve, PsdProjectionMatchesEigenvalueClipping) {
    GaussianStream g(5);
    for (Mode mode : {Mode::real, Mode::cplx}) {
        const int n = 4;
        Matrix x0 = testutil::random_sym(g, n, mode);
        ConicProgram prog;
        prog.blocks = {{"X", BlockStructure::symmetric, n, mode}};
        prog.mu = 1.0;
        prog.prox_center = {x0};
        ConicConstraint c;
        c.name = "psd";
        c.out_dim = n;
        c.out_mode = mode;
        c.map = [](const std::vector<Matrix>& x) { return x[0]; };
        prog.constraints.push_back(std::move(c));

        ConicSolution sol = solve(prog);
        ASSERT_EQ(sol.status, SolveStatus::optimal);
        Matrix oracle = clip_eigs(x0, 0.0);
        EXPECT_LE(testutil::mat_dist(sol.x[0], oracle), 1e-6);

        // objective at the projection equals half the clipped-tail energy
        EigResult e = herm_eig(x0, false);
        double tail = 0.0;
        for (cdouble lam : e.values)
            if (lam.real() < 0.0)
                tail += lam.real() * lam.real();
        EXPECT_NEAR(sol.objective_value, 0.5 * tail, 1e-6 * (1.0 + tail));
    }
}

TEST(Solve, ShiftedClipOracle) {
    GaussianStream g(6);
    const int n = 3;
    const double delta = 0.3;
    Matrix j0 = testutil::random_skew(g, n, Mode::real);
    Matrix r0 = testutil::random_sym(g, n, Mode::real);
    Matrix p0 = testutil::random_sym(g, n, Mode::real);

    ConicProgram prog;
    prog.blocks = {{"J", BlockStructure::skew, n, Mode::real},
                   {"R", BlockStructure::symmetric, n, Mode::real},
                   {"P", BlockStructure::symmetric, n, Mode::real}};
    prog.mu = 1.0;
    prog.prox_center = {j0, r0, p0};
    ConicConstraint cr;
    cr.name = "2R>=deltaI";
    cr.out_dim = n;
    cr.out_mode = Mode::real;
    cr.map = [n, delta](const std::vector<Matrix>& x) {
        return 2.0 * x[1] - delta * Matrix::identity(n, Mode::real);
    };
    prog.constraints.push_back(std::move(cr));
    ConicConstraint cp;
    cp.name = "P>=0.1I";
    cp.out_dim = n;
    cp.out_mode = Mode::real;
    cp.map = [n](const std::vector<Matrix>& x) {
        return x[2] - 0.1 * Matrix::identity(n, Mode::real);
    };
    prog.constraints.push_back(std::move(cp));

    ConicSolution sol = solve(prog);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    testutil::expect_near_mat(sol.x[0], j0, 1e-6);
    EXPECT_LE(testutil::mat_dist(sol.x[1], clip_eigs(r0, delta / 2.0)), 1e-6);
    EXPECT_LE(testutil::mat_dist(sol.x[2], clip_eigs(p0, 0.1)), 1e-6);
}

TEST(Solve, KktStationarityAtOptimum) {
    GaussianStream g(7);
    const int n = 4;
    Matrix x0 = testutil::random_sym(g, n, Mode::real);
    ConicProgram prog;
    prog.blocks = {{"X", BlockStructure::symmetric, n, Mode::real}};
    prog.mu = 1.0;
    prog.prox_center = {x0};
    ConicConstraint c;
    c.name = "psd";
    c.out_dim = n;
    c.out_mode = Mode::real;
    c.map = [](const std::vector<Matrix>& x) { return x[0]; };
    prog.constraints.push_back(std::move(c));

    ConicConfig cfg;
    ConicSolution sol = solve(prog, cfg);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    ASSERT_EQ(sol.duals.size(), 1u);
    const Matrix& y = sol.duals[0];
    // dual iterate is (numerically) PSD
    EXPECT_GE(lambda_min(y), -cfg.tol_p);
    // stationarity: x - x0 - A*(Y) = 0 for the identity constraint map
    EXPECT_LE(frob_norm(sol.x[0] - x0 - sym_part(y)), cfg.tol_d * (1.0 + frob_norm(x0)) * 10);
    // complementarity is implied by the clip structure; sanity-check it
    EXPECT_NEAR(std::abs(trace(y * sol.x[0])), 0.0, 1e-5);
}

TEST(Solve, ValidationErrors) {
    ConicProgram empty;
    EXPECT_THROW(solve(empty), ValidationError);

    ConicProgram bad_mu;
    bad_mu.blocks = {{"X", BlockStructure::symmetric, 2, Mode::real}};
    bad_mu.mu = -1.0;
    EXPECT_THROW(solve(bad_mu), ValidationError);

    // no objective and no proximal weight: normal equations are singular
    ConicProgram no_convexity;
    no_convexity.blocks = {{"X", BlockStructure::symmetric, 2, Mode::real}};
    no_convexity.mu = 0.0;
    EXPECT_THROW(solve(no_convexity), SolverError);

    // constraint whose output is not Hermitian is rejected during probing
    ConicProgram bad_out;
    bad_out.blocks = {{"X", BlockStructure::full, 2, Mode::real}};
    bad_out.mu = 1.0;
    ConicConstraint c;
    c.name = "raw";
    c.out_dim = 2;
    c.out_mode = Mode::real;
    c.map = [](const std::vector<Matrix>& x) { return x[0]; };
    bad_out.constraints.push_back(std::move(c));
    EXPECT_THROW(solve(bad_out), ValidationError);

    // declared output dimension must match the map
    ConicProgram bad_dim;
    bad_dim.blocks = {{"X", BlockStructure::symmetric, 2, Mode::real}};
    bad_dim.mu = 1.0;
    ConicConstraint c2;
    c2.name = "shape";
    c2.out_dim = 3;
    c2.out_mode = Mode::real;
    c2.map = [](const std::vector<Matrix>& x) { return x[0]; };
    bad_dim.constraints.push_back(std::move(c2));
    EXPECT_THROW(solve(bad_dim), DimensionError);
}

TEST(ProjectTriplet, FeasiblePointUnchanged) {
    Region hurwitz = make_region(RegionKind::hurwitz);
    const int n = 3;
    GaussianStream g(8);
    Matrix j = testutil::random_skew(g, n, Mode::real);
    DHTriplet t{j, Matrix::identity(n, Mode::real), Matrix::identity(n, Mode::real)};
    DHTriplet out = project_triplet(hurwitz, t, 1e-6, 1e-6);
    testutil::expect_near_mat(out.J, t.J, 1e-6);
    testutil::expect_near_mat(out.R, t.R, 1e-6);
    testutil::expect_near_mat(out.P, t.P, 1e-6);
}

TEST(ProjectTriplet, HurwitzDecouplesIntoClips) {
    GaussianStream g(9);
    const int n = 4;
    const double delta = 1e-3, eps = 1e-2;
    Matrix j0 = testutil::random_skew(g, n, Mode::real);
    Matrix r0 = testutil::random_sym(g, n, Mode::real);
    Matrix p0 = testutil::random_sym(g, n, Mode::real);
    DHTriplet t{j0, r0, p0};
    Region hurwitz = make_region(RegionKind::hurwitz);
    DHTriplet out = project_triplet(hurwitz, t, delta, eps);
    testutil::expect_near_mat(out.J, j0, 1e-6);
    EXPECT_LE(testutil::mat_dist(out.R, clip_eigs(r0, delta / 2.0)), 1e-6);
    EXPECT_LE(testutil::mat_dist(out.P, clip_eigs(p0, eps)), 1e-6);
}

TEST(ProjectTriplet, HorizontalStripIgnoresR) {
    GaussianStream g(10);
    const int n = 2;
    Region strip = make_region(RegionKind::horizontal_strip, {{"w", 1.0}});
    Matrix j0 = Matrix::from_rows({{0, 0.3}, {-0.3, 0}});
    Matrix r0 = 100.0 * testutil::random_sym(g, n, Mode::real);
    DHTriplet t{j0, r0, Matrix::identity(n, Mode::real)};
    DHTriplet out = project_triplet(strip, t, 1e-6, 1e-6);
    testutil::expect_near_mat(out.R, sym_part(r0), 1e-6);
    testutil::expect_near_mat(out.J, j0, 1e-6);
    testutil::expect_near_mat(out.P, t.P, 1e-6);
}

TEST(ProjectTriplet, ResultIsFeasibleAndStructured) {
    GaussianStream g(11);
    const int n = 3;
    const double delta = 1e-6, eps = 1e-6;
    for (const char* name : {"disk", "left_half_plane", "right_parabola"}) {
        Region region = make_region(name, (std::string(name) == "disk")
                                              ? CatalogParams{{"q", 0.0}, {"r", 1.0}}
                                          : (std::string(name) == "left_half_plane")
                                              ? CatalogParams{{"k", 0.0}}
                                              : CatalogParams{{"q", -1.0}, {"c", 2.0}});
        DHTriplet t = testutil::random_triplet(g, n, Mode::real);
        DHTriplet out = project_triplet(region, t, delta, eps);
        // exact structure by construction
        testutil::expect_near_mat(out.J, skew_part(out.J), 0.0);
        testutil::expect_near_mat(out.R, sym_part(out.R), 0.0);
        testutil::expect_near_mat(out.P, sym_part(out.P), 0.0);
        EXPECT_LE(lambda_max(assemble_M_triplet(region, out)), -delta / 2.0);
        EXPECT_GE(lambda_min(out.P), eps / 2.0);
    }
}

TEST(ProjectTriplet, Idempotence) {
    GaussianStream g(12);
    const int n = 3;
    Region disk = make_region(RegionKind::disk, {{"q", 0.0}, {"r", 1.0}});
    ConicConfig cfg;
    TripletProjector proj(disk, n, Mode::real, 1e-6, 1e-6);
    DHTriplet once = proj.project(testutil::random_triplet(g, n, Mode::real), cfg);
    ASSERT_EQ(proj.last_solution().status, SolveStatus::optimal);
    DHTriplet twice = proj.project(once, cfg);
    ASSERT_EQ(proj.last_solution().status, SolveStatus::optimal);
    const double moved = testutil::mat_dist(once.J, twice.J) + testutil::mat_dist(once.R, twice.R) +
                         testutil::mat_dist(once.P, twice.P);
    EXPECT_LE(moved, 10.0 * cfg.tol_p * 3);
}

TEST(ProjectTriplet, Nonexpansive) {
    GaussianStream g(13);
    const int n = 3;
    Region region = make_region(RegionKind::left_conic_sector, {{"a", 0.0}, {"theta", 0.7}});
    ConicConfig cfg;
    TripletProjector proj(region, n, Mode::real, 1e-6, 1e-6);
    for (int rep = 0; rep < 5; ++rep) {
        DHTriplet a = testutil::random_triplet(g, n, Mode::real);
        DHTriplet b = testutil::random_triplet(g, n, Mode::real);
        DHTriplet pa = proj.project(a, cfg);
        DHTriplet pb = proj.project(b, cfg);
        auto dist = [](const DHTriplet& s, const DHTriplet& t) {
            double d2 = 0.0;
            d2 += std::pow(testutil::mat_dist(s.J, t.J), 2);
            d2 += std::pow(testutil::mat_dist(s.R, t.R), 2);
            d2 += std::pow(testutil::mat_dist(s.P, t.P), 2);
            return std::sqrt(d2);
        };
        EXPECT_LE(dist(pa, pb), dist(a, b) + 10.0 * cfg.tol_p);
    }
}

TEST(ProjectTriplet, ComplexModeRegion) {
    GaussianStream g(14);
    const int n = 2;
    Region rotated = transform_scale_rotate(make_region(RegionKind::hurwitz), cdouble(0.6, 0.8));
    DHTriplet t = testutil::random_triplet(g, n, Mode::cplx);
    DHTriplet out = project_triplet(rotated, t, 1e-6, 1e-6);
    EXPECT_EQ(out.mode(), Mode::cplx);
    EXPECT_LE(lambda_max(assemble_M_triplet(rotated, out)), -5e-7);
    ASSERT_NO_THROW(validate_triplet(out));
}

TEST(ProjectTriplet, IntersectionUsesLeafBlocks) {
    GaussianStream g(15);
    const int n = 2;
    Region box = intersect({make_region(RegionKind::vertical_strip, {{"h", -3.0}, {"k", 0.0}}),
                            make_region(RegionKind::horizontal_strip, {{"w", 2.0}})});
    DHTriplet t = testutil::random_triplet(g, n, Mode::real);
    DHTriplet out = project_triplet(box, t, 1e-6, 1e-6);
    for (const Region* leaf : leaf_members(box))
        EXPECT_LE(lambda_max(assemble_M_triplet(*leaf, out)), -5e-7);
    EXPECT_LE(lambda_max(assemble_M_triplet(box, out)), -5e-7);
}

TEST(Certify, HurwitzNegativeIdentity) {
    Region hurwitz = make_region(RegionKind::hurwitz);
    Matrix a = -1.0 * Matrix::identity(3, Mode::real);
    CertifyReport rep = certify_stability(hurwitz, a);
    ASSERT_EQ(rep.status, CertifyStatus::certified);
    ASSERT_TRUE(rep.certificate.has_value());
    EXPECT_NEAR(rep.certificate->delta, 2.0, 1e-4);
    testutil::expect_near_mat(rep.certificate->X, Matrix::identity(3, Mode::real), 1e-4);
    EXPECT_GE(lambda_min(rep.certificate->X), 1.0 - 1e-8);
}

TEST(Certify, HurwitzIdentityInfeasible) {
    Region hurwitz = make_region(RegionKind::hurwitz);
    Matrix a = Matrix::identity(2, Mode::real);
    CertifyReport rep = certify_stability(hurwitz, a);
    EXPECT_NE(rep.status, CertifyStatus::certified);
    EXPECT_FALSE(rep.certificate.has_value());
}

TEST(Certify, DiskDiagonal) {
    Region disk = make_region(RegionKind::disk, {{"q", 0.0}, {"r", 1.0}});
    Matrix a = Matrix::from_rows({{0.5, 0}, {0, -0.5}});
    CertifyReport rep = certify_stability(disk, a);
    ASSERT_EQ(rep.status, CertifyStatus::certified);
    const StabilityCertificate& cert = *rep.certificate;
    EXPECT_GE(lambda_min(cert.X), 1.0 - 1e-8);
    EXPECT_GT(cert.delta, 0.0);
    EXPECT_NEAR(lambda_max(assemble_M_AX(disk, a, cert.X)), -cert.delta, 1e-12);
}

TEST(Certify, ReconstructionRoundTrip) {
    GaussianStream g(16);
    const int n = 3;
    Region region = make_region(RegionKind::left_half_plane, {{"k", -0.2}});
    DHTriplet seed = project_triplet(region, testutil::random_triplet(g, n, Mode::real), 1e-4, 1e-4);
    Matrix a = compose(seed);
    ASSERT_TRUE(is_stable_eig(region, a).stable);

    CertifyReport rep = certify_stability(region, a);
    ASSERT_EQ(rep.status, CertifyStatus::certified);
    DHTriplet t = triplet_from_certificate(a, *rep.certificate);
    EXPECT_LE(testutil::mat_dist(compose(t), a), 1e-8 * (1.0 + frob_norm(a)));
    EXPECT_LT(lambda_max(assemble_M_triplet(region, t)), 0.0);
}
