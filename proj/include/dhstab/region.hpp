#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dhstab/eig.hpp"
#include "dhstab/matrix.hpp"

namespace dhstab {

/// LMI region Omega = { z : B + z C + conj(z) C^H < 0 } of order s.
/// Real mode is the classical LMI region (B symmetric, C real, region
/// symmetric about the real axis); extended mode allows Hermitian B and
/// complex C. Margins are always computed from (B, C); the descriptor only
/// records how the region was constructed.

enum class RegionKind {
    left_conic_sector,
    right_conic_sector,
    disk,
    vertical_strip,
    left_half_plane,
    right_half_plane,
    ellipse,
    left_parabola,
    right_parabola,
    left_hyperbola,
    right_hyperbola,
    horizontal_strip,
    hurwitz, // order-1 open left half-plane, f(z) = 2 Re z
    custom,
    intersection,
    scale_rotate,
    translate,
};

inline const char* kind_name(RegionKind k) {
    switch (k) {
    case RegionKind::left_conic_sector: return "left_conic_sector";
    case RegionKind::right_conic_sector: return "right_conic_sector";
    case RegionKind::disk: return "disk";
    case RegionKind::vertical_strip: return "vertical_strip";
    case RegionKind::left_half_plane: return "left_half_plane";
    case RegionKind::right_half_plane: return "right_half_plane";
    case RegionKind::ellipse: return "ellipse";
    case RegionKind::left_parabola: return "left_parabola";
    case RegionKind::right_parabola: return "right_parabola";
    case RegionKind::left_hyperbola: return "left_hyperbola";
    case RegionKind::right_hyperbola: return "right_hyperbola";
    case RegionKind::horizontal_strip: return "horizontal_strip";
    case RegionKind::hurwitz: return "hurwitz";
    case RegionKind::custom: return "custom";
    case RegionKind::intersection: return "intersection";
    case RegionKind::scale_rotate: return "scale_rotate";
    case RegionKind::translate: return "translate";
    }
    return "?";
}

inline RegionKind kind_from_name(const std::string& name) {
    for (RegionKind k :
         {RegionKind::left_conic_sector, RegionKind::right_conic_sector, RegionKind::disk,
          RegionKind::vertical_strip, RegionKind::left_half_plane, RegionKind::right_half_plane,
          RegionKind::ellipse, RegionKind::left_parabola, RegionKind::right_parabola,
          RegionKind::left_hyperbola, RegionKind::right_hyperbola, RegionKind::horizontal_strip,
          RegionKind::hurwitz, RegionKind::custom, RegionKind::intersection,
          RegionKind::scale_rotate, RegionKind::translate})
        if (name == kind_name(k))
            return k;
    throw ValidationError("unknown region kind '" + name + "'");
}

/// The twelve catalog kinds (no custom/intersection/transform nodes).
inline const std::vector<RegionKind>& catalog_kinds() {
    static const std::vector<RegionKind> kinds = {
        RegionKind::left_conic_sector, RegionKind::right_conic_sector,
        RegionKind::disk,              RegionKind::vertical_strip,
        RegionKind::left_half_plane,   RegionKind::right_half_plane,
        RegionKind::ellipse,           RegionKind::left_parabola,
        RegionKind::right_parabola,    RegionKind::left_hyperbola,
        RegionKind::right_hyperbola,   RegionKind::horizontal_strip,
    };
    return kinds;
}

/// Catalog parameters by name, e.g. {"q", "r"} for a disk. Vertical strips
/// accept -inf for h and +inf for k.
using CatalogParams = std::map<std::string, double>;

/// Construction tree: catalog leaf, custom leaf, intersection node, or a
/// scale_rotate / translate wrapper with its alpha. Custom leaves carry
/// their (B, C) data so the tree alone can rebuild the region.
struct RegionDescriptor {
    RegionKind kind = RegionKind::custom;
    CatalogParams params;
    cdouble alpha{0.0, 0.0};
    std::vector<RegionDescriptor> children;
    Matrix custom_b, custom_c; // 0x0 unless kind == custom
};

class Region {
  public:
    Region(Matrix b, Matrix c, Mode mode, RegionDescriptor desc, std::vector<Region> members = {})
        : b_(std::move(b)), c_(std::move(c)), mode_(mode), desc_(std::move(desc)),
          members_(std::move(members)) {
        require_square(b_, "Region B");
        require_square(c_, "Region C");
        if (b_.rows() != c_.rows())
            throw DimensionError("Region: B is " + std::to_string(b_.rows()) + "x" +
                                 std::to_string(b_.rows()) + " but C is " +
                                 std::to_string(c_.rows()) + "x" + std::to_string(c_.rows()));
        if (!is_hermitian(b_, 1e-12 * (1.0 + frob_norm(b_))))
            throw ValidationError("Region: B must be Hermitian");
        if (mode_ == Mode::real && (b_.mode() != Mode::real || c_.mode() != Mode::real))
            throw ModeError("Region: real mode requires real B and C");
        b_ = sym_part(b_);
    }

    int order() const { return b_.rows(); }
    const Matrix& B() const { return b_; }
    const Matrix& C() const { return c_; }
    Mode mode() const { return mode_; }
    const RegionDescriptor& descriptor() const { return desc_; }
    /// Direct intersection members; empty for atomic regions.
    const std::vector<Region>& members() const { return members_; }

  private:
    Matrix b_, c_;
    Mode mode_;
    RegionDescriptor desc_;
    std::vector<Region> members_;
};

namespace detail {

inline double need(const CatalogParams& p, const std::string& key, const std::string& kind) {
    auto it = p.find(key);
    if (it == p.end())
        throw ValidationError(kind + ": missing parameter '" + key + "'");
    return it->second;
}

inline void check_keys(const CatalogParams& p, std::initializer_list<const char*> allowed,
                       const std::string& kind) {
    for (const auto& [key, value] : p) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a)
                ok = true;
        if (!ok)
            throw ValidationError(kind + ": unknown parameter '" + key + "'");
    }
}

} // namespace detail

/// Builds one of the catalog regions. Parameter names: conic sectors (a,
/// theta), disk (q, r), vertical_strip (h, k), left_half_plane (k),
/// right_half_plane (h), ellipse (q, a, b), parabolas (q, c), hyperbolas
/// (a, b), horizontal_strip (w); hurwitz takes none.
inline Region make_region(RegionKind kind, const CatalogParams& params = {}) {
    using detail::check_keys;
    using detail::need;
    const std::string name = kind_name(kind);
    RegionDescriptor desc;
    desc.kind = kind;
    desc.params = params;
    auto region = [&](Matrix b, Matrix c) {
        return Region(std::move(b), std::move(c), Mode::real, desc);
    };
    switch (kind) {
    case RegionKind::left_conic_sector:
    case RegionKind::right_conic_sector: {
        check_keys(params, {"a", "theta"}, name);
        const double a = need(params, "a", name);
        const double th = need(params, "theta", name);
        if (!(th >= 0.0 && th <= 1.5707963267948966 + 1e-15))
            throw ValidationError(name + ": need 0 <= theta <= pi/2, got " + std::to_string(th));
        const double s = std::sin(th), c = std::cos(th);
        if (kind == RegionKind::left_conic_sector)
            return region(Matrix::from_rows({{-a * s, 0}, {0, -a * s}}),
                          Matrix::from_rows({{0.5 * s, 0.5 * c}, {-0.5 * c, 0.5 * s}}));
        return region(Matrix::from_rows({{a * s, 0}, {0, a * s}}),
                      Matrix::from_rows({{-0.5 * s, 0.5 * c}, {-0.5 * c, -0.5 * s}}));
    }
    case RegionKind::disk: {
        check_keys(params, {"q", "r"}, name);
        const double q = need(params, "q", name);
        const double r = need(params, "r", name);
        if (!(r > 0.0))
            throw ValidationError("disk: need r > 0, got " + std::to_string(r));
        return region(Matrix::from_rows({{-r, q}, {q, -r}}),
                      Matrix::from_rows({{0, 0}, {-1, 0}}));
    }
    case RegionKind::vertical_strip: {
        check_keys(params, {"h", "k"}, name);
        const double h = need(params, "h", name);
        const double k = need(params, "k", name);
        if (!(h < k))
            throw ValidationError("vertical_strip: need h < k, got h = " + std::to_string(h) +
                                  ", k = " + std::to_string(k));
        const bool h_inf = std::isinf(h), k_inf = std::isinf(k);
        if (h_inf && k_inf)
            throw ValidationError("vertical_strip: h and k cannot both be infinite");
        // infinite bounds dispatch to the dedicated half-plane pairs
        if (h_inf)
            return region(Matrix::from_rows({{-k, 0}, {0, -1}}),
                          Matrix::from_rows({{0.5, 0}, {0, 0}}));
        if (k_inf)
            return region(Matrix::from_rows({{h, 0}, {0, -1}}),
                          Matrix::from_rows({{-0.5, 0}, {0, 0}}));
        return region(Matrix::from_rows({{-k, 0}, {0, h}}),
                      Matrix::from_rows({{0.5, 0}, {0, -0.5}}));
    }
    case RegionKind::left_half_plane: {
        check_keys(params, {"k"}, name);
        const double k = need(params, "k", name);
        return region(Matrix::from_rows({{-k, 0}, {0, -1}}),
                      Matrix::from_rows({{0.5, 0}, {0, 0}}));
    }
    case RegionKind::right_half_plane: {
        check_keys(params, {"h"}, name);
        const double h = need(params, "h", name);
        return region(Matrix::from_rows({{h, 0}, {0, -1}}),
                      Matrix::from_rows({{-0.5, 0}, {0, 0}}));
    }
    case RegionKind::ellipse: {
        check_keys(params, {"q", "a", "b"}, name);
        const double q = need(params, "q", name);
        const double a = need(params, "a", name);
        const double b = need(params, "b", name);
        if (!(a > 0.0))
            throw ValidationError("ellipse: need a > 0, got " + std::to_string(a));
        if (!(b > 0.0))
            throw ValidationError("ellipse: need b > 0, got " + std::to_string(b));
        const double rho = a / b;
        return region(Matrix::from_rows({{-2 * a, -2 * q}, {-2 * q, -2 * a}}),
                      Matrix::from_rows({{0, 1 + rho}, {1 - rho, 0}}));
    }
    case RegionKind::left_parabola:
    case RegionKind::right_parabola: {
        check_keys(params, {"q", "c"}, name);
        const double q = need(params, "q", name);
        const double c = need(params, "c", name);
        if (!(c > 0.0))
            throw ValidationError(name + ": need c > 0, got " + std::to_string(c));
        const double g = std::sqrt(0.5 * c);
        if (kind == RegionKind::left_parabola)
            return region(Matrix::from_rows({{-1, 0}, {0, -q}}),
                          Matrix::from_rows({{0, 0.5 * g}, {-0.5 * g, 0.5}}));
        return region(Matrix::from_rows({{-1, 0}, {0, q}}),
                      Matrix::from_rows({{0, 0.5 * g}, {-0.5 * g, -0.5}}));
    }
    case RegionKind::left_hyperbola:
    case RegionKind::right_hyperbola: {
        check_keys(params, {"a", "b"}, name);
        const double a = need(params, "a", name);
        const double b = need(params, "b", name);
        if (!(a > 0.0))
            throw ValidationError(name + ": need a > 0, got " + std::to_string(a));
        if (!(b > 0.0))
            throw ValidationError(name + ": need b > 0, got " + std::to_string(b));
        const double sa = (kind == RegionKind::left_hyperbola) ? 1.0 : -1.0;
        return region(Matrix::from_rows({{0, 1}, {1, 0}}),
                      Matrix::from_rows({{sa * 0.5 / a, 0.5 / b}, {-0.5 / b, sa * 0.5 / a}}));
    }
    case RegionKind::horizontal_strip: {
        check_keys(params, {"w"}, name);
        const double w = need(params, "w", name);
        if (!(w > 0.0))
            throw ValidationError("horizontal_strip: need w > 0, got " + std::to_string(w));
        return region(Matrix::from_rows({{-w, 0}, {0, -w}}),
                      Matrix::from_rows({{0, 0.5}, {-0.5, 0}}));
    }
    case RegionKind::hurwitz: {
        check_keys(params, {}, name);
        return region(Matrix::from_rows({{0}}), Matrix::from_rows({{1}}));
    }
    default:
        throw ValidationError("make_region: '" + name + "' is not a catalog kind");
    }
}

inline Region make_region(const std::string& kind, const CatalogParams& params = {}) {
    return make_region(kind_from_name(kind), params);
}

/// Region from explicit (B, C); mode is inferred from the matrices.
inline Region custom_region(const Matrix& b, const Matrix& c) {
    const Mode mode = join_modes(b.mode(), c.mode());
    RegionDescriptor desc;
    desc.kind = RegionKind::custom;
    desc.custom_b = mode == Mode::cplx ? b.promoted() : b;
    desc.custom_c = mode == Mode::cplx ? c.promoted() : c;
    return Region(desc.custom_b, desc.custom_c, mode, desc);
}

/// f_Omega(z) = B + z C + conj(z) C^H, symmetrized. Real for real regions at
/// real z, complex Hermitian otherwise.
inline Matrix char_fn(const Region& region, cdouble z) {
    Matrix f = region.B() + z * region.C() + std::conj(z) * conj_transpose(region.C());
    f = sym_part(f);
    if (f.is_real())
        f.scrub_real();
    return f;
}

/// lambda_max(f_Omega(z)); strictly negative iff z lies in the open region.
inline double membership_margin(const Region& region, cdouble z) {
    return herm_eig(char_fn(region, z), false).values.front().real();
}

/// Intersection: block-diagonal (B, C), order = sum of member orders.
inline Region intersect(const std::vector<Region>& members) {
    if (members.empty())
        throw ValidationError("intersect: empty member list");
    Mode mode = members.front().mode();
    for (const Region& m : members)
        if (m.mode() != mode)
            throw ModeError("intersect: members mix real and extended modes");
    std::vector<Matrix> bs, cs;
    RegionDescriptor desc;
    desc.kind = RegionKind::intersection;
    for (const Region& m : members) {
        bs.push_back(m.B());
        cs.push_back(m.C());
        desc.children.push_back(m.descriptor());
    }
    return Region(block_diag(bs), block_diag(cs), mode, desc, members);
}

/// Scaling/rotation by alpha != 0: B unchanged, C -> (1/alpha) C. The result
/// is extended-mode and satisfies z in Omega <=> alpha*z in result.
inline Region transform_scale_rotate(const Region& region, cdouble alpha) {
    if (alpha == cdouble(0.0))
        throw ValidationError("transform_scale_rotate: alpha must be nonzero");
    RegionDescriptor desc;
    desc.kind = RegionKind::scale_rotate;
    desc.alpha = alpha;
    desc.children.push_back(region.descriptor());
    std::vector<Region> members;
    for (const Region& m : region.members())
        members.push_back(transform_scale_rotate(m, alpha));
    Matrix c = (cdouble(1.0) / alpha) * region.C();
    return Region(region.B().promoted(), c.promoted(), Mode::cplx, desc, std::move(members));
}

/// Translation by alpha: B -> B - alpha C - conj(alpha) C^H, C unchanged.
/// The result is extended-mode and satisfies z in Omega <=> z+alpha in result.
inline Region transform_translate(const Region& region, cdouble alpha) {
    RegionDescriptor desc;
    desc.kind = RegionKind::translate;
    desc.alpha = alpha;
    desc.children.push_back(region.descriptor());
    std::vector<Region> members;
    for (const Region& m : region.members())
        members.push_back(transform_translate(m, alpha));
    Matrix b = region.B() - alpha * region.C() - std::conj(alpha) * conj_transpose(region.C());
    b = sym_part(b);
    return Region(b.promoted(), region.C().promoted(), Mode::cplx, desc, std::move(members));
}

/// Rebuilds a Region from its construction tree (inverse of descriptor()).
inline Region region_from_descriptor(const RegionDescriptor& d) {
    switch (d.kind) {
    case RegionKind::custom:
        if (d.custom_b.rows() == 0 || d.custom_c.rows() == 0)
            throw ValidationError("region descriptor: custom node lacks B, C data");
        return custom_region(d.custom_b, d.custom_c);
    case RegionKind::intersection: {
        std::vector<Region> members;
        for (const RegionDescriptor& c : d.children)
            members.push_back(region_from_descriptor(c));
        return intersect(members);
    }
    case RegionKind::scale_rotate:
        if (d.children.size() != 1)
            throw ValidationError("region descriptor: scale_rotate needs exactly one child");
        return transform_scale_rotate(region_from_descriptor(d.children[0]), d.alpha);
    case RegionKind::translate:
        if (d.children.size() != 1)
            throw ValidationError("region descriptor: translate needs exactly one child");
        return transform_translate(region_from_descriptor(d.children[0]), d.alpha);
    default:
        return make_region(d.kind, d.params);
    }
}

/// Flattened list of atomic blocks in block-diagonal order; a single-block
/// region yields itself.
inline void leaf_members(const Region& region, std::vector<const Region*>& out) {
    if (region.members().empty()) {
        out.push_back(&region);
        return;
    }
    for (const Region& m : region.members())
        leaf_members(m, out);
}

inline std::vector<const Region*> leaf_members(const Region& region) {
    std::vector<const Region*> out;
    leaf_members(region, out);
    return out;
}

struct Window {
    double xmin, xmax, ymin, ymax;
};

/// Margin samples on a grid: node (ix, iy) sits at
/// (xs[ix], ys[iy]) with both axes linearly spaced including endpoints;
/// margins are row-major with y as the row index (margins[iy*nx + ix]).
struct Raster {
    int nx = 0, ny = 0;
    std::vector<double> xs, ys;
    std::vector<double> margins;
    double at(int ix, int iy) const { return margins[static_cast<std::size_t>(iy) * nx + ix]; }
};

inline Raster raster(const Region& region, const Window& w, int nx, int ny) {
    if (!(w.xmin < w.xmax) || !(w.ymin < w.ymax))
        throw ValidationError("raster: degenerate window");
    if (nx < 2 || ny < 2)
        throw ValidationError("raster: need nx, ny >= 2");
    Raster r;
    r.nx = nx;
    r.ny = ny;
    r.xs.resize(nx);
    r.ys.resize(ny);
    for (int i = 0; i < nx; ++i)
        r.xs[i] = w.xmin + (w.xmax - w.xmin) * i / (nx - 1);
    for (int j = 0; j < ny; ++j)
        r.ys[j] = w.ymin + (w.ymax - w.ymin) * j / (ny - 1);
    r.margins.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            r.margins[static_cast<std::size_t>(j) * nx + i] =
                membership_margin(region, cdouble(r.xs[i], r.ys[j]));
    return r;
}

} // namespace dhstab
