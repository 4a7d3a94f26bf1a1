#pragma once

#include <string>
#include <vector>

#include "dhstab/kvdoc.hpp"
#include "dhstab/region.hpp"
#include "dhstab/textio.hpp"

namespace dhstab {

namespace detail {

inline KvNode kv_matrix_entries(const char* key, const Matrix& m) {
    KvNode node;
    node.key = key;
    node.block = true;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            KvNode e;
            e.key = "entry";
            e.values = {std::to_string(i), std::to_string(j), format_double(m(i, j).real()),
                        format_double(m(i, j).imag())};
            node.children.push_back(std::move(e));
        }
    return node;
}

inline Matrix kv_matrix_from_entries(const KvNode& node, int order, Mode mode) {
    Matrix m = Matrix::zero(order, order, mode);
    std::vector<bool> seen(static_cast<std::size_t>(order) * order, false);
    for (const KvNode& e : node.children) {
        if (e.key != "entry")
            throw ParseError("region spec: '" + node.key + "' block holds only 'entry' lines",
                             e.pos);
        if (e.values.size() != 4)
            throw ParseError("region spec: entry expects 'i j re im'", e.pos);
        const int i = static_cast<int>(parse_double_token(e.values[0], e.pos));
        const int j = static_cast<int>(parse_double_token(e.values[1], e.pos));
        const double re = parse_double_token(e.values[2], e.pos);
        const double im = parse_double_token(e.values[3], e.pos);
        if (i < 0 || i >= order || j < 0 || j >= order)
            throw ParseError("region spec: entry index out of range for order " +
                                 std::to_string(order),
                             e.pos);
        if (seen[static_cast<std::size_t>(i) * order + j])
            throw ParseError("region spec: duplicate entry (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")",
                             e.pos);
        seen[static_cast<std::size_t>(i) * order + j] = true;
        if (mode == Mode::real) {
            if (im != 0.0)
                throw ParseError("region spec: imaginary entry in a real-mode custom region",
                                 e.pos);
            m(i, j) = re;
        } else {
            m(i, j) = cdouble(re, im);
        }
    }
    return m;
}

} // namespace detail

/// Region body -> attribute-value entries (inverse of descriptor_from_kv).
inline KvDoc descriptor_to_kv(const RegionDescriptor& d) {
    KvDoc body;
    KvNode kind;
    kind.key = "kind";
    kind.values = {kind_name(d.kind)};
    body.push_back(std::move(kind));
    switch (d.kind) {
    case RegionKind::intersection:
        for (const RegionDescriptor& c : d.children) {
            KvNode member;
            member.key = "member";
            member.block = true;
            member.children = descriptor_to_kv(c);
            body.push_back(std::move(member));
        }
        break;
    case RegionKind::scale_rotate:
    case RegionKind::translate: {
        KvNode alpha;
        alpha.key = "alpha";
        alpha.values = {format_complex(d.alpha)};
        body.push_back(std::move(alpha));
        KvNode base;
        base.key = "base";
        base.block = true;
        base.children = descriptor_to_kv(d.children.at(0));
        body.push_back(std::move(base));
        break;
    }
    case RegionKind::custom: {
        KvNode order;
        order.key = "order";
        order.values = {std::to_string(d.custom_b.rows())};
        body.push_back(std::move(order));
        KvNode mode;
        mode.key = "mode";
        mode.values = {d.custom_b.mode() == Mode::cplx ? "extended" : "real"};
        body.push_back(std::move(mode));
        body.push_back(detail::kv_matrix_entries("b", d.custom_b));
        body.push_back(detail::kv_matrix_entries("c", d.custom_c));
        break;
    }
    default:
        for (const auto& [name, value] : d.params) {
            KvNode p;
            p.key = name;
            p.values = {format_double(value)};
            body.push_back(std::move(p));
        }
        break;
    }
    return body;
}

inline RegionDescriptor descriptor_from_kv(const KvDoc& body) {
    const KvNode& kind_node = kv_need(body, "kind", "region spec");
    RegionDescriptor d;
    d.kind = kind_from_name(kv_scalar(kind_node));
    switch (d.kind) {
    case RegionKind::intersection: {
        for (const KvNode& n : body) {
            if (n.key == "kind")
                continue;
            if (n.key != "member" || !n.block)
                throw ParseError("region spec: intersection holds only 'member' blocks", n.pos);
            d.children.push_back(descriptor_from_kv(n.children));
        }
        if (d.children.empty())
            throw ParseError("region spec: intersection needs at least one member",
                             kind_node.pos);
        break;
    }
    case RegionKind::scale_rotate:
    case RegionKind::translate: {
        const KvNode* base = nullptr;
        for (const KvNode& n : body) {
            if (n.key == "kind")
                continue;
            if (n.key == "alpha") {
                try {
                    d.alpha = parse_complex_literal(kv_scalar(n));
                } catch (const ParseError& e) {
                    throw ParseError(std::string("region spec: alpha: ") + e.what(), n.pos);
                }
            } else if (n.key == "base" && n.block) {
                base = &n;
            } else {
                throw ParseError("region spec: transform node takes 'alpha' and 'base', got '" +
                                     n.key + "'",
                                 n.pos);
            }
        }
        if (!base)
            throw ParseError("region spec: transform node needs a 'base' block", kind_node.pos);
        d.children.push_back(descriptor_from_kv(base->children));
        break;
    }
    case RegionKind::custom: {
        const KvNode& order_node = kv_need(body, "order", "region spec custom");
        const int order = static_cast<int>(kv_double(order_node));
        if (order < 1)
            throw ParseError("region spec: custom order must be >= 1", order_node.pos);
        Mode mode = Mode::real;
        if (const KvNode* mode_node = kv_find(body, "mode")) {
            const std::string& m = kv_scalar(*mode_node);
            if (m == "extended")
                mode = Mode::cplx;
            else if (m != "real")
                throw ParseError("region spec: mode is 'real' or 'extended', got '" + m + "'",
                                 mode_node->pos);
        }
        for (const KvNode& n : body)
            if (n.key != "kind" && n.key != "order" && n.key != "mode" && n.key != "b" &&
                n.key != "c")
                throw ParseError("region spec: unknown entry '" + n.key + "' in custom node",
                                 n.pos);
        d.custom_b =
            detail::kv_matrix_from_entries(kv_need(body, "b", "region spec custom"), order, mode);
        d.custom_c =
            detail::kv_matrix_from_entries(kv_need(body, "c", "region spec custom"), order, mode);
        break;
    }
    default:
        for (const KvNode& n : body) {
            if (n.key == "kind")
                continue;
            if (n.block)
                throw ParseError("region spec: parameter '" + n.key + "' cannot be a block",
                                 n.pos);
            d.params[n.key] = kv_double(n);
        }
        break;
    }
    return d;
}

inline Region parse_region_spec(const std::string& text) {
    KvDoc doc = parse_kvdoc(text);
    const KvNode& region_node = kv_need(doc, "region", "region spec");
    if (!region_node.block)
        throw ParseError("region spec: 'region' must open a block", region_node.pos);
    if (doc.size() != 1)
        throw ParseError("region spec: expected a single top-level 'region' block", 0);
    return region_from_descriptor(descriptor_from_kv(region_node.children));
}

inline std::string write_region_spec(const Region& region) {
    KvNode root;
    root.key = "region";
    root.block = true;
    root.children = descriptor_to_kv(region.descriptor());
    return write_kvdoc({root});
}

inline Region parse_region_file(const std::string& path) {
    return parse_region_spec(read_text_file(path));
}

} // namespace dhstab
