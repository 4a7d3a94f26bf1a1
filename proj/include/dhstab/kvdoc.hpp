#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "dhstab/errors.hpp"
#include "dhstab/matrix.hpp"
#include "dhstab/textio.hpp"

namespace dhstab {

/// One entry of an attribute-value document: a key with either inline
/// scalar values ("tol 1e-7", "entry 0 1 0.5 -2") or a braced child block.
struct KvNode {
    std::string key;
    std::vector<std::string> values;
    std::vector<KvNode> children;
    bool block = false;
    std::size_t pos = 0; // offset of the key in the source text
};

using KvDoc = std::vector<KvNode>;

namespace detail {

inline bool kv_bare_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}' && c != '#' &&
           c != '"';
}

class KvParser {
  public:
    explicit KvParser(const std::string& text) : s_(text) {}

    KvDoc parse_document(bool top_level) {
        KvDoc doc;
        for (;;) {
            skip_filler();
            if (at_end()) {
                if (!top_level)
                    throw ParseError("kvdoc: unterminated block (missing '}')", s_.size());
                return doc;
            }
            if (s_[i_] == '}') {
                if (top_level)
                    throw ParseError("kvdoc: unmatched '}'", i_);
                ++i_;
                return doc;
            }
            doc.push_back(parse_entry());
        }
    }

  private:
    bool at_end() const { return i_ >= s_.size(); }

    // whitespace (incl. newlines) and comments between entries
    void skip_filler() {
        while (!at_end()) {
            const char c = s_[i_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
            } else if (c == '#') {
                while (!at_end() && s_[i_] != '\n')
                    ++i_;
            } else {
                return;
            }
        }
    }

    // spaces/tabs only; stops at newline or comment
    void skip_inline_ws() {
        while (!at_end() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r'))
            ++i_;
    }

    std::string parse_token() {
        if (s_[i_] == '"') {
            const std::size_t start = i_++;
            std::string out;
            while (!at_end() && s_[i_] != '"') {
                char c = s_[i_];
                if (c == '\n')
                    throw ParseError("kvdoc: newline inside quoted string", i_);
                if (c == '\\') {
                    ++i_;
                    if (at_end())
                        break;
                    c = s_[i_];
                    if (c != '"' && c != '\\')
                        throw ParseError(std::string("kvdoc: unknown escape '\\") + c + "'", i_);
                }
                out.push_back(c);
                ++i_;
            }
            if (at_end())
                throw ParseError("kvdoc: unterminated quoted string", start);
            ++i_; // closing quote
            return out;
        }
        std::string out;
        while (!at_end() && kv_bare_char(s_[i_]))
            out.push_back(s_[i_++]);
        return out;
    }

    KvNode parse_entry() {
        KvNode node;
        node.pos = i_;
        node.key = parse_token();
        if (node.key.empty())
            throw ParseError("kvdoc: expected a key", i_);
        for (;;) {
            skip_inline_ws();
            if (at_end() || s_[i_] == '\n' || s_[i_] == '#') {
                return node; // scalar entry ends at the line
            }
            if (s_[i_] == '{') {
                if (!node.values.empty())
                    throw ParseError("kvdoc: entry mixes inline values and a block", i_);
                ++i_;
                node.block = true;
                node.children = parse_document(false);
                return node;
            }
            if (s_[i_] == '}')
                return node;
            node.values.push_back(parse_token());
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

inline void kv_write_node(const KvNode& node, std::string& out, int depth) {
    auto quote = [](const std::string& v) -> std::string {
        bool need = v.empty();
        for (char c : v)
            if (!kv_bare_char(c))
                need = true;
        if (!need)
            return v;
        std::string q = "\"";
        for (char c : v) {
            if (c == '"' || c == '\\')
                q.push_back('\\');
            q.push_back(c);
        }
        q.push_back('"');
        return q;
    };
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += node.key;
    if (node.block) {
        out += " {\n";
        for (const KvNode& c : node.children)
            kv_write_node(c, out, depth + 1);
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += "}\n";
    } else {
        for (const std::string& v : node.values) {
            out += " ";
            out += quote(v);
        }
        out += "\n";
    }
}

} // namespace detail

inline KvDoc parse_kvdoc(const std::string& text) {
    return detail::KvParser(text).parse_document(true);
}

inline std::string write_kvdoc(const KvDoc& doc) {
    std::string out;
    for (const KvNode& n : doc)
        detail::kv_write_node(n, out, 0);
    return out;
}

inline const KvNode* kv_find(const KvDoc& doc, const std::string& key) {
    for (const KvNode& n : doc)
        if (n.key == key)
            return &n;
    return nullptr;
}

inline std::vector<const KvNode*> kv_all(const KvDoc& doc, const std::string& key) {
    std::vector<const KvNode*> out;
    for (const KvNode& n : doc)
        if (n.key == key)
            out.push_back(&n);
    return out;
}

inline const KvNode& kv_need(const KvDoc& doc, const std::string& key, const char* context) {
    const KvNode* n = kv_find(doc, key);
    if (!n)
        throw ParseError(std::string(context) + ": missing required entry '" + key + "'", 0);
    return *n;
}

inline const std::string& kv_scalar(const KvNode& node) {
    if (node.block || node.values.size() != 1)
        throw ParseError("entry '" + node.key + "' expects exactly one value", node.pos);
    return node.values[0];
}

inline double kv_double(const KvNode& node) {
    return parse_double_token(kv_scalar(node), node.pos);
}

/// Complex scalar grammar: optional sign, decimal real part, optional signed
/// imaginary part with a trailing 'i'; pure-imaginary literals allowed
/// ("0", "-1+3i", "2i", "+i", "0.5e-3"). Whitespace between tokens ignored.
inline cdouble parse_complex_literal(const std::string& text) {
    std::size_t i = 0;
    auto ws = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto digits = [&]() {
        bool any = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            any = true;
        }
        return any;
    };
    struct Term {
        double value;
        bool imag;
    };
    auto term = [&]() -> Term {
        ws();
        const std::size_t start = i;
        double sign = 1.0;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-')
                sign = -1.0;
            ++i;
        }
        ws();
        const std::size_t num_start = i;
        bool has_int = digits();
        bool has_frac = false;
        if (i < text.size() && text[i] == '.') {
            ++i;
            has_frac = digits();
        }
        if (!has_int && !has_frac) {
            // bare 'i' with implicit coefficient 1
            if (i < text.size() && text[i] == 'i') {
                ++i;
                return {sign, true};
            }
            throw ParseError("complex literal: expected a number", start);
        }
        if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
            ++i;
            if (i < text.size() && (text[i] == '+' || text[i] == '-'))
                ++i;
            if (!digits())
                throw ParseError("complex literal: malformed exponent", i);
        }
        const double mag = std::strtod(text.substr(num_start, i - num_start).c_str(), nullptr);
        if (i < text.size() && text[i] == 'i') {
            ++i;
            return {sign * mag, true};
        }
        return {sign * mag, false};
    };

    ws();
    if (i >= text.size())
        throw ParseError("complex literal: empty input", 0);
    const Term first = term();
    ws();
    if (i >= text.size())
        return first.imag ? cdouble(0.0, first.value) : cdouble(first.value, 0.0);
    if (text[i] != '+' && text[i] != '-')
        throw ParseError("complex literal: unexpected trailing characters", i);
    if (first.imag)
        throw ParseError("complex literal: real part must come first", i);
    const std::size_t second_pos = i;
    const Term second = term();
    if (!second.imag)
        throw ParseError("complex literal: second term must be imaginary (trailing 'i')",
                         second_pos);
    ws();
    if (i < text.size())
        throw ParseError("complex literal: unexpected trailing characters", i);
    return cdouble(first.value, second.value);
}

/// Inverse of parse_complex_literal, shortest-round-trip precision.
inline std::string format_complex(cdouble z) {
    const std::string re = format_double(z.real());
    if (z.imag() == 0.0)
        return re;
    const std::string im = format_double(z.imag());
    if (z.real() == 0.0)
        return im + "i";
    return re + (im[0] == '-' ? "" : "+") + im + "i";
}

} // namespace dhstab
