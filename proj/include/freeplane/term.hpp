#ifndef FREEPLANE_TERM_HPP
#define FREEPLANE_TERM_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "freeplane/errors.hpp"

namespace freeplane {

enum class TermKind : unsigned char { base = 0, meet = 1, join = 2 };

/**
 * Provenance-carrying name of an element.
 *
 * A term is either a base name, `meet(l1,l2)` (a point created for two lines)
 * or `join(p1,p2)` (a line created for two points). Arguments are stored in
 * canonical order, so the printed name identifies the term uniquely. The
 * stage of a generated term is one more than the largest argument stage.
 *
 * Terms are immutable and share their argument subtrees.
 */
class ElementTerm {
  public:
    ElementTerm() : node_(base_node("_")) {}

    static ElementTerm base(std::string name) {
        check_base_name(name);
        return ElementTerm(base_node(std::move(name)));
    }

    static ElementTerm meet(const ElementTerm& a, const ElementTerm& b) { return generated(TermKind::meet, a, b); }
    static ElementTerm join(const ElementTerm& a, const ElementTerm& b) { return generated(TermKind::join, a, b); }

    /// Parses the printed form; argument order is canonicalised.
    static ElementTerm parse(std::string_view text) {
        auto strip = [](std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        };
        text = strip(text);
        TermKind kind = TermKind::base;
        if (text.starts_with("meet(")) {
            kind = TermKind::meet;
        } else if (text.starts_with("join(")) {
            kind = TermKind::join;
        }
        if (kind == TermKind::base) {
            return base(std::string(text));
        }
        if (!text.ends_with(")")) {
            throw StructureError("unterminated term: " + std::string(text));
        }
        std::string_view inner = text.substr(5, text.size() - 6);
        int depth = 0;
        std::size_t split = std::string_view::npos;
        for (std::size_t i = 0; i < inner.size(); ++i) {
            char c = inner[i];
            if (c == '(') {
                ++depth;
            } else if (c == ')') {
                if (--depth < 0) throw StructureError("unbalanced term: " + std::string(text));
            } else if (c == ',' && depth == 0) {
                if (split != std::string_view::npos) throw StructureError("term has more than two arguments: " + std::string(text));
                split = i;
            }
        }
        if (depth != 0 || split == std::string_view::npos) {
            throw StructureError("malformed term: " + std::string(text));
        }
        auto left = parse(inner.substr(0, split));
        auto right = parse(inner.substr(split + 1));
        return generated(kind, left, right);
    }

    TermKind kind() const { return node_->kind; }
    const std::string& name() const { return node_->name; }
    std::size_t stage() const { return node_->stage; }
    bool is_base() const { return node_->kind == TermKind::base; }

    /// Arguments of a generated term; undefined for base terms.
    ElementTerm left() const { return ElementTerm(node_->left); }
    ElementTerm right() const { return ElementTerm(node_->right); }

    friend bool operator==(const ElementTerm& a, const ElementTerm& b) {
        return a.node_ == b.node_ || a.node_->name == b.node_->name;
    }

    /// Canonical order: stage, then kind, then base name or arguments.
    friend std::strong_ordering operator<=>(const ElementTerm& a, const ElementTerm& b) {
        return compare(*a.node_, *b.node_);
    }

    static bool is_reserved(std::string_view name) { return name == "0" || name == "1"; }

  private:
    struct Node {
        TermKind kind;
        std::string name;
        std::size_t stage;
        std::shared_ptr<const Node> left;
        std::shared_ptr<const Node> right;
    };

    explicit ElementTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static std::shared_ptr<const Node> base_node(std::string name) {
        return std::make_shared<const Node>(Node{TermKind::base, std::move(name), 0, nullptr, nullptr});
    }

    static ElementTerm generated(TermKind kind, ElementTerm a, ElementTerm b) {
        if (a == b) {
            throw StructureError("term arguments must be distinct: " + a.name());
        }
        if (b < a) std::swap(a, b);
        std::string name = (kind == TermKind::meet ? "meet(" : "join(") + a.name() + "," + b.name() + ")";
        std::size_t stage = std::max(a.stage(), b.stage()) + 1;
        return ElementTerm(std::make_shared<const Node>(Node{kind, std::move(name), stage, a.node_, b.node_}));
    }

    static void check_base_name(const std::string& name) {
        if (name.empty()) throw StructureError("empty element name");
        if (is_reserved(name)) throw StructureError("element name '" + name + "' is reserved for lattice bounds");
        for (char c : name) {
            if (c == '(' || c == ')' || c == ',' || c == '"' || std::isspace(static_cast<unsigned char>(c))) {
                throw StructureError("invalid character in element name '" + name + "'");
            }
        }
    }

    static std::strong_ordering compare(const Node& a, const Node& b) {
        if (&a == &b) return std::strong_ordering::equal;
        if (auto c = a.stage <=> b.stage; c != 0) return c;
        if (auto c = a.kind <=> b.kind; c != 0) return c;
        if (a.kind == TermKind::base) return a.name <=> b.name;
        if (auto c = compare(*a.left, *b.left); c != 0) return c;
        return compare(*a.right, *b.right);
    }

    std::shared_ptr<const Node> node_;
};

} // namespace freeplane

#endif
