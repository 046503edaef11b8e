#ifndef FREEPLANE_STRUCTURE_HPP
#define FREEPLANE_STRUCTURE_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "freeplane/errors.hpp"
#include "freeplane/term.hpp"

namespace freeplane {

enum class Sort : unsigned char { point, line };

struct ElementRef {
    Sort sort;
    std::size_t index;

    friend bool operator==(const ElementRef&, const ElementRef&) = default;
    friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
};

class StructureBuilder;

/**
 * A finite set of points and lines with an incidence relation.
 *
 * Points and lines are each kept in canonical term order, and indices refer
 * to that order. Adjacency lists are sorted. Instances are immutable; build
 * them with StructureBuilder.
 *
 * Only structural well-formedness is enforced here (distinct, non-reserved
 * names; incidences between existing elements). The uniqueness laws are
 * queried with is_linear().
 */
class IncidenceStructure {
  public:
    IncidenceStructure() = default;

    std::size_t num_points() const { return points_.size(); }
    std::size_t num_lines() const { return lines_.size(); }
    std::size_t num_elements() const { return points_.size() + lines_.size(); }
    std::size_t num_incidences() const {
        std::size_t total = 0;
        for (const auto& l : line_points_) total += l.size();
        return total;
    }

    const ElementTerm& point(std::size_t p) const { return points_[p]; }
    const ElementTerm& line(std::size_t l) const { return lines_[l]; }
    const std::vector<ElementTerm>& points() const { return points_; }
    const std::vector<ElementTerm>& lines() const { return lines_; }
    const ElementTerm& term(ElementRef e) const { return e.sort == Sort::point ? points_[e.index] : lines_[e.index]; }
    const std::string& name(ElementRef e) const { return term(e).name(); }

    std::span<const std::size_t> lines_through(std::size_t p) const { return point_lines_[p]; }
    std::span<const std::size_t> points_on(std::size_t l) const { return line_points_[l]; }

    bool incident(std::size_t p, std::size_t l) const {
        const auto& pts = line_points_[l];
        return std::binary_search(pts.begin(), pts.end(), p);
    }

    std::optional<ElementRef> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::size_t> find_point(std::string_view name) const {
        auto e = find(name);
        if (!e || e->sort != Sort::point) return std::nullopt;
        return e->index;
    }
    std::optional<std::size_t> find_line(std::string_view name) const {
        auto e = find(name);
        if (!e || e->sort != Sort::line) return std::nullopt;
        return e->index;
    }

    /// Lines containing both points, in canonical order.
    std::vector<std::size_t> common_lines(std::size_t p, std::size_t q) const {
        return intersect(point_lines_[p], point_lines_[q]);
    }
    /// Points on both lines, in canonical order.
    std::vector<std::size_t> common_points(std::size_t l, std::size_t m) const {
        return intersect(line_points_[l], line_points_[m]);
    }

    /// Any two points share at most one line and any two lines at most one point.
    bool is_linear() const {
        // Lines sharing two points would make some point pair appear twice.
        std::vector<std::size_t> seen(points_.size(), npos);
        for (std::size_t p = 0; p < points_.size(); ++p) {
            for (std::size_t l : point_lines_[p]) {
                for (std::size_t q : line_points_[l]) {
                    if (q <= p) continue;
                    if (seen[q] == p) return false;
                    seen[q] = p;
                }
            }
        }
        return true;
    }

    std::size_t max_stage() const {
        std::size_t s = 0;
        for (const auto& t : points_) s = std::max(s, t.stage());
        for (const auto& t : lines_) s = std::max(s, t.stage());
        return s;
    }

    /// Same elements (by name) and same incidences.
    friend bool operator==(const IncidenceStructure& a, const IncidenceStructure& b) {
        return a.points_ == b.points_ && a.lines_ == b.lines_ && a.line_points_ == b.line_points_;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    friend class StructureBuilder;

    static std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    std::vector<ElementTerm> points_;
    std::vector<ElementTerm> lines_;
    std::vector<std::vector<std::size_t>> point_lines_;
    std::vector<std::vector<std::size_t>> line_points_;
    std::unordered_map<std::string, ElementRef> index_;
};

/**
 * Collects elements and incidences in any order and produces a canonical
 * IncidenceStructure. Incidences may be given by name or by term.
 */
class StructureBuilder {
  public:
    StructureBuilder& add_point(ElementTerm t) {
        points_.push_back(std::move(t));
        return *this;
    }
    StructureBuilder& add_point(std::string name) { return add_point(ElementTerm::parse(name)); }

    StructureBuilder& add_line(ElementTerm t) {
        lines_.push_back(std::move(t));
        return *this;
    }
    StructureBuilder& add_line(std::string name) { return add_line(ElementTerm::parse(name)); }

    StructureBuilder& add_line(ElementTerm t, const std::vector<std::string>& point_names) {
        for (const auto& p : point_names) incidences_.emplace_back(p, t.name());
        return add_line(std::move(t));
    }
    StructureBuilder& add_line(std::string name, const std::vector<std::string>& point_names) {
        return add_line(ElementTerm::parse(name), point_names);
    }

    StructureBuilder& add_incidence(std::string point_name, std::string line_name) {
        incidences_.emplace_back(std::move(point_name), std::move(line_name));
        return *this;
    }

    /// Copies every element and incidence of an existing structure.
    StructureBuilder& add_all(const IncidenceStructure& s) {
        for (const auto& p : s.points()) add_point(p);
        for (std::size_t l = 0; l < s.num_lines(); ++l) {
            add_line(s.line(l));
            for (std::size_t p : s.points_on(l)) incidences_.emplace_back(s.point(p).name(), s.line(l).name());
        }
        return *this;
    }

    IncidenceStructure build() const {
        IncidenceStructure s;
        s.points_ = points_;
        s.lines_ = lines_;
        std::sort(s.points_.begin(), s.points_.end());
        std::sort(s.lines_.begin(), s.lines_.end());
        for (std::size_t i = 0; i < s.points_.size(); ++i) {
            if (!s.index_.emplace(s.points_[i].name(), ElementRef{Sort::point, i}).second) {
                throw StructureError("duplicate element name '" + s.points_[i].name() + "'");
            }
        }
        for (std::size_t i = 0; i < s.lines_.size(); ++i) {
            if (!s.index_.emplace(s.lines_[i].name(), ElementRef{Sort::line, i}).second) {
                throw StructureError("duplicate element name '" + s.lines_[i].name() + "'");
            }
        }
        s.point_lines_.assign(s.points_.size(), {});
        s.line_points_.assign(s.lines_.size(), {});
        for (const auto& [pn, ln] : incidences_) {
            auto p = s.find_point(pn);
            auto l = s.find_line(ln);
            if (!p) throw StructureError("incidence references unknown point '" + pn + "'");
            if (!l) throw StructureError("incidence references unknown line '" + ln + "'");
            s.point_lines_[*p].push_back(*l);
            s.line_points_[*l].push_back(*p);
        }
        auto normalise = [](std::vector<std::size_t>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        for (auto& v : s.point_lines_) normalise(v);
        for (auto& v : s.line_points_) normalise(v);
        return s;
    }

  private:
    std::vector<ElementTerm> points_;
    std::vector<ElementTerm> lines_;
    std::vector<std::pair<std::string, std::string>> incidences_;
};

/// The substructure on the given points and lines with the induced incidence.
inline IncidenceStructure induced_substructure(const IncidenceStructure& s, std::span<const std::size_t> points,
                                               std::span<const std::size_t> lines) {
    StructureBuilder b;
    std::vector<char> keep(s.num_points(), 0);
    for (std::size_t p : points) {
        keep[p] = 1;
        b.add_point(s.point(p));
    }
    for (std::size_t l : lines) {
        b.add_line(s.line(l));
        for (std::size_t p : s.points_on(l)) {
            if (keep[p]) b.add_incidence(s.point(p).name(), s.line(l).name());
        }
    }
    return b.build();
}

/// Every element of `sub` is in `sup` and incidence between them agrees.
inline bool is_induced_substructure(const IncidenceStructure& sub, const IncidenceStructure& sup) {
    std::vector<std::size_t> pmap(sub.num_points());
    for (std::size_t p = 0; p < sub.num_points(); ++p) {
        auto q = sup.find_point(sub.point(p).name());
        if (!q) return false;
        pmap[p] = *q;
    }
    for (std::size_t l = 0; l < sub.num_lines(); ++l) {
        auto m = sup.find_line(sub.line(l).name());
        if (!m) return false;
        std::size_t induced = 0;
        for (std::size_t q : sup.points_on(*m)) {
            if (sub.find_point(sup.point(q).name())) ++induced;
        }
        if (induced != sub.points_on(l).size()) return false;
        for (std::size_t p : sub.points_on(l)) {
            if (!sup.incident(pmap[p], *m)) return false;
        }
    }
    return true;
}

} // namespace freeplane

#endif
