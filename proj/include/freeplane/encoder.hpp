#ifndef FREEPLANE_ENCODER_HPP
#define FREEPLANE_ENCODER_HPP

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <utility>

#include "freeplane/errors.hpp"
#include "freeplane/io_json.hpp"
#include "freeplane/structure.hpp"

namespace freeplane {

/// Deterministic map from finite structures (graphs are structures with
/// two-point lines) to finite structures.
class Encoder {
  public:
    virtual ~Encoder() = default;
    virtual std::string name() const = 0;
    virtual std::string version() const { return "1"; }
    virtual IncidenceStructure encode(const IncidenceStructure& x) const = 0;
};

class IdentityEncoder final : public Encoder {
  public:
    std::string name() const override { return "identity"; }
    IncidenceStructure encode(const IncidenceStructure& x) const override { return x; }
};

/**
 * Graph to structure: vertices and edges both become points, and each edge
 * e = {u, v} becomes the 3-point line {u, v, e} named "line_<e>".
 */
class NaiveGraphEncoder final : public Encoder {
  public:
    std::string name() const override { return "naive"; }
    IncidenceStructure encode(const IncidenceStructure& g) const override {
        StructureBuilder b;
        for (const auto& v : g.points()) b.add_point(v);
        for (std::size_t e = 0; e < g.num_lines(); ++e) {
            auto pts = g.points_on(e);
            if (pts.size() != 2) {
                throw EncoderError("naive encoder needs a graph; line '" + g.line(e).name() + "' has " +
                                   std::to_string(pts.size()) + " points");
            }
            const auto& edge = g.line(e);
            if (!edge.is_base()) throw EncoderError("naive encoder needs base-named edges");
            b.add_point(edge);
            b.add_line("line_" + edge.name(), {g.point(pts[0]).name(), g.point(pts[1]).name(), edge.name()});
        }
        try {
            return b.build();
        } catch (const StructureError& e) {
            throw EncoderError(std::string("naive encoder produced a malformed structure: ") + e.what());
        }
    }
};

/**
 * Deliberately not isomorphism-invariant: appends a point "gadget_p" and
 * lines "gadget_l1" = {first point, gadget_p} and "gadget_l2" = {gadget_p},
 * where the first point is taken in input order.
 */
class BrokenEncoder final : public Encoder {
  public:
    std::string name() const override { return "broken"; }
    IncidenceStructure encode(const IncidenceStructure& x) const override {
        StructureBuilder b;
        b.add_all(x);
        b.add_point("gadget_p");
        if (x.num_points() > 0) {
            b.add_line("gadget_l1", {x.point(0).name(), "gadget_p"});
        } else {
            b.add_line("gadget_l1", {"gadget_p"});
        }
        b.add_line("gadget_l2", {"gadget_p"});
        try {
            return b.build();
        } catch (const StructureError& e) {
            throw EncoderError(std::string("broken encoder produced a malformed structure: ") + e.what());
        }
    }
};

/**
 * External executable: receives the structure JSON on standard input and
 * must print a structure JSON on standard output. Run through the shell
 * once per call.
 */
class PluginEncoder final : public Encoder {
  public:
    explicit PluginEncoder(std::string path) : path_(std::move(path)) {}

    std::string name() const override { return "plugin:" + path_; }

    IncidenceStructure encode(const IncidenceStructure& x) const override {
        namespace fs = std::filesystem;
        std::random_device rd;
        auto tmp = fs::temp_directory_path() / ("freeplane-plugin-" + std::to_string(rd()) + ".json");
        io::write_text(tmp.string(), io::dump(io::to_json(x)));
        std::string cmd = quote(path_) + " < " + quote(tmp.string());
        std::string output;
        int status = -1;
        if (FILE* pipe = ::popen(cmd.c_str(), "r")) {
            std::array<char, 4096> buf{};
            std::size_t n = 0;
            while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
            status = ::pclose(pipe);
        }
        std::error_code ec;
        fs::remove(tmp, ec);
        if (status != 0) throw EncoderError("plugin '" + path_ + "' failed (status " + std::to_string(status) + ")");
        try {
            return io::structure_from_json(io::parse_text(output, path_));
        } catch (const std::exception& e) {
            throw EncoderError("plugin '" + path_ + "' produced invalid output: " + e.what());
        }
    }

  private:
    static std::string quote(const std::string& s) {
        std::string out = "'";
        for (char c : s) {
            if (c == '\'') {
                out += "'\\''";
            } else {
                out += c;
            }
        }
        return out + "'";
    }

    std::string path_;
};

/// "identity", "naive", "broken" or "plugin:<path>".
inline std::unique_ptr<Encoder> make_encoder(std::string_view spec) {
    if (spec == "identity") return std::make_unique<IdentityEncoder>();
    if (spec == "naive") return std::make_unique<NaiveGraphEncoder>();
    if (spec == "broken") return std::make_unique<BrokenEncoder>();
    if (spec.starts_with("plugin:")) return std::make_unique<PluginEncoder>(std::string(spec.substr(7)));
    throw InputError("unknown encoder '" + std::string(spec) + "'");
}

} // namespace freeplane

#endif
