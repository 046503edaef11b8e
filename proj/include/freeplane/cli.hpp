#ifndef FREEPLANE_CLI_HPP
#define FREEPLANE_CLI_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "freeplane/confinement.hpp"
#include "freeplane/dot.hpp"
#include "freeplane/encoder.hpp"
#include "freeplane/errors.hpp"
#include "freeplane/extension.hpp"
#include "freeplane/group.hpp"
#include "freeplane/harness.hpp"
#include "freeplane/io_json.hpp"
#include "freeplane/lattice.hpp"
#include "freeplane/morphism.hpp"
#include "freeplane/random.hpp"
#include "freeplane/validate.hpp"

namespace freeplane::cli {

enum ExitCode : int { ok = 0, negative = 1, resource = 2, input_error = 3, internal_error = 4 };

struct RunConfig {
    std::size_t jobs = 1;
    std::size_t budget = 100'000;
    bool strict = false;
    std::uint64_t seed = 0;
    std::string out;

    std::string in, from, to;
    std::size_t stages = 1;
    std::string mode = "full";
    std::string kind = "lattice";
    std::string emit_dot, emit_hasse, log;
    bool require_plane_core = false;
    bool check = false;
    bool from_lattice = false;
    bool all = false;
    std::size_t limit = 1;
    std::size_t node_cap = 50'000'000;
    std::size_t order_cap = 1'000'000;
    bool list = false;

    std::string encoder = "identity";
    std::string instances;
    std::size_t n = 1, m = 1;

    std::size_t points = 6, lines = 6;
    double probability = 0.35;
    bool linear = false;
};

namespace detail {

using nlohmann::json;

class Output {
  public:
    Output(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

    void write(const json& j) const { write_text(io::dump(j)); }
    void write_text(const std::string& text) const {
        if (cfg_.out.empty()) {
            out_ << text;
        } else {
            io::write_text(cfg_.out, text);
        }
    }

  private:
    const RunConfig& cfg_;
    std::ostream& out_;
};

inline ExtensionMode mode_of(const RunConfig& cfg) {
    auto m = parse_mode(cfg.mode);
    if (!m) throw InputError("unknown mode '" + cfg.mode + "' (expected full or meets)");
    return *m;
}

inline MorphismKind kind_of(const RunConfig& cfg) {
    auto k = parse_kind(cfg.kind);
    if (!k) throw InputError("unknown kind '" + cfg.kind + "' (expected lattice, incidence or iso)");
    return *k;
}

inline SearchOptions search_of(const RunConfig& cfg) {
    SearchOptions o;
    o.node_cap = cfg.node_cap;
    o.jobs = cfg.jobs;
    return o;
}

inline HarnessOptions harness_of(const RunConfig& cfg) {
    HarnessOptions o;
    o.mode = mode_of(cfg);
    o.budget = cfg.budget;
    o.embed_kind = kind_of(cfg);
    o.search = search_of(cfg);
    o.automorphisms.order_cap = cfg.order_cap;
    o.automorphisms.node_cap = cfg.node_cap;
    o.jobs = cfg.jobs;
    return o;
}

inline IncidenceStructure load(const RunConfig& cfg, const std::string& path, const char* what) {
    if (path.empty()) throw InputError(std::string("missing ") + what + " file");
    return io::read_structure(path, cfg.strict);
}

inline json sizes_json(const ExtensionTrace& t) {
    json out = json::array();
    for (const auto& s : t.stages) out.push_back({s.num_points(), s.num_lines()});
    return out;
}

inline int cmd_validate(const RunConfig& cfg, const Output& out) {
    auto s = load(cfg, cfg.in, "input");
    auto r = validate(s);
    auto j = io::to_json(r);
    j["points"] = s.num_points();
    j["lines"] = s.num_lines();
    out.write(j);
    return r.is_plane() ? ok : negative;
}

inline int cmd_extend(const RunConfig& cfg, const Output& out, std::ostream& err) {
    auto s = load(cfg, cfg.in, "input");
    auto t = extend(s, cfg.stages, mode_of(cfg), cfg.budget);
    out.write(io::to_json(t));
    if (!cfg.emit_dot.empty()) io::write_text(cfg.emit_dot, dot::trace_graphs(t));
    for (std::size_t k = 0; k < t.stages.size(); ++k) {
        err << "stage " << k << ": " << t.stages[k].num_points() << " points, " << t.stages[k].num_lines()
            << " lines\n";
    }
    if (t.truncated()) {
        err << "budget of " << cfg.budget << " elements exceeded at stage " << t.stop_stage << " ("
            << t.refused_points << " points, " << t.refused_lines << " lines)\n";
        return resource;
    }
    return ok;
}

inline int cmd_core(const RunConfig& cfg, const Output& out, std::ostream& err) {
    auto s = load(cfg, cfg.in, "input");
    auto c = confined_core(s);
    out.write(io::to_json(c.core));
    if (!cfg.log.empty()) io::write_text(cfg.log, io::dump(io::deletions_to_json(c, s)));
    if (cfg.require_plane_core) {
        auto r = validate(c.core);
        if (!r.is_plane()) {
            err << "core is not a plane (" << c.core.num_points() << " points, " << c.core.num_lines()
                << " lines)\n";
            return negative;
        }
    }
    return ok;
}

inline int cmd_lattice(const RunConfig& cfg, const Output& out) {
    if (cfg.in.empty()) throw InputError("missing input file");
    GeometricLattice L;
    if (cfg.from_lattice) {
        L = io::lattice_from_json(io::read_json(cfg.in), cfg.strict);
    } else {
        L = to_lattice(io::read_structure(cfg.in, cfg.strict));
    }
    if (!cfg.emit_hasse.empty()) io::write_text(cfg.emit_hasse, dot::hasse(L));
    if (cfg.check) {
        auto r = check_geometric_length3(L);
        out.write(io::to_json(r));
        return r.passed() ? ok : negative;
    }
    if (cfg.from_lattice) {
        out.write(io::to_json(from_lattice(L)));
    } else {
        out.write(io::to_json(L));
    }
    return ok;
}

inline int cmd_embed(const RunConfig& cfg, const Output& out) {
    auto a = load(cfg, cfg.from, "source");
    auto b = load(cfg, cfg.to, "target");
    auto opt = search_of(cfg);
    opt.limit = cfg.all ? 0 : cfg.limit;
    auto r = embeddings(a, b, kind_of(cfg), opt);
    json maps = json::array();
    for (const auto& f : r.morphisms) maps.push_back(io::to_json(f, a, b));
    out.write({{"kind", std::string(kind_name(kind_of(cfg)))},
               {"count", r.morphisms.size()},
               {"exhaustive", r.status == SearchStatus::complete},
               {"morphisms", std::move(maps)}});
    if (r.exhausted()) return resource;
    return r.morphisms.empty() ? negative : ok;
}

inline int cmd_aut(const RunConfig& cfg, const Output& out) {
    auto s = load(cfg, cfg.in, "input");
    AutomorphismOptions opt;
    opt.order_cap = cfg.order_cap;
    opt.node_cap = cfg.node_cap;
    opt.jobs = cfg.jobs;
    auto g = automorphism_group(s, opt);
    json gens = json::array();
    for (const auto& p : g.generators) gens.push_back(io::to_json(to_morphism(p, s.num_points()), s, s));
    json j{{"order", g.order()}, {"complete", g.complete}, {"generators", std::move(gens)}};
    if (cfg.list) {
        json all = json::array();
        for (const auto& p : g.elements) all.push_back(io::to_json(to_morphism(p, s.num_points()), s, s));
        j["elements"] = std::move(all);
    }
    out.write(j);
    return g.complete ? ok : resource;
}

inline int cmd_biembed(const RunConfig& cfg, const Output& out) {
    auto a = load(cfg, cfg.from, "first");
    auto b = load(cfg, cfg.to, "second");
    auto kind = kind_of(cfg);
    auto opt = search_of(cfg);
    bool ab = exists_morphism(a, b, kind, opt);
    bool ba = exists_morphism(b, a, kind, opt);
    out.write({{"kind", std::string(kind_name(kind))}, {"a_to_b", ab}, {"b_to_a", ba}, {"bi_embeddable", ab && ba}});
    return ab && ba ? ok : negative;
}

inline std::vector<NamedInstance> load_instances(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    if (cfg.instances.empty()) throw InputError("missing --instances directory");
    if (!fs::is_directory(cfg.instances)) throw InputError("'" + cfg.instances + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(cfg.instances)) {
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<NamedInstance> out;
    for (const auto& f : files) out.push_back({f.stem().string(), io::read_structure(f.string(), cfg.strict)});
    if (out.empty()) throw InputError("no .json instances in '" + cfg.instances + "'");
    return out;
}

inline json report_json(const HarnessReport& rep, const std::vector<NamedInstance>& instances,
                        const std::vector<IncidenceStructure>& encoded, const HarnessOptions& opt) {
    json verdicts = json::array();
    for (const auto& v : rep.verdicts) {
        json names = json::array();
        for (std::size_t i : v.instances) names.push_back(instances[i].name);
        json j{{"check", v.check}, {"instances", std::move(names)}, {"passed", v.passed}, {"detail", v.detail}};
        if (v.check == "aut-isomorphism") {
            j["order_source"] = v.order_source;
            j["order_encoded"] = v.order_encoded;
        }
        if (v.witness) {
            bool src = v.witness_side == WitnessSide::source;
            const auto& a = src ? instances[v.instances[0]].structure : encoded[v.instances[0]];
            const auto& b = src ? instances[v.instances[1]].structure : encoded[v.instances[1]];
            j["witness"] = {{"side", src ? "source" : "encoded"}, {"morphism", io::to_json(*v.witness, a, b)}};
        }
        if (!v.passed) j["witness_verified"] = verify_verdict(v, instances, encoded, opt);
        verdicts.push_back(std::move(j));
    }
    return {{"encoder", rep.encoder},
            {"encoder_version", rep.encoder_version},
            {"instances", rep.instance_names},
            {"embed_kind", std::string(kind_name(opt.embed_kind))},
            {"passed", rep.passed()},
            {"failures", rep.failures()},
            {"verdicts", std::move(verdicts)}};
}

inline int cmd_spb(const RunConfig& cfg, const Output& out) {
    auto instances = load_instances(cfg);
    auto enc = make_encoder(cfg.encoder);
    auto opt = harness_of(cfg);
    auto rep = spb_check(*enc, instances, opt);
    auto encoded = encode_all(*enc, instances);
    out.write(report_json(rep, instances, encoded, opt));
    return rep.passed() ? ok : negative;
}

inline int cmd_restriction(const RunConfig& cfg, const Output& out) {
    auto a = load(cfg, cfg.from, "first");
    auto b = load(cfg, cfg.to, "second");
    auto opt = harness_of(cfg);
    auto r = check_restriction(a, b, cfg.n, cfg.m, opt);
    json counter = json::array();
    for (const auto& f : r.counterexamples) counter.push_back(io::to_json(f, r.extension_a, r.extension_b));
    out.write({{"confined_a", r.confined_a},
               {"confined_b", r.confined_b},
               {"vacuous", r.vacuous},
               {"embeddings_checked", r.embeddings_checked},
               {"restriction_holds", r.restriction_holds},
               {"counterexamples", std::move(counter)},
               {"core_a_preserved", r.core_a_preserved},
               {"core_b_preserved", r.core_b_preserved},
               {"core_a_is_base", r.core_a_is_base},
               {"core_b_is_base", r.core_b_is_base},
               {"extension_sizes", {{r.extension_a.num_points(), r.extension_a.num_lines()},
                                    {r.extension_b.num_points(), r.extension_b.num_lines()}}},
               {"passed", r.passed()}});
    return r.passed() ? ok : negative;
}

inline int cmd_fullness(const RunConfig& cfg, const Output& out) {
    auto x = load(cfg, cfg.from, "first");
    auto y = load(cfg, cfg.to, "second");
    auto enc = make_encoder(cfg.encoder);
    auto c = fullness_check(*enc, x, y, harness_of(cfg));
    out.write({{"encoder", enc->name()}, {"iso_source", c.source}, {"iso_encoded", c.encoded}, {"equal", c.equal()}});
    return c.equal() ? ok : negative;
}

inline int cmd_generate(const RunConfig& cfg, const Output& out) {
    RandomStructureOptions opt;
    opt.max_points = cfg.points;
    opt.max_lines = cfg.lines;
    opt.incidence_probability = cfg.probability;
    opt.linear = cfg.linear;
    out.write(io::to_json(random_structure(cfg.seed, opt)));
    return ok;
}

} // namespace detail

/**
 * Runs the tool. Exit codes: 0 success or property holds, 1 negative
 * verdict, 2 budget or search cap exceeded, 3 bad input, 4 internal error.
 */
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig cfg;
    CLI::App app{"Finite incidence geometry: planes, free extensions, cores, lattices and embeddings", "freeplane"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--budget", cfg.budget, "Element budget for free extensions")->check(CLI::PositiveNumber);
    app.add_flag("--strict", cfg.strict, "Reject unknown fields and non-canonical names in input JSON");
    app.add_option("--seed", cfg.seed, "Seed for test-data generation");
    app.add_option("--out", cfg.out, "Output file (default: standard output)");

    auto input = [&](CLI::App* sub) { sub->add_option("input,--in", cfg.in, "Input JSON file"); };
    auto node_cap = [&](CLI::App* sub) {
        sub->add_option("--node-cap", cfg.node_cap, "Search node cap")->check(CLI::PositiveNumber);
    };
    auto kind = [&](CLI::App* sub) {
        sub->add_option("--kind", cfg.kind, "lattice, incidence or iso")
            ->check(CLI::IsMember({"lattice", "incidence", "iso"}));
    };
    auto mode = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "full or meets")->check(CLI::IsMember({"full", "meets"}));
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check the plane axioms");
    input(validate_cmd);

    auto* extend_cmd = app.add_subcommand("extend", "Staged free extension");
    input(extend_cmd);
    extend_cmd->add_option("--stages", cfg.stages, "Number of stages");
    mode(extend_cmd);
    extend_cmd->add_option("--emit-dot", cfg.emit_dot, "Write per-stage incidence graphs in DOT");

    auto* core_cmd = app.add_subcommand("core", "Confined core by peeling");
    input(core_cmd);
    core_cmd->add_flag("--require-plane-core", cfg.require_plane_core, "Fail unless the core satisfies (A)-(D)");
    core_cmd->add_option("--log", cfg.log, "Write the deletion log");

    auto* lattice_cmd = app.add_subcommand("lattice", "Lattice view of a structure");
    input(lattice_cmd);
    lattice_cmd->add_flag("--check", cfg.check, "Check the geometric length-3 lattice laws");
    lattice_cmd->add_option("--emit-hasse", cfg.emit_hasse, "Write the Hasse diagram in DOT");
    lattice_cmd->add_flag("--from-lattice", cfg.from_lattice, "Input is a lattice; output its structure");

    auto* embed_cmd = app.add_subcommand("embed", "Search for embeddings");
    embed_cmd->add_option("from,--from", cfg.from, "Source structure");
    embed_cmd->add_option("to,--to", cfg.to, "Target structure");
    kind(embed_cmd);
    auto* all_flag = embed_cmd->add_flag("--all", cfg.all, "Enumerate all embeddings");
    embed_cmd->add_option("--limit", cfg.limit, "Stop after this many")->check(CLI::PositiveNumber)->excludes(all_flag);
    node_cap(embed_cmd);

    auto* aut_cmd = app.add_subcommand("aut", "Automorphism group");
    input(aut_cmd);
    aut_cmd->add_option("--order-cap", cfg.order_cap, "Largest group stored")->check(CLI::PositiveNumber);
    aut_cmd->add_flag("--list", cfg.list, "List every automorphism");
    node_cap(aut_cmd);

    auto* biembed_cmd = app.add_subcommand("biembed", "Embeddings in both directions");
    biembed_cmd->add_option("a,--a", cfg.from, "First structure");
    biembed_cmd->add_option("b,--b", cfg.to, "Second structure");
    kind(biembed_cmd);
    node_cap(biembed_cmd);

    auto* harness_cmd = app.add_subcommand("harness", "Property harness");
    harness_cmd->require_subcommand(1);
    auto* spb_cmd = harness_cmd->add_subcommand("spb", "Stabilizer preservation checks for an encoder");
    spb_cmd->add_option("--encoder", cfg.encoder, "identity, naive, broken or plugin:<path>");
    spb_cmd->add_option("--instances", cfg.instances, "Directory of instance JSON files");
    kind(spb_cmd);
    node_cap(spb_cmd);
    auto* restriction_cmd = harness_cmd->add_subcommand("restriction", "Restriction of embeddings of extensions");
    restriction_cmd->add_option("--a", cfg.from, "First structure");
    restriction_cmd->add_option("--b", cfg.to, "Second structure");
    restriction_cmd->add_option("--n", cfg.n, "Stages for the first structure");
    restriction_cmd->add_option("--m", cfg.m, "Stages for the second structure");
    kind(restriction_cmd);
    mode(restriction_cmd);
    node_cap(restriction_cmd);
    auto* fullness_cmd = harness_cmd->add_subcommand("fullness", "Compare |Iso(x,y)| with |Iso(F(x),F(y))|");
    fullness_cmd->add_option("--encoder", cfg.encoder, "identity, naive, broken or plugin:<path>");
    fullness_cmd->add_option("--x", cfg.from, "First structure");
    fullness_cmd->add_option("--y", cfg.to, "Second structure");
    node_cap(fullness_cmd);

    auto* generate_cmd = app.add_subcommand("generate", "Seeded random structure");
    generate_cmd->add_option("--points", cfg.points, "Maximum number of points");
    generate_cmd->add_option("--lines", cfg.lines, "Maximum number of lines");
    generate_cmd->add_option("--p", cfg.probability, "Incidence probability")->check(CLI::Range(0.0, 1.0));
    generate_cmd->add_flag("--linear", cfg.linear, "At most one line through two points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    }

    detail::Output output(cfg, out);
    try {
        if (*validate_cmd) return detail::cmd_validate(cfg, output);
        if (*extend_cmd) return detail::cmd_extend(cfg, output, err);
        if (*core_cmd) return detail::cmd_core(cfg, output, err);
        if (*lattice_cmd) return detail::cmd_lattice(cfg, output);
        if (*embed_cmd) return detail::cmd_embed(cfg, output);
        if (*aut_cmd) return detail::cmd_aut(cfg, output);
        if (*biembed_cmd) return detail::cmd_biembed(cfg, output);
        if (*spb_cmd) return detail::cmd_spb(cfg, output);
        if (*restriction_cmd) return detail::cmd_restriction(cfg, output);
        if (*fullness_cmd) return detail::cmd_fullness(cfg, output);
        if (*generate_cmd) return detail::cmd_generate(cfg, output);
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return resource;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << " (" << e.partial_results() << " partial results)\n";
        return resource;
    } catch (const InternalConsistencyError& e) {
        err << "internal error: " << e.what() << "\n";
        return internal_error;
    } catch (const NotLength3Error& e) {
        err << "error: " << e.what() << "\n";
        return negative;
    } catch (const std::exception& e) {
        // Input, structure, precondition, encoder and JSON errors.
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    return input_error;
}

} // namespace freeplane::cli

#endif
