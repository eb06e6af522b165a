#pragma once

#include "corpus.hpp"
#include "io/document.hpp"
#include "io/svg.hpp"
#include "scenarios.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace penrose::cli {

// Exit codes.
inline constexpr int kVerified = 0;
inline constexpr int kViolation = 1;
inline constexpr int kInputError = 2;

struct Options {
    std::string command;
    std::string file;
    std::string name; // scenario
    std::string mode = "exact";
    bool mode_given = false;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    int n = 3;
    bool n_given = false;
    std::string space = "conic";
    std::string out;
};

using SelftestHook = std::function<bool(std::ostream&)>;

/// Thrown for anything wrong with the input rather than the mathematics.
struct InputError : Error {
    explicit InputError(const Error& e) : Error(e.kind(), std::string(e.what()).substr(e.kind().size() + 2)) {}
};

inline io::json load_document(const std::string& path)
{
    if (path.empty()) throw InputError(Error("MissingInput", "this command needs an input file"));
    std::ifstream in(path);
    if (!in) throw InputError(Error("MissingInput", "cannot read '" + path + "'"));
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        auto doc = io::parse_document(ss.str());
        if (!doc.is_object()) throw Error("ValidationError", "/: a document is one top-level object");
        if (doc.contains("version") && doc["version"] != io::kVersion)
            throw Error("ValidationError", "/version: unsupported version");
        return doc;
    } catch (const Error& e) {
        throw InputError(e);
    }
}

// Runs f and turns library errors raised while reading the document into input errors.
template <class F>
auto reading(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(e);
    }
}

inline void emit(const Options& o, std::ostream& out, const std::string& text)
{
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw InputError(Error("OutputError", "cannot write '" + o.out + "'"));
    f << text;
}

inline std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

inline void print_report(const Report& r, std::ostream& out)
{
    for (const auto& c : r.checks) {
        out << status_name(c.status) << "  " << c.name << "  [" << c.anchor << "]";
        if (c.residual != "0") out << "  residual " << c.residual;
        for (const auto& w : c.witnesses) out << "  " << w;
        out << "\n";
    }
    out << "summary: " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, "
        << r.count(Status::Flag) << " flag\n";
}

// ---- commands ----

template <class T>
int cmd_construct(const Options& o, std::ostream& out)
{
    PenroseParams<T> q;
    if (!o.file.empty()) {
        auto doc = load_document(o.file);
        q = reading([&] {
            if (!doc.contains("params")) throw Error("ValidationError", "/params: missing");
            return io::params_from<T>(doc["params"]);
        });
        if (o.n_given && q.n != o.n) throw InputError(Error("ValidationError", "/params/n: does not match --n"));
    } else {
        RationalGen g(o.seed);
        q = random_params<T>(g, o.space == "quadric" ? 4 : 3, o.n);
    }
    auto L = build_lattice(q);
    emit(o, out, dump(io::cube_json(L)));
    return kVerified;
}

template <class T>
int cmd_complete(const Options& o, std::ostream& out, std::ostream& err)
{
    auto doc = load_document(o.file);
    auto seven = reading([&] { return io::seven_from_document<T>(doc); });
    auto rep = validate_seven(seven);
    if (!rep.ok()) {
        print_report(rep, err);
        bool face = false;
        for (const auto& c : rep.checks) face = face || (c.status == Status::Fail && c.name.rfind("face", 0) == 0);
        err << (face ? "InconsistentFace" : "InvalidSevenConfig") << ": input fails seven-configuration validation\n";
        return kViolation;
    }
    auto r = complete(seven);
    emit(o, out, dump(io::completion_json(r)));
    if (!r.unique) err << "note: completion is not unique" << (r.second ? "; second completion included" : "") << "\n";
    return kVerified;
}

template <class T>
int cmd_verify(const Options& o, std::ostream& out)
{
    auto doc = load_document(o.file);
    auto L = reading([&] { return io::lattice_from_cube<T>(doc); });
    auto rep = verify_lattice(L);
    if constexpr (!scalar_traits<T>::exact)
        for (auto& c : rep.checks)
            if (c.status == Status::Pass && c.residual != "0") c.status = Status::Flag; // within tolerance, not exact
    print_report(rep, out);
    if (!o.out.empty()) emit(o, out, dump(io::report_json(rep)));
    return rep.ok() ? kVerified : kViolation;
}

template <class T>
int cmd_classify(const Options& o, std::ostream& out)
{
    auto doc = load_document(o.file);
    auto L = reading([&] { return io::lattice_from_cube<T>(doc); });
    out << classify(L) << "\n";
    return kVerified;
}

inline void scenario_lines(const std::string& name, std::uint64_t seed, const ScenarioPair& p, Report& rep)
{
    auto line = [&](const ScenarioVerdict& v, bool negative) {
        std::string who = name + (negative ? " negative control" : "") + " (seed " + std::to_string(seed) + ")";
        bool ok = negative ? !v.penrose_ok && !v.classical_ok : v.penrose_ok && v.classical_ok;
        std::string res = std::string("penrose ") + (v.penrose_ok ? "holds" : "fails") + ", classical " +
                          (v.classical_ok ? "holds" : "fails");
        std::vector<std::string> w;
        if (!v.label.empty()) w.push_back("label " + v.label);
        if (!v.error.empty()) w.push_back("build " + v.error);
        rep.add(Check{who, negative ? "perturbed datum breaks both sides" : "classical special case of the cube",
                      ok ? Status::Pass : Status::Fail, res, w});
    };
    line(p.positive, false);
    if (p.has_negative) line(p.negative, true);
}

template <class T>
int cmd_scenario(const Options& o, std::ostream& out)
{
    std::vector<std::string> names;
    if (o.name == "all") names = scenario_names();
    else names.push_back(o.name);
    for (const auto& n : names)
        if (std::find(scenario_names().begin(), scenario_names().end(), n) == scenario_names().end())
            throw InputError(Error("UnknownScenario", "no scenario named '" + n + "'"));
    Report rep;
    for (const auto& n : names) {
        RationalGen g(o.seed);
        scenario_lines(n, o.seed, run_named_scenario<T>(n, g), rep);
    }
    print_report(rep, out);
    if (!o.out.empty()) emit(o, out, dump(io::report_json(rep)));
    return rep.ok() ? kVerified : kViolation;
}

template <class T>
int cmd_lift(const Options& o, std::ostream& out)
{
    auto doc = load_document(o.file);
    auto seven = reading([&] { return io::seven_from_document<T>(doc); });
    ExtrusionFrame<T> fr;
    if (doc.contains("frame")) {
        fr = reading([&] { return io::frame_from<T>(doc["frame"]); });
    } else {
        RationalGen g(o.seed);
        fr = random_frame<T>(g);
    }
    if (seven.m != 3) throw InputError(Error("ValidationError", "/config/m: lift takes conics"));
    auto ext = extrude_seven(seven, fr);
    io::json res;
    res["version"] = io::kVersion;
    res["kind"] = "config";
    res["mode"] = scalar_traits<T>::mode;
    res["config"] = io::config_json(ext.config);
    res["frame"] = io::frame_json(fr);
    io::json sc = io::json::object();
    for (IndexSet s = 0; s < kEighth; ++s) sc[io::vertex_key(s)] = io::scalar_json(ext.scale[s]);
    res["scale"] = sc;
    emit(o, out, dump(res));
    return kVerified;
}

template <class T>
int cmd_slice(const Options& o, std::ostream& out)
{
    auto doc = load_document(o.file);
    auto seven = reading([&] { return io::seven_from_document<T>(doc); });
    if (seven.m != 4) throw InputError(Error("ValidationError", "/config/m: slice takes quadrics"));
    Matrix<T> basis = reading([&] {
        if (doc.contains("frame")) return io::frame_from<T>(doc["frame"]).plane_basis();
        if (doc.contains("plane")) return canonical_plane_basis(ProjHyperplane<T>{io::vec_from<T>(doc["plane"], "/plane", 4)});
        throw Error("ValidationError", "/: slice needs a frame or a plane");
    });
    auto sl = slice_cube(seven, basis);
    io::json res;
    res["version"] = io::kVersion;
    res["kind"] = "config";
    res["mode"] = scalar_traits<T>::mode;
    res["config"] = io::config_json(sl.config);
    io::json tangent = io::json::array();
    for (IndexSet s = 0; s <= kEighth; ++s)
        if (sl.tangent[s]) tangent.push_back(io::vertex_key(s));
    res["tangent"] = tangent;
    emit(o, out, dump(res));
    return sl.report.ok() ? kVerified : kViolation;
}

template <class T>
int cmd_render(const Options& o, std::ostream& out)
{
    auto doc = load_document(o.file);
    auto L = reading([&] {
        if (doc.contains("vertices")) return io::lattice_from_cube<T>(doc);
        if (doc.contains("params")) return build_lattice(io::params_from<T>(doc["params"]), false);
        throw Error("ValidationError", "/: render needs a cube or params document");
    });
    if (L.m() != 3) throw InputError(Error("ValidationError", "/params/m: render draws conics"));
    emit(o, out, io::render_svg(L));
    return kVerified;
}

template <class T>
int dispatch(const Options& o, std::ostream& out, std::ostream& err, const SelftestHook& selftest)
{
    if (o.command == "construct") return cmd_construct<T>(o, out);
    if (o.command == "complete") return cmd_complete<T>(o, out, err);
    if (o.command == "verify") return cmd_verify<T>(o, out);
    if (o.command == "classify") return cmd_classify<T>(o, out);
    if (o.command == "scenario") return cmd_scenario<T>(o, out);
    if (o.command == "lift") return cmd_lift<T>(o, out);
    if (o.command == "slice") return cmd_slice<T>(o, out);
    if (o.command == "render") return cmd_render<T>(o, out);
    if (o.command == "selftest") {
        if (!selftest) throw InputError(Error("Unsupported", "selftest is not available here"));
        return selftest(out) ? kVerified : kViolation;
    }
    throw InputError(Error("UnknownCommand", o.command));
}

/// Whole command line without the program name. Never throws.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const SelftestHook& selftest = {})
{
    Options o;
    CLI::App app{"Double-contact lattices of conics and quadrics: construct, complete, verify, classify."};
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1, 1);
    auto* mode = app.add_option("--mode", o.mode, "exact (rational) or float arithmetic")
                     ->check(CLI::IsMember({"exact", "float"}));
    auto* tol = app.add_option("--tol", o.tol, "float-mode tolerance")->check(CLI::PositiveNumber);
    auto* seed = app.add_option("--seed", o.seed, "seed for generated data");
    auto* nopt = app.add_option("--n", o.n, "lattice dimension")->check(CLI::IsMember({3, 4}));
    app.add_option("--space", o.space, "conic (m=3) or quadric (m=4)")->check(CLI::IsMember({"conic", "quadric"}));
    app.add_option("--out", o.out, "write the result here instead of stdout");

    struct Sub {
        const char* name;
        const char* help;
        bool file;
    };
    const Sub subs[] = {{"construct", "build a cube from a params document, or from --seed", true},
                        {"complete", "find the eighth vertex of a seven-configuration", true},
                        {"verify", "check every lattice identity of a cube document", true},
                        {"classify", "name the special case of a cube document", true},
                        {"scenario", "run a classical scenario and its negative control", false},
                        {"lift", "extrude a planar seven-configuration", true},
                        {"slice", "cut a quadric configuration with a plane", true},
                        {"render", "draw a planar cube as SVG", true},
                        {"selftest", "run the acceptance suite", false}};
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        sub->fallthrough();
        if (s.file) sub->add_option("file", o.file, "input document");
        if (std::string(s.name) == "scenario")
            sub->add_option("name", o.name, "scenario name or 'all'")->required();
    }
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kVerified;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kVerified;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    o.command = app.get_subcommands().front()->get_name();
    o.mode_given = mode->count() > 0;
    o.n_given = nopt->count() > 0;

    try {
        if (!o.file.empty()) {
            auto doc = load_document(o.file);
            const io::json none = io::json::object();
            const io::json& opts = doc.contains("options") ? doc["options"] : none;
            reading([&] {
                if (!opts.is_object()) throw Error("ValidationError", "/options: expected an object");
                if (!o.mode_given) {
                    if (opts.contains("mode")) o.mode = opts["mode"].is_string() ? opts["mode"].get<std::string>() : "";
                    else if (doc.contains("mode") && doc["mode"].is_string()) o.mode = doc["mode"].get<std::string>();
                    if (o.mode != "exact" && o.mode != "float") throw Error("ValidationError", "/options/mode: exact or float");
                }
                if (!tol->count() && opts.contains("tol")) {
                    if (!opts["tol"].is_number() || opts["tol"].get<double>() <= 0)
                        throw Error("ValidationError", "/options/tol: a positive number");
                    o.tol = opts["tol"].get<double>();
                }
                if (!seed->count() && opts.contains("seed")) {
                    if (!opts["seed"].is_number_unsigned()) throw Error("ValidationError", "/options/seed: a non-negative integer");
                    o.seed = opts["seed"].get<std::uint64_t>();
                }
                return 0;
            });
        }
        ToleranceScope scope(o.tol);
        return o.mode == "float" ? dispatch<double>(o, out, err, selftest) : dispatch<Rational>(o, out, err, selftest);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kViolation;
    } catch (const std::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
}

} // namespace penrose::cli
