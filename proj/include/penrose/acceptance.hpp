#pragma once

#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>

#include <unistd.h>

namespace penrose::acceptance {

struct Outcome {
    bool ok = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

using Q = Rational;
using P = HomogeneousPoly<Q>;

inline IndexSet bit(int j) { return IndexSet(1u << (j - 1)); }

inline bool equal_up_to_sign(const P& a, const P& b) { return a == b || a == -b; }

// 1. edge identities on random cubes
inline Outcome edge_suite(int samples = 200)
{
    auto t0 = Clock::now();
    RationalGen g(101);
    int edges = 0;
    for (int i = 0; i < samples; ++i) {
        auto L = build_lattice(random_params<Q>(g), false);
        auto rep = verify_edges(L);
        if (!rep.ok()) return {false, "lattice " + std::to_string(i) + " fails an edge"};
        edges += static_cast<int>(rep.checks.size());
    }
    double dt = seconds_since(t0);
    return {dt < 10, std::to_string(samples) + " lattices, " + std::to_string(edges) + " edges exact" +
                         (dt < 10 ? ", under 10 s" : ", too slow")};
}

// 2. vertices against the expanded determinant formulas for d = −1
inline Outcome preset_concordance(int samples = 100)
{
    RationalGen g(202);
    for (int i = 0; i < samples; ++i) {
        auto q = random_preset<Q>(g);
        auto L = build_lattice(q);
        const P& S0 = q.S0;
        const P *p[3] = {&q.p[0], &q.p[1], &q.p[2]};
        Q a = q.ajk(2, 3), b = q.ajk(1, 3), c = q.ajk(1, 2);
        for (int j = 1; j <= 3; ++j)
            if (!equal_up_to_sign(L.S[bit(j)], Q(-1) * S0 - *p[j - 1] * *p[j - 1]))
                return {false, "first layer, sample " + std::to_string(i)};
        for (int j = 1; j <= 3; ++j)
            for (int k = j + 1; k <= 3; ++k) {
                Q x = q.ajk(j, k);
                P expect = Q(1 - x * x) * S0 + *p[j - 1] * *p[j - 1] + Q(2 * x) * (*p[j - 1] * *p[k - 1]) + *p[k - 1] * *p[k - 1];
                if (!equal_up_to_sign(L.S[bit(j) | bit(k)], expect)) return {false, "second layer, sample " + std::to_string(i)};
            }
        Q lead = 1 - a * a - b * b - 2 * a * b * c - c * c;
        P expect = Q(-lead) * S0 - Q(1 - a * a) * (*p[0] * *p[0]) - Q(1 - b * b) * (*p[1] * *p[1]) -
                   Q(1 - c * c) * (*p[2] * *p[2]) - Q(2 * (c + a * b)) * (*p[0] * *p[1]) -
                   Q(2 * (b + a * c)) * (*p[0] * *p[2]) - Q(2 * (a + b * c)) * (*p[1] * *p[2]);
        if (!equal_up_to_sign(L.S[kEighth], expect)) return {false, "eighth vertex, sample " + std::to_string(i)};
    }
    return {true, std::to_string(samples) + " presets; eighth vertex S0-coefficient ±(1-a^2-b^2-2abc-c^2)"};
}

// 3. and 4. face concurrency and the face-conic / diagonal / relation identities
inline Outcome face_suite(bool identities, int samples = 200)
{
    RationalGen g(101);
    int checks = 0;
    for (int i = 0; i < samples; ++i) {
        auto L = build_lattice(random_params<Q>(g), false);
        if (!identities) {
            for (const auto& fc : L.faces()) {
                if (!face_point(L, fc).concurrent) return {false, "face not concurrent in lattice " + std::to_string(i)};
                ++checks;
            }
            continue;
        }
        Report rep = verify_faces(L);
        rep.append(verify_diagonals(L));
        rep.append(verify_relations(L));
        for (const auto& c : rep.checks) {
            if (c.anchor == "face chords meet in a common point") continue;
            if (c.status == Status::Fail) return {false, c.name + " in lattice " + std::to_string(i)};
            ++checks;
        }
    }
    return {true, std::to_string(samples) + " lattices, " + std::to_string(checks) + (identities ? " identities" : " faces") +
                      " exact"};
}

// 5. strip the eighth vertex, complete, compare
inline Outcome completion_round_trip(int planar = 200, int spatial = 100)
{
    RationalGen g(505);
    for (int i = 0; i < planar + spatial; ++i) {
        int m = i < planar ? 3 : 4;
        auto L = build_lattice(random_params<Q>(g, m));
        auto r = complete(SevenConfig<Q>::from_lattice(L));
        if (!proj_equal(r.primary.primal, poly_to_sym(L.S[kEighth])))
            return {false, (m == 3 ? "conic sample " : "quadric sample ") + std::to_string(i)};
    }
    return {true, std::to_string(planar) + " conic and " + std::to_string(spatial) + " quadric cubes recovered exactly"};
}

// 6. hypercube edges
inline Outcome hypercube(int samples = 50)
{
    RationalGen g(606);
    for (int i = 0; i < samples; ++i) {
        auto L = build_lattice(random_params<Q>(g, 3, 4), false);
        auto rep = verify_edges(L);
        if (rep.checks.size() != 32 || !rep.ok()) return {false, "hypercube " + std::to_string(i)};
    }
    return {true, std::to_string(samples) + " hypercubes, 32 edges each exact"};
}

// 7. and 8. extrusion round trip, apex incidence, and the basis construction
inline Outcome extrusion(bool via_basis, int samples)
{
    RationalGen g(via_basis ? 808 : 707);
    for (int i = 0; i < samples; ++i) {
        auto L = build_lattice(random_params<Q>(g));
        auto fr = random_frame<Q>(g);
        auto ext = extrude_seven(SevenConfig<Q>::from_lattice(L), fr);
        auto r = complete(ext.config);
        if (via_basis) {
            auto b = complete_quadric_via_basis(ext.config);
            if (!proj_equal(b.primal, r.primary.primal)) return {false, "basis construction differs, sample " + std::to_string(i)};
            continue;
        }
        SevenConfig<Q> eight = ext.config;
        eight.v[kEighth] = r.primary;
        auto sl = slice_cube(eight, fr.plane_basis());
        for (IndexSet s = 0; s <= kEighth; ++s)
            if (!proj_equal(sl.config.at(s).primal, poly_to_sym(L.S[s])))
                return {false, "vertex " + set_label(s) + " of sample " + std::to_string(i)};
        auto fs = face_structure(eight);
        ProjPoint<Q> O{fr.O};
        for (const auto& ax : fs.axis)
            if (!ax || !ax->through(O)) return {false, "face axis misses the apex, sample " + std::to_string(i)};
    }
    return {true, std::to_string(samples) + (via_basis ? " extruded instances, basis construction equals the determinant"
                                                       : " cubes extruded, completed, sliced back; all axes through O")};
}

// 9. classical special cases
inline Outcome scenario_suite(int per_scenario = 20)
{
    int runs = 0;
    for (const auto& name : scenario_names()) {
        for (int i = 0; i < per_scenario; ++i) {
            RationalGen g(900 + i);
            ScenarioPair p = name == "monge-internal" ? run_named_scenario<double>(name, g) : run_named_scenario<Q>(name, g);
            if (!p.ok()) return {false, name + " seed " + std::to_string(900 + i)};
            ++runs;
        }
    }
    MongeData<Q> m;
    m.c = {{{Q(0), Q(0)}, {Q(4), Q(0)}, {Q(1), Q(3)}}};
    m.r = {Q(1), Q(2), Q(1)};
    auto v = run_monge(m);
    if (!v.penrose_ok || !v.classical_ok) return {false, "Monge reference circles"};
    return {true, std::to_string(runs) + " instances with negative controls; Monge reference circles collinear"};
}

// 10. the concurrent-chords cube has two completions
inline Outcome two_completions()
{
    auto t0 = Clock::now();
    P x = P::variable(3, 0), y = P::variable(3, 1), z = P::variable(3, 2);
    auto q = PenroseParams<Q>::preset(x * x + y * y - z * z, x, y, x + y, Q(2), Q(3), Q(5));
    auto L = build_lattice(q);
    auto r = complete(SevenConfig<Q>::from_lattice(L));
    double dt = seconds_since(t0);
    if (r.unique || !r.second) return {false, "second completion missing"};
    if (!proj_equal(r.primary.primal, poly_to_sym(L.S[kEighth]))) return {false, "determinant completion differs"};
    SevenConfig<Q> eight = SevenConfig<Q>::from_lattice(L, true);
    if (!validate_seven(eight).ok()) return {false, "determinant completion fails contact"};
    if (!(r.second->residual < 1e-9)) return {false, "second completion residual " + std::to_string(r.second->residual)};
    if (dt >= 1) return {false, "took longer than 1 s"};
    return {true, std::string("determinant completion exact; second completion ") + (r.second->exact ? "exact" : "float") +
                      ", residual below 1e-9; under 1 s"};
}

// 11. vanishing parameters
inline Outcome degeneracies(int samples = 20)
{
    RationalGen g(1111);
    for (int i = 0; i < samples; ++i) {
        int j = 1 + i % 3, k = j % 3 + 1;
        if (j > k) std::swap(j, k);
        auto q = random_params<Q>(g);
        auto qd = q;
        qd.d[j - 1] = 0;
        auto Ld = build_lattice(qd);
        if (Ld.S[bit(j)] != -(qd.line(j) * qd.line(j))) return {false, "d_j = 0, sample " + std::to_string(i)};

        auto qf = q;
        Q s = g.integer(1, 5), t = g.integer(1, 5);
        qf.d[j - 1] = s * s;
        qf.d[k - 1] = t * t;
        qf.set_a(j, k, Q((i % 2 ? 1 : -1) * s * t));
        auto Lf = build_lattice(qf);
        if (rank(poly_to_sym(Lf.S[bit(j) | bit(k)])) != 1) return {false, "f_jk = 0, sample " + std::to_string(i)};

        auto qa = q;
        qa.set_a(j, k, Q(0));
        auto La = build_lattice(qa);
        auto par = [](const P& u, const P& v) { return u.is_zero() || v.is_zero() || proj_equal(u, v); };
        if (!par(La.chord_at(0, j), La.chord_at(bit(k), j)) || !par(La.chord_at(0, k), La.chord_at(bit(j), k)))
            return {false, "a_jk = 0, sample " + std::to_string(i)};
    }
    return {true, std::to_string(samples) + " targeted instances for each of d_j, f_jk, a_jk"};
}

// 12. determinism, exit codes, rendering
inline Outcome plumbing()
{
    namespace fs = std::filesystem;
    auto run = [](std::vector<std::string> args, std::string* out = nullptr) {
        std::ostringstream o, e;
        int code = cli::run_cli(args, o, e);
        if (out) *out = o.str();
        return code;
    };
    std::string a, b;
    if (run({"construct", "--seed", "12"}, &a) != 0 || run({"construct", "--seed", "12"}, &b) != 0 || a != b)
        return {false, "construct is not deterministic"};
    std::string s1, s2;
    if (run({"scenario", "brianchon", "--seed", "7"}, &s1) != 0 || run({"scenario", "brianchon", "--seed", "7"}, &s2) != 0 || s1 != s2)
        return {false, "scenario brianchon --seed 7"};

    fs::path dir = fs::temp_directory_path() / ("penrose_selftest_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    std::string cube = write("cube.json", a);
    std::string svg1, svg2;
    int v = run({"verify", cube});
    int r1 = run({"render", cube}, &svg1), r2 = run({"render", cube}, &svg2);
    std::string bad = write("bad.json", R"({"params": {"m": 3, "n": 3, "S0": [[1,0,0],[0,1,0],[0,0,-1]],
        "lines": [[1,0,0],[0,1,0],[1,1,0]], "d": ["1/0", -1, -1]}})");
    int e = run({"construct", bad});
    fs::remove_all(dir);
    if (v != 0) return {false, "verify of constructor output"};
    if (r1 != 0 || r2 != 0 || svg1 != svg2 || svg1.rfind("<?xml", 0) != 0 || svg1.find("</svg>") == std::string::npos)
        return {false, "render"};
    if (e != 2) return {false, "malformed scalar exit code " + std::to_string(e)};

    // resubstitute rendered samples
    auto L = io::lattice_from_cube<Q>(io::parse_document(a));
    io::Viewport vp{-8, 8, -8, 8};
    std::size_t pts = 0;
    for (IndexSet s = 0; s <= kEighth; ++s) {
        auto qc = io::chart_conic(poly_to_sym(L.S[s]));
        for (const auto& line : io::sample_conic(qc, vp))
            for (const auto& p : line) {
                double m = std::max({1.0, std::fabs(p.x), std::fabs(p.y)});
                if (std::fabs(qc(p.x, p.y)) > 1e-6 * qc.scale() * m * m) return {false, "sample off its conic"};
                ++pts;
            }
    }
    return {true, "byte-identical reruns, exit codes 0/2, " + std::to_string(pts) + " SVG samples within 1e-6"};
}

/// One line per criterion; true when all pass.
inline bool run_all(std::ostream& out)
{
    struct Item {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    bool all = true;
    std::vector<Item> items = {
        {1, "edge identities", [] { return edge_suite(); }},
        {2, "d=-1 concordance", [] { return preset_concordance(); }},
        {3, "face-point concurrency", [] { return face_suite(false); }},
        {4, "face conic, diagonal, relation identities", [] { return face_suite(true); }},
        {5, "completion round trip", [] { return completion_round_trip(); }},
        {6, "hypercube edges", [] { return hypercube(); }},
        {7, "extrude/slice round trip", [] { return extrusion(false, 100); }},
        {8, "basis construction cross-check", [] { return extrusion(true, 50); }},
        {9, "scenario suite", [] { return scenario_suite(); }},
        {10, "two completions", [] { return two_completions(); }},
        {11, "degeneracy classifiers", [] { return degeneracies(); }},
        {12, "determinism and plumbing", [] { return plumbing(); }},
    };
    for (const auto& it : items) {
        Outcome o;
        try {
            o = it.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw ") + e.what()};
        }
        all = all && o.ok;
        out << (o.ok ? "PASS" : "FAIL") << "  criterion " << it.id << ": " << it.name << " - " << o.detail << "\n";
        out.flush();
    }
    return all;
}

} // namespace penrose::acceptance
