#pragma once

#include "../completion.hpp"
#include "../lift3d.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace penrose::io {

using json = nlohmann::ordered_json;

inline constexpr int kVersion = 1;

inline Error input_error(const std::string& path, const std::string& what)
{
    return Error("ValidationError", (path.empty() ? "/" : path) + ": " + what);
}

/// Parses the text of a document; syntax errors carry line and column.
inline json parse_document(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error("ParseError", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
}

// ---- scalars, vectors, matrices ----

template <class T>
json scalar_json(const T& x)
{
    if constexpr (scalar_traits<T>::exact) return scalar_traits<T>::to_string(x);
    else return x;
}

template <class T>
T scalar_from(const json& j, const std::string& path)
{
    try {
        if (j.is_number_integer()) return from_int<T>(j.get<long>());
        if (j.is_number_float()) {
            if constexpr (scalar_traits<T>::exact) throw input_error(path, "float literal in exact mode; write \"num/den\"");
            else return j.get<double>();
        }
        if (j.is_string()) return parse_scalar<T>(j.get<std::string>());
    } catch (const Error& e) {
        if (e.kind() == "ValidationError") throw;
        throw input_error(path, e.what());
    }
    throw input_error(path, "expected a scalar");
}

template <class T>
json vec_json(const Vec<T>& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(scalar_json(x));
    return a;
}

template <class T>
Vec<T> vec_from(const json& j, const std::string& path, int size = -1)
{
    if (!j.is_array()) throw input_error(path, "expected an array");
    if (size >= 0 && static_cast<int>(j.size()) != size)
        throw input_error(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
    Vec<T> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from<T>(j[i], path + "/" + std::to_string(i)));
    return v;
}

template <class T>
json matrix_json(const SymMatrix<T>& a)
{
    json rows = json::array();
    for (int i = 0; i < a.order(); ++i) {
        json r = json::array();
        for (int k = 0; k < a.order(); ++k) r.push_back(scalar_json(a(i, k)));
        rows.push_back(r);
    }
    return rows;
}

template <class T>
SymMatrix<T> sym_from(const json& j, const std::string& path, int order = -1)
{
    if (!j.is_array() || j.empty()) throw input_error(path, "expected a square matrix");
    int k = static_cast<int>(j.size());
    if (order >= 0 && k != order) throw input_error(path, "expected order " + std::to_string(order));
    Matrix<T> m(k, k);
    for (int i = 0; i < k; ++i) {
        auto row = vec_from<T>(j[i], path + "/" + std::to_string(i), k);
        for (int c = 0; c < k; ++c) m(i, c) = row[c];
    }
    for (int i = 0; i < k; ++i)
        for (int c = i + 1; c < k; ++c)
            if (m(i, c) != m(c, i))
                throw input_error(path, "not symmetric at (" + std::to_string(i) + "," + std::to_string(c) + ")");
    return SymMatrix<T>::from_matrix(m);
}

// ---- labels ----

inline std::string vertex_key(IndexSet s)
{
    std::string out = "S_{";
    for (int j : members(s)) out += std::to_string(j);
    return out + "}";
}

inline IndexSet parse_vertex_key(const std::string& key, int n, const std::string& path)
{
    if (key.size() < 4 || key.compare(0, 3, "S_{") != 0 || key.back() != '}') throw input_error(path, "bad vertex key '" + key + "'");
    IndexSet s = 0;
    for (std::size_t i = 3; i + 1 < key.size(); ++i) {
        int j = key[i] - '0';
        if (j < 1 || j > n || contains(s, j)) throw input_error(path, "bad vertex key '" + key + "'");
        s = with(s, j);
    }
    return s;
}

inline std::string pair_key(int j, int k) { return std::to_string(j) + std::to_string(k); }

// ---- params ----

template <class T>
json params_json(const PenroseParams<T>& q)
{
    json j;
    j["m"] = q.m;
    j["n"] = q.n;
    j["S0"] = matrix_json(q.S0.is_zero() ? SymMatrix<T>(q.m) : poly_to_sym(q.S0));
    json lines = json::array();
    for (const auto& p : q.p) lines.push_back(vec_json(p.is_zero() ? Vec<T>(q.m, T(0)) : p.linear_coeffs()));
    j["lines"] = lines;
    j["d"] = vec_json(Vec<T>(q.d.begin(), q.d.end()));
    json a = json::object();
    for (int r = 1; r <= q.n; ++r)
        for (int c = r + 1; c <= q.n; ++c) a[pair_key(r, c)] = scalar_json(q.ajk(r, c));
    j["a"] = a;
    return j;
}

template <class T>
PenroseParams<T> params_from(const json& j, const std::string& path = "/params")
{
    if (!j.is_object()) throw input_error(path, "expected an object");
    int m = j.value("m", 3), n = j.value("n", 3);
    if (m != 3 && m != 4) throw input_error(path + "/m", "m must be 3 or 4");
    if (n < 1 || n > 4) throw input_error(path + "/n", "n must be 1..4");
    auto q = PenroseParams<T>::blank(m, n);
    if (!j.contains("S0")) throw input_error(path, "missing S0");
    q.S0 = sym_to_poly(sym_from<T>(j["S0"], path + "/S0", m));
    if (!j.contains("lines") || !j["lines"].is_array() || static_cast<int>(j["lines"].size()) != n)
        throw input_error(path + "/lines", "expected " + std::to_string(n) + " lines");
    for (int k = 0; k < n; ++k)
        q.p[k] = HomogeneousPoly<T>::linear(vec_from<T>(j["lines"][k], path + "/lines/" + std::to_string(k), m));
    if (!j.contains("d")) throw input_error(path, "missing d");
    auto d = vec_from<T>(j["d"], path + "/d", n);
    q.d.assign(d.begin(), d.end());
    if (j.contains("a")) {
        const auto& a = j["a"];
        if (!a.is_object()) throw input_error(path + "/a", "expected an object keyed \"12\", \"13\", ...");
        for (auto it = a.begin(); it != a.end(); ++it) {
            const std::string& key = it.key();
            int r = key.size() == 2 ? key[0] - '0' : 0, c = key.size() == 2 ? key[1] - '0' : 0;
            if (r < 1 || c <= r || c > n) throw input_error(path + "/a/" + key, "bad index pair");
            q.set_a(r, c, scalar_from<T>(it.value(), path + "/a/" + key));
        }
    }
    return q;
}

// ---- cube documents ----

template <class T>
json cube_json(const PenroseLattice<T>& L)
{
    json doc;
    doc["version"] = kVersion;
    doc["kind"] = "cube";
    doc["mode"] = scalar_traits<T>::mode;
    doc["params"] = params_json(L.params);
    json verts = json::object();
    for (IndexSet s = 0; s <= L.full(); ++s) {
        json v;
        v["matrix"] = matrix_json(L.S[s].is_zero() ? SymMatrix<T>(L.m()) : poly_to_sym(L.S[s]));
        v["poly"] = L.S[s].to_string();
        v["rank"] = L.info[s].rank;
        v["f"] = scalar_json(L.f[s]);
        verts[vertex_key(s)] = v;
    }
    doc["vertices"] = verts;
    json chords = json::object();
    for (IndexSet s = 0; s <= L.full(); ++s)
        for (int k = 1; k <= L.n(); ++k) {
            if (contains(s, k)) continue;
            const auto& c = L.chord_at(s, k);
            chords[vertex_key(s) + "+" + std::to_string(k)] = vec_json(c.is_zero() ? Vec<T>(L.m(), T(0)) : c.linear_coeffs());
        }
    doc["chords"] = chords;
    json faces = json::object();
    for (const auto& fc : L.faces()) {
        auto fr = face_point(L, fc);
        std::string key = vertex_key(fc.base) + "+" + pair_key(fc.j, fc.k);
        faces[key] = fr.point ? vec_json(fr.point->c) : json(nullptr);
    }
    doc["face_points"] = faces;
    return doc;
}

/// Lattice as stored in the document: params give the bordered matrix, while
/// vertices, f-scalars and chords are taken as written.
template <class T>
PenroseLattice<T> lattice_from_cube(const json& doc)
{
    if (!doc.contains("params")) throw input_error("", "cube document needs params");
    auto q = params_from<T>(doc["params"]);
    auto L = build_lattice(q, false);
    if (!doc.contains("vertices") || !doc["vertices"].is_object()) throw input_error("/vertices", "missing");
    const auto& verts = doc["vertices"];
    for (IndexSet s = 0; s <= L.full(); ++s) {
        std::string key = vertex_key(s), path = "/vertices/" + key;
        if (!verts.contains(key)) throw input_error(path, "missing vertex");
        const auto& v = verts[key];
        if (!v.contains("matrix")) throw input_error(path, "missing matrix");
        auto mtx = sym_from<T>(v["matrix"], path + "/matrix", q.m);
        L.S[s] = mtx.is_zero() ? HomogeneousPoly<T>(q.m, 2) : sym_to_poly(mtx);
        if (v.contains("f")) L.f[s] = scalar_from<T>(v["f"], path + "/f");
        L.info[s] = vertex_info(L.S[s], q.m);
    }
    if (doc.contains("chords")) {
        const auto& ch = doc["chords"];
        for (IndexSet s = 0; s <= L.full(); ++s)
            for (int k = 1; k <= L.n(); ++k) {
                if (contains(s, k)) continue;
                std::string key = vertex_key(s) + "+" + std::to_string(k);
                if (!ch.contains(key)) continue;
                auto c = vec_from<T>(ch[key], "/chords/" + key, q.m);
                L.chords[s][k - 1] = vec_is_zero(c) ? HomogeneousPoly<T>(q.m, 1) : HomogeneousPoly<T>::linear(c);
            }
    }
    return L;
}

// ---- seven configurations ----

template <class T>
json config_json(const SevenConfig<T>& c)
{
    json j;
    j["m"] = c.m;
    json verts = json::object();
    for (IndexSet s = 0; s <= kEighth; ++s) {
        if (!c.has(s)) continue;
        json v;
        v["primal"] = matrix_json(c.at(s).primal);
        if (c.has_dual(s)) v["dual"] = matrix_json(c.at(s).dual);
        verts[vertex_key(s)] = v;
    }
    j["vertices"] = verts;
    return j;
}

template <class T>
SevenConfig<T> config_from(const json& j, const std::string& path = "/config")
{
    if (!j.is_object()) throw input_error(path, "expected an object");
    SevenConfig<T> c;
    c.m = j.value("m", 3);
    if (c.m != 3 && c.m != 4) throw input_error(path + "/m", "m must be 3 or 4");
    if (!j.contains("vertices") || !j["vertices"].is_object()) throw input_error(path + "/vertices", "missing");
    for (auto it = j["vertices"].begin(); it != j["vertices"].end(); ++it) {
        std::string vp = path + "/vertices/" + it.key();
        IndexSet s = parse_vertex_key(it.key(), 3, vp);
        const auto& v = it.value();
        json primal = v.is_object() ? v.value("primal", json()) : v;
        auto a = sym_from<T>(primal, vp + "/primal", c.m);
        try {
            if (v.is_object() && v.contains("dual")) c.set(s, a, sym_from<T>(v["dual"], vp + "/dual", c.m));
            else c.set(s, a);
        } catch (const Error& e) {
            throw input_error(vp, e.what());
        }
    }
    return c;
}

/// Seven vertices from either a "config" section or a cube document (eighth dropped).
template <class T>
SevenConfig<T> seven_from_document(const json& doc)
{
    if (doc.contains("config")) return config_from<T>(doc["config"]);
    if (doc.contains("vertices") && doc.contains("params")) {
        auto L = lattice_from_cube<T>(doc);
        if (L.n() != 3) throw input_error("/params/n", "a cube needs n = 3");
        return SevenConfig<T>::from_lattice(L);
    }
    throw input_error("", "expected a config section or a cube document");
}

template <class T>
json complete_json(const Complete<T>& c)
{
    json j;
    j["primal"] = matrix_json(c.primal);
    j["dual"] = matrix_json(c.dual);
    j["poly"] = c.primal.is_zero() ? std::string("0") : sym_to_poly(c.primal).to_string();
    return j;
}

template <class T>
json completion_json(const CompletionResult<T>& r)
{
    json doc;
    doc["version"] = kVersion;
    doc["kind"] = "completion";
    doc["mode"] = scalar_traits<T>::mode;
    doc["T0"] = complete_json(r.primary);
    doc["unique"] = r.unique;
    if (r.case_label) doc["case"] = *r.case_label;
    if (r.second) {
        json s;
        s["exact"] = r.second->exact;
        if (r.second->value) s["value"] = complete_json(*r.second->value);
        else s["approx"] = complete_json(r.second->approx);
        s["residual"] = r.second->residual;
        doc["second"] = s;
    }
    json notes = json::array();
    for (const auto& n : r.notes) notes.push_back(n);
    doc["notes"] = notes;
    return doc;
}

// ---- frames and planes ----

template <class T>
json frame_json(const ExtrusionFrame<T>& f)
{
    json j;
    j["O"] = vec_json(f.O);
    j["P"] = json::array({vec_json(f.P1), vec_json(f.P2), vec_json(f.P3)});
    j["u"] = vec_json(f.u);
    return j;
}

template <class T>
ExtrusionFrame<T> frame_from(const json& j, const std::string& path = "/frame")
{
    if (!j.is_object()) throw input_error(path, "expected an object");
    ExtrusionFrame<T> f;
    if (!j.contains("O") || !j.contains("P") || !j.contains("u")) throw input_error(path, "needs O, P and u");
    f.O = vec_from<T>(j["O"], path + "/O", 4);
    if (!j["P"].is_array() || j["P"].size() != 3) throw input_error(path + "/P", "expected three points");
    f.P1 = vec_from<T>(j["P"][0], path + "/P/0", 4);
    f.P2 = vec_from<T>(j["P"][1], path + "/P/1", 4);
    f.P3 = vec_from<T>(j["P"][2], path + "/P/2", 4);
    f.u = vec_from<T>(j["u"], path + "/u", 4);
    try {
        f.validate();
    } catch (const Error& e) {
        throw input_error(path, e.what());
    }
    return f;
}

// ---- reports ----

inline json report_json(const Report& r)
{
    json doc;
    doc["version"] = kVersion;
    doc["kind"] = "report";
    json checks = json::array();
    for (const auto& c : r.checks) {
        json j;
        j["check"] = c.name;
        j["anchor"] = c.anchor;
        j["status"] = status_name(c.status);
        j["residual"] = c.residual;
        if (!c.witnesses.empty()) j["witnesses"] = c.witnesses;
        checks.push_back(j);
    }
    doc["checks"] = checks;
    doc["summary"] = {{"pass", r.count(Status::Pass)}, {"fail", r.count(Status::Fail)}, {"flag", r.count(Status::Flag)}};
    return doc;
}

} // namespace penrose::io
