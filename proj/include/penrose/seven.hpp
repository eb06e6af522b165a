#pragma once

#include "engine.hpp"

#include <array>
#include <optional>

namespace penrose {

// Cube vertices are keyed by index sets: S0 = {}, T^j = {j}, S_k = {1,2,3} \ {k},
// and the missing eighth vertex T0 = {1,2,3}.
inline constexpr IndexSet kEighth = 7;

inline IndexSet s_vertex(int k) { return kEighth & ~(1u << (k - 1)); }

struct Edge {
    IndexSet from;
    int k; // to = from ∪ {k}
    IndexSet to() const { return with(from, k); }
};

inline std::vector<Edge> cube_edges()
{
    std::vector<Edge> out;
    for (IndexSet s = 0; s <= kEighth; ++s)
        for (int k = 1; k <= 3; ++k)
            if (!contains(s, k)) out.push_back({s, k});
    return out;
}

inline std::vector<Face> cube_faces()
{
    std::vector<Face> out;
    for (int j = 1; j <= 3; ++j)
        for (int k = j + 1; k <= 3; ++k)
            for (IndexSet s = 0; s <= kEighth; ++s)
                if (!contains(s, j) && !contains(s, k)) out.push_back({s, j, k});
    return out;
}

inline std::array<IndexSet, 4> face_vertices(const Face& f)
{
    return {f.base, with(f.base, f.j), with(f.base, f.k), with(with(f.base, f.j), f.k)};
}

/// Seven (or eight) complete conics or quadrics on the cube. A zero dual means
/// no partner was supplied for a primal of rank <= m-2.
template <class T>
struct SevenConfig {
    int m = 3;
    std::array<std::optional<Complete<T>>, 8> v;

    bool has(IndexSet s) const { return v[s].has_value(); }
    const Complete<T>& at(IndexSet s) const
    {
        if (!v[s]) throw Error("MissingVertex", "vertex " + set_label(s) + " not assigned");
        return *v[s];
    }
    bool has_dual(IndexSet s) const { return has(s) && !v[s]->dual.is_zero(); }

    void set(IndexSet s, const SymMatrix<T>& primal)
    {
        if (primal.order() != m) throw Error("SizeMismatch", "matrix order does not match m");
        try {
            v[s] = complete_from_primal(primal);
        } catch (const Error& e) {
            if (e.kind() != "NeedsDualPartner") throw;
            v[s] = Complete<T>{primal, SymMatrix<T>(m)};
        }
    }
    void set(IndexSet s, const SymMatrix<T>& primal, const SymMatrix<T>& dual)
    {
        if (primal.order() != m || dual.order() != m) throw Error("SizeMismatch", "matrix order does not match m");
        if (!complete_pair_valid(primal, dual)) throw Error("InvalidCompletePair", "primal·dual is not a multiple of the identity");
        v[s] = Complete<T>{primal, dual};
    }

    /// Plane-wise view: primal and dual swapped. Needs every dual.
    SevenConfig dualized() const
    {
        SevenConfig d;
        d.m = m;
        for (IndexSet s = 0; s <= kEighth; ++s) {
            if (!v[s]) continue;
            if (v[s]->dual.is_zero()) throw Error("NeedsDualPartner", "vertex " + set_label(s) + " has no dual");
            d.v[s] = Complete<T>{v[s]->dual, v[s]->primal};
        }
        return d;
    }

    /// The seven given vertices of a lattice; the eighth is left out unless asked for.
    static SevenConfig from_lattice(const PenroseLattice<T>& L, bool include_eighth = false)
    {
        if (L.n() != 3) throw Error("SizeMismatch", "cube lattices have n = 3");
        SevenConfig c;
        c.m = L.m();
        for (IndexSet s = 0; s <= kEighth; ++s) {
            if (s == kEighth && !include_eighth) continue;
            if (L.S[s].is_zero()) continue;
            if (L.info[s].complete) c.v[s] = *L.info[s].complete;
            else c.v[s] = Complete<T>{poly_to_sym(L.S[s]), SymMatrix<T>(c.m)};
        }
        return c;
    }
};

/// Contact chords (ring planes) of every edge with both ends assigned.
template <class T>
std::vector<std::optional<DoubleContact<T>>> edge_contacts(const SevenConfig<T>& c, std::vector<std::string>* notes = nullptr)
{
    auto edges = cube_edges();
    std::vector<std::optional<DoubleContact<T>>> out(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (!c.has(e.from) || !c.has(e.to())) continue;
        try {
            out[i] = double_contact(c.at(e.from).primal, c.at(e.to()).primal);
        } catch (const Error& err) {
            if (notes) notes->push_back(set_label(e.from) + "-" + set_label(e.to()) + ": " + err.kind());
        }
    }
    return out;
}

/// Contact on every present edge and a common point (2D) or axis (3D) on every complete face.
template <class T>
Report validate_seven(const SevenConfig<T>& c)
{
    Report rep;
    for (IndexSet s = 0; s < kEighth; ++s)
        if (!c.has(s)) rep.add("vertex " + set_label(s), "assignment", false, "missing");
    if (!rep.ok()) return rep;

    std::vector<std::string> notes;
    auto edges = cube_edges();
    auto contacts = edge_contacts(c, &notes);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!c.has(edges[i].from) || !c.has(edges[i].to())) continue;
        std::string name = "contact " + set_label(edges[i].from) + "-" + set_label(edges[i].to());
        if (contacts[i]) rep.add(name, c.m == 3 ? "double contact" : "ring contact", true, "0", {contacts[i]->chord.to_string()});
        else rep.add(name, c.m == 3 ? "double contact" : "ring contact", false, "no rank-1 member");
    }
    for (const auto& f : cube_faces()) {
        auto vs = face_vertices(f);
        bool full = true;
        for (auto s : vs) full = full && c.has(s);
        if (!full) continue;
        std::vector<Vec<T>> rows;
        bool all = true;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            bool on = std::find(vs.begin(), vs.end(), e.from) != vs.end() && std::find(vs.begin(), vs.end(), e.to()) != vs.end();
            if (!on) continue;
            if (!contacts[i]) { all = false; continue; }
            rows.push_back(contacts[i]->chord.linear_coeffs());
        }
        bool ok = all && stacked_rank(rows) <= 2;
        rep.add("face " + set_label(f.base) + "+" + std::to_string(f.j) + std::to_string(f.k),
                c.m == 3 ? "face point concurrency" : "face axis", ok, ok ? "0" : "chords not concurrent");
    }
    return rep;
}

} // namespace penrose
