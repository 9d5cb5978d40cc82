#include "gemc/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gemc/union_find.hpp"

namespace gemc {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Union-find with parity relative to the parent; detects negative cycles.
struct ParityUF {
    std::vector<int> parent;
    std::vector<char> par;  // parity to parent
    bool conflict = false;

    explicit ParityUF(int n) : parent(n), par(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    std::pair<int, int> find(int x) {
        int p = 0;
        while (parent[x] != x) {
            p ^= par[x];
            x = parent[x];
        }
        return {x, p};
    }
    void merge(int a, int b, int parity) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if ((pa ^ pb) != parity) conflict = true;
            return;
        }
        parent[rb] = ra;
        par[rb] = static_cast<char>(pa ^ pb ^ parity);
    }
};

}  // namespace

SurfaceDiagram parse_hdg(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    SurfaceDiagram d;
    int n = -1;
    bool have_header = false, have_count = false;
    std::map<std::string, int> curve_ids;
    std::vector<int> curve_line;  // for error reporting on duplicate system lines
    std::set<int> curve_with_system;

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);

        if (!have_header) {
            std::string kw;
            ls >> kw;
            if (kw != "hdg") throw parse_error(lineno, "expected 'hdg <name>' header");
            ls >> d.name;
            if (d.name.empty()) throw parse_error(lineno, "missing diagram name");
            have_header = true;
            continue;
        }
        if (!have_count) {
            std::string kw;
            ls >> kw;
            if (kw != "crossings") throw parse_error(lineno, "expected 'crossings <n>' line");
            if (!(ls >> n) || n <= 0) throw parse_error(lineno, "vertex count must be positive");
            d.verts.resize(n);
            have_count = true;
            continue;
        }

        std::string first;
        ls >> first;
        if (first == "edge") {
            // edge <id>: v,slot-v,slot sign <s> curve <name>
            int id;
            char colon;
            if (!(ls >> id >> colon) || colon != ':') throw parse_error(lineno, "malformed edge line");
            if (id < 0) throw parse_error(lineno, "edge id must be non-negative");
            if (id < static_cast<int>(d.edges.size()) && d.edges[id].curve >= 0)
                throw parse_error(lineno, "edge " + std::to_string(id) + " defined twice");
            if (static_cast<int>(d.edges.size()) <= id) d.edges.resize(id + 1);
            SurfaceDiagram::Edge e;
            char comma1, dash, comma2;
            int v0, s0, v1, s1;
            if (!(ls >> v0 >> comma1 >> s0 >> dash >> v1 >> comma2 >> s1) || comma1 != ',' ||
                dash != '-' || comma2 != ',')
                throw parse_error(lineno, "malformed edge endpoints");
            if (v0 < 1 || v0 > n || v1 < 1 || v1 > n)
                throw parse_error(lineno, "edge endpoint vertex out of range");
            e.vert = {v0 - 1, v1 - 1};
            e.slot = {s0, s1};
            std::string kw;
            ls >> kw;
            if (kw != "sign") throw parse_error(lineno, "expected 'sign'");
            if (!(ls >> e.sign) || (e.sign != 1 && e.sign != -1))
                throw parse_error(lineno, "sign must be 1 or -1");
            ls >> kw;
            if (kw != "curve") throw parse_error(lineno, "expected 'curve'");
            std::string cname;
            ls >> cname;
            if (cname.empty()) throw parse_error(lineno, "missing curve name");
            auto it = curve_ids.find(cname);
            if (it == curve_ids.end()) {
                it = curve_ids.emplace(cname, static_cast<int>(d.curves.size())).first;
                d.curves.push_back({cname, CurveSystem::Prime});
                curve_line.push_back(lineno);
            }
            e.curve = it->second;
            d.edges[id] = e;
        } else if (first == "curve") {
            std::string cname;
            ls >> cname;
            if (!cname.empty() && cname.back() == ':') cname.pop_back();
            std::string kw, sys;
            ls >> kw >> sys;
            if (kw != "system" || (sys != "prime" && sys != "double_prime"))
                throw parse_error(lineno, "expected 'curve <name>: system prime|double_prime'");
            auto it = curve_ids.find(cname);
            if (it == curve_ids.end())
                throw parse_error(lineno, "curve '" + cname + "' has no edges");
            if (!curve_with_system.insert(it->second).second)
                throw parse_error(lineno, "duplicate system line for curve '" + cname + "'");
            d.curves[it->second].system =
                sys == "prime" ? CurveSystem::Prime : CurveSystem::DoublePrime;
        } else {
            // rotation line: <v>: h h h h
            bool colon_attached = !first.empty() && first.back() == ':';
            if (colon_attached) first.pop_back();
            int v;
            try {
                v = std::stoi(first);
            } catch (...) {
                throw parse_error(lineno, "unrecognized line");
            }
            if (!colon_attached) {
                char colon;
                if (!(ls >> colon) || colon != ':')
                    throw parse_error(lineno, "malformed rotation line");
            }
            if (v < 1 || v > n) throw parse_error(lineno, "vertex out of range");
            int h;
            while (ls >> h) d.verts[v - 1].rot.push_back(h);
            if (d.verts[v - 1].rot.size() != 2 && d.verts[v - 1].rot.size() != 4)
                throw parse_error(lineno, "rotation must list 2 or 4 half-edges");
        }
    }
    if (!have_header) throw parse_error(lineno, "empty document");
    for (int c = 0; c < static_cast<int>(d.curves.size()); ++c)
        if (!curve_with_system.count(c))
            throw parse_error(curve_line[c], "curve '" + d.curves[c].name + "' lacks a system line");
    return d;
}

std::string serialize_hdg(const SurfaceDiagram& d) {
    std::ostringstream out;
    out << "hdg " << d.name << "\n";
    out << "crossings " << d.verts.size() << "\n";
    for (size_t v = 0; v < d.verts.size(); ++v) {
        out << (v + 1) << ":";
        for (int h : d.verts[v].rot) out << " " << h;
        out << "\n";
    }
    for (size_t e = 0; e < d.edges.size(); ++e) {
        const auto& ed = d.edges[e];
        out << "edge " << e << ": " << (ed.vert[0] + 1) << "," << ed.slot[0] << "-"
            << (ed.vert[1] + 1) << "," << ed.slot[1] << " sign " << ed.sign << " curve "
            << d.curves[ed.curve].name << "\n";
    }
    for (const auto& c : d.curves)
        out << "curve " << c.name << ": system "
            << (c.system == CurveSystem::Prime ? "prime" : "double_prime") << "\n";
    return out.str();
}

namespace {

int opposite_slot(int slot, int deg) { return deg == 4 ? (slot + 2) % 4 : 1 - slot; }

}  // namespace

AnalyzedDiagram analyze_diagram(SurfaceDiagram din) {
    AnalyzedDiagram a;
    a.d = std::move(din);
    const SurfaceDiagram& d = a.d;
    auto fail = [&](const std::string& msg) { a.violations.push_back(msg); };

    // Structural consistency: every half-edge placed once, slots agree.
    int E = static_cast<int>(d.edges.size());
    if (E == 0) {
        fail("diagram has no edges");
        return a;
    }
    std::vector<char> end_seen(2 * E, 0);
    for (size_t v = 0; v < d.verts.size(); ++v) {
        const auto& rot = d.verts[v].rot;
        if (rot.size() != 2 && rot.size() != 4) {
            fail("vertex " + std::to_string(v + 1) + " has valence " + std::to_string(rot.size()));
            return a;
        }
        for (size_t s = 0; s < rot.size(); ++s) {
            int h = rot[s];
            if (h < 0 || h >= 2 * E) {
                fail("half-edge id out of range at vertex " + std::to_string(v + 1));
                return a;
            }
            if (end_seen[h]) {
                fail("half-edge " + std::to_string(h) + " placed twice");
                return a;
            }
            end_seen[h] = 1;
            const auto& e = d.edges[h / 2];
            if (e.vert[h % 2] != static_cast<int>(v) || e.slot[h % 2] != static_cast<int>(s)) {
                fail("edge " + std::to_string(h / 2) + " endpoint disagrees with rotation of vertex " +
                     std::to_string(v + 1));
                return a;
            }
        }
    }
    for (int h = 0; h < 2 * E; ++h)
        if (!end_seen[h]) {
            fail("half-edge " + std::to_string(h) + " not placed in any rotation");
            return a;
        }
    for (const auto& e : d.edges)
        if (e.curve < 0 || e.curve >= static_cast<int>(d.curves.size())) {
            fail("edge lacks a curve");
            return a;
        }

    // Vertex curve structure: crossings are transversal, one curve per system;
    // markers carry a single curve.
    a.vertex_curves.assign(d.verts.size(), {-1, -1});
    for (size_t v = 0; v < d.verts.size(); ++v) {
        const auto& rot = d.verts[v].rot;
        std::vector<int> cs;
        for (int h : rot) cs.push_back(d.edges[h / 2].curve);
        if (rot.size() == 4) {
            if (cs[0] != cs[2] || cs[1] != cs[3]) {
                fail("vertex " + std::to_string(v + 1) +
                     ": curves do not pass straight through (opposite slots differ)");
                continue;
            }
            if (cs[0] == cs[1]) {
                fail("vertex " + std::to_string(v + 1) + ": a curve crosses itself");
                continue;
            }
            if (d.curves[cs[0]].system == d.curves[cs[1]].system) {
                fail("vertex " + std::to_string(v + 1) +
                     ": two curves of the same system intersect");
                continue;
            }
            a.vertex_curves[v] = {cs[0], cs[1]};
        } else {
            if (cs[0] != cs[1]) {
                fail("marker vertex " + std::to_string(v + 1) + " lies on two curves");
                continue;
            }
            a.vertex_curves[v] = {cs[0], -1};
        }
    }
    if (!a.violations.empty()) return a;

    // Curve walks: each curve is a single closed cycle passing straight
    // through its vertices, with sign product +1 (two-sidedness).
    a.walks.resize(d.curves.size());
    std::vector<int> curve_edge_count(d.curves.size(), 0);
    std::vector<int> first_edge(d.curves.size(), -1);
    for (int e = 0; e < E; ++e) {
        int c = d.edges[e].curve;
        ++curve_edge_count[c];
        if (first_edge[c] < 0) first_edge[c] = e;
    }
    std::vector<int> marker_count(d.curves.size(), 0), crossing_count(d.curves.size(), 0);
    for (size_t v = 0; v < d.verts.size(); ++v) {
        if (d.verts[v].rot.size() == 2)
            ++marker_count[a.vertex_curves[v][0]];
        else {
            ++crossing_count[a.vertex_curves[v][0]];
            ++crossing_count[a.vertex_curves[v][1]];
        }
    }
    for (size_t c = 0; c < d.curves.size(); ++c) {
        if (first_edge[c] < 0) {
            fail("curve '" + d.curves[c].name + "' has no edges");
            continue;
        }
        if (crossing_count[c] > 0 && marker_count[c] > 0)
            fail("curve '" + d.curves[c].name + "' mixes markers and crossings");
        if (crossing_count[c] == 0 && marker_count[c] != 1)
            fail("crossing-free circle '" + d.curves[c].name + "' must carry exactly one marker");

        auto& walk = a.walks[c];
        int h_start = 2 * first_edge[c];  // depart from end 0
        int h = h_start;
        int sign_product = 1;
        int steps = 0;
        bool ok = true;
        do {
            int e = h / 2, k = h % 2;
            walk.edge_seq.push_back(e);
            walk.dep_end_seq.push_back(h);
            walk.vertex_seq.push_back(d.edges[e].vert[k]);
            sign_product *= d.edges[e].sign;
            int v = d.edges[e].vert[1 - k];
            int s_arr = d.edges[e].slot[1 - k];
            int deg = static_cast<int>(d.verts[v].rot.size());
            int h_next = d.verts[v].rot[opposite_slot(s_arr, deg)];
            if (d.edges[h_next / 2].curve != static_cast<int>(c)) {
                fail("curve '" + d.curves[c].name + "' broken at vertex " + std::to_string(v + 1));
                ok = false;
                break;
            }
            h = h_next;
            if (++steps > 2 * E + 1) {
                fail("curve walk failed to close");
                ok = false;
                break;
            }
        } while (h != h_start);
        if (!ok) continue;
        if (static_cast<int>(walk.edge_seq.size()) != curve_edge_count[c])
            fail("curve '" + d.curves[c].name + "' is not a single cycle");
        if (sign_product != 1)
            fail("curve '" + d.curves[c].name + "' is one-sided (sign product -1)");
    }
    if (!a.violations.empty()) return a;

    // Connectivity of the map: required for the surface to be determined.
    {
        UnionFind uf(static_cast<int>(d.verts.size()));
        for (const auto& e : d.edges) uf.merge(e.vert[0], e.vert[1]);
        int comps = 0;
        for (int v = 0; v < static_cast<int>(d.verts.size()); ++v)
            if (uf.find(v) == v) ++comps;
        a.connected = comps == 1;
        if (!a.connected)
            fail("map is disconnected; the surface is underdetermined by rotation data");
    }

    // Orientability: the signature is balanced iff the surface is orientable.
    {
        ParityUF uf(static_cast<int>(d.verts.size()));
        for (const auto& e : d.edges) uf.merge(e.vert[0], e.vert[1], e.sign < 0 ? 1 : 0);
        a.orientable = !uf.conflict;
    }

    // Face tracing over the signed rotation system. States are (arrival
    // end, orientation bit); transitions turn left or right per the bit and
    // flip it across negative edges. Orbits come in mirror pairs; one orbit
    // per pair is kept as a face.
    {
        int S = 4 * E;  // states: end * 2 + bit (0 = +, 1 = -)
        auto next_of = [&](int state) {
            int h = state / 2, bit = state % 2;
            int e = h / 2, k = h % 2;
            int v = d.edges[e].vert[k];
            int slot = d.edges[e].slot[k];
            int deg = static_cast<int>(d.verts[v].rot.size());
            int p = bit == 0 ? (slot + 1) % deg : (slot + deg - 1) % deg;
            int h_out = d.verts[v].rot[p];
            int e2 = h_out / 2, k2 = h_out % 2;
            int h_arr = 2 * e2 + (1 - k2);
            int bit2 = bit ^ (d.edges[e2].sign < 0 ? 1 : 0);
            return h_arr * 2 + bit2;
        };
        auto corner_of = [&](int state) {  // corner consumed by the transition
            int h = state / 2, bit = state % 2;
            int e = h / 2, k = h % 2;
            int v = d.edges[e].vert[k];
            int slot = d.edges[e].slot[k];
            int deg = static_cast<int>(d.verts[v].rot.size());
            int p = bit == 0 ? (slot + 1) % deg : (slot + deg - 1) % deg;
            return bit == 0 ? slot : p;
        };
        auto mirror_of = [&](int state) {
            int h = state / 2, bit = state % 2;
            int e = h / 2, k = h % 2;
            int v = d.edges[e].vert[k];
            int slot = d.edges[e].slot[k];
            int deg = static_cast<int>(d.verts[v].rot.size());
            int p = bit == 0 ? (slot + 1) % deg : (slot + deg - 1) % deg;
            int h_out = d.verts[v].rot[p];
            return h_out * 2 + (bit ^ 1);
        };

        std::vector<int> orbit_of(S, -1);
        std::vector<int> orbit_min;
        for (int s0 = 0; s0 < S; ++s0) {
            if (orbit_of[s0] >= 0) continue;
            int id = static_cast<int>(orbit_min.size());
            orbit_min.push_back(s0);
            int s = s0;
            do {
                orbit_of[s] = id;
                s = next_of(s);
            } while (s != s0);
        }
        int num_orbits = static_cast<int>(orbit_min.size());
        std::vector<int> mirror_orbit(num_orbits, -1);
        for (int o = 0; o < num_orbits; ++o) mirror_orbit[o] = orbit_of[mirror_of(orbit_min[o])];
        for (int o = 0; o < num_orbits; ++o) {
            if (mirror_orbit[o] == o || mirror_orbit[mirror_orbit[o]] != o)
                throw std::logic_error("face tracing: mirror pairing failed");
        }

        a.edge_traversals.assign(E, {});
        std::vector<std::array<int, 2>> trav_fill(E, {0, 0});
        a.corner_face.resize(d.verts.size());
        for (size_t v = 0; v < d.verts.size(); ++v)
            a.corner_face[v].assign(d.verts[v].rot.size(), -1);

        std::vector<int> face_of_orbit(num_orbits, -1);
        for (int o = 0; o < num_orbits; ++o) {
            if (orbit_min[mirror_orbit[o]] < orbit_min[o]) continue;  // keep one per pair
            int fid = static_cast<int>(a.faces.size());
            face_of_orbit[o] = fid;
            AnalyzedDiagram::Face face;

            // Collect the orbit's steps: corners and departures.
            std::vector<int> states, corners, h_outs;
            int s = orbit_min[o];
            do {
                states.push_back(s);
                corners.push_back(corner_of(s));
                int h = s / 2, bit = s % 2;
                int e = h / 2, k = h % 2;
                int v = d.edges[e].vert[k];
                int slot = d.edges[e].slot[k];
                int deg = static_cast<int>(d.verts[v].rot.size());
                int p = bit == 0 ? (slot + 1) % deg : (slot + deg - 1) % deg;
                h_outs.push_back(d.verts[v].rot[p]);
                s = next_of(s);
            } while (s != orbit_min[o]);

            int L = static_cast<int>(states.size());
            for (int i = 0; i < L; ++i) {
                int h = states[i] / 2;
                int e = h / 2, k = h % 2;
                int v = d.edges[e].vert[k];
                if (a.corner_face[v][corners[i]] != -1)
                    throw std::logic_error("face tracing: corner visited twice");
                a.corner_face[v][corners[i]] = fid;
                face.vertices.push_back(v);

                // The step departs via h_outs[i] along edge e2, arriving at
                // states[(i+1)%L]; that passage is one traversal of e2.
                int e2 = h_outs[i] / 2, k2 = h_outs[i] % 2;
                face.edges.push_back(e2);
                int t = trav_fill[e2][0] + trav_fill[e2][1];
                if (t >= 2) throw std::logic_error("face tracing: edge traversed thrice");
                a.edge_traversals[e2][t].face = fid;
                a.edge_traversals[e2][t].corner[k2] = corners[i];
                a.edge_traversals[e2][t].corner[1 - k2] = corners[(i + 1) % L];
                trav_fill[e2][t] = 1;
            }
            a.faces.push_back(std::move(face));
        }
        for (int e = 0; e < E; ++e)
            if (!trav_fill[e][0] || !trav_fill[e][1])
                throw std::logic_error("face tracing: edge with fewer than two traversals");

        a.euler_char = static_cast<int>(d.verts.size()) - E + static_cast<int>(a.faces.size());
    }

    a.valid = a.violations.empty();
    return a;
}

DiagramReport validate_diagram(const SurfaceDiagram& d) {
    AnalyzedDiagram a = analyze_diagram(d);
    DiagramReport rep;
    rep.valid = a.valid;
    rep.violations = a.violations;
    rep.euler_char = a.euler_char;
    rep.orientable = a.orientable;
    return rep;
}

namespace {

// Tracks which side of a cut curve a traversal lies on; sides 0/1 are the
// two transport classes of the curve's edge traversals.
struct CurveSides {
    // For each side: traversal (edge, index) list and the faces touched.
    std::array<std::vector<std::pair<int, int>>, 2> trav;
    std::array<std::set<int>, 2> faces;
    // side_of_corner[v] maps a corner id at an on-curve vertex to 0/1.
    std::map<int, std::map<int, int>> side_of_corner;
};

CurveSides trace_sides(const AnalyzedDiagram& a, int curve) {
    const auto& d = a.d;
    const auto& walk = a.walks[curve];
    int L = static_cast<int>(walk.edge_seq.size());
    CurveSides cs;

    for (int side = 0; side < 2; ++side) {
        int e0 = walk.edge_seq[0];
        std::pair<int, int> cur = {e0, side};
        for (int t = 0; t < L; ++t) {
            cs.trav[side].push_back(cur);
            const auto& rec = a.edge_traversals[cur.first][cur.second];
            cs.faces[side].insert(rec.face);

            // Arrival endpoint of step t: the vertex the walk enters next.
            int h_dep = walk.dep_end_seq[t];
            int e = h_dep / 2, k = h_dep % 2;
            if (e != cur.first) throw std::logic_error("side trace desynchronized");
            int k_arr = 1 - k;
            int v = d.edges[e].vert[k_arr];
            int s_arr = d.edges[e].slot[k_arr];
            int deg = static_cast<int>(d.verts[v].rot.size());
            int c = rec.corner[k_arr];
            int c2;
            if (deg == 4) {
                if (c == s_arr)
                    c2 = (s_arr + 1) % 4;
                else if (c == (s_arr + 3) % 4)
                    c2 = (s_arr + 2) % 4;
                else
                    throw std::logic_error("side trace: corner not adjacent to arrival slot");
            } else {
                c2 = c;
            }
            cs.side_of_corner[v][c] = side;
            cs.side_of_corner[v][c2] = side;
            cs.faces[side].insert(a.corner_face[v][c]);
            cs.faces[side].insert(a.corner_face[v][c2]);

            // Next walk edge departs from the opposite slot at v.
            int h_dep2 = walk.dep_end_seq[(t + 1) % L];
            int e2 = h_dep2 / 2, k2 = h_dep2 % 2;
            if (d.edges[e2].vert[k2] != v) throw std::logic_error("side trace: walk mismatch");
            // Pick e2's traversal whose corner at the departure end is c2.
            int which = -1;
            for (int j = 0; j < 2; ++j)
                if (a.edge_traversals[e2][j].corner[k2] == c2) which = j;
            if (which < 0) throw std::logic_error("side trace: no matching traversal");
            cur = {e2, which};
        }
        // Two-sidedness: transport must close up on the starting traversal.
        if (cur != std::make_pair(e0, side)) throw std::logic_error("side transport did not close");
    }
    return cs;
}

}  // namespace

CutResult cut_components(const DiagramView& view, CurveSystem system) {
    const AnalyzedDiagram& a = *view.ad;
    const SurfaceDiagram& d = a.d;
    if (!a.valid) throw std::invalid_argument("cut_components: invalid diagram");

    CutResult res;
    std::vector<char> is_cut_curve(d.curves.size(), 0);
    for (size_t c = 0; c < d.curves.size(); ++c)
        if (view.live(static_cast<int>(c)) && d.curves[c].system == system) {
            is_cut_curve[c] = 1;
            res.cut_curves.push_back(static_cast<int>(c));
        }

    int F = static_cast<int>(a.faces.size());
    UnionFind uf(F);
    for (size_t e = 0; e < d.edges.size(); ++e)
        if (!is_cut_curve[d.edges[e].curve])
            uf.merge(a.edge_traversals[e][0].face, a.edge_traversals[e][1].face);

    std::map<int, int> root_piece;
    res.piece_of_face.assign(F, -1);
    for (int f = 0; f < F; ++f) {
        int r = uf.find(f);
        auto it = root_piece.find(r);
        if (it == root_piece.end()) it = root_piece.emplace(r, static_cast<int>(root_piece.size())).first;
        res.piece_of_face[f] = it->second;
    }
    int P = static_cast<int>(root_piece.size());
    res.components.resize(P);
    for (int f = 0; f < F; ++f) res.components[res.piece_of_face[f]].faces.push_back(f);

    std::vector<int> Vc(P, 0), Ec(P, 0), Bc(P, 0);

    // Sides of each cut curve: pieces and per-vertex corner sides.
    std::vector<CurveSides> sides(res.cut_curves.size());
    std::map<int, std::pair<int, int>> vertex_cut;  // vertex -> (cut index, curve)
    for (size_t i = 0; i < res.cut_curves.size(); ++i) {
        int c = res.cut_curves[i];
        sides[i] = trace_sides(a, c);
        std::array<int, 2> side_piece{-1, -1};
        for (int sdx = 0; sdx < 2; ++sdx) {
            std::set<int> pieces;
            for (int f : sides[i].faces[sdx]) pieces.insert(res.piece_of_face[f]);
            if (pieces.size() != 1) throw std::logic_error("cut: side touches several pieces");
            side_piece[sdx] = *pieces.begin();
        }
        res.curve_side_piece.push_back(side_piece);
        Bc[side_piece[0]] += 1;
        Bc[side_piece[1]] += 1;
        for (int v : a.walks[c].vertex_seq) vertex_cut[v] = {static_cast<int>(i), c};
    }

    // Vertices: one copy per side when on the cut locus, one copy otherwise.
    for (int v = 0; v < static_cast<int>(d.verts.size()); ++v) {
        auto it = vertex_cut.find(v);
        if (it != vertex_cut.end()) {
            const auto& sp = res.curve_side_piece[it->second.first];
            Vc[sp[0]] += 1;
            Vc[sp[1]] += 1;
        } else {
            Vc[res.piece_of_face[a.corner_face[v][0]]] += 1;
        }
    }
    // Edges: cut edges contribute one boundary arc per side, interior edges one arc.
    for (size_t e = 0; e < d.edges.size(); ++e) {
        if (is_cut_curve[d.edges[e].curve]) {
            Ec[res.piece_of_face[a.edge_traversals[e][0].face]] += 1;
            Ec[res.piece_of_face[a.edge_traversals[e][1].face]] += 1;
        } else {
            int p0 = res.piece_of_face[a.edge_traversals[e][0].face];
            int p1 = res.piece_of_face[a.edge_traversals[e][1].face];
            if (p0 != p1) throw std::logic_error("cut: interior edge between pieces");
            Ec[p0] += 1;
        }
    }
    for (int p = 0; p < P; ++p) {
        res.components[p].boundary_circles = Bc[p];
        res.components[p].capped_euler_char =
            Vc[p] - Ec[p] + static_cast<int>(res.components[p].faces.size()) + Bc[p];
    }

    // Orientability per piece: parity union-find over vertex copies.
    {
        // Node ids: off-cut vertex v -> node[v]; on-cut vertex -> two nodes.
        std::vector<int> base(d.verts.size(), -1);
        std::map<int, std::array<int, 2>> side_node;
        int next_node = 0;
        for (int v = 0; v < static_cast<int>(d.verts.size()); ++v) {
            if (vertex_cut.count(v)) {
                side_node[v] = {next_node, next_node + 1};
                next_node += 2;
            } else {
                base[v] = next_node++;
            }
        }
        auto node_at = [&](int v, int corner) {
            auto it = vertex_cut.find(v);
            if (it == vertex_cut.end()) return base[v];
            int side = sides[it->second.first].side_of_corner.at(v).at(corner);
            return side_node[v][side];
        };
        ParityUF puf(next_node);
        std::vector<std::pair<int, int>> merges;  // (node, piece) for conflict attribution
        std::vector<char> piece_conflict(P, 0);
        for (size_t e = 0; e < d.edges.size(); ++e) {
            int parity = d.edges[e].sign < 0 ? 1 : 0;
            for (int j = 0; j < 2; ++j) {
                const auto& rec = a.edge_traversals[e][j];
                int piece = res.piece_of_face[rec.face];
                int n0 = node_at(d.edges[e].vert[0], rec.corner[0]);
                int n1 = node_at(d.edges[e].vert[1], rec.corner[1]);
                bool before = puf.conflict;
                puf.merge(n0, n1, parity);
                if (!before && puf.conflict) piece_conflict[piece] = 1;
                if (!is_cut_curve[d.edges[e].curve]) break;  // interior edges once
            }
        }
        // A conflict discovered anywhere in a piece marks it non-orientable;
        // a globally orientable surface has only orientable pieces.
        for (int p = 0; p < P; ++p)
            res.components[p].orientable = a.orientable ? true : !piece_conflict[p];
    }
    return res;
}

SystemClass classify_system(const DiagramView& view, CurveSystem system) {
    CutResult cut = cut_components(view, system);
    SystemClass sc;
    sc.proper = true;
    bool any_genus0 = false;
    for (const auto& comp : cut.components) {
        if (comp.capped_euler_char != 2) sc.proper = false;
        if (comp.capped_euler_char == 2) any_genus0 = true;
    }
    sc.reduced = cut.components.size() == 1 || !any_genus0;
    return sc;
}

GeneralizedHeegaardDiagram make_generalized(SurfaceDiagram d) {
    GeneralizedHeegaardDiagram h;
    h.diagram = analyze_diagram(std::move(d));
    if (h.diagram.valid) {
        DiagramView view(h.diagram);
        h.prime_proper = classify_system(view, CurveSystem::Prime).proper;
    }
    return h;
}

DualGraph dual_graph(const DiagramView& view, CurveSystem system) {
    CutResult cut = cut_components(view, system);
    DualGraph dg;
    dg.nodes = static_cast<int>(cut.components.size());
    for (const auto& comp : cut.components) {
        dg.node_capped_chi.push_back(comp.capped_euler_char);
        dg.node_orientable.push_back(comp.orientable);
    }
    for (size_t i = 0; i < cut.cut_curves.size(); ++i) {
        dg.edge_endpoints.push_back(cut.curve_side_piece[i]);
        dg.edge_curve.push_back(cut.cut_curves[i]);
    }
    return dg;
}

namespace {

// Enumerates acyclic edge subsets of the target size by lexicographic
// combination growth; with target = nodes - components this yields each
// maximal spanning forest exactly once.
void forest_combinations(int nodes, const std::vector<std::array<int, 2>>& edges, int target,
                         int from, UnionFind& uf, std::vector<int>& acc,
                         std::vector<std::vector<int>>& out) {
    if (static_cast<int>(acc.size()) == target) {
        out.push_back(acc);
        return;
    }
    int need = target - static_cast<int>(acc.size());
    for (int k = from; k + need <= static_cast<int>(edges.size()); ++k) {
        UnionFind uf2 = uf;
        if (!uf2.merge(edges[k][0], edges[k][1])) continue;
        acc.push_back(k);
        forest_combinations(nodes, edges, target, k + 1, uf2, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> admissible_forests(const DualGraph& dg) {
    std::vector<int> plus_nodes;
    for (int v = 0; v < dg.nodes; ++v)
        if (dg.node_capped_chi[v] < 2) plus_nodes.push_back(v);

    // Quotient: identify all positive-genus nodes into one supernode. A
    // spanning tree of the quotient is exactly an admissible forest (each
    // tree component hangs off one positive-genus node); with no such nodes
    // the quotient is the graph itself and we need its maximal trees.
    std::vector<int> q(dg.nodes, -1);
    int qn = 0;
    if (plus_nodes.empty()) {
        for (int v = 0; v < dg.nodes; ++v) q[v] = qn++;
    } else {
        for (int v : plus_nodes) q[v] = 0;
        qn = 1;
        for (int v = 0; v < dg.nodes; ++v)
            if (q[v] < 0) q[v] = qn++;
    }
    std::vector<std::array<int, 2>> qedges;
    for (const auto& e : dg.edge_endpoints) qedges.push_back({q[e[0]], q[e[1]]});

    UnionFind comp(qn);
    for (const auto& e : qedges) comp.merge(e[0], e[1]);
    int comps = 0;
    for (int v = 0; v < qn; ++v)
        if (comp.find(v) == v) ++comps;
    int target = qn - comps;

    std::vector<std::vector<int>> out;
    std::vector<int> acc;
    UnionFind uf(qn);
    forest_combinations(qn, qedges, target, 0, uf, acc, out);
    return out;
}

TreeFormulaCheck check_tree_formula(const DualGraph& dg, const std::vector<int>& forest,
                                    int surface_euler_char) {
    TreeFormulaCheck res;
    if ((2 - surface_euler_char) % 2 != 0) {
        res.convention_mismatch = true;
        return res;
    }
    int g = (2 - surface_euler_char) / 2;
    int h = 0;
    long long genus_sum = 0;
    for (int v = 0; v < dg.nodes; ++v) {
        if (dg.node_capped_chi[v] == 2) continue;
        if ((2 - dg.node_capped_chi[v]) % 2 != 0) {
            res.convention_mismatch = true;  // odd crosscap number
            return res;
        }
        ++h;
        genus_sum += (2 - dg.node_capped_chi[v]) / 2;
    }
    long long rhs = static_cast<long long>(dg.edge_endpoints.size()) - g -
                    std::max(0, h - 1) + genus_sum;
    res.holds = static_cast<long long>(forest.size()) == rhs;
    return res;
}

std::vector<DiagramRegion> view_regions(const DiagramView& view) {
    const AnalyzedDiagram& a = *view.ad;
    const SurfaceDiagram& d = a.d;
    int F = static_cast<int>(a.faces.size());
    UnionFind uf(F);
    for (size_t e = 0; e < d.edges.size(); ++e)
        if (!view.live(d.edges[e].curve))
            uf.merge(a.edge_traversals[e][0].face, a.edge_traversals[e][1].face);

    std::map<int, int> root_region;
    std::vector<DiagramRegion> out;
    for (int f = 0; f < F; ++f) {
        int r = uf.find(f);
        auto it = root_region.find(r);
        if (it == root_region.end()) {
            it = root_region.emplace(r, static_cast<int>(out.size())).first;
            out.emplace_back();
        }
        out[it->second].faces.push_back(f);
    }
    std::vector<char> singular(d.verts.size(), 0);
    for (size_t v = 0; v < d.verts.size(); ++v)
        if (d.verts[v].rot.size() == 4 && view.live(a.vertex_curves[v][0]) &&
            view.live(a.vertex_curves[v][1]))
            singular[v] = 1;
    for (auto& reg : out) {
        std::set<int> vs;
        for (int f : reg.faces)
            for (int v : a.faces[f].vertices) vs.insert(v);
        reg.vertices.assign(vs.begin(), vs.end());
        for (int v : reg.vertices)
            if (singular[v]) ++reg.singular_in_closure;
    }
    return out;
}

int singular_count(const DiagramView& view) {
    const AnalyzedDiagram& a = *view.ad;
    int c = 0;
    for (size_t v = 0; v < a.d.verts.size(); ++v)
        if (a.d.verts[v].rot.size() == 4 && view.live(a.vertex_curves[v][0]) &&
            view.live(a.vertex_curves[v][1]))
            ++c;
    return c;
}

std::vector<Reduction> reduce_all(const DiagramView& view) {
    DualGraph dgp = dual_graph(view, CurveSystem::Prime);
    DualGraph dgd = dual_graph(view, CurveSystem::DoublePrime);
    auto fp = admissible_forests(dgp);
    auto fd = admissible_forests(dgd);

    std::vector<Reduction> out;
    for (const auto& tp : fp) {
        for (const auto& td : fd) {
            Reduction red{.removed_prime = {}, .removed_double = {}, .view = view};
            for (int k : tp) {
                red.removed_prime.push_back(dgp.edge_curve[k]);
                red.view.removed[dgp.edge_curve[k]] = 1;
            }
            for (int k : td) {
                red.removed_double.push_back(dgd.edge_curve[k]);
                red.view.removed[dgd.edge_curve[k]] = 1;
            }
            out.push_back(std::move(red));
        }
    }
    return out;
}

ReducedComplexity modified_complexity_reduced(const DiagramView& view) {
    SystemClass cp = classify_system(view, CurveSystem::Prime);
    SystemClass cd = classify_system(view, CurveSystem::DoublePrime);
    if (!cp.reduced || !cd.reduced)
        throw std::invalid_argument("modified_complexity_reduced: systems not reduced");
    ReducedComplexity rc;
    rc.singular = singular_count(view);
    for (const auto& reg : view_regions(view))
        rc.max_region_singulars = std::max(rc.max_region_singulars, reg.singular_in_closure);
    rc.value = rc.singular - rc.max_region_singulars;
    return rc;
}

ModifiedComplexity modified_complexity(const DiagramView& view) {
    auto reductions = reduce_all(view);
    ModifiedComplexity mc;
    mc.value = -1;
    for (size_t i = 0; i < reductions.size(); ++i) {
        ReducedComplexity rc = modified_complexity_reduced(reductions[i].view);
        if (mc.value < 0 || rc.value < mc.value) {
            mc.value = rc.value;
            mc.reduction_index = static_cast<int>(i);
            mc.removed_prime = reductions[i].removed_prime;
            mc.removed_double = reductions[i].removed_double;
        }
    }
    if (mc.value < 0) throw std::logic_error("modified_complexity: no reduction produced");
    return mc;
}

SurfaceDiagram materialize_view(const DiagramView& view, const std::string& name) {
    const AnalyzedDiagram& a = *view.ad;
    const SurfaceDiagram& d = a.d;
    SurfaceDiagram out;
    out.name = name;

    std::vector<int> curve_map(d.curves.size(), -1);
    for (size_t c = 0; c < d.curves.size(); ++c)
        if (view.live(static_cast<int>(c))) {
            curve_map[c] = static_cast<int>(out.curves.size());
            out.curves.push_back(d.curves[c]);
        }

    // Vertices kept: live crossings and existing markers on live curves;
    // fresh markers are created for circles whose crossings all vanished.
    std::vector<int> vmap(d.verts.size(), -1);
    auto vertex_live = [&](int v) {
        if (d.verts[v].rot.size() == 2) return view.live(a.vertex_curves[v][0]);
        return view.live(a.vertex_curves[v][0]) && view.live(a.vertex_curves[v][1]);
    };
    for (int v = 0; v < static_cast<int>(d.verts.size()); ++v)
        if (vertex_live(v)) {
            vmap[v] = static_cast<int>(out.verts.size());
            out.verts.emplace_back();
            out.verts.back().rot.assign(d.verts[v].rot.size(), -1);
        }

    for (size_t c = 0; c < d.curves.size(); ++c) {
        if (!view.live(static_cast<int>(c))) continue;
        const auto& walk = a.walks[c];
        int L = static_cast<int>(walk.edge_seq.size());
        std::vector<int> stops;  // walk step indices departing from live vertices
        for (int t = 0; t < L; ++t)
            if (vertex_live(walk.vertex_seq[t])) stops.push_back(t);

        if (stops.empty()) {
            // Crossing-free circle: one marker carrying a single loop.
            int mv = static_cast<int>(out.verts.size());
            out.verts.emplace_back();
            out.verts.back().rot = {-1, -1};
            int e = static_cast<int>(out.edges.size());
            out.edges.push_back({{mv, mv}, {0, 1}, 1, curve_map[c]});  // sign product is +1
            out.verts[mv].rot[0] = 2 * e;
            out.verts[mv].rot[1] = 2 * e + 1;
            continue;
        }
        // Arcs between consecutive live stops become single edges.
        for (size_t si = 0; si < stops.size(); ++si) {
            int t0 = stops[si];
            int t1 = stops[(si + 1) % stops.size()];
            int sign = 1;
            for (int t = t0;; t = (t + 1) % L) {
                sign *= d.edges[walk.edge_seq[t]].sign;
                if ((t + 1) % L == t1) break;
            }
            int h_dep = walk.dep_end_seq[t0];
            int u = walk.vertex_seq[t0];
            int slot_u = d.edges[h_dep / 2].slot[h_dep % 2];
            int e_arr = walk.edge_seq[(t1 - 1 + L) % L];
            int h_dep_arr = walk.dep_end_seq[(t1 - 1 + L) % L];
            int w = walk.vertex_seq[t1];
            int slot_w = d.edges[e_arr].slot[1 - (h_dep_arr % 2)];
            int e = static_cast<int>(out.edges.size());
            out.edges.push_back({{vmap[u], vmap[w]}, {slot_u, slot_w}, sign, curve_map[c]});
            out.verts[vmap[u]].rot[slot_u] = 2 * e;
            out.verts[vmap[w]].rot[slot_w] = 2 * e + 1;
        }
    }
    for (const auto& v : out.verts)
        for (int h : v.rot)
            if (h < 0) throw std::logic_error("materialize: rotation slot unfilled");
    return out;
}

}  // namespace gemc
