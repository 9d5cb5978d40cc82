#include "gemc/bridge.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace gemc {

namespace {

// Vertex classes for the induced rotation: a spanning-tree 2-colouring.
// On bipartite gems this is the bipartition and every edge joins the two
// classes; otherwise the class-respecting edges get sign +1 and the others
// sign -1, which makes the traced surface non-orientable exactly when the
// gem is non-bipartite.
std::vector<int> vertex_classes(const Gem& g) {
    std::vector<int> cls(g.num_vertices() + 1, -1);
    cls[1] = 0;
    std::queue<int> q;
    q.push(1);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int c = 0; c < 4; ++c) {
            int w = g.partner(c, u);
            if (cls[w] < 0) {
                cls[w] = 1 - cls[u];
                q.push(w);
            }
        }
    }
    return cls;
}

}  // namespace

InducedDiagram induce_diagram(const Gem& g, int pair_index) {
    RegularEmbedding emb = regular_embedding(g, pair_index);
    std::vector<int> cls = vertex_classes(g);

    SurfaceDiagram d;
    d.name = g.name() + "_pair" + std::to_string(pair_index);
    int n = g.num_vertices();
    d.verts.resize(n);

    InducedDiagram out;
    out.pair_index = pair_index;
    out.prime_count = static_cast<int>(emb.ab_curves.classes.size());
    out.double_count = static_cast<int>(emb.apbp_curves.classes.size());
    for (int i = 0; i < out.prime_count; ++i)
        d.curves.push_back({"a" + std::to_string(i), CurveSystem::Prime});
    for (int i = 0; i < out.double_count; ++i)
        d.curves.push_back({"b" + std::to_string(i), CurveSystem::DoublePrime});

    // Edges reuse the embedding's dense ids; signs mark class-respecting
    // adjacency, rotation order is (alpha, alpha', beta, beta') at class-0
    // vertices and reversed at class-1 vertices.
    d.edges.resize(emb.edges.size());
    for (size_t e = 0; e < emb.edges.size(); ++e) {
        const GemEdge& ge = emb.edges[e];
        SurfaceDiagram::Edge ed;
        ed.vert = {ge.a - 1, ge.b - 1};
        ed.sign = cls[ge.a] != cls[ge.b] ? 1 : -1;
        ed.curve = emb.edge_is_ab[e] ? emb.edge_curve[e] : out.prime_count + emb.edge_curve[e];
        d.edges[e] = ed;
    }

    std::map<std::pair<int, int>, int> edge_of;  // (colour, min vertex) -> edge id
    for (size_t e = 0; e < emb.edges.size(); ++e)
        edge_of[{emb.edges[e].colour, emb.edges[e].a}] = static_cast<int>(e);

    const std::array<int, 4> order0 = {emb.alpha, emb.alphap, emb.beta, emb.betap};
    for (int v = 1; v <= n; ++v) {
        std::array<int, 4> order = order0;
        if (cls[v] == 1) std::reverse(order.begin() + 1, order.end());  // cyclic reversal fixing alpha
        d.verts[v - 1].rot.resize(4);
        for (int s = 0; s < 4; ++s) {
            int colour = order[s];
            int w = g.partner(colour, v);
            int e = edge_of.at({colour, std::min(v, w)});
            int end = v == std::min(v, w) ? 0 : 1;
            d.verts[v - 1].rot[s] = 2 * e + end;
            d.edges[e].slot[end] = s;
        }
    }

    out.diagram = analyze_diagram(std::move(d));
    return out;
}

CrossCheckReport cross_check(const Gem& g, const GmOptions& opt) {
    CrossCheckReport rep;
    rep.gem_witness = gm_value(g, opt);
    rep.gm = rep.gem_witness.value;

    rep.hm = -1;
    for (int pi : opt.pair_indices) {
        InducedDiagram ind = induce_diagram(g, pi);
        if (!ind.diagram.valid)
            throw std::logic_error("cross_check: induced diagram invalid for pair " +
                                   std::to_string(pi));
        DiagramView view(ind.diagram);
        ModifiedComplexity mc = modified_complexity(view);
        if (rep.hm < 0 || mc.value < rep.hm) {
            rep.hm = mc.value;
            rep.hm_pair_index = pi;
            rep.hm_witness = mc;
        }
    }
    rep.equal = rep.gm == rep.hm;
    return rep;
}

std::vector<long long> smith_invariant_factors(std::vector<std::vector<long long>> m) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<long long> diag;
    int r = 0, c = 0;
    while (r < rows && c < cols) {
        // Find a pivot of minimal absolute value in the remaining block.
        int pr = -1, pc = -1;
        long long best = 0;
        for (int i = r; i < rows; ++i)
            for (int j = c; j < cols; ++j)
                if (m[i][j] != 0 && (pr < 0 || std::abs(m[i][j]) < best)) {
                    pr = i;
                    pc = j;
                    best = std::abs(m[i][j]);
                }
        if (pr < 0) break;
        std::swap(m[r], m[pr]);
        for (int i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                long long q = m[i][c] / m[r][c];
                for (int j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (m[i][c] != 0) {
                    std::swap(m[r], m[i]);
                    clean = false;
                }
            }
            for (int j = c + 1; j < cols; ++j) {
                if (m[r][j] == 0) continue;
                long long q = m[r][j] / m[r][c];
                for (int i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
                if (m[r][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(m[i][c], m[i][j]);
                    clean = false;
                }
            }
        }
        diag.push_back(std::abs(m[r][c]));
        ++r;
        ++c;
    }
    // Enforce the divisibility chain.
    for (size_t i = 0; i + 1 < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j)
            if (diag[j] % diag[i] != 0) {
                long long g = std::gcd(diag[i], diag[j]);
                long long l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
    std::sort(diag.begin(), diag.end());
    return diag;
}

std::string to_string(const H1Fingerprint& f) {
    std::vector<std::string> parts;
    if (f.free_rank == 1)
        parts.push_back("Z");
    else if (f.free_rank > 1)
        parts.push_back("Z^" + std::to_string(f.free_rank));
    for (long long t : f.torsion) parts.push_back("Z_" + std::to_string(t));
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
    return out;
}

H1Fingerprint parse_fingerprint(const std::string& s) {
    H1Fingerprint f;
    if (s == "0") return f;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '+')) {
        if (tok == "Z")
            f.free_rank += 1;
        else if (tok.rfind("Z^", 0) == 0)
            f.free_rank += std::stoi(tok.substr(2));
        else if (tok.rfind("Z_", 0) == 0)
            f.torsion.push_back(std::stoll(tok.substr(2)));
        else
            throw std::invalid_argument("bad fingerprint term '" + tok + "'");
    }
    std::sort(f.torsion.begin(), f.torsion.end());
    return f;
}

namespace {

H1Fingerprint homology_from_induced(const InducedDiagram& ind) {
    const AnalyzedDiagram& a = ind.diagram;
    DiagramView base(a);
    auto reductions = reduce_all(base);
    if (reductions.empty()) throw std::logic_error("homology: no reduction");
    const DiagramView& view = reductions.front().view;

    std::vector<int> live_prime, live_double;
    for (size_t c = 0; c < a.d.curves.size(); ++c) {
        if (!view.live(static_cast<int>(c))) continue;
        (a.d.curves[c].system == CurveSystem::Prime ? live_prime : live_double)
            .push_back(static_cast<int>(c));
    }
    std::map<int, int> col_of;
    for (size_t i = 0; i < live_prime.size(); ++i) col_of[live_prime[i]] = static_cast<int>(i);

    // Per vertex, the rotation slot each curve departs from along its walk.
    std::vector<std::array<int, 2>> dep_slot(a.d.verts.size(), {-1, -1});
    for (size_t c = 0; c < a.d.curves.size(); ++c) {
        for (int h : a.walks[c].dep_end_seq) {
            int e = h / 2, k = h % 2;
            int v = a.d.edges[e].vert[k];
            int which = a.vertex_curves[v][0] == static_cast<int>(c) ? 0 : 1;
            dep_slot[v][which] = a.d.edges[e].slot[k];
        }
    }

    std::vector<std::vector<long long>> rel;
    for (int c : live_double) {
        std::vector<long long> row(live_prime.size(), 0);
        const auto& walk = a.walks[c];
        int bit = 1;  // transported local orientation, sign flips across -1 edges
        int L = static_cast<int>(walk.edge_seq.size());
        for (int t = 0; t < L; ++t) {
            // Arriving at the next step's source vertex.
            int v = walk.vertex_seq[(t + 1) % L];
            bit *= a.d.edges[walk.edge_seq[t]].sign;
            int other = a.vertex_curves[v][0] == c ? a.vertex_curves[v][1] : a.vertex_curves[v][0];
            if (!view.live(other)) continue;  // smoothed former crossing
            int which_self = a.vertex_curves[v][0] == c ? 0 : 1;
            int s_dep = dep_slot[v][which_self];
            int g_dep = dep_slot[v][1 - which_self];
            int sign = g_dep == (s_dep + 1) % 4 ? 1 : -1;
            row[col_of.at(other)] += bit * sign;
        }
        rel.push_back(std::move(row));
    }

    auto factors = smith_invariant_factors(rel.empty()
                                               ? std::vector<std::vector<long long>>{}
                                               : rel);
    H1Fingerprint f;
    int rank_nonzero = 0;
    for (long long d : factors)
        if (d != 0) {
            ++rank_nonzero;
            if (d > 1) f.torsion.push_back(d);
        }
    f.free_rank = static_cast<int>(live_prime.size()) - rank_nonzero;
    std::sort(f.torsion.begin(), f.torsion.end());
    return f;
}

}  // namespace

H1Fingerprint first_homology(const Gem& g) {
    H1Fingerprint f = homology_from_induced(induce_diagram(g, 0));
    for (int pi : {1, 2}) {
        H1Fingerprint other = homology_from_induced(induce_diagram(g, pi));
        if (!(other == f))
            throw std::logic_error("first_homology: fingerprint differs across colour pairs (" +
                                   to_string(f) + " vs " + to_string(other) + ")");
    }
    return f;
}

}  // namespace gemc
