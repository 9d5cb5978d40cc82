#include "gemc/embedding.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gemc/union_find.hpp"

namespace gemc {

RegularEmbedding regular_embedding(const Gem& g, int pair_index) {
    RegularEmbedding emb;
    emb.gem = &g;
    emb.pair_index = pair_index;
    auto pr = pair_colours(pair_index);
    auto co = co_pair_colours(pair_index);
    emb.alpha = pr[0];
    emb.beta = pr[1];
    emb.alphap = co[0];
    emb.betap = co[1];

    // Dense edge ids: colour-major, then by smaller endpoint.
    std::map<std::pair<int, int>, int> edge_id;  // (colour, min endpoint) -> id
    for (int c = 0; c < 4; ++c)
        for (int v = 1; v <= g.num_vertices(); ++v)
            if (g.partner(c, v) > v) {
                edge_id[{c, v}] = static_cast<int>(emb.edges.size());
                emb.edges.push_back({c, v, g.partner(c, v)});
            }
    auto eid = [&](int colour, int v) {
        int w = g.partner(colour, v);
        return edge_id.at({colour, std::min(v, w)});
    };

    // Faces: bicoloured residues of the four consecutive pairs in the cyclic
    // order (alpha, alpha', beta, beta').
    const std::array<std::array<int, 2>, 4> mixed = {{{emb.alpha, emb.alphap},
                                                      {emb.alphap, emb.beta},
                                                      {emb.beta, emb.betap},
                                                      {emb.betap, emb.alpha}}};
    emb.edge_faces.assign(emb.edges.size(), {-1, -1});
    for (const auto& pairc : mixed) {
        ResiduePartition part = residues(g, {pairc[0], pairc[1]});
        int ci = std::min(pairc[0], pairc[1]);
        int cj = std::max(pairc[0], pairc[1]);
        for (const auto& cls : part.classes) {
            EmbeddingFace face;
            face.colours = {ci, cj};
            face.vertices = cls.vertices;  // cyclic, alternating ci/cj edges
            int fid = static_cast<int>(emb.faces.size());
            for (size_t k = 0; k < cls.vertices.size(); ++k) {
                int v = cls.vertices[k];
                int colour = (k % 2 == 0) ? ci : cj;
                int e = eid(colour, v);
                face.edges.push_back(e);
                if (emb.edge_faces[e][0] < 0)
                    emb.edge_faces[e][0] = fid;
                else if (emb.edge_faces[e][1] < 0)
                    emb.edge_faces[e][1] = fid;
                else
                    throw std::logic_error("edge on more than two faces");
            }
            emb.faces.push_back(std::move(face));
        }
    }
    for (const auto& ef : emb.edge_faces)
        if (ef[0] < 0 || ef[1] < 0) throw std::logic_error("edge not on two faces");

    emb.ab_curves = residues(g, {emb.alpha, emb.beta});
    emb.apbp_curves = residues(g, {emb.alphap, emb.betap});
    emb.edge_curve.assign(emb.edges.size(), -1);
    emb.edge_is_ab.assign(emb.edges.size(), false);
    for (size_t e = 0; e < emb.edges.size(); ++e) {
        const GemEdge& ge = emb.edges[e];
        bool ab = ge.colour == emb.alpha || ge.colour == emb.beta;
        emb.edge_is_ab[e] = ab;
        const ResiduePartition& fam = ab ? emb.ab_curves : emb.apbp_curves;
        emb.edge_curve[e] = fam.class_of[ge.a - 1];
    }

    int v = g.num_vertices();
    int e = static_cast<int>(emb.edges.size());  // always 2v
    int f = static_cast<int>(emb.faces.size());
    emb.euler_char = v - e + f;
    emb.orientable = is_bipartite(g);
    if ((2 - emb.euler_char) % 2 != 0) throw std::logic_error("odd Euler characteristic");
    emb.rho = (2 - emb.euler_char) / 2;
    return emb;
}

std::vector<Region> regions(const RegularEmbedding& emb, const std::vector<int>& kept_ab,
                            const std::vector<int>& kept_apbp) {
    std::vector<bool> ab_kept(emb.ab_curves.classes.size(), false);
    std::vector<bool> apbp_kept(emb.apbp_curves.classes.size(), false);
    for (int id : kept_ab) ab_kept.at(id) = true;
    for (int id : kept_apbp) apbp_kept.at(id) = true;

    UnionFind uf(static_cast<int>(emb.faces.size()));
    for (size_t e = 0; e < emb.edges.size(); ++e) {
        bool kept = emb.edge_is_ab[e] ? ab_kept[emb.edge_curve[e]] : apbp_kept[emb.edge_curve[e]];
        if (kept) uf.merge(emb.edge_faces[e][0], emb.edge_faces[e][1]);
    }

    std::map<int, int> root_region;
    std::vector<Region> out;
    for (int f = 0; f < static_cast<int>(emb.faces.size()); ++f) {
        int r = uf.find(f);
        auto it = root_region.find(r);
        if (it == root_region.end()) {
            it = root_region.emplace(r, static_cast<int>(out.size())).first;
            out.emplace_back();
        }
        out[it->second].faces.push_back(f);
    }
    for (auto& reg : out) {
        std::vector<bool> seen(emb.gem->num_vertices() + 1, false);
        for (int f : reg.faces)
            for (int v : emb.faces[f].vertices) seen[v] = true;
        for (int v = 1; v <= emb.gem->num_vertices(); ++v)
            if (seen[v]) reg.vertex_closure.push_back(v);
    }
    return out;
}

}  // namespace gemc
