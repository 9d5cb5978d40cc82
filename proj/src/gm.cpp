#include "gemc/gm.hpp"

#include <algorithm>
#include <stdexcept>

#include "gemc/union_find.hpp"

namespace gemc {

SubcomplexGraph subcomplex_graph(const Gem& g, const std::vector<int>& colours) {
    if (colours.size() != 2) throw std::invalid_argument("subcomplex_graph: need a colour pair");
    int ci = std::min(colours[0], colours[1]);
    int cj = std::max(colours[0], colours[1]);
    int cip = -1, cjp = -1;
    for (int c = 0; c < 4; ++c)
        if (c != ci && c != cj) (cip < 0 ? cip : cjp) = c;

    std::vector<int> hat_i_cols, hat_j_cols;
    for (int c = 0; c < 4; ++c) {
        if (c != ci) hat_i_cols.push_back(c);
        if (c != cj) hat_j_cols.push_back(c);
    }
    ResiduePartition hat_i = residues(g, hat_i_cols);
    ResiduePartition hat_j = residues(g, hat_j_cols);
    ResiduePartition dual = residues(g, {cip, cjp});

    SubcomplexGraph sg;
    sg.i_hat_count = static_cast<int>(hat_i.classes.size());
    sg.nodes = sg.i_hat_count + static_cast<int>(hat_j.classes.size());
    for (const auto& cls : dual.classes) {
        int v = cls.vertices.front();
        sg.edge_endpoints.push_back(
            {hat_i.class_of[v - 1], sg.i_hat_count + hat_j.class_of[v - 1]});
    }
    return sg;
}

namespace {

// Contraction/deletion recursion over a fixed edge order. Each spanning
// forest of the input multigraph is emitted exactly once.
struct ForestEnum {
    int nodes;
    const std::vector<std::array<int, 2>>* edges;
    std::int64_t cap;
    std::int64_t emitted = 0;
    std::vector<int> chosen;
    std::vector<std::vector<int>> out;

    // Remaining edges from index `from` must be able to connect everything
    // that some full-graph forest would connect; components that can still
    // merge must merge. Feasibility: using all remaining edges plus the
    // current partial forest must reach the component structure of the
    // whole graph.
    bool feasible(UnionFind uf, int from) const {
        UnionFind whole(nodes);
        for (const auto& e : *edges) whole.merge(e[0], e[1]);
        for (int k = from; k < static_cast<int>(edges->size()); ++k)
            uf.merge((*edges)[k][0], (*edges)[k][1]);
        for (int v = 0; v < nodes; ++v)
            if ((uf.find(v) == v) != (whole.find(v) == v)) return false;
        return true;
    }

    void rec(UnionFind uf, int from) {
        // Skip edges that are loops under the current contraction.
        int k = from;
        while (k < static_cast<int>(edges->size()) &&
               uf.find((*edges)[k][0]) == uf.find((*edges)[k][1]))
            ++k;
        if (k == static_cast<int>(edges->size())) {
            if (++emitted > cap) throw budget_exceeded("forest enumeration budget exceeded");
            out.push_back(chosen);
            return;
        }
        // Include edge k (contract).
        {
            UnionFind uf2 = uf;
            uf2.merge((*edges)[k][0], (*edges)[k][1]);
            chosen.push_back(k);
            rec(std::move(uf2), k + 1);
            chosen.pop_back();
        }
        // Exclude edge k (delete) if the forest can still become maximal.
        if (feasible(uf, k + 1)) rec(uf, k + 1);
    }
};

}  // namespace

std::vector<std::vector<int>> spanning_forests(int nodes,
                                               const std::vector<std::array<int, 2>>& edges,
                                               std::int64_t cap) {
    ForestEnum fe;
    fe.nodes = nodes;
    fe.edges = &edges;
    fe.cap = cap;
    fe.rec(UnionFind(nodes), 0);
    return fe.out;
}

std::vector<ForestChoice> forest_choices(const Gem& g, int pair_index, std::int64_t cap) {
    auto co = co_pair_colours(pair_index);
    SubcomplexGraph sg = subcomplex_graph(g, {co[0], co[1]});
    std::vector<ForestChoice> out;
    for (auto& forest : spanning_forests(sg.nodes, sg.edge_endpoints, cap))
        out.push_back({std::move(forest)});
    return out;
}

namespace {

int covered_count(const Gem& g, const RegularEmbedding& emb, const std::vector<int>& kept_ab,
                  const std::vector<int>& kept_apbp, const Region& region) {
    std::vector<bool> cov(g.num_vertices() + 1, false);
    for (int id : kept_ab)
        for (int v : emb.ab_curves.classes[id].vertices) cov[v] = true;
    for (int id : kept_apbp)
        for (int v : emb.apbp_curves.classes[id].vertices) cov[v] = true;
    for (int v : region.vertex_closure) cov[v] = true;
    int n = 0;
    for (int v = 1; v <= g.num_vertices(); ++v)
        if (cov[v]) ++n;
    return n;
}

void scan_choices(const Gem& g, const RegularEmbedding& emb,
                  const std::vector<ForestChoice>& ab_choices,
                  const std::vector<ForestChoice>& apbp_choices, GmWitness& best) {
    for (const auto& d : ab_choices) {
        for (const auto& dp : apbp_choices) {
            auto regs = regions(emb, d.curves, dp.curves);
            for (const auto& reg : regs) {
                int value = g.num_vertices() - covered_count(g, emb, d.curves, dp.curves, reg);
                if (value < best.value) {
                    best.pair_index = emb.pair_index;
                    best.kept_ab = d.curves;
                    best.kept_apbp = dp.curves;
                    best.region = reg;
                    best.value = value;
                }
            }
        }
    }
}

}  // namespace

GmWitness gm_value(const Gem& g, const GmOptions& opt) {
    GmWitness best;
    best.value = g.num_vertices() + 1;
    for (int pi : opt.pair_indices) {
        RegularEmbedding emb = regular_embedding(g, pi);
        auto ab_choices = forest_choices(g, pi, opt.forest_cap);
        // The co-pair collections come from forests of the subcomplex on the
        // pair itself, whose edges are the co-pair residues.
        auto pr = pair_colours(pi);
        SubcomplexGraph sg = subcomplex_graph(g, {pr[0], pr[1]});
        std::vector<ForestChoice> apbp_choices;
        for (auto& forest : spanning_forests(sg.nodes, sg.edge_endpoints, opt.forest_cap))
            apbp_choices.push_back({std::move(forest)});
        scan_choices(g, emb, ab_choices, apbp_choices, best);
    }
    if (best.value > g.num_vertices()) throw std::logic_error("gm_value: no choice scanned");
    return best;
}

GmWitness gm_value_crystallization(const Gem& g, const GmOptions& opt) {
    GmWitness best;
    best.value = g.num_vertices() + 1;
    for (int pi : opt.pair_indices) {
        RegularEmbedding emb = regular_embedding(g, pi);
        std::vector<ForestChoice> ab_choices, apbp_choices;
        for (int i = 0; i < static_cast<int>(emb.ab_curves.classes.size()); ++i)
            ab_choices.push_back({{i}});
        for (int i = 0; i < static_cast<int>(emb.apbp_curves.classes.size()); ++i)
            apbp_choices.push_back({{i}});
        scan_choices(g, emb, ab_choices, apbp_choices, best);
    }
    if (best.value > g.num_vertices()) throw std::logic_error("gm_value: no choice scanned");
    return best;
}

int catalogue_min(const std::vector<Gem>& gems, const GmOptions& opt) {
    if (gems.empty()) throw std::invalid_argument("catalogue_min: empty selection");
    int best = -1;
    for (const auto& g : gems) {
        int v = gm_value(g, opt).value;
        if (best < 0 || v < best) best = v;
    }
    return best;
}

}  // namespace gemc
