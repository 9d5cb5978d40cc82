#include "gemc/report.hpp"

#include <chrono>

#include <json.hpp>

namespace gemc {

std::string content_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string complexity_report_json(const Gem& g, const std::string& source_text,
                                   const GmOptions& opt, bool* crosscheck_equal) {
    using nlohmann::json;
    auto t0 = std::chrono::steady_clock::now();

    json rep;
    rep["name"] = g.name();
    rep["format"] = "gem";
    rep["digest"] = content_digest(source_text);

    auto pairs = residue_pair_counts(g);
    auto hats = residue_hat_counts(g);
    json inv;
    inv["vertices"] = g.num_vertices();
    static const char* pair_names[6] = {"01", "02", "03", "12", "13", "23"};
    for (int k = 0; k < 6; ++k) inv["g_ij"][pair_names[k]] = pairs[k];
    inv["g_hat"] = hats;
    inv["bipartite"] = is_bipartite(g);
    inv["contracted"] = is_contracted(g);
    inv["manifold"] = is_manifold_gem(g);
    inv["euler_K"] = euler_char_K(g);
    rep["invariants"] = std::move(inv);

    CrossCheckReport cc = cross_check(g, opt);
    json gm;
    gm["value"] = cc.gm;
    gm["witness"]["pair"] =
        json::array({pair_colours(cc.gem_witness.pair_index)[0],
                     pair_colours(cc.gem_witness.pair_index)[1]});
    gm["witness"]["kept_ab"] = cc.gem_witness.kept_ab;
    gm["witness"]["kept_apbp"] = cc.gem_witness.kept_apbp;
    gm["witness"]["region_faces"] = cc.gem_witness.region.faces;
    gm["witness"]["region_vertices"] = cc.gem_witness.region.vertex_closure;
    rep["gm"] = std::move(gm);

    json induced = json::array();
    for (int pi : opt.pair_indices) {
        InducedDiagram ind = induce_diagram(g, pi);
        DiagramView view(ind.diagram);
        ModifiedComplexity mc = modified_complexity(view);
        json one;
        one["pair"] = json::array({pair_colours(pi)[0], pair_colours(pi)[1]});
        one["crossings"] = ind.diagram.d.verts.size();
        one["curves_prime"] = ind.prime_count;
        one["curves_double"] = ind.double_count;
        one["euler_char"] = ind.diagram.euler_char;
        one["orientable"] = ind.diagram.orientable;
        one["hm"] = mc.value;
        induced.push_back(std::move(one));
    }
    rep["induced"] = std::move(induced);

    json hm;
    hm["value"] = cc.hm;
    hm["witness"]["pair"] = json::array(
        {pair_colours(cc.hm_pair_index)[0], pair_colours(cc.hm_pair_index)[1]});
    hm["witness"]["removed_prime"] = cc.hm_witness.removed_prime;
    hm["witness"]["removed_double"] = cc.hm_witness.removed_double;
    rep["hm"] = std::move(hm);

    rep["crosscheck"] = {{"gm", cc.gm}, {"hm", cc.hm}, {"equal", cc.equal}};
    if (crosscheck_equal) *crosscheck_equal = cc.equal;
    rep["h1"] = to_string(first_homology(g));

    auto t1 = std::chrono::steady_clock::now();
    rep["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return rep.dump();
}

}  // namespace gemc
