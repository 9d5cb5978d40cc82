#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gemc/embedding.hpp"
#include "gemc/gem.hpp"

namespace gemc {

/// The 1-dimensional subcomplex attached to a colour pair {i,j}: nodes are
/// the i-hat and j-hat residues, edges are the {i',j'}-residues (each
/// bicoloured residue lies in exactly one component of each 3-coloured
/// subgraph, which gives the two endpoints).
struct SubcomplexGraph {
    int nodes = 0;                      // i-hat classes first, then j-hat classes
    int i_hat_count = 0;
    std::vector<std::array<int, 2>> edge_endpoints;  // per {i',j'}-residue id
};

SubcomplexGraph subcomplex_graph(const Gem& g, const std::vector<int>& colours);

struct ForestChoice {
    std::vector<int> curves;  // residue ids forming the removed collection
};

/// All maximal spanning forests of the subcomplex graph of the
/// complementary pair, emitted as collections of {alpha,beta}-residue ids.
/// For crystallizations this is one singleton per {alpha,beta}-residue.
/// Throws budget_exceeded past `cap` forests.
std::vector<ForestChoice> forest_choices(const Gem& g, int pair_index,
                                         std::int64_t cap = 1000000);

/// Enumerates maximal spanning forests (one spanning tree per connected
/// component) of a multigraph given by edge endpoint pairs. Loops are never
/// part of a forest. Deterministic order; used by forest_choices and
/// directly testable against brute-force counts.
std::vector<std::vector<int>> spanning_forests(int nodes,
                                               const std::vector<std::array<int, 2>>& edges,
                                               std::int64_t cap);

struct GmWitness {
    int pair_index = 0;
    std::vector<int> kept_ab;    // removed from the cut x-system, i.e. kept on the surface
    std::vector<int> kept_apbp;
    Region region;
    int value = 0;
};

struct GmOptions {
    std::int64_t forest_cap = 1000000;
    std::vector<int> pair_indices = {0, 1, 2};
};

/// GM-complexity by exhaustive minimisation over colour-pair splittings,
/// forest choices for both families, and complement regions.
GmWitness gm_value(const Gem& g, const GmOptions& opt = {});

/// The crystallization shortcut: both removed collections are single
/// residues. Precondition: contracted gem. Agrees with gm_value there.
GmWitness gm_value_crystallization(const Gem& g, const GmOptions& opt = {});

/// Minimum gm value over a set of gems (optionally pre-filtered by the
/// caller); an upper bound for the extended GM-complexity of the manifold.
int catalogue_min(const std::vector<Gem>& gems, const GmOptions& opt = {});

}  // namespace gemc
