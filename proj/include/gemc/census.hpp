#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gemc/gem.hpp"

namespace gemc {

struct CatalogueEntry {
    Gem gem;
    std::array<int, 6> g_pairs{};
    std::array<int, 4> g_hats{};
    bool bipartite = false;
    bool contracted = true;
    std::string h1;
};

struct CensusOptions {
    int max_vertices = 8;            // even, at most 12
    std::int64_t budget = 2'000'000'000;  // enumeration work units
    bool modulo_colours = false;     // also quotient by colour permutations
    bool with_h1 = true;
};

/// Exhaustively enumerates connected crystallizations of closed 3-manifolds
/// (contracted manifold gems) with 2..max_vertices vertices, up to
/// colour-preserving isomorphism. Deterministic output order.
/// Throws budget_exceeded when the work cap is hit.
std::vector<CatalogueEntry> census(const CensusOptions& opt);

/// Lexicographic canonical serialization of the matchings under vertex
/// relabeling (and optionally colour permutation); equal keys = isomorphic.
std::vector<int> canonical_key(const Gem& g, bool modulo_colours);

}  // namespace gemc
