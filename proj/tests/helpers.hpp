#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "gemc/gem.hpp"

namespace testutil {

// The 2-vertex gem of the 3-sphere: all four colours pair (1 2).
inline gemc::Gem s3_gem() {
    std::array<std::vector<int>, 4> m;
    for (int c = 0; c < 4; ++c) m[c] = {2, 1};
    return gemc::Gem("s3_order2", 2, m);
}

// 4-vertex non-contracted gem of S^3 (a 0-coloured dipole inserted into the
// 2-vertex gem): colour 0 pairs (1 2)(3 4), colours 1..3 pair (1 3)(2 4).
inline gemc::Gem dipole4_gem() {
    std::array<std::vector<int>, 4> m;
    m[0] = {2, 1, 4, 3};
    for (int c = 1; c < 4; ++c) m[c] = {3, 4, 1, 2};
    return gemc::Gem("dipole4", 4, m);
}

// Disjoint union of two copies of the 2-vertex gem; fails connectivity.
inline gemc::Gem disconnected_gem() {
    std::array<std::vector<int>, 4> m;
    for (int c = 0; c < 4; ++c) m[c] = {2, 1, 4, 3};
    return gemc::Gem("disconnected", 4, m);
}

// A connected 4-coloured graph whose hat-3 residue is a torus gem (the
// properly 3-edge-coloured K_{3,3}); not a manifold gem.
inline gemc::Gem torus_residue_gem() {
    int n = 6;
    std::array<std::vector<int>, 4> m;
    // vertices 1..3 are one side, 4..6 the other; m_c(a_j) = b_{j+c mod 3}
    for (int c = 0; c < 3; ++c) {
        m[c].assign(n, 0);
        for (int j = 0; j < 3; ++j) {
            int a = j + 1;
            int b = 4 + (j + c) % 3;
            m[c][a - 1] = b;
            m[c][b - 1] = a;
        }
    }
    m[3] = m[0];
    return gemc::Gem("torus_residue", n, m);
}

// Connected sum along a colour-c edge pair: cuts the edge through (v1,*) in
// g1 and (v2,*) in g2 and cross-joins. Produces a connected, NON-contracted
// gem of the connected sum (vertex splice plus a 1-dipole).
inline gemc::Gem fuse_along_edge(const gemc::Gem& g1, int v1, const gemc::Gem& g2, int v2,
                                 int colour) {
    int n1 = g1.num_vertices(), n2 = g2.num_vertices();
    int w1 = g1.partner(colour, v1);
    int w2 = g2.partner(colour, v2);
    std::array<std::vector<int>, 4> m;
    for (int c = 0; c < 4; ++c) {
        m[c].assign(n1 + n2, 0);
        for (int v = 1; v <= n1; ++v) m[c][v - 1] = g1.partner(c, v);
        for (int v = 1; v <= n2; ++v) m[c][n1 + v - 1] = n1 + g2.partner(c, v);
    }
    m[colour][v1 - 1] = n1 + v2;
    m[colour][n1 + v2 - 1] = v1;
    m[colour][w1 - 1] = n1 + w2;
    m[colour][n1 + w2 - 1] = w1;
    return gemc::Gem(g1.name() + "~" + g2.name(), n1 + n2, m);
}

// Uniform random fixed-point-free involution on 1..n.
inline std::vector<int> random_involution(int n, std::mt19937& rng) {
    std::vector<int> verts(n);
    for (int i = 0; i < n; ++i) verts[i] = i + 1;
    std::shuffle(verts.begin(), verts.end(), rng);
    std::vector<int> m(n, 0);
    for (int i = 0; i < n; i += 2) {
        m[verts[i] - 1] = verts[i + 1];
        m[verts[i + 1] - 1] = verts[i];
    }
    return m;
}

// Random 4-coloured graph (any involutions); may be disconnected or
// non-manifold. Used for round-trip properties.
inline gemc::Gem random_gem(int n, std::mt19937& rng) {
    std::array<std::vector<int>, 4> m;
    for (int c = 0; c < 4; ++c) m[c] = random_involution(n, rng);
    return gemc::Gem("random", n, m);
}

inline std::string fixture_path(const std::string& name) {
    return std::string(GEMC_FIXTURE_DIR) + "/" + name;
}

}  // namespace testutil

#include "gemc/census.hpp"

namespace testutil {

// Shared census caches; enumeration is deterministic so reuse is safe.
inline const std::vector<gemc::CatalogueEntry>& census_upto(int max_vertices) {
    static std::map<int, std::vector<gemc::CatalogueEntry>> cache;
    auto it = cache.find(max_vertices);
    if (it == cache.end()) {
        gemc::CensusOptions opt;
        opt.max_vertices = max_vertices;
        it = cache.emplace(max_vertices, gemc::census(opt)).first;
    }
    return it->second;
}

// First catalogue entry with the given fingerprint and orientability.
inline const gemc::Gem* find_by_h1(const std::vector<gemc::CatalogueEntry>& cat,
                                   const std::string& h1, bool bipartite) {
    for (const auto& e : cat)
        if (e.h1 == h1 && e.bipartite == bipartite) return &e.gem;
    return nullptr;
}

}  // namespace testutil
