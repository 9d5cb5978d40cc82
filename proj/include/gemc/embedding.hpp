#pragma once

#include <array>
#include <vector>

#include "gemc/gem.hpp"

namespace gemc {

/// A gem edge identified by (colour, smaller endpoint); dense ids are
/// assigned per embedding via edge_index.
struct GemEdge {
    int colour;
    int a, b;  // a < b unless a == b is impossible (fixed-point-free)
};

/// A face of the regular embedding: one bicoloured residue of a mixed
/// colour pair, with its boundary walk.
struct EmbeddingFace {
    std::array<int, 2> colours;      // the mixed pair
    std::vector<int> vertices;       // cyclic boundary order
    std::vector<int> edges;          // edge ids, cyclic, |edges| == |vertices|
};

/// Regular embedding of a gem into the closed surface determined by one
/// of the three colour-pair splittings. Faces are the bicoloured residues
/// of the four mixed pairs in the cyclic colour order
/// (alpha, alpha', beta, beta'); the curve families are the
/// {alpha,beta}- and {alpha',beta'}-residues.
struct RegularEmbedding {
    const Gem* gem = nullptr;
    int pair_index = 0;        // 0: {0,1}|{2,3}, 1: {0,2}|{1,3}, 2: {0,3}|{1,2}
    int alpha = 0, beta = 1, alphap = 2, betap = 3;

    std::vector<GemEdge> edges;            // dense edge ids, all 2n gem edges
    std::vector<EmbeddingFace> faces;
    std::vector<std::array<int, 2>> edge_faces;  // the two faces along each edge

    // Curve families: residues of {alpha,beta} (ab) and {alpha',beta'} (apbp).
    ResiduePartition ab_curves;
    ResiduePartition apbp_curves;
    std::vector<int> edge_curve;     // containing curve id within its family
    std::vector<bool> edge_is_ab;    // true: ab family, false: apbp family

    int euler_char = 0;
    bool orientable = false;
    int rho = 0;  // (2 - euler_char) / 2; crosscap number is 2*rho when non-orientable
};

RegularEmbedding regular_embedding(const Gem& g, int pair_index);

/// A connected component of the surface minus the non-kept curves:
/// faces merged across edges whose containing curve is kept.
struct Region {
    std::vector<int> faces;           // sorted face ids
    std::vector<int> vertex_closure;  // sorted vertices incident to any member face
};

/// kept_ab / kept_apbp are curve ids within the respective families; kept
/// curves do not separate (their edges merge adjacent faces), all other
/// curves are cut.
std::vector<Region> regions(const RegularEmbedding& emb, const std::vector<int>& kept_ab,
                            const std::vector<int>& kept_apbp);

}  // namespace gemc
