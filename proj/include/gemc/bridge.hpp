#pragma once

#include <string>
#include <vector>

#include "gemc/diagram.hpp"
#include "gemc/embedding.hpp"
#include "gemc/gem.hpp"
#include "gemc/gm.hpp"

namespace gemc {

/// The generalized Heegaard diagram induced by a gem and a colour-pair
/// splitting: crossings are the gem vertices, the prime system is the
/// {alpha,beta}-residue family and the double-prime system the complement
/// family, drawn on the regular embedding surface.
struct InducedDiagram {
    int pair_index = 0;
    AnalyzedDiagram diagram;
    // Curve id maps: prime curve i is residue prime_residue[i] of the ab
    // family (identity by construction, kept for clarity), same for the
    // double-prime family.
    int prime_count = 0;
    int double_count = 0;
};

InducedDiagram induce_diagram(const Gem& g, int pair_index);

struct CrossCheckReport {
    int gm = 0;
    int hm = 0;
    bool equal = false;
    GmWitness gem_witness;
    int hm_pair_index = 0;
    ModifiedComplexity hm_witness;
};

/// Computes GM-complexity by the gem-side region algorithm and modified
/// Heegaard complexity as the minimum over the three induced diagrams by
/// the map-side reduction algorithm, and compares. The two paths share no
/// face machinery; a mismatch signals an implementation bug.
CrossCheckReport cross_check(const Gem& g, const GmOptions& opt = {});

struct H1Fingerprint {
    int free_rank = 0;
    std::vector<long long> torsion;  // invariant factors > 1, each dividing the next

    bool operator==(const H1Fingerprint&) const = default;
};

/// Formats like "0", "Z", "Z_2", "Z^2+Z_2+Z_4".
std::string to_string(const H1Fingerprint& f);
/// Inverse of to_string; throws std::invalid_argument on bad syntax.
H1Fingerprint parse_fingerprint(const std::string& s);

/// First homology from an induced reduced diagram: generators are the
/// reduced prime curves, one relation per reduced double-prime curve read
/// from its transported signed crossings, abelianized via integer
/// diagonalization. Invariant across the three colour pairs.
H1Fingerprint first_homology(const Gem& g);

/// Smith-style invariant factors of an integer matrix (diagonal, each
/// dividing the next, zeros last); exposed for the test oracle.
std::vector<long long> smith_invariant_factors(std::vector<std::vector<long long>> m);

}  // namespace gemc
