#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gemc {

/// Error for malformed GEM/HDG documents; carries the 1-based line number.
struct parse_error : std::runtime_error {
    parse_error(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
    int line;
};

/// Thrown when an enumeration exceeds its configured work budget.
struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A gem: a 4-regular multigraph on an even vertex set given by four
/// perfect matchings (one per colour in {0,1,2,3}). Vertices are dense
/// 1-indexed integers. Immutable after construction.
class Gem {
public:
    Gem() = default;
    /// match[c][v-1] is the colour-c partner of vertex v (1-indexed).
    /// Throws std::invalid_argument if a matching is not a fixed-point-free
    /// involution on 1..n.
    Gem(std::string name, int num_vertices, std::array<std::vector<int>, 4> match);

    const std::string& name() const { return name_; }
    int num_vertices() const { return n_; }
    /// Colour-c partner of v.
    int partner(int colour, int v) const { return match_[colour][v - 1]; }
    const std::array<std::vector<int>, 4>& matchings() const { return match_; }

    void set_name(std::string name) { name_ = std::move(name); }

private:
    std::string name_;
    int n_ = 0;
    std::array<std::vector<int>, 4> match_;
};

/// One residue class: the vertices of a connected component of the
/// subgraph on a colour subset. For 2-colour subsets `vertices` holds the
/// cyclic order around the bicoloured cycle; for 3-colour subsets it is
/// sorted ascending.
struct ResidueClass {
    std::vector<int> vertices;
};

struct ResiduePartition {
    std::vector<int> colours;               // size 2 or 3, sorted
    std::vector<ResidueClass> classes;      // ordered by smallest member vertex
    std::vector<int> class_of;              // class_of[v-1] = index into classes
};

struct ValidationReport {
    bool connected = false;
    bool involutions_ok = false;
    std::vector<std::string> messages;
    bool accepted() const { return connected && involutions_ok; }
};

/// Parses a GEM v1 document. Errors carry the offending line number.
Gem parse_gem(const std::string& text);
/// Canonical GEM v1 form; parse_gem(serialize_gem(g)) reproduces g exactly.
std::string serialize_gem(const Gem& g);

ValidationReport validate_gem(const Gem& g);

/// Connected components of the subgraph on the given colours (2 or 3 of
/// them). Throws std::invalid_argument for other sizes.
ResiduePartition residues(const Gem& g, const std::vector<int>& colours);

/// g_{i,j} for all six colour pairs, indexed by pair_table_index(i,j).
std::array<int, 6> residue_pair_counts(const Gem& g);
/// g_ĉ for c = 0..3 (component counts with colour c deleted).
std::array<int, 4> residue_hat_counts(const Gem& g);

int pair_table_index(int i, int j);  // {0,1}->0 {0,2}->1 {0,3}->2 {1,2}->3 {1,3}->4 {2,3}->5

bool is_bipartite(const Gem& g);
bool is_contracted(const Gem& g);
/// True iff every 3-coloured residue satisfies the sphere condition
/// (chi = v - 3v/2 + bicoloured-cycle-count = 2).
bool is_manifold_gem(const Gem& g);
/// chi of the labelled pseudocomplex the gem encodes:
/// sum g_hat - sum g_ij + |E| - |V|, with |E| = 2|V|. Zero for gems of
/// closed 3-manifolds.
int euler_char_K(const Gem& g);

/// Graph connected sum: deletes v1 from g1 and v2 from g2 and rejoins the
/// four hanging edge ends colourwise. Result has |V1|+|V2|-2 vertices.
Gem connected_sum(const Gem& g1, int v1, const Gem& g2, int v2);

/// Splits Delta_3 into the three unordered pairs of complementary colour
/// pairs. pair_colours(k) = {alpha,beta}, co_pair_colours(k) = complement.
std::array<int, 2> pair_colours(int pair_index);
std::array<int, 2> co_pair_colours(int pair_index);

}  // namespace gemc
