#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gemc/gem.hpp"

namespace gemc {

enum class CurveSystem { Prime, DoublePrime };

/// Raw data of a combinatorial map on a closed surface carrying two
/// transversal curve systems. Vertices are 4-valent crossings or 2-valent
/// markers; rotations list half-edge ids (2*edge + end) in cyclic order;
/// each edge carries a sign (+1/-1 local-orientation agreement) and belongs
/// to exactly one curve.
struct SurfaceDiagram {
    struct Vertex {
        std::vector<int> rot;  // half-edge ids, size 4 (crossing) or 2 (marker)
    };
    struct Edge {
        std::array<int, 2> vert;  // 0-based vertex ids per end
        std::array<int, 2> slot;  // rotation position per end
        int sign = 1;
        int curve = -1;
    };
    struct Curve {
        std::string name;
        CurveSystem system = CurveSystem::Prime;
    };

    std::string name;
    std::vector<Vertex> verts;
    std::vector<Edge> edges;
    std::vector<Curve> curves;
};

SurfaceDiagram parse_hdg(const std::string& text);
std::string serialize_hdg(const SurfaceDiagram& d);

/// Everything derived from the raw map: face tracing over the signed
/// rotation system, curve walks, surface invariants, and the validation
/// verdict. Immutable once built.
struct AnalyzedDiagram {
    SurfaceDiagram d;

    bool valid = false;
    std::vector<std::string> violations;

    bool connected = false;
    int euler_char = 0;
    bool orientable = false;

    // One face per kept tracing orbit. vertices lists the boundary walk.
    struct Face {
        std::vector<int> vertices;
        std::vector<int> edges;
    };
    std::vector<Face> faces;

    // The two sides of each edge as visited by the kept face orbits;
    // corner[k] is the corner id used at end k's vertex (corner c at a
    // vertex spans rotation positions c..c+1).
    struct Traversal {
        int face = -1;
        std::array<int, 2> corner = {-1, -1};
    };
    std::vector<std::array<Traversal, 2>> edge_traversals;
    std::vector<std::vector<int>> corner_face;  // [vertex][corner] -> face

    // Curve walks: cyclic edge sequence with departure ends.
    struct CurveWalk {
        std::vector<int> edge_seq;
        std::vector<int> dep_end_seq;  // half-edge id the step departs from
        std::vector<int> vertex_seq;   // source vertex per step
    };
    std::vector<CurveWalk> walks;

    // Per 4-valent vertex: curve through slots {0,2} and through {1,3};
    // per marker: the single curve in slot 0 of the pair.
    std::vector<std::array<int, 2>> vertex_curves;
};

/// Builds the analysis; never throws on semantic violations (they are
/// reported), but throws parse_error-style std::invalid_argument on
/// structurally impossible data (bad ids).
AnalyzedDiagram analyze_diagram(SurfaceDiagram d);

struct DiagramReport {
    bool valid = false;
    std::vector<std::string> violations;
    int euler_char = 0;
    bool orientable = false;
};

DiagramReport validate_diagram(const SurfaceDiagram& d);

/// A diagram with a subset of curves removed. Removal never rebuilds the
/// map: the parent map pins the ambient surface while the live curves form
/// the (possibly reduced) diagram. removed[c] flags curve c.
struct DiagramView {
    const AnalyzedDiagram* ad = nullptr;
    std::vector<char> removed;

    explicit DiagramView(const AnalyzedDiagram& a)
        : ad(&a), removed(a.d.curves.size(), 0) {}
    bool live(int curve) const { return !removed[curve]; }
};

/// A connected component of the surface cut along one system's curves,
/// with the Euler characteristic after capping each boundary circle.
struct CutComponent {
    std::vector<int> faces;
    int capped_euler_char = 0;
    int boundary_circles = 0;
    bool orientable = false;
};

struct CutResult {
    std::vector<CutComponent> components;
    std::vector<int> piece_of_face;
    std::vector<int> cut_curves;                    // live curves of the system
    std::vector<std::array<int, 2>> curve_side_piece;  // per cut curve
};

CutResult cut_components(const DiagramView& view, CurveSystem system);

struct SystemClass {
    bool proper = false;
    bool reduced = false;
};

SystemClass classify_system(const DiagramView& view, CurveSystem system);

/// A surface diagram whose prime system is proper, i.e. cutting along the
/// prime curves leaves only genus-zero pieces; only then does the diagram
/// determine a closed 3-manifold.
struct GeneralizedHeegaardDiagram {
    AnalyzedDiagram diagram;
    bool prime_proper = false;
};

GeneralizedHeegaardDiagram make_generalized(SurfaceDiagram d);

/// Dual graph of a curve system: nodes are cut components, edges are the
/// system's curves (loops and multi-edges arise naturally).
struct DualGraph {
    int nodes = 0;
    std::vector<int> node_capped_chi;
    std::vector<bool> node_orientable;
    std::vector<std::array<int, 2>> edge_endpoints;
    std::vector<int> edge_curve;  // curve id in the diagram
};

DualGraph dual_graph(const DiagramView& view, CurveSystem system);

/// All admissible edge subsets per the reduction rules: spanning trees when
/// every node has genus zero, otherwise forests spanning all nodes whose
/// components each contain exactly one positive-genus node.
std::vector<std::vector<int>> admissible_forests(const DualGraph& dg);

struct TreeFormulaCheck {
    bool holds = false;
    bool convention_mismatch = false;  // odd crosscap numbers have no integer genus
};

/// Checks |E(T)| = |C| - g - max{0,h-1} + sum g_j against the cut data of
/// the full system, g being the genus of the ambient surface.
TreeFormulaCheck check_tree_formula(const DualGraph& dg, const std::vector<int>& forest,
                                    int surface_euler_char);

/// One region of the surface minus the live curves.
struct DiagramRegion {
    std::vector<int> faces;
    std::vector<int> vertices;         // closure vertices
    int singular_in_closure = 0;
};

std::vector<DiagramRegion> view_regions(const DiagramView& view);

/// Number of 4-valent vertices whose both curves are live.
int singular_count(const DiagramView& view);

struct Reduction {
    std::vector<int> removed_prime;
    std::vector<int> removed_double;
    DiagramView view;
};

/// Every admissible-forest pair, applied. Ordered by (prime forest index,
/// double forest index). Each output has both systems reduced.
std::vector<Reduction> reduce_all(const DiagramView& view);

struct ReducedComplexity {
    int value = 0;
    int singular = 0;
    int max_region_singulars = 0;
};

/// c~(H') = c(H') - max n(R). Precondition: both systems reduced.
ReducedComplexity modified_complexity_reduced(const DiagramView& view);

struct ModifiedComplexity {
    int value = 0;
    int reduction_index = -1;
    std::vector<int> removed_prime;
    std::vector<int> removed_double;
};

/// c~(H) = min over reduce_all.
ModifiedComplexity modified_complexity(const DiagramView& view);

/// The smoothed standalone map of the live curves: removed curves deleted,
/// 2-valent remnants absorbed into arcs, one marker per crossing-free
/// circle. Useful for serialization; the result may be disconnected.
SurfaceDiagram materialize_view(const DiagramView& view, const std::string& name);

}  // namespace gemc
