#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gemc/diagram.hpp"
#include "helpers.hpp"

using namespace gemc;

namespace {

// One prime and one double-prime curve crossing once: the standard genus-1
// diagram (of S^3).
SurfaceDiagram genus1_diagram() {
    SurfaceDiagram d;
    d.name = "genus1";
    d.curves = {{"p", CurveSystem::Prime}, {"q", CurveSystem::DoublePrime}};
    d.verts.resize(1);
    d.edges.resize(2);
    d.edges[0] = {{0, 0}, {0, 2}, 1, 0};  // p loop
    d.edges[1] = {{0, 0}, {1, 3}, 1, 1};  // q loop
    d.verts[0].rot = {0, 2, 1, 3};
    return d;
}

// Two parallel prime curves on the torus and one double-prime curve
// crossing each once.
SurfaceDiagram two_parallel_diagram() {
    SurfaceDiagram d;
    d.name = "torus_two_parallel";
    d.curves = {{"a", CurveSystem::Prime},
                {"b", CurveSystem::Prime},
                {"c", CurveSystem::DoublePrime}};
    d.verts.resize(2);
    d.edges.resize(4);
    d.edges[0] = {{0, 0}, {0, 2}, 1, 0};  // a loop at v1
    d.edges[1] = {{1, 1}, {0, 2}, 1, 1};  // b loop at v2
    d.edges[2] = {{0, 1}, {1, 3}, 1, 2};  // c: v1 -> v2
    d.edges[3] = {{1, 0}, {1, 3}, 1, 2};  // c: v2 -> v1
    d.verts[0].rot = {0, 4, 1, 7};
    d.verts[1].rot = {2, 6, 3, 5};
    return d;
}

// A crossing-free double-prime circle (marker plus loop) on the sphere.
SurfaceDiagram marker_circle(int sign) {
    SurfaceDiagram d;
    d.name = "circle";
    d.curves = {{"m", CurveSystem::DoublePrime}};
    d.verts.resize(1);
    d.edges.resize(1);
    d.edges[0] = {{0, 0}, {0, 1}, sign, 0};
    d.verts[0].rot = {0, 1};
    return d;
}

}  // namespace

TEST_CASE("genus-1 diagram: valid, torus, orientable") {
    AnalyzedDiagram a = analyze_diagram(genus1_diagram());
    REQUIRE(a.valid);
    CHECK(a.euler_char == 0);
    CHECK(a.orientable);
    CHECK(a.faces.size() == 1);
    DiagramView v(a);
    CHECK(singular_count(v) == 1);
}

TEST_CASE("two prime curves crossing is invalid") {
    SurfaceDiagram d = genus1_diagram();
    d.curves[1].system = CurveSystem::Prime;
    DiagramReport rep = validate_diagram(d);
    CHECK_FALSE(rep.valid);
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("same system") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("one-sided curve is invalid") {
    DiagramReport rep = validate_diagram(marker_circle(-1));
    CHECK_FALSE(rep.valid);
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("one-sided") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("marker circle on the sphere") {
    AnalyzedDiagram a = analyze_diagram(marker_circle(1));
    REQUIRE(a.valid);
    CHECK(a.euler_char == 2);
    CHECK(a.orientable);
    DiagramView v(a);
    // empty prime system on the sphere: one component, capped chi 2
    CutResult cut = cut_components(v, CurveSystem::Prime);
    REQUIRE(cut.components.size() == 1);
    CHECK(cut.components[0].capped_euler_char == 2);
    CHECK(cut.components[0].boundary_circles == 0);
    SystemClass sc = classify_system(v, CurveSystem::Prime);
    CHECK(sc.proper);
    CHECK(sc.reduced);
    // the circle itself: two disk pieces
    CutResult cut2 = cut_components(v, CurveSystem::DoublePrime);
    CHECK(cut2.components.size() == 2);
    for (const auto& c : cut2.components) {
        CHECK(c.capped_euler_char == 2);
        CHECK(c.boundary_circles == 1);
    }
}

TEST_CASE("cut along one essential curve on the torus") {
    AnalyzedDiagram a = analyze_diagram(genus1_diagram());
    REQUIRE(a.valid);
    DiagramView v(a);
    CutResult cut = cut_components(v, CurveSystem::Prime);
    REQUIRE(cut.components.size() == 1);
    CHECK(cut.components[0].capped_euler_char == 2);  // annulus caps to a sphere
    CHECK(cut.components[0].boundary_circles == 2);
    CHECK(cut.components[0].orientable);
    SystemClass sc = classify_system(v, CurveSystem::Prime);
    CHECK(sc.proper);
    CHECK(sc.reduced);
    DualGraph dg = dual_graph(v, CurveSystem::Prime);
    CHECK(dg.nodes == 1);
    REQUIRE(dg.edge_endpoints.size() == 1);
    CHECK(dg.edge_endpoints[0][0] == dg.edge_endpoints[0][1]);  // a loop
}

TEST_CASE("two parallel curves: cut, classes, duals, reductions") {
    AnalyzedDiagram a = analyze_diagram(two_parallel_diagram());
    REQUIRE(a.valid);
    CHECK(a.euler_char == 0);
    CHECK(a.orientable);
    DiagramView v(a);

    CutResult cut = cut_components(v, CurveSystem::Prime);
    REQUIRE(cut.components.size() == 2);
    for (const auto& c : cut.components) CHECK(c.capped_euler_char == 2);
    // chi bookkeeping: sum of (capped - boundary circles) recovers the torus
    int chi_sum = 0;
    for (const auto& c : cut.components) chi_sum += c.capped_euler_char - c.boundary_circles;
    CHECK(chi_sum == a.euler_char);

    SystemClass prime = classify_system(v, CurveSystem::Prime);
    CHECK(prime.proper);
    CHECK_FALSE(prime.reduced);  // two genus-0 pieces
    SystemClass dbl = classify_system(v, CurveSystem::DoublePrime);
    CHECK(dbl.proper);
    CHECK(dbl.reduced);

    DualGraph dg = dual_graph(v, CurveSystem::Prime);
    CHECK(dg.nodes == 2);
    REQUIRE(dg.edge_endpoints.size() == 2);
    CHECK(dg.edge_endpoints[0][0] != dg.edge_endpoints[0][1]);
    auto forests = admissible_forests(dg);
    REQUIRE(forests.size() == 2);  // one per parallel edge
    for (const auto& f : forests) {
        CHECK(f.size() == 1);
        TreeFormulaCheck tf = check_tree_formula(dg, f, a.euler_char);
        CHECK(tf.holds);
        CHECK_FALSE(tf.convention_mismatch);
    }

    auto reductions = reduce_all(v);
    REQUIRE(reductions.size() == 2);
    for (const auto& red : reductions) {
        CHECK(red.removed_prime.size() == 1);
        CHECK(red.removed_double.empty());
        CHECK(classify_system(red.view, CurveSystem::Prime).reduced);
        CHECK(classify_system(red.view, CurveSystem::DoublePrime).reduced);
        ReducedComplexity rc = modified_complexity_reduced(red.view);
        CHECK(rc.singular == 1);
        CHECK(rc.max_region_singulars == 1);
        CHECK(rc.value == 0);
    }
    CHECK(modified_complexity(v).value == 0);
}

TEST_CASE("already-reduced diagram reduces to itself") {
    AnalyzedDiagram a = analyze_diagram(genus1_diagram());
    DiagramView v(a);
    auto reductions = reduce_all(v);
    REQUIRE(reductions.size() == 1);
    CHECK(reductions[0].removed_prime.empty());
    CHECK(reductions[0].removed_double.empty());
    ReducedComplexity rc = modified_complexity_reduced(reductions[0].view);
    CHECK(rc.value == 0);  // one crossing, one region containing it
    CHECK(rc.singular == 1);
}

TEST_CASE("admissible forests per the three reduction rules") {
    // 1 node, several loops: only the empty forest
    DualGraph one;
    one.nodes = 1;
    one.node_capped_chi = {2};
    one.node_orientable = {true};
    one.edge_endpoints = {{0, 0}, {0, 0}, {0, 0}};
    one.edge_curve = {0, 1, 2};
    auto f1 = admissible_forests(one);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].empty());

    // 2 genus-0 nodes, 2 parallel edges: the two maximal trees
    DualGraph two;
    two.nodes = 2;
    two.node_capped_chi = {2, 2};
    two.node_orientable = {true, true};
    two.edge_endpoints = {{0, 1}, {0, 1}};
    two.edge_curve = {0, 1};
    CHECK(admissible_forests(two).size() == 2);

    // one genus-0 node joined to a positive-genus node by two edges:
    // admissible forests are exactly the single connecting edges
    DualGraph plus;
    plus.nodes = 2;
    plus.node_capped_chi = {2, 0};
    plus.node_orientable = {true, true};
    plus.edge_endpoints = {{0, 1}, {0, 1}};
    plus.edge_curve = {0, 1};
    auto f3 = admissible_forests(plus);
    REQUIRE(f3.size() == 2);
    for (const auto& f : f3) CHECK(f.size() == 1);
    // tree formula: chi(Sigma) = (2-2) + (0-2) = -2, so g=2, h=1, g_1=1
    for (const auto& f : f3) {
        TreeFormulaCheck tf = check_tree_formula(plus, f, -2);
        CHECK(tf.holds);
    }

    // all nodes positive genus: only the empty forest (isolated trees)
    DualGraph allplus;
    allplus.nodes = 2;
    allplus.node_capped_chi = {0, -2};
    allplus.node_orientable = {true, true};
    allplus.edge_endpoints = {{0, 1}};
    allplus.edge_curve = {0};
    auto f4 = admissible_forests(allplus);
    REQUIRE(f4.size() == 1);
    CHECK(f4[0].empty());

    // odd crosscap component: convention mismatch flagged
    DualGraph oddcap;
    oddcap.nodes = 1;
    oddcap.node_capped_chi = {1};
    oddcap.node_orientable = {false};
    oddcap.edge_endpoints = {};
    oddcap.edge_curve = {};
    TreeFormulaCheck tf = check_tree_formula(oddcap, {}, 0);
    CHECK(tf.convention_mismatch);
}

TEST_CASE("proper reduced system: formula with empty forest") {
    // 1 genus-0 node with g loops on a genus-g surface: 0 = g - g
    for (int g = 1; g <= 3; ++g) {
        DualGraph dg;
        dg.nodes = 1;
        dg.node_capped_chi = {2};
        dg.node_orientable = {true};
        for (int i = 0; i < g; ++i) {
            dg.edge_endpoints.push_back({0, 0});
            dg.edge_curve.push_back(i);
        }
        TreeFormulaCheck tf = check_tree_formula(dg, {}, 2 - 2 * g);
        CHECK(tf.holds);
    }
}

TEST_CASE("hdg round trip") {
    for (SurfaceDiagram d : {genus1_diagram(), two_parallel_diagram(), marker_circle(1)}) {
        std::string doc = serialize_hdg(d);
        SurfaceDiagram d2 = parse_hdg(doc);
        CHECK(serialize_hdg(d2) == doc);
        AnalyzedDiagram a1 = analyze_diagram(d);
        AnalyzedDiagram a2 = analyze_diagram(std::move(d2));
        CHECK(a1.valid == a2.valid);
        CHECK(a1.euler_char == a2.euler_char);
        CHECK(a1.orientable == a2.orientable);
    }
}

TEST_CASE("hdg parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_hdg("hdg x\ncrossings 0\n"), parse_error);
    CHECK_THROWS_AS(parse_hdg("nope\n"), parse_error);
    // curve without a system line
    SurfaceDiagram d = marker_circle(1);
    std::string doc = serialize_hdg(d);
    doc = doc.substr(0, doc.find("curve m:"));
    CHECK_THROWS_WITH_AS(parse_hdg(doc), doctest::Contains("lacks a system"), parse_error);
}

TEST_CASE("disconnected standalone map is rejected") {
    // two marker circles with no connection
    SurfaceDiagram d;
    d.name = "two_circles";
    d.curves = {{"m1", CurveSystem::Prime}, {"m2", CurveSystem::DoublePrime}};
    d.verts.resize(2);
    d.edges.resize(2);
    d.edges[0] = {{0, 0}, {0, 1}, 1, 0};
    d.edges[1] = {{1, 1}, {0, 1}, 1, 1};
    d.verts[0].rot = {0, 1};
    d.verts[1].rot = {2, 3};
    DiagramReport rep = validate_diagram(d);
    CHECK_FALSE(rep.valid);
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("disconnected") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("smoothing: materialized reduction of the two-parallel diagram") {
    AnalyzedDiagram a = analyze_diagram(two_parallel_diagram());
    DiagramView v(a);
    auto reductions = reduce_all(v);
    REQUIRE(reductions.size() == 2);
    for (const auto& red : reductions) {
        SurfaceDiagram smoothed = materialize_view(red.view, "reduced");
        AnalyzedDiagram sa = analyze_diagram(std::move(smoothed));
        REQUIRE(sa.valid);
        // smoothing preserves the surface: still the torus, orientable
        CHECK(sa.euler_char == 0);
        CHECK(sa.orientable == a.orientable);
        CHECK(sa.d.verts.size() == 1);  // one surviving crossing
        CHECK(sa.d.curves.size() == 2);
        DiagramView sv(sa);
        CHECK(singular_count(sv) == 1);
        CHECK(modified_complexity(sv).value == 0);
    }
}

TEST_CASE("region singular counts never exceed the singular total") {
    AnalyzedDiagram a = analyze_diagram(two_parallel_diagram());
    DiagramView v(a);
    int total = singular_count(v);
    for (const auto& reg : view_regions(v)) CHECK(reg.singular_in_closure <= total);
}

TEST_CASE("generalized diagram wrapper checks prime properness") {
    GeneralizedHeegaardDiagram h = make_generalized(genus1_diagram());
    CHECK(h.diagram.valid);
    CHECK(h.prime_proper);
    GeneralizedHeegaardDiagram h2 = make_generalized(two_parallel_diagram());
    CHECK(h2.prime_proper);
}

namespace {

// Grid on the flat torus: two parallel prime circles, two parallel
// double-prime circles, four crossings. Both systems non-reduced.
SurfaceDiagram torus_grid_diagram() {
    SurfaceDiagram d;
    d.name = "torus_grid";
    d.curves = {{"a", CurveSystem::Prime},
                {"b", CurveSystem::Prime},
                {"c", CurveSystem::DoublePrime},
                {"d", CurveSystem::DoublePrime}};
    d.verts.resize(4);
    d.edges.resize(8);
    d.edges[0] = {{0, 1}, {0, 2}, 1, 0};  // a: v1 east -> v2 west
    d.edges[1] = {{1, 0}, {0, 2}, 1, 0};  // a: v2 east -> v1 west
    d.edges[2] = {{2, 3}, {0, 2}, 1, 1};  // b: v3 -> v4
    d.edges[3] = {{3, 2}, {0, 2}, 1, 1};  // b: v4 -> v3
    d.edges[4] = {{0, 2}, {1, 3}, 1, 2};  // c: v1 north -> v3 south
    d.edges[5] = {{2, 0}, {1, 3}, 1, 2};  // c: v3 -> v1
    d.edges[6] = {{1, 3}, {1, 3}, 1, 3};  // d: v2 -> v4
    d.edges[7] = {{3, 1}, {1, 3}, 1, 3};  // d: v4 -> v2
    d.verts[0].rot = {0, 8, 3, 11};
    d.verts[1].rot = {2, 12, 1, 15};
    d.verts[2].rot = {4, 10, 7, 9};
    d.verts[3].rot = {6, 14, 5, 13};
    return d;
}

}  // namespace

TEST_CASE("grid diagram: both systems non-reduced, four reductions, hm zero") {
    AnalyzedDiagram a = analyze_diagram(torus_grid_diagram());
    REQUIRE(a.valid);
    CHECK(a.euler_char == 0);
    CHECK(a.faces.size() == 4);
    DiagramView v(a);
    CHECK(singular_count(v) == 4);
    CHECK_FALSE(classify_system(v, CurveSystem::Prime).reduced);
    CHECK_FALSE(classify_system(v, CurveSystem::DoublePrime).reduced);
    CHECK(classify_system(v, CurveSystem::Prime).proper);

    auto reductions = reduce_all(v);
    REQUIRE(reductions.size() == 4);
    for (const auto& red : reductions) {
        CHECK(red.removed_prime.size() == 1);
        CHECK(red.removed_double.size() == 1);
        ReducedComplexity rc = modified_complexity_reduced(red.view);
        CHECK(rc.singular == 1);
        CHECK(rc.value == 0);
    }
    CHECK(modified_complexity(v).value == 0);
    // reduced diagrams cannot be computed before reducing
    CHECK_THROWS_AS(modified_complexity_reduced(v), std::invalid_argument);
}
