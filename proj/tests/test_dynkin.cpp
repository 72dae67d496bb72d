#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "endoscopy/dynkin.hpp"

using namespace endo;

namespace {

const DiagramEdge* find_edge(const Diagram& d, const std::string& a, const std::string& b) {
    long ia = -1, ib = -1;
    for (long i = 0; i < (long)d.nodes.size(); ++i) {
        if (d.nodes[i].label == a) ia = i;
        if (d.nodes[i].label == b) ib = i;
    }
    if (ia < 0 || ib < 0) return nullptr;
    for (const auto& e : d.edges)
        if ((e.a == ia && e.b == ib) || (e.a == ib && e.b == ia)) return &e;
    return nullptr;
}

// bond with sign: positive toward the second label, negative toward the first
int directed_bond(const Diagram& d, const std::string& a, const std::string& b) {
    const DiagramEdge* e = find_edge(d, a, b);
    REQUIRE(e != nullptr);
    if (e->arrow == -1) return e->bond;
    bool toward_b = (d.nodes[e->arrow == 0 ? e->a : e->b].label == b);
    return toward_b ? e->bond : -e->bond;
}

} // namespace

TEST_CASE("twisted extended diagram of the odd projective series") {
    Diagram d = extended_diagram(standard_twist(Family::PGL, 5));
    REQUIRE(d.nodes.size() == 3);
    CHECK(d.nodes[0].label == "x");
    CHECK(d.nodes[0].extra);
    CHECK(d.nodes[0].vec == IVec{-2, 0});
    CHECK(d.nodes[1].vec == IVec{1, -1});
    CHECK(d.nodes[2].vec == IVec{0, 1});
    REQUIRE(d.edges.size() == 2);
    CHECK(directed_bond(d, "x", "a1") == 2);   // arrow away from the added node
    CHECK(directed_bond(d, "a1", "a2") == 2);

    Diagram d1 = extended_diagram(standard_twist(Family::PGL, 3));
    REQUIRE(d1.nodes.size() == 2);
    CHECK(d1.nodes[0].vec == IVec{-2});
    CHECK(d1.nodes[1].vec == IVec{1});
    REQUIRE(d1.edges.size() == 1);
    CHECK(directed_bond(d1, "x", "a1") == 4);  // quadruple bond in rank one
}

TEST_CASE("twisted extended diagram of the even linear series") {
    Diagram d = extended_diagram(standard_twist(Family::GLxGm, 6));
    REQUIRE(d.nodes.size() == 4);
    CHECK(d.nodes[0].vec == IVec{-1, -1, 0, 0});
    CHECK(d.nodes[1].vec == IVec{1, -1, 0, 0});
    CHECK(d.nodes[2].vec == IVec{0, 1, -1, 0});
    CHECK(d.nodes[3].vec == IVec{0, 0, 2, 0});
    REQUIRE(d.edges.size() == 3);
    CHECK(directed_bond(d, "x", "a2") == 1);   // both end nodes hang off a2
    CHECK(directed_bond(d, "a1", "a2") == 1);
    CHECK(directed_bond(d, "a2", "a3") == -2); // arrow toward a2
    CHECK(find_edge(d, "x", "a1") == nullptr);
}

TEST_CASE("twisted extended diagram of the even orthogonal series") {
    Diagram d = extended_diagram(standard_twist(Family::SO_even, 8));
    REQUIRE(d.nodes.size() == 4);
    CHECK(d.nodes[0].vec == IVec{-1, 0, 0});
    REQUIRE(d.edges.size() == 3);
    CHECK(directed_bond(d, "x", "a1") == -2);  // arrow toward the short added node
    CHECK(directed_bond(d, "a1", "a2") == 1);
    CHECK(directed_bond(d, "a2", "a3") == 2);
}

TEST_CASE("affine diagrams of the untwisted groups") {
    Diagram a5 = extended_diagram(make_twist(builtin_datum(Family::GL, 6),
                                             identity_involution(builtin_datum(Family::GL, 6))));
    CHECK(a5.nodes.size() == 6);
    CHECK(a5.edges.size() == 6);  // cycle
    for (const auto& e : a5.edges) CHECK(e.bond == 1);

    Diagram c2 = extended_diagram(make_twist(builtin_datum(Family::Sp, 4),
                                             identity_involution(builtin_datum(Family::Sp, 4))));
    REQUIRE(c2.nodes.size() == 3);
    CHECK(directed_bond(c2, "x", "a1") == 2);
    CHECK(directed_bond(c2, "a2", "a1") == 2);

    Diagram b3 = extended_diagram(make_twist(builtin_datum(Family::SO_odd, 7),
                                             identity_involution(builtin_datum(Family::SO_odd, 7))));
    REQUIRE(b3.nodes.size() == 4);
    CHECK(b3.edges.size() == 3);
    CHECK(directed_bond(b3, "x", "a2") == 1);
    CHECK(directed_bond(b3, "a2", "a3") == 2);
    CHECK(find_edge(b3, "x", "a1") == nullptr);
}

TEST_CASE("no extended diagram without a recorded folding chart") {
    RootDatum gl5 = builtin_datum(Family::GL, 5);
    CHECK_THROWS_AS(extended_diagram(make_twist(gl5, standard_involution(gl5))), DomainError);
}

TEST_CASE("diagram correspondence table") {
    std::vector<TableBlock> table = diagram_table();
    REQUIRE(table.size() == 6);
    for (const auto& b : table) {
        CAPTURE(b.g_name);
        CHECK(b.report.bonds_match);
    }
    CHECK(table[0].report.unreversed == 0);  // A5 / B3
    CHECK(table[1].report.unreversed == 0);  // A3 / B2
    CHECK(table[2].report.unreversed == 1);  // A4 / C2: the added-node arrow keeps direction
    CHECK(table[2].report.unreversed_touch_extra);
    CHECK(table[3].report.unreversed == 0);  // D4 / C3
    CHECK(table[4].report.unreversed == 0);  // E6 / F4
    CHECK(table[5].report.unreversed == 0);  // D4 triality / G2
}

TEST_CASE("subsystem classification covers every proper subset") {
    std::vector<SubdiagramCase> cases = classify_subdiagrams(standard_twist(Family::PGL, 5));
    REQUIRE(cases.size() == 7);
    std::map<std::string, std::string> got;
    for (const auto& c : cases) got[c.subset_label] = c.shape;
    CHECK(got["{}"] == "Gl(1)xGl(1)");
    CHECK(got["{x}"] == "Sp(2)xGl(1)");
    CHECK(got["{a1}"] == "Gl(2)");
    CHECK(got["{a2}"] == "SO(3)xGl(1)");
    CHECK(got["{x,a1}"] == "Sp(4)");
    CHECK(got["{x,a2}"] == "SO(3)xSp(2)");
    CHECK(got["{a1,a2}"] == "SO(5)");
}

TEST_CASE("rendering") {
    Diagram d = extended_diagram(standard_twist(Family::PGL, 5));
    std::string a = render_ascii(d);
    CHECK(a.find("x*") != std::string::npos);
    CHECK(a.find("=2=>") != std::string::npos);
    std::string g = render_dot(d);
    CHECK(g.find("digraph") != std::string::npos);
    CHECK(g.find("dir=forward") != std::string::npos);
}
