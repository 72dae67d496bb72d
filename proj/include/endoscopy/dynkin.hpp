#pragma once
#include <string>
#include <vector>
#include "root_datum.hpp"

namespace endo {

struct DiagramNode {
    std::string label;
    IVec vec;        // folded chart coordinates; empty for hand-built diagrams
    long len2 = 0;   // squared length in the chart metric
    bool extra = false;
};

struct DiagramEdge {
    long a = 0, b = 0;
    int bond = 1;
    int arrow = -1;  // -1 none, 0 toward node a, 1 toward node b
};

struct Diagram {
    std::string title;
    std::vector<DiagramNode> nodes;
    std::vector<DiagramEdge> edges;
};

/**
 * Extended diagram of a twisted setup: the folded simple roots plus the
 * scaled fold of the root whose negated modified orbit sum is the highest
 * element of the folded system.  With the identity involution this is the
 * ordinary affine diagram.
 */
Diagram extended_diagram(const TwistSetup& s);

/** Bijection search between two diagrams: bond-preserving node matchings,
 *  scored by how many arrows fail to reverse. */
struct ReversalReport {
    bool bonds_match = false;
    long unreversed = -1;                        // minimum over matchings
    std::vector<std::string> unreversed_edges;   // "label-label" in the first diagram
    bool unreversed_touch_extra = false;         // all unreversed edges meet an extra node
};
ReversalReport arrows_reversed_pairing(const Diagram& a, const Diagram& b);

std::string render_ascii(const Diagram& d);
std::string render_dot(const Diagram& d);

/** One row of the correspondence table. */
struct TableBlock {
    std::string g_name, h_name, theta_desc;
    Diagram g_id;      // untwisted extended diagram of the ambient group
    Diagram g_theta;   // twisted extended diagram
    Diagram h_id;      // untwisted extended diagram of the endoscopic side
    ReversalReport report;  // g_theta versus h_id
};
std::vector<TableBlock> diagram_table();

/** Proper node subsets of the twisted extended diagram with the canonical
 *  names of the subsystems they generate. */
struct SubdiagramCase {
    std::vector<long> subset;   // node indices into the diagram
    std::string subset_label;   // e.g. "{x,a1}"
    std::string shape;          // e.g. "Sp(2)xGl(1)"
};
std::vector<SubdiagramCase> classify_subdiagrams(const TwistSetup& s);

} // namespace endo
