#include "endoscopy/dynkin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "endoscopy/matrix.hpp"
#include "endoscopy/rational.hpp"
#include "endoscopy/steinberg.hpp"

namespace endo {

namespace {

bool lex_positive(const IVec& v) {
    for (long x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false;
}

void require_irreducible(const RootDatum& rd) {
    long k = (long)rd.simple.size();
    if (k == 0) throw DomainError("extended_diagram: no simple roots");
    std::vector<char> seen(k, 0);
    std::vector<long> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        long i = stack.back();
        stack.pop_back();
        for (long j = 0; j < k; ++j) {
            if (seen[j]) continue;
            if (ivec_dot(rd.roots[rd.simple[i]], rd.coroots[rd.simple[j]]) != 0) {
                seen[j] = 1;
                stack.push_back(j);
            }
        }
    }
    for (char c : seen)
        if (!c) throw DomainError("extended_diagram: root system is not irreducible");
}

// Expansion height of v in the column basis B, or nullopt if v is not in
// the rational span.
std::optional<Rat> expansion_height(const Mat<Rat>& B, const IVec& v) {
    std::vector<Rat> b;
    b.reserve(v.size());
    for (long x : v) b.push_back(Rat(x));
    std::vector<Rat> sol;
    try {
        sol = solve(B, b);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    Rat h(0);
    for (const Rat& c : sol) h = h + c;
    return h;
}

void add_edges(Diagram& d) {
    long n = (long)d.nodes.size();
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            long dot = ivec_dot(d.nodes[i].vec, d.nodes[j].vec);
            if (dot == 0) continue;
            long li = d.nodes[i].len2, lj = d.nodes[j].len2;
            if ((2 * dot) % lj != 0 || (2 * dot) % li != 0)
                throw DomainError("extended_diagram: non-integral Cartan number");
            long nij = 2 * dot / lj, nji = 2 * dot / li;
            DiagramEdge e;
            e.a = i;
            e.b = j;
            long bond = nij * nji;
            if (bond < 1 || bond > 4)
                throw DomainError("extended_diagram: bond multiplicity out of range");
            e.bond = (int)bond;
            if (li == lj) e.arrow = -1;
            else e.arrow = (li < lj) ? 0 : 1;
            d.edges.push_back(e);
        }
}

Diagram abstract_diagram(const std::string& title, const std::vector<std::string>& labels,
                         long extra_idx,
                         const std::vector<std::tuple<long, long, int, int>>& edges) {
    Diagram d;
    d.title = title;
    for (long i = 0; i < (long)labels.size(); ++i) {
        DiagramNode nd;
        nd.label = labels[i];
        nd.extra = (i == extra_idx);
        d.nodes.push_back(nd);
    }
    for (auto& [a, b, bond, arrow] : edges) {
        DiagramEdge e;
        e.a = a;
        e.b = b;
        e.bond = bond;
        e.arrow = arrow;
        d.edges.push_back(e);
    }
    return d;
}

std::string edge_str(const Diagram& d, const DiagramEdge& e) {
    const std::string& la = d.nodes[e.a].label;
    const std::string& lb = d.nodes[e.b].label;
    if (e.bond == 1) return la + " --- " + lb;
    std::string k = std::to_string(e.bond);
    if (e.arrow == 1) return la + " =" + k + "=> " + lb;
    if (e.arrow == 0) return la + " <=" + k + "= " + lb;
    return la + " =" + k + "= " + lb;
}

} // namespace

Diagram extended_diagram(const TwistSetup& s) {
    if (s.series == "generic")
        throw DomainError("extended_diagram: no recorded folding chart for this involution");
    const RootDatum& rd = s.G;
    require_irreducible(rd);

    Diagram d;
    d.title = "ext(" + rd.name + (s.theta.order > 1 ? ", theta)" : ")");

    // folded simple roots, in simple order
    std::vector<IVec> basis_folded;
    for (long si : rd.simple)
        detail::push_unique(basis_folded, coinvariant_project_char(s, rd.roots[si]));

    // modified orbit sums of the simple roots, as ambient vectors
    std::vector<IVec> basis_sums;
    for (long si : rd.simple) detail::push_unique(basis_sums, twisted_sum(s, si, true));
    if (basis_sums.size() != basis_folded.size())
        throw DomainError("extended_diagram: folded basis size mismatch");

    Mat<Rat> B((long)rd.roots[0].size(), (long)basis_sums.size(), Rat(0));
    for (long j = 0; j < (long)basis_sums.size(); ++j)
        for (long i = 0; i < B.rows(); ++i) B.at(i, j) = Rat(basis_sums[j][i]);

    // highest modified orbit sum over the positive roots
    std::set<IVec> seen;
    IVec highest;
    Rat best(0);
    long ties = 0;
    for (size_t i = 0; i < rd.roots.size(); ++i) {
        if (!lex_positive(rd.roots[i])) continue;
        IVec sp = twisted_sum(s, (long)i, true);
        if (!seen.insert(sp).second) continue;
        auto h = expansion_height(B, sp);
        if (!h) throw DomainError("extended_diagram: orbit sum outside basis span");
        if (highest.empty() || best < *h) {
            highest = sp;
            best = *h;
            ties = 1;
        } else if (!(*h < best)) {
            ++ties;
        }
    }
    if (ties != 1) throw DomainError("extended_diagram: highest orbit sum is not unique");

    IVec neg = ivec_neg(highest);
    long tilde = -1;
    for (size_t i = 0; i < rd.roots.size(); ++i)
        if (twisted_sum(s, (long)i, true) == neg) {
            tilde = (long)i;
            break;
        }
    if (tilde < 0) throw DomainError("extended_diagram: no root matches the lowest orbit sum");

    DiagramNode x;
    x.label = "x";
    x.vec = ivec_scale(coinvariant_project_char(s, rd.roots[tilde]), sum_scale(s, tilde));
    x.len2 = ivec_dot(x.vec, x.vec);
    x.extra = true;
    d.nodes.push_back(x);
    for (size_t i = 0; i < basis_folded.size(); ++i) {
        DiagramNode nd;
        nd.label = "a" + std::to_string(i + 1);
        nd.vec = basis_folded[i];
        nd.len2 = ivec_dot(nd.vec, nd.vec);
        nd.extra = false;
        d.nodes.push_back(nd);
    }
    add_edges(d);
    return d;
}

ReversalReport arrows_reversed_pairing(const Diagram& a, const Diagram& b) {
    ReversalReport rep;
    long n = (long)a.nodes.size();
    if ((long)b.nodes.size() != n || a.edges.size() != b.edges.size()) return rep;
    if (n > 8) throw ScaleError("arrows_reversed_pairing: too many nodes");

    auto key = [](long i, long j) { return std::make_pair(std::min(i, j), std::max(i, j)); };
    std::map<std::pair<long, long>, const DiagramEdge*> badj;
    for (const auto& e : b.edges) badj[key(e.a, e.b)] = &e;

    std::vector<long> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (long i = 0; i < n && ok; ++i)
            if (a.nodes[i].extra != b.nodes[perm[i]].extra) ok = false;
        if (!ok) continue;
        long unrev = 0;
        std::vector<std::string> edges;
        for (const auto& e : a.edges) {
            auto it = badj.find(key(perm[e.a], perm[e.b]));
            if (it == badj.end() || it->second->bond != e.bond ||
                (e.arrow == -1) != (it->second->arrow == -1)) {
                ok = false;
                break;
            }
            if (e.arrow == -1) continue;
            long a_target = (e.arrow == 0) ? e.a : e.b;
            const DiagramEdge& f = *it->second;
            long b_target = (f.arrow == 0) ? f.a : f.b;
            if (b_target == perm[a_target]) {
                ++unrev;
                edges.push_back(a.nodes[e.a].label + "~" + a.nodes[e.b].label);
            }
        }
        if (!ok) continue;
        if (!rep.bonds_match || unrev < rep.unreversed) {
            rep.bonds_match = true;
            rep.unreversed = unrev;
            rep.unreversed_edges = edges;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (rep.bonds_match) {
        rep.unreversed_touch_extra = !rep.unreversed_edges.empty();
        for (const auto& lbl : rep.unreversed_edges) {
            bool touch = false;
            for (const auto& nd : a.nodes)
                if (nd.extra && (lbl.find(nd.label + "~") == 0 ||
                                 lbl.size() >= nd.label.size() + 1 &&
                                     lbl.compare(lbl.size() - nd.label.size() - 1,
                                                 std::string::npos, "~" + nd.label) == 0))
                    touch = true;
            if (!touch) rep.unreversed_touch_extra = false;
        }
    }
    return rep;
}

std::string render_ascii(const Diagram& d) {
    std::ostringstream os;
    os << d.title << "\n";
    for (const auto& nd : d.nodes) {
        os << "  " << nd.label << (nd.extra ? "*" : "");
        if (!nd.vec.empty()) os << " = " << ivec_str(nd.vec) << "  len2=" << nd.len2;
        os << "\n";
    }
    for (const auto& e : d.edges) os << "  " << edge_str(d, e) << "\n";
    if (d.edges.empty()) os << "  (no bonds)\n";
    return os.str();
}

std::string render_dot(const Diagram& d) {
    std::ostringstream os;
    os << "digraph \"" << d.title << "\" {\n";
    os << "  rankdir=LR;\n  edge [dir=none];\n  node [shape=circle];\n";
    for (const auto& nd : d.nodes) {
        os << "  \"" << nd.label << "\"";
        if (nd.extra) os << " [style=filled, fillcolor=black, fontcolor=white]";
        os << ";\n";
    }
    for (const auto& e : d.edges) {
        long tail = e.a, head = e.b;
        if (e.arrow == 0) std::swap(tail, head);
        os << "  \"" << d.nodes[tail].label << "\" -> \"" << d.nodes[head].label << "\"";
        os << " [label=\"" << e.bond << "\"";
        if (e.arrow != -1) os << ", dir=forward";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::vector<TableBlock> diagram_table() {
    std::vector<TableBlock> out;

    auto classical = [](Family f, long n, bool twisted) {
        RootDatum rd = builtin_datum(f, n);
        Involution th = twisted ? standard_involution(rd) : identity_involution(rd);
        return extended_diagram(make_twist(rd, th));
    };

    {
        TableBlock b;
        b.g_name = "A5";
        b.h_name = "B3";
        b.theta_desc = "order 2";
        b.g_id = classical(Family::GL, 6, false);
        b.g_theta = classical(Family::GLxGm, 6, true);
        b.h_id = classical(Family::SO_odd, 7, false);
        out.push_back(b);
    }
    {
        TableBlock b;
        b.g_name = "A3";
        b.h_name = "B2";
        b.theta_desc = "order 2";
        b.g_id = classical(Family::GL, 4, false);
        b.g_theta = classical(Family::GLxGm, 4, true);
        b.h_id = classical(Family::SO_odd, 5, false);
        out.push_back(b);
    }
    {
        TableBlock b;
        b.g_name = "A4";
        b.h_name = "C2";
        b.theta_desc = "order 2";
        b.g_id = classical(Family::GL, 5, false);
        b.g_theta = classical(Family::PGL, 5, true);
        b.h_id = classical(Family::Sp, 4, false);
        out.push_back(b);
    }
    {
        TableBlock b;
        b.g_name = "D4";
        b.h_name = "C3";
        b.theta_desc = "order 2";
        b.g_id = classical(Family::SO_even, 8, false);
        b.g_theta = classical(Family::SO_even, 8, true);
        b.h_id = classical(Family::Sp, 6, false);
        out.push_back(b);
    }
    {
        TableBlock b;
        b.g_name = "E6";
        b.h_name = "F4";
        b.theta_desc = "order 2";
        // arms of length two around the branch node a2; extra on the a1 arm
        b.g_id = abstract_diagram(
            "ext(E6)", {"x", "a1", "a2", "a3", "a4", "a5", "a6"}, 0,
            {{0, 1, 1, -1}, {1, 2, 1, -1}, {2, 3, 1, -1}, {3, 4, 1, -1}, {2, 5, 1, -1}, {5, 6, 1, -1}});
        b.g_theta = abstract_diagram(
            "ext(E6, theta)", {"a1", "a2", "a3", "a4", "x"}, 4,
            {{0, 1, 1, -1}, {1, 2, 2, 1}, {2, 3, 1, -1}, {3, 4, 1, -1}});
        b.h_id = abstract_diagram(
            "ext(F4)", {"a1", "a2", "a3", "a4", "x"}, 4,
            {{0, 1, 1, -1}, {1, 2, 2, 0}, {2, 3, 1, -1}, {3, 4, 1, -1}});
        out.push_back(b);
    }
    {
        TableBlock b;
        b.g_name = "D4";
        b.h_name = "G2";
        b.theta_desc = "order 3";
        b.g_id = classical(Family::SO_even, 8, false);
        b.g_theta = abstract_diagram("ext(D4, theta)", {"a1", "a2", "x"}, 2,
                                     {{0, 1, 3, 1}, {1, 2, 1, -1}});
        b.h_id = abstract_diagram("ext(G2)", {"a1", "a2", "x"}, 2,
                                  {{0, 1, 3, 0}, {1, 2, 1, -1}});
        out.push_back(b);
    }

    for (auto& b : out) b.report = arrows_reversed_pairing(b.g_theta, b.h_id);
    return out;
}

std::vector<SubdiagramCase> classify_subdiagrams(const TwistSetup& s) {
    Diagram d = extended_diagram(s);
    long n = (long)d.nodes.size();
    if (n > 8) throw ScaleError("classify_subdiagrams: too many nodes");
    std::vector<SubdiagramCase> out;
    for (long mask = 0; mask < (1L << n) - 1; ++mask) {
        SubdiagramCase c;
        std::vector<IVec> gens;
        std::string lbl;
        for (long i = 0; i < n; ++i)
            if (mask & (1L << i)) {
                c.subset.push_back(i);
                gens.push_back(d.nodes[i].vec);
                if (!lbl.empty()) lbl += ",";
                lbl += d.nodes[i].label;
            }
        c.subset_label = "{" + lbl + "}";
        c.shape = classical_shape_name(reflection_closure(gens), s.fold_dim());
        out.push_back(c);
    }
    return out;
}

} // namespace endo
