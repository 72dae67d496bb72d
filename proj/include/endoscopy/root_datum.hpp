#pragma once
#include <optional>
#include <string>
#include <vector>
#include "zlattice.hpp"

namespace endo {

// Ambient lattice coordinates of characters, cocharacters, roots.
using IVec = std::vector<long>;

IVec ivec_add(const IVec& a, const IVec& b);
IVec ivec_sub(const IVec& a, const IVec& b);
IVec ivec_neg(const IVec& a);
IVec ivec_scale(const IVec& a, long c);
long ivec_dot(const IVec& a, const IVec& b);
bool ivec_is_zero(const IVec& a);
IVec imat_apply(const IMat& M, const IVec& v);
std::string ivec_str(const IVec& v);

enum class Family { GL, SL, PGL, Sp, SO_odd, SO_even, GSpin_odd, GLxGm };

Family family_from_string(const std::string& s);
std::string family_to_string(Family f);

/**
 * Root datum on an ambient lattice Z^N with the dot-product pairing.
 * The torus lattices are cut out of the ambient by an optional primitive
 * relation column: with rel present, one side is the quotient Z^N/rel and
 * the other the orthogonal sublattice rel^perp.  Roots and coroots are
 * ambient vectors; on a quotient side they are representative lifts.
 */
struct RootDatum {
    std::string name;
    Family family = Family::GL;
    long n_param = 0;
    long ambient_rank = 0;
    IMat rel;                       // N x 0 or N x 1, primitive column
    bool char_is_quotient = false;  // true: X* = Z^N/rel (SL-like), X_* = rel^perp
                                    // false with rel: X* = rel^perp (PGL-like)
    std::vector<IVec> roots;        // paired with coroots by index
    std::vector<IVec> coroots;
    std::vector<long> simple;       // indices into roots

    long torus_rank() const { return ambient_rank - rel.c; }
    long find_root(const IVec& v) const;            // -1 if absent (exact match)
    long find_root_mod_rel(const IVec& v) const;    // matches up to rel on the lift side
};

// Families GL, SL, PGL, Sp(2n), SO(2n+1), SO(2n), GSpin(2n+1), GL(2n) x Gm.
// For GL/SL/PGL the parameter is the matrix size; for the rest as written.
RootDatum builtin_datum(Family f, long n);

// Consistency of pairings, reflections, and lattice membership.
void validate_datum(const RootDatum& rd);

/** Lattice involution given on the ambient of X*; the X_* action is the
 *  inverse transpose.  order is 1 or 2. */
struct Involution {
    IMat on_char;
    IMat on_cochar;
    int order = 2;
};

Involution identity_involution(const RootDatum& rd);
// The pinned outer involution of the three twisted series: available for
// GL/SL/PGL (conjugate-inverse by the split form), GLxGm, and SO_even.
Involution standard_involution(const RootDatum& rd);

/**
 * A root datum with involution, equipped with compatible charts:
 *  - P_char / char_section: the free coinvariant chart of the ambient
 *    character lattice (the folded "e-bar" coordinates);
 *  - P_cochar / cochar_section: same on the cocharacter side ("f-prime");
 *  - fixed_char_basis: basis of the invariant character lattice ("e-prime"),
 *    normalized so that it is dual to the cochar chart basis.
 */
struct TwistSetup {
    RootDatum G;
    Involution theta;
    IMat P_char;            // fold_dim x N
    IMat char_section;      // N x fold_dim
    IMat P_cochar;          // cofold_dim x N
    IMat cochar_section;    // N x cofold_dim
    IMat fixed_char_basis;  // N x cofold_dim
    std::vector<long> root_perm;   // index action of theta on the root list
    std::string series;     // "A2n", "A2n-1", "Dn+1", or "generic"

    long fold_dim() const { return P_char.r; }
};

TwistSetup make_twist(const RootDatum& rd, const Involution& theta);
// Convenience: the standard twisted setup of a family.
TwistSetup standard_twist(Family f, long n);

// Chart projections of an ambient vector.
IVec coinvariant_project_char(const TwistSetup& s, const IVec& v);
IVec coinvariant_project_cochar(const TwistSetup& s, const IVec& v);

// Coordinates of an invariant character in the e-prime basis.
IVec fixed_char_coords(const TwistSetup& s, const IVec& v);

// Orbit sum S(alpha) over the theta-orbit of a root, as an ambient vector;
// with modified=true the sum is scaled by c(alpha) = 2/<alpha_vee, S(alpha)>
// (1 except on the short middle roots of A2n, where it is 2).
IVec twisted_sum(const TwistSetup& s, long root_idx, bool modified);
long sum_scale(const TwistSetup& s, long root_idx);   // the c(alpha)

/** Indices of roots passing the two divisibility filters. */
struct ShortMiddleFilter {
    std::vector<long> sm_roots;     // alpha with (1/2)P(alpha) not a folded root
    std::vector<long> sm_coroots;   // alpha with (1/2)P(alpha_vee) not folded coroot
};
ShortMiddleFilter short_middle_filter(const TwistSetup& s);

// The dual-side construction: invariant characters with scaled orbit sums
// of the filtered roots, coinvariant cocharacters with projected coroots.
RootDatum endoscopic_datum(const TwistSetup& s);

// Based isomorphism test between data presented on free ambient lattices.
bool data_isomorphic(const RootDatum& a, const RootDatum& b);

} // namespace endo
