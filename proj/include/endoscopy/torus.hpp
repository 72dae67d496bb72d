#pragma once
#include <vector>
#include "errors.hpp"
#include "root_datum.hpp"

namespace endo {

/**
 * Point of a maximal torus in ambient coordinates: one unit value per
 * ambient basis vector.  When the cocharacter lattice is a quotient the
 * coordinates are a representative, well defined up to a scalar along
 * the relation.
 */
template <class K>
struct TorusPoint {
    std::vector<K> x;

    long rank() const { return (long)x.size(); }
};

// chi(t) for an ambient character vector.
template <class K>
K eval_char(const TorusPoint<K>& t, const IVec& chi) {
    if ((long)chi.size() != t.rank()) throw DomainError("eval_char: rank mismatch");
    K acc = t.x[0].one_like();
    for (size_t i = 0; i < chi.size(); ++i) {
        if (chi[i] == 0) continue;
        K b = chi[i] > 0 ? t.x[i] : t.x[i].inv();
        long e = chi[i] > 0 ? chi[i] : -chi[i];
        acc = acc * b.pow(e);
    }
    return acc;
}

// The point whose characters are twisted by the matrix: (A.t)^chi = t^(A chi),
// so coordinate i of the image is t raised to column i of A.
template <class K>
TorusPoint<K> point_pow(const IMat& A, const TorusPoint<K>& t) {
    if (A.r != t.rank() || A.c != t.rank()) throw DomainError("point_pow: rank mismatch");
    TorusPoint<K> out;
    out.x.reserve(t.rank());
    for (long i = 0; i < A.c; ++i) {
        IVec col(A.r);
        for (long j = 0; j < A.r; ++j) {
            if (!A.at(j, i).fits_slong_p()) throw ScaleError("point_pow: exponent overflow");
            col[j] = A.at(j, i).get_si();
        }
        out.x.push_back(eval_char(t, col));
    }
    return out;
}

template <class K>
TorusPoint<K> point_mul(const TorusPoint<K>& a, const TorusPoint<K>& b) {
    if (a.rank() != b.rank()) throw DomainError("point_mul: rank mismatch");
    TorusPoint<K> out;
    out.x.reserve(a.rank());
    for (long i = 0; i < a.rank(); ++i) out.x.push_back(a.x[i] * b.x[i]);
    return out;
}

template <class K>
TorusPoint<K> point_inv(const TorusPoint<K>& a) {
    TorusPoint<K> out;
    out.x.reserve(a.rank());
    for (long i = 0; i < a.rank(); ++i) out.x.push_back(a.x[i].inv());
    return out;
}

// t . theta(t), the twisted norm of the point.
template <class K>
TorusPoint<K> twisted_norm_point(const TwistSetup& s, const TorusPoint<K>& t) {
    return point_mul(t, point_pow(s.theta.on_char, t));
}

// Equality of torus points; when the cocharacter side is a quotient the
// comparison allows one scalar along the relation column (which for the
// relations that occur means a single common scalar with exponent pattern
// given by rel).
template <class K>
bool points_equal(const RootDatum& rd, const TorusPoint<K>& a, const TorusPoint<K>& b) {
    if (a.rank() != b.rank() || a.rank() != rd.ambient_rank)
        throw DomainError("points_equal: rank mismatch");
    bool scalar_free = rd.rel.c > 0 && !rd.char_is_quotient;
    if (!scalar_free) {
        for (long i = 0; i < a.rank(); ++i)
            if (!(a.x[i] - b.x[i]).is_zero()) return false;
        return true;
    }
    // find lambda with b_i = lambda^{rel_i} a_i; rel entries are +-1 or 0
    K lam = a.x[0].one_like();
    bool have = false;
    for (long i = 0; i < a.rank(); ++i) {
        long e = rd.rel.at(i, 0).fits_slong_p() ? rd.rel.at(i, 0).get_si() : 0;
        if (e != 1 && e != -1) continue;
        K cand = b.x[i] * a.x[i].inv();
        lam = e == 1 ? cand : cand.inv();
        have = true;
        break;
    }
    if (!have) throw DomainError("points_equal: relation without unit entry");
    for (long i = 0; i < a.rank(); ++i) {
        long e = rd.rel.at(i, 0).fits_slong_p() ? rd.rel.at(i, 0).get_si() : 0;
        K expect = e == 0 ? a.x[i]
                          : a.x[i] * (e > 0 ? lam.pow(e) : lam.inv().pow(-e));
        if (!(expect - b.x[i]).is_zero()) return false;
    }
    return true;
}

} // namespace endo
