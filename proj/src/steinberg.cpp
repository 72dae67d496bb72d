#include "endoscopy/steinberg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "endoscopy/errors.hpp"

namespace endo {

std::vector<IVec> reflection_closure(const std::vector<IVec>& gens) {
    std::vector<IVec> sys;
    for (const IVec& g : gens) {
        if (ivec_is_zero(g)) throw DomainError("reflection_closure: zero generator");
        detail::push_unique(sys, g);
        detail::push_unique(sys, ivec_neg(g));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t i = 0; i < sys.size(); ++i)
            for (size_t j = 0; j < sys.size(); ++j) {
                long num = 2 * ivec_dot(sys[j], sys[i]);
                long den = ivec_dot(sys[i], sys[i]);
                if (num % den) throw DomainError("reflection_closure: non-integral reflection");
                IVec refl = ivec_sub(sys[j], ivec_scale(sys[i], num / den));
                if (ivec_is_zero(refl)) continue;
                if (std::find(sys.begin(), sys.end(), refl) == sys.end()) {
                    sys.push_back(refl);
                    grew = true;
                }
            }
        if (sys.size() > 4096) throw ScaleError("reflection_closure: runaway closure");
    }
    std::sort(sys.begin(), sys.end());
    return sys;
}

namespace {

struct Component {
    std::vector<IVec> roots;
    std::set<long> support;
    long matrix_size = 0;   // size in the classical naming
    int family_order = 0;   // SO=0, Sp=1, Gl=2, BC=3
    std::string name;
};

Component classify_component(const std::vector<IVec>& roots) {
    Component c;
    c.roots = roots;
    bool single1 = false, single2 = false, same_pair = false, diff_pair = false, other = false;
    for (const IVec& v : roots) {
        std::vector<std::pair<long, long>> nz;
        for (size_t k = 0; k < v.size(); ++k)
            if (v[k]) {
                nz.emplace_back((long)k, v[k]);
                c.support.insert((long)k);
            }
        if (nz.size() == 1 && std::abs(nz[0].second) == 1) single1 = true;
        else if (nz.size() == 1 && std::abs(nz[0].second) == 2) single2 = true;
        else if (nz.size() == 2 && std::abs(nz[0].second) == 1 && std::abs(nz[1].second) == 1) {
            if (nz[0].second == nz[1].second) same_pair = true;
            else diff_pair = true;
        } else other = true;
    }
    long m = (long)c.support.size();
    long R = (long)roots.size();
    auto mismatch = [&]() {
        std::ostringstream os;
        os << "classify_component: unrecognized system on " << m << " coordinates with " << R
           << " roots";
        throw DomainError(os.str());
    };
    if (other) mismatch();
    if (single1 && !single2) {
        if (R != 2 * m * m) mismatch();
        c.name = "SO(" + std::to_string(2 * m + 1) + ")";
        c.matrix_size = 2 * m + 1;
        c.family_order = 0;
    } else if (single2 && !single1) {
        if (R != 2 * m * m) mismatch();
        c.name = "Sp(" + std::to_string(2 * m) + ")";
        c.matrix_size = 2 * m;
        c.family_order = 1;
    } else if (single1 && single2) {
        if (R != 2 * m * (m + 1)) mismatch();
        c.name = "BC(" + std::to_string(m) + ")";
        c.matrix_size = 2 * m + 1;
        c.family_order = 3;
    } else if (diff_pair && !same_pair) {
        if (R != m * (m - 1)) mismatch();
        c.name = "Gl(" + std::to_string(m) + ")";
        c.matrix_size = m;
        c.family_order = 2;
    } else if (same_pair && !diff_pair && m == 2 && R == 2) {
        // a rank-one system presented on two coordinates with equal signs
        c.name = "Gl(2)";
        c.matrix_size = 2;
        c.family_order = 2;
    } else {
        if (R != 2 * m * (m - 1)) mismatch();
        c.name = "SO(" + std::to_string(2 * m) + ")";
        c.matrix_size = 2 * m;
        c.family_order = 0;
    }
    return c;
}

} // namespace

std::string classical_shape_name(const std::vector<IVec>& roots, long dim) {
    for (const IVec& v : roots)
        if ((long)v.size() != dim) throw DomainError("classical_shape_name: rank mismatch");
    // split into connected components through non-orthogonality
    std::vector<long> comp(roots.size(), -1);
    long ncomp = 0;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (comp[i] >= 0) continue;
        comp[i] = ncomp;
        std::vector<size_t> stack{i};
        while (!stack.empty()) {
            size_t k = stack.back();
            stack.pop_back();
            for (size_t j = 0; j < roots.size(); ++j)
                if (comp[j] < 0 && ivec_dot(roots[k], roots[j]) != 0) {
                    comp[j] = ncomp;
                    stack.push_back(j);
                }
        }
        ++ncomp;
    }
    std::vector<Component> comps;
    long used = 0;
    for (long cidx = 0; cidx < ncomp; ++cidx) {
        std::vector<IVec> rs;
        for (size_t i = 0; i < roots.size(); ++i)
            if (comp[i] == cidx) rs.push_back(roots[i]);
        comps.push_back(classify_component(rs));
        used += (long)comps.back().support.size();
    }
    long tori = dim - used;
    if (tori < 0) throw DomainError("classical_shape_name: components overlap");
    for (long k = 0; k < tori; ++k) {
        Component t;
        t.name = "Gl(1)";
        t.matrix_size = 1;
        t.family_order = 2;
        comps.push_back(t);
    }
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.matrix_size != b.matrix_size) return a.matrix_size > b.matrix_size;
        return a.family_order < b.family_order;
    });
    if (comps.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < comps.size(); ++i) {
        if (i) out += "x";
        out += comps[i].name;
    }
    return out;
}

} // namespace endo
