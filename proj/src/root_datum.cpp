#include "endoscopy/root_datum.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "endoscopy/errors.hpp"

namespace endo {

IVec ivec_add(const IVec& a, const IVec& b) {
    if (a.size() != b.size()) throw DomainError("ivec: size mismatch");
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IVec ivec_sub(const IVec& a, const IVec& b) { return ivec_add(a, ivec_neg(b)); }

IVec ivec_neg(const IVec& a) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

IVec ivec_scale(const IVec& a, long c) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

long ivec_dot(const IVec& a, const IVec& b) {
    if (a.size() != b.size()) throw DomainError("ivec: size mismatch");
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool ivec_is_zero(const IVec& a) {
    for (long x : a)
        if (x != 0) return false;
    return true;
}

IVec imat_apply(const IMat& M, const IVec& v) {
    if (M.c != (long)v.size()) throw DomainError("imat_apply: shape mismatch");
    IVec out(M.r, 0);
    for (long i = 0; i < M.r; ++i) {
        mpz_class s = 0;
        for (long j = 0; j < M.c; ++j) s += M.at(i, j) * v[j];
        if (!s.fits_slong_p()) throw ScaleError("imat_apply: entry overflow");
        out[i] = s.get_si();
    }
    return out;
}

std::string ivec_str(const IVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

Family family_from_string(const std::string& s) {
    if (s == "gl") return Family::GL;
    if (s == "sl") return Family::SL;
    if (s == "pgl") return Family::PGL;
    if (s == "sp") return Family::Sp;
    if (s == "so_odd") return Family::SO_odd;
    if (s == "so_even") return Family::SO_even;
    if (s == "gspin_odd") return Family::GSpin_odd;
    if (s == "glxgm") return Family::GLxGm;
    throw DomainError("unknown family: " + s);
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::GL: return "gl";
        case Family::SL: return "sl";
        case Family::PGL: return "pgl";
        case Family::Sp: return "sp";
        case Family::SO_odd: return "so_odd";
        case Family::SO_even: return "so_even";
        case Family::GSpin_odd: return "gspin_odd";
        case Family::GLxGm: return "glxgm";
    }
    throw DomainError("unknown family");
}

long RootDatum::find_root(const IVec& v) const {
    for (size_t i = 0; i < roots.size(); ++i)
        if (roots[i] == v) return (long)i;
    return -1;
}

long RootDatum::find_root_mod_rel(const IVec& v) const {
    long exact = find_root(v);
    if (exact >= 0 || rel.c == 0) return exact;
    for (size_t i = 0; i < roots.size(); ++i) {
        IVec d = ivec_sub(v, roots[i]);
        // d must be an integer multiple of the relation column
        long k = -1;
        for (long t = 0; t < rel.r; ++t)
            if (rel.at(t, 0) != 0) { k = t; break; }
        if (k < 0) continue;
        mpz_class q, rm;
        mpz_fdiv_qr(q.get_mpz_t(), rm.get_mpz_t(), mpz_class(d[k]).get_mpz_t(),
                    rel.at(k, 0).get_mpz_t());
        if (rm != 0) continue;
        bool ok = true;
        for (long t = 0; t < rel.r && ok; ++t)
            if (mpz_class(d[t]) != q * rel.at(t, 0)) ok = false;
        if (ok) return (long)i;
    }
    return -1;
}

namespace {

IVec basis_vec(long n, long i, long v = 1) {
    IVec e(n, 0);
    e[i] = v;
    return e;
}

void push_pair(RootDatum& rd, const IVec& root, const IVec& coroot) {
    rd.roots.push_back(root);
    rd.coroots.push_back(coroot);
}

// Roots e_i - e_j with coroots f_i - f_j on coordinates [0, m).
void add_type_a_pairs(RootDatum& rd, long m, long amb) {
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) {
            if (i == j) continue;
            IVec v(amb, 0);
            v[i] = 1;
            v[j] = -1;
            push_pair(rd, v, v);
        }
}

void set_simple(RootDatum& rd, const std::vector<IVec>& simples) {
    for (const IVec& s : simples) {
        long idx = rd.find_root(s);
        if (idx < 0) throw DomainError("simple root not in root list");
        rd.simple.push_back(idx);
    }
}

IMat ones_column(long n) {
    IMat m(n, 1);
    for (long i = 0; i < n; ++i) m.at(i, 0) = 1;
    return m;
}

} // namespace

RootDatum builtin_datum(Family f, long n) {
    RootDatum rd;
    rd.family = f;
    rd.n_param = n;
    std::ostringstream nm;
    switch (f) {
        case Family::GL:
        case Family::SL:
        case Family::PGL: {
            if (n < 1) throw DomainError("linear family needs size >= 1");
            rd.ambient_rank = n;
            add_type_a_pairs(rd, n, n);
            std::vector<IVec> simples;
            for (long i = 0; i + 1 < n; ++i) {
                IVec v(n, 0);
                v[i] = 1;
                v[i + 1] = -1;
                simples.push_back(v);
            }
            set_simple(rd, simples);
            if (f == Family::SL) {
                rd.rel = ones_column(n);
                rd.char_is_quotient = true;
            } else if (f == Family::PGL) {
                rd.rel = ones_column(n);
                rd.char_is_quotient = false;
            }
            nm << (f == Family::GL ? "Gl(" : f == Family::SL ? "Sl(" : "PGl(") << n << ")";
            break;
        }
        case Family::Sp: {
            if (n < 2 || n % 2) throw DomainError("symplectic family needs even size >= 2");
            long r = n / 2;
            rd.ambient_rank = r;
            for (long i = 0; i < r; ++i)
                for (long j = i + 1; j < r; ++j)
                    for (long si : {1, -1})
                        for (long sj : {1, -1}) {
                            IVec v(r, 0), cv(r, 0);
                            v[i] = si;
                            v[j] = sj;
                            cv = v;
                            push_pair(rd, v, cv);
                        }
            for (long i = 0; i < r; ++i)
                for (long s : {1, -1}) push_pair(rd, basis_vec(r, i, 2 * s), basis_vec(r, i, s));
            std::vector<IVec> simples;
            for (long i = 0; i + 1 < r; ++i) {
                IVec v(r, 0);
                v[i] = 1;
                v[i + 1] = -1;
                simples.push_back(v);
            }
            simples.push_back(basis_vec(r, r - 1, 2));
            set_simple(rd, simples);
            nm << "Sp(" << n << ")";
            break;
        }
        case Family::SO_odd: {
            if (n < 3 || n % 2 == 0) throw DomainError("odd orthogonal family needs odd size >= 3");
            long r = (n - 1) / 2;
            rd.ambient_rank = r;
            for (long i = 0; i < r; ++i)
                for (long j = i + 1; j < r; ++j)
                    for (long si : {1, -1})
                        for (long sj : {1, -1}) {
                            IVec v(r, 0);
                            v[i] = si;
                            v[j] = sj;
                            push_pair(rd, v, v);
                        }
            for (long i = 0; i < r; ++i)
                for (long s : {1, -1}) push_pair(rd, basis_vec(r, i, s), basis_vec(r, i, 2 * s));
            std::vector<IVec> simples;
            for (long i = 0; i + 1 < r; ++i) {
                IVec v(r, 0);
                v[i] = 1;
                v[i + 1] = -1;
                simples.push_back(v);
            }
            simples.push_back(basis_vec(r, r - 1, 1));
            set_simple(rd, simples);
            nm << "SO(" << n << ")";
            break;
        }
        case Family::SO_even: {
            if (n < 2 || n % 2) throw DomainError("even orthogonal family needs even size >= 2");
            long r = n / 2;
            rd.ambient_rank = r;
            for (long i = 0; i < r; ++i)
                for (long j = i + 1; j < r; ++j)
                    for (long si : {1, -1})
                        for (long sj : {1, -1}) {
                            IVec v(r, 0);
                            v[i] = si;
                            v[j] = sj;
                            push_pair(rd, v, v);
                        }
            std::vector<IVec> simples;
            for (long i = 0; i + 1 < r; ++i) {
                IVec v(r, 0);
                v[i] = 1;
                v[i + 1] = -1;
                simples.push_back(v);
            }
            if (r >= 2) {
                IVec v(r, 0);
                v[r - 2] = 1;
                v[r - 1] = 1;
                simples.push_back(v);
            }
            set_simple(rd, simples);
            nm << "SO(" << n << ")";
            break;
        }
        case Family::GSpin_odd: {
            if (n < 3 || n % 2 == 0) throw DomainError("odd spin family needs odd size >= 3");
            long r = (n - 1) / 2;
            rd.ambient_rank = r + 1;  // coordinates (x_1..x_r, x_0)
            long amb = r + 1;
            for (long i = 0; i < r; ++i)
                for (long j = i + 1; j < r; ++j) {
                    IVec d(amb, 0);
                    d[i] = 1;
                    d[j] = -1;
                    push_pair(rd, d, d);
                    push_pair(rd, ivec_neg(d), ivec_neg(d));
                    IVec s(amb, 0), cs(amb, 0);
                    s[i] = 1;
                    s[j] = 1;
                    cs = s;
                    cs[r] = -1;
                    push_pair(rd, s, cs);
                    push_pair(rd, ivec_neg(s), ivec_neg(cs));
                }
            for (long i = 0; i < r; ++i) {
                IVec v(amb, 0), cv(amb, 0);
                v[i] = 1;
                cv[i] = 2;
                cv[r] = -1;
                push_pair(rd, v, cv);
                push_pair(rd, ivec_neg(v), ivec_neg(cv));
            }
            std::vector<IVec> simples;
            for (long i = 0; i + 1 < r; ++i) {
                IVec v(amb, 0);
                v[i] = 1;
                v[i + 1] = -1;
                simples.push_back(v);
            }
            simples.push_back(basis_vec(amb, r - 1, 1));
            set_simple(rd, simples);
            nm << "GSpin(" << n << ")";
            break;
        }
        case Family::GLxGm: {
            if (n < 2 || n % 2) throw DomainError("twisted linear family needs even size >= 2");
            rd.ambient_rank = n + 1;  // GL coordinates 0..n-1, scaling coordinate n
            add_type_a_pairs(rd, n, n + 1);
            std::vector<IVec> simples;
            for (long i = 0; i + 1 < n; ++i) {
                IVec v(n + 1, 0);
                v[i] = 1;
                v[i + 1] = -1;
                simples.push_back(v);
            }
            set_simple(rd, simples);
            nm << "Gl(" << n << ")xGm";
            break;
        }
    }
    rd.name = nm.str();
    return rd;
}

void validate_datum(const RootDatum& rd) {
    long N = rd.ambient_rank;
    bool quot_char = rd.rel.c > 0 && rd.char_is_quotient;
    bool quot_cochar = rd.rel.c > 0 && !rd.char_is_quotient;
    if (rd.roots.size() != rd.coroots.size()) throw DomainError("datum: root/coroot count mismatch");
    for (size_t i = 0; i < rd.roots.size(); ++i) {
        if ((long)rd.roots[i].size() != N || (long)rd.coroots[i].size() != N)
            throw DomainError("datum: vector of wrong rank");
        if (ivec_dot(rd.roots[i], rd.coroots[i]) != 2)
            throw DomainError("datum: <root, coroot> != 2");
        // sublattice sides are orthogonal to the relation
        if (rd.rel.c > 0) {
            long d = 0;
            for (long t = 0; t < N; ++t)
                d += (long)rd.rel.at(t, 0).get_si() *
                     (quot_char ? rd.coroots[i][t] : rd.roots[i][t]);
            if (d != 0) throw DomainError("datum: lattice member not orthogonal to relation");
        }
    }
    for (size_t i = 0; i < rd.roots.size(); ++i)
        for (size_t j = 0; j < rd.roots.size(); ++j) {
            long n_ij = ivec_dot(rd.roots[j], rd.coroots[i]);
            IVec refl = ivec_sub(rd.roots[j], ivec_scale(rd.roots[i], n_ij));
            long idx = quot_char ? rd.find_root_mod_rel(refl) : rd.find_root(refl);
            if (idx < 0) throw DomainError("datum: reflection leaves root set");
            IVec corefl =
                ivec_sub(rd.coroots[j], ivec_scale(rd.coroots[i], ivec_dot(rd.roots[i], rd.coroots[j])));
            IVec target = rd.coroots[idx];
            if (corefl != target) {
                bool ok = false;
                if (quot_cochar) {
                    IVec d = ivec_sub(corefl, target);
                    // difference must be a multiple of the relation
                    long k = -1;
                    for (long t = 0; t < N; ++t)
                        if (rd.rel.at(t, 0) != 0) { k = t; break; }
                    if (k >= 0 && d[k] % (long)rd.rel.at(k, 0).get_si() == 0) {
                        long q = d[k] / (long)rd.rel.at(k, 0).get_si();
                        ok = true;
                        for (long t = 0; t < N; ++t)
                            if (d[t] != q * (long)rd.rel.at(t, 0).get_si()) ok = false;
                    }
                }
                if (!ok) throw DomainError("datum: coroot reflection mismatch");
            }
        }
    for (long s : rd.simple)
        if (s < 0 || s >= (long)rd.roots.size()) throw DomainError("datum: bad simple index");
}

Involution identity_involution(const RootDatum& rd) {
    Involution th;
    th.on_char = IMat::identity(rd.ambient_rank);
    th.on_cochar = IMat::identity(rd.ambient_rank);
    th.order = 1;
    return th;
}

Involution standard_involution(const RootDatum& rd) {
    long N = rd.ambient_rank;
    Involution th;
    th.order = 2;
    switch (rd.family) {
        case Family::GL:
        case Family::SL:
        case Family::PGL: {
            IMat A(N, N);
            for (long j = 0; j < N; ++j) A.at(N - 1 - j, j) = -1;
            th.on_char = A;
            th.on_cochar = A;
            break;
        }
        case Family::GLxGm: {
            long m = rd.n_param;  // GL size, ambient m+1
            IMat A(N, N);
            for (long j = 0; j < m; ++j) A.at(m - 1 - j, j) = -1;
            for (long i = 0; i < m; ++i) A.at(i, m) = 1;
            A.at(m, m) = 1;
            th.on_char = A;
            th.on_cochar = A.transpose();
            break;
        }
        case Family::SO_even: {
            IMat A = IMat::identity(N);
            A.at(N - 1, N - 1) = -1;
            th.on_char = A;
            th.on_cochar = A;
            break;
        }
        default:
            throw DomainError("no standard involution for this family");
    }
    return th;
}

namespace {

// Chart of a lattice presented over the ambient Z^N: coords = to * ambient,
// ambient lift = from * coords.
struct Chart {
    IMat to, from;
    long dim = 0;
};

Chart full_chart(long N) {
    Chart ch;
    ch.to = IMat::identity(N);
    ch.from = IMat::identity(N);
    ch.dim = N;
    return ch;
}

// Chart of the primitive sublattice spanned by the columns of C.
Chart sub_chart(const IMat& C) {
    Chart ch;
    ch.dim = C.c;
    ch.from = C;
    Snf s = snf(C);
    if (s.rank != C.c) throw DomainError("sub_chart: dependent columns");
    for (long i = 0; i < s.rank; ++i)
        if (s.D.at(i, i) != 1) throw DomainError("sub_chart: basis not primitive");
    // C = Ui [I;0] Vi, so V [I|0] U is an integral left inverse
    IMat proj(C.c, C.r);
    for (long i = 0; i < C.c; ++i) proj.at(i, i) = 1;
    ch.to = s.V * (proj * s.U);
    return ch;
}

// Chart of the free quotient Z^N / (columns of R); requires the quotient
// to be torsion-free.
Chart quot_chart(long N, const IMat& R) {
    Snf s = snf(R);
    for (long i = 0; i < s.rank; ++i)
        if (s.D.at(i, i) != 1) throw DomainError("quot_chart: quotient has torsion");
    Chart ch;
    ch.dim = N - s.rank;
    IMat drop(ch.dim, N);
    for (long i = 0; i < ch.dim; ++i) drop.at(i, s.rank + i) = 1;
    ch.to = drop * s.U;
    ch.from = s.Ui.columns([&] {
        std::vector<long> idx(ch.dim);
        for (long i = 0; i < ch.dim; ++i) idx[i] = s.rank + i;
        return idx;
    }());
    return ch;
}

Chart char_chart(const RootDatum& rd) {
    if (rd.rel.c == 0) return full_chart(rd.ambient_rank);
    if (rd.char_is_quotient) return quot_chart(rd.ambient_rank, rd.rel);
    return sub_chart(ikernel(rd.rel.transpose()));
}

Chart cochar_chart(const RootDatum& rd) {
    if (rd.rel.c == 0) return full_chart(rd.ambient_rank);
    if (rd.char_is_quotient) return sub_chart(ikernel(rd.rel.transpose()));
    return quot_chart(rd.ambient_rank, rd.rel);
}

// Free-coinvariant chart of a lattice under an involution, composed back to
// ambient coordinates.
void coinvariant_chart(const Chart& ch, const IMat& A, IMat& P, IMat& S) {
    IMat Ax = ch.to * (A * ch.from);
    IMat J = Ax - IMat::identity(ch.dim);
    IMat sat = isaturate(J);
    if (sat.c == 0) {
        P = ch.to;
        S = ch.from;
        return;
    }
    Snf s = snf(sat);
    for (long i = 0; i < s.rank; ++i)
        if (s.D.at(i, i) != 1) throw DomainError("coinvariant_chart: saturation failed");
    long d = ch.dim - s.rank;
    IMat drop(d, ch.dim);
    for (long i = 0; i < d; ++i) drop.at(i, s.rank + i) = 1;
    std::vector<long> idx(d);
    for (long i = 0; i < d; ++i) idx[i] = s.rank + i;
    P = (drop * s.U) * ch.to;
    S = ch.from * s.Ui.columns(idx);
}

// Basis of the invariant sublattice, in ambient coordinates.
IMat fixed_basis(const Chart& ch, const IMat& A) {
    IMat Ax = ch.to * (A * ch.from);
    IMat K = ikernel(Ax - IMat::identity(ch.dim));
    return ch.from * K;
}

bool series_matches(const RootDatum& rd, const Involution& th, Family f) {
    if (rd.family != f) return false;
    try {
        return standard_involution(rd).on_char == th.on_char;
    } catch (const DomainError&) {
        return false;
    }
}

} // namespace

TwistSetup make_twist(const RootDatum& rd, const Involution& theta) {
    long N = rd.ambient_rank;
    const IMat& A = theta.on_char;
    const IMat& B = theta.on_cochar;
    if (A.r != N || A.c != N || B.r != N || B.c != N)
        throw DomainError("make_twist: involution of wrong size");
    if ((A.transpose() * B) != IMat::identity(N))
        throw DomainError("make_twist: involution does not preserve the pairing");
    {
        IMat pw = IMat::identity(N);
        for (int k = 0; k < theta.order; ++k) pw = A * pw;
        if (pw != IMat::identity(N)) throw DomainError("make_twist: order mismatch");
    }
    if (rd.rel.c > 0) {
        IMat img = A * rd.rel;
        if (img != rd.rel && img != -rd.rel)
            throw DomainError("make_twist: involution does not preserve the relation");
    }

    TwistSetup s;
    s.G = rd;
    s.theta = theta;
    Chart cc = char_chart(rd), vc = cochar_chart(rd);

    if (theta.order == 1) s.series = "split";
    else if (series_matches(rd, theta, Family::PGL) && rd.n_param % 2 == 1 && rd.n_param >= 3)
        s.series = "A2n";
    else if (series_matches(rd, theta, Family::GLxGm))
        s.series = "A2n-1";
    else if (series_matches(rd, theta, Family::SO_even) && rd.n_param >= 4)
        s.series = "Dn+1";
    else
        s.series = "generic";

    if (s.series == "A2n") {
        long n = (rd.n_param - 1) / 2;
        IMat P(n, N), S(N, n), F(N, n);
        for (long i = 0; i < n; ++i) {
            P.at(i, i) = 1;
            P.at(i, 2 * n - i) = -1;
            S.at(i, i) = 1;
            F.at(i, i) = 1;
            F.at(2 * n - i, i) = -1;
        }
        s.P_char = P;
        s.char_section = S;
        s.P_cochar = P;
        s.cochar_section = S;
        s.fixed_char_basis = F;
    } else if (s.series == "A2n-1") {
        long m = rd.n_param, n = m / 2;
        IMat Pc(n + 1, N), Sc(N, n + 1), Pv(n + 1, N), Sv(N, n + 1), F(N, n + 1);
        for (long i = 0; i < n; ++i) {
            Pc.at(i, i) = 1;
            Pc.at(i, m - 1 - i) = -1;
            Pv.at(i, i) = 1;
            Pv.at(i, m - 1 - i) = -1;
            Sc.at(i, i) = 1;
            Sv.at(i, i) = 1;
            F.at(i, i) = 1;
            F.at(m - 1 - i, i) = -1;
            F.at(n + i, n) = 1;
        }
        Pc.at(n, m) = 1;
        Sc.at(m, n) = 1;
        Pv.at(n, m) = 1;
        for (long k = n; k < m; ++k) Pv.at(n, k) = 1;
        Sv.at(m, n) = 1;
        F.at(m, n) = 1;
        s.P_char = Pc;
        s.char_section = Sc;
        s.P_cochar = Pv;
        s.cochar_section = Sv;
        s.fixed_char_basis = F;
    } else if (s.series == "Dn+1") {
        long n = N - 1;
        IMat P(n, N), S(N, n), F(N, n);
        for (long i = 0; i < n; ++i) {
            P.at(i, i) = 1;
            S.at(i, i) = 1;
            F.at(i, i) = 1;
        }
        s.P_char = P;
        s.char_section = S;
        s.P_cochar = P;
        s.cochar_section = S;
        s.fixed_char_basis = F;
    } else {
        coinvariant_chart(cc, A, s.P_char, s.char_section);
        coinvariant_chart(vc, B, s.P_cochar, s.cochar_section);
        IMat F = fixed_basis(cc, A);
        // normalize against the cochar chart so the pairing matrix is I
        IMat M(F.c, s.cochar_section.c);
        for (long i = 0; i < F.c; ++i)
            for (long j = 0; j < s.cochar_section.c; ++j) {
                mpz_class d = 0;
                for (long t = 0; t < N; ++t) d += F.at(t, i) * s.cochar_section.at(t, j);
                M.at(i, j) = d;
            }
        if (M.r != M.c || (idet(M) != 1 && idet(M) != -1))
            throw DomainError("make_twist: invariant/coinvariant pairing is not perfect");
        s.fixed_char_basis = F * iinverse(M.transpose());
    }

    // chart invariants
    auto check_zero = [](const IMat& m, const char* what) {
        if (!m.is_zero()) throw DomainError(std::string("make_twist: ") + what);
    };
    // coinvariance holds on the lattice itself, so compose with its basis
    check_zero(s.P_char * ((A - IMat::identity(N)) * cc.from), "char chart not coinvariant");
    check_zero(s.P_cochar * ((B - IMat::identity(N)) * vc.from), "cochar chart not coinvariant");
    if (rd.rel.c > 0 && rd.char_is_quotient) check_zero(s.P_char * rd.rel, "char chart keeps relation");
    if (rd.rel.c > 0 && !rd.char_is_quotient)
        check_zero(s.P_cochar * rd.rel, "cochar chart keeps relation");
    if (s.P_char * s.char_section != IMat::identity(s.P_char.r))
        throw DomainError("make_twist: char section mismatch");
    if (s.P_cochar * s.cochar_section != IMat::identity(s.P_cochar.r))
        throw DomainError("make_twist: cochar section mismatch");
    {
        IMat D = A * s.fixed_char_basis - s.fixed_char_basis;
        bool quot_char = rd.rel.c > 0 && rd.char_is_quotient;
        if (!quot_char) {
            check_zero(D, "fixed basis not invariant");
        } else {
            // invariance of the classes: each defect column lies along rel
            for (long j = 0; j < D.c; ++j) {
                std::vector<mpz_class> col(N);
                for (long i = 0; i < N; ++i) col[i] = D.at(i, j);
                if (!isolve(rd.rel, col))
                    throw DomainError("make_twist: fixed basis not invariant");
            }
        }
    }
    {
        IMat M(s.fixed_char_basis.c, s.cochar_section.c);
        for (long i = 0; i < M.r; ++i)
            for (long j = 0; j < M.c; ++j) {
                mpz_class d = 0;
                for (long t = 0; t < N; ++t)
                    d += s.fixed_char_basis.at(t, i) * s.cochar_section.at(t, j);
                M.at(i, j) = d;
            }
        if (M != IMat::identity(M.r))
            throw DomainError("make_twist: invariant basis not dual to cochar chart");
    }
    if (!is_primitive_sublattice_basis(s.fixed_char_basis))
        throw DomainError("make_twist: fixed basis not primitive");

    s.root_perm.resize(rd.roots.size());
    for (size_t i = 0; i < rd.roots.size(); ++i) {
        IVec img = imat_apply(A, rd.roots[i]);
        long idx = rd.char_is_quotient ? rd.find_root_mod_rel(img) : rd.find_root(img);
        if (idx < 0) throw DomainError("make_twist: involution does not permute roots");
        s.root_perm[i] = idx;
    }
    for (size_t i = 0; i < rd.roots.size(); ++i) {
        long j = (long)i;
        for (int k = 0; k < theta.order; ++k) j = s.root_perm[j];
        if (j != (long)i) throw DomainError("make_twist: root permutation order mismatch");
    }
    return s;
}

TwistSetup standard_twist(Family f, long n) {
    RootDatum rd = builtin_datum(f, n);
    return make_twist(rd, standard_involution(rd));
}

IVec coinvariant_project_char(const TwistSetup& s, const IVec& v) {
    return imat_apply(s.P_char, v);
}

IVec coinvariant_project_cochar(const TwistSetup& s, const IVec& v) {
    return imat_apply(s.P_cochar, v);
}

IVec fixed_char_coords(const TwistSetup& s, const IVec& v) {
    std::vector<mpz_class> b(v.begin(), v.end());
    IMat basis = s.fixed_char_basis;
    if (s.G.rel.c > 0 && s.G.char_is_quotient)
        basis = IMat::hstack(basis, s.G.rel);  // characters are classes mod rel
    auto sol = isolve(basis, b);
    if (!sol) throw DomainError("fixed_char_coords: vector not in the invariant lattice");
    sol->resize(s.fixed_char_basis.c);
    IVec out(sol->size());
    for (size_t i = 0; i < sol->size(); ++i) {
        if (!(*sol)[i].fits_slong_p()) throw ScaleError("fixed_char_coords: overflow");
        out[i] = (*sol)[i].get_si();
    }
    return out;
}

IVec twisted_sum(const TwistSetup& s, long root_idx, bool modified) {
    if (root_idx < 0 || root_idx >= (long)s.G.roots.size())
        throw DomainError("twisted_sum: bad root index");
    std::vector<long> orbit;
    long j = root_idx;
    do {
        orbit.push_back(j);
        j = s.root_perm[j];
    } while (j != root_idx);
    IVec sum(s.G.ambient_rank, 0);
    for (long k : orbit) sum = ivec_add(sum, s.G.roots[k]);
    if (!modified) return sum;
    return ivec_scale(sum, sum_scale(s, root_idx));
}

long sum_scale(const TwistSetup& s, long root_idx) {
    IVec sum = twisted_sum(s, root_idx, false);
    long pair = ivec_dot(s.G.coroots[root_idx], sum);
    if (pair == 0 || 2 % pair != 0)
        throw DomainError("sum_scale: orbit sum does not scale to a coroot partner");
    return 2 / pair;
}

ShortMiddleFilter short_middle_filter(const TwistSetup& s) {
    auto halvable_member = [](const std::vector<IVec>& folded, const IVec& v) {
        IVec h(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] % 2) return false;
            h[i] = v[i] / 2;
        }
        for (const IVec& w : folded)
            if (w == h) return true;
        return false;
    };
    std::vector<IVec> folded_roots, folded_coroots;
    for (size_t i = 0; i < s.G.roots.size(); ++i) {
        folded_roots.push_back(coinvariant_project_char(s, s.G.roots[i]));
        folded_coroots.push_back(coinvariant_project_cochar(s, s.G.coroots[i]));
    }
    ShortMiddleFilter f;
    for (size_t i = 0; i < s.G.roots.size(); ++i) {
        if (!halvable_member(folded_roots, folded_roots[i])) f.sm_roots.push_back((long)i);
        if (!halvable_member(folded_coroots, folded_coroots[i])) f.sm_coroots.push_back((long)i);
    }
    return f;
}

RootDatum endoscopic_datum(const TwistSetup& s) {
    ShortMiddleFilter f = short_middle_filter(s);
    RootDatum h;
    h.ambient_rank = s.P_cochar.r;
    h.name = "endoscopic";
    std::map<IVec, IVec> seen;
    for (long idx : f.sm_coroots) {
        IVec root_h = fixed_char_coords(s, twisted_sum(s, idx, true));
        IVec coroot_h = coinvariant_project_cochar(s, s.G.coroots[idx]);
        auto it = seen.find(root_h);
        if (it != seen.end()) {
            if (it->second != coroot_h)
                throw DomainError("endoscopic_datum: inconsistent coroot assignment");
            continue;
        }
        seen.emplace(root_h, coroot_h);
        push_pair(h, root_h, coroot_h);
    }
    // positivity by a generic linear functional, then indecomposability
    auto weight = [&](const IVec& v) {
        mpz_class w = 0, base = 1;
        for (long k = (long)v.size() - 1; k >= 0; --k) {
            w += base * v[k];
            base *= 1000;
        }
        return w;
    };
    std::vector<long> pos;
    for (size_t i = 0; i < h.roots.size(); ++i) {
        mpz_class w = weight(h.roots[i]);
        if (w == 0) throw DomainError("endoscopic_datum: functional vanishes on a root");
        if (w > 0) pos.push_back((long)i);
    }
    for (long i : pos) {
        bool decomposable = false;
        for (long j : pos) {
            if (j == i) continue;
            IVec d = ivec_sub(h.roots[i], h.roots[j]);
            if (ivec_is_zero(d)) continue;
            bool found = false;
            for (long k : pos)
                if (h.roots[k] == d) { found = true; break; }
            if (found) { decomposable = true; break; }
        }
        if (!decomposable) h.simple.push_back(i);
    }
    validate_datum(h);

    RootDatum target;
    bool have_target = false;
    if (s.series == "A2n") {
        target = builtin_datum(Family::Sp, s.G.n_param - 1);
        have_target = true;
    } else if (s.series == "A2n-1") {
        target = builtin_datum(Family::GSpin_odd, s.G.n_param + 1);
        have_target = true;
    } else if (s.series == "Dn+1") {
        target = builtin_datum(Family::Sp, s.G.n_param - 2);
        have_target = true;
    }
    if (have_target && data_isomorphic(h, target)) {
        h.name = target.name;
        h.family = target.family;
        h.n_param = target.n_param;
    }
    return h;
}

bool data_isomorphic(const RootDatum& a, const RootDatum& b) {
    if (a.rel.c != 0 || b.rel.c != 0)
        throw DomainError("data_isomorphic: only free ambient lattices supported");
    if (a.ambient_rank != b.ambient_rank) return false;
    if (a.roots.size() != b.roots.size()) return false;
    if (a.simple.size() != b.simple.size()) return false;
    long r = a.ambient_rank;
    long sc = (long)a.simple.size();
    if (sc == 0) return true;
    if (sc > 8) throw ScaleError("data_isomorphic: too many simple roots");

    auto cartan = [](const RootDatum& d) {
        long n = (long)d.simple.size();
        std::vector<std::vector<long>> C(n, std::vector<long>(n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                C[i][j] = ivec_dot(d.roots[d.simple[i]], d.coroots[d.simple[j]]);
        return C;
    };
    auto Ca = cartan(a), Cb = cartan(b);

    std::vector<long> perm(sc);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool match = true;
        for (long i = 0; i < sc && match; ++i)
            for (long j = 0; j < sc && match; ++j)
                if (Ca[i][j] != Cb[perm[i]][perm[j]]) match = false;
        if (!match) continue;

        // linear system for the lattice map phi (row-major r x r unknowns):
        //   phi * simple_a_i = simple_b_{perm(i)},  phi^T * cosimple_b_{perm(i)} = cosimple_a_i
        long ne = 2 * sc * r;
        IMat M(ne, r * r);
        std::vector<mpz_class> c(ne, mpz_class(0));
        long row = 0;
        for (long i = 0; i < sc; ++i) {
            const IVec& sa = a.roots[a.simple[i]];
            const IVec& sb = b.roots[b.simple[perm[i]]];
            for (long t = 0; t < r; ++t, ++row) {
                for (long k = 0; k < r; ++k) M.at(row, t * r + k) = sa[k];
                c[row] = sb[t];
            }
        }
        for (long i = 0; i < sc; ++i) {
            const IVec& cb = b.coroots[b.simple[perm[i]]];
            const IVec& ca = a.coroots[a.simple[i]];
            for (long k = 0; k < r; ++k, ++row) {
                for (long t = 0; t < r; ++t) M.at(row, t * r + k) = cb[t];
                c[row] = ca[k];
            }
        }
        auto part = isolve(M, c);
        if (!part) continue;
        IMat K = ikernel(M);
        if (K.c > 3) throw ScaleError("data_isomorphic: solution space too large");
        long range = 3, combos = 1;
        for (long i = 0; i < K.c; ++i) combos *= 2 * range + 1;
        for (long m = 0; m < combos; ++m) {
            std::vector<long> t(K.c);
            long mm = m;
            for (long i = 0; i < K.c; ++i) {
                t[i] = mm % (2 * range + 1) - range;
                mm /= 2 * range + 1;
            }
            IMat phi(r, r);
            for (long i = 0; i < r; ++i)
                for (long j = 0; j < r; ++j) {
                    mpz_class v = (*part)[i * r + j];
                    for (long k = 0; k < K.c; ++k) v += mpz_class(t[k]) * K.at(i * r + j, k);
                    phi.at(i, j) = v;
                }
            mpz_class d = idet(phi);
            if (d == 1 || d == -1) return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace endo
