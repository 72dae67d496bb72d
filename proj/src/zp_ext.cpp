#include "endoscopy/zp_ext.hpp"
#include "endoscopy/factor.hpp"
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace endo {

using Vz = std::vector<mpz_class>;

static Vz vz_mod(Vz v, const mpz_class& m) {
    for (auto& x : v) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return v;
}

// Reduce a raw polynomial by the monic modulus F (length f+1), then mod m.
static Vz vz_reduce(Vz v, const Vz& F, const mpz_class& m) {
    long f = (long)F.size() - 1;
    for (long i = (long)v.size() - 1; i >= f; --i) {
        mpz_class c;
        mpz_fdiv_r(c.get_mpz_t(), v[i].get_mpz_t(), m.get_mpz_t());
        if (c != 0)
            for (long j = 0; j <= f; ++j) v[i - f + j] -= c * F[j];
        v[i] = 0;
    }
    v.resize(f, mpz_class(0));
    return vz_mod(std::move(v), m);
}

static Vz vz_mulmod(const Vz& a, const Vz& b, const Vz& F, const mpz_class& m) {
    Vz prod(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    }
    return vz_reduce(std::move(prod), F, m);
}

static Vz vz_powmod(Vz base, mpz_class e, const Vz& F, const mpz_class& m) {
    long f = (long)F.size() - 1;
    Vz out(f, mpz_class(0));
    out[0] = 1;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) out = vz_mulmod(out, base, F, m);
        base = vz_mulmod(base, base, F, m);
        e /= 2;
    }
    return out;
}

// Horner evaluation of an integer polynomial at a ring element.
static Vz vz_eval_poly(const Vz& poly, const Vz& at, const Vz& F, const mpz_class& m) {
    long f = (long)F.size() - 1;
    Vz acc(f, mpz_class(0));
    for (long i = (long)poly.size() - 1; i >= 0; --i) {
        acc = vz_mulmod(acc, at, F, m);
        acc[0] += poly[i];
    }
    return vz_mod(std::move(acc), m);
}

// ---- F_p[X] helpers for finding the modulus ----

static Vz fp_trim(Vz a) { while (!a.empty() && a.back() == 0) a.pop_back(); return a; }

static Vz fp_rem(Vz a, const Vz& b, const mpz_class& p) {
    a = fp_trim(vz_mod(std::move(a), p));
    Vz bb = fp_trim(vz_mod(b, p));
    if (bb.empty()) throw DomainError("fp_rem: zero divisor");
    mpz_class lead_inv;
    mpz_invert(lead_inv.get_mpz_t(), bb.back().get_mpz_t(), p.get_mpz_t());
    while (a.size() >= bb.size()) {
        mpz_class c = a.back() * lead_inv % p;
        size_t shift = a.size() - bb.size();
        for (size_t i = 0; i < bb.size(); ++i)
            a[shift + i] = ((a[shift + i] - c * bb[i]) % p + p) % p;
        a = fp_trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

static Vz fp_gcd(Vz a, Vz b, const mpz_class& p) {
    a = fp_trim(vz_mod(std::move(a), p));
    b = fp_trim(vz_mod(std::move(b), p));
    while (!b.empty()) {
        Vz r = fp_rem(a, b, p);
        a = b;
        b = r;
    }
    return a;
}

static bool fp_irreducible(const Vz& f_poly, long p) {
    mpz_class pz(p);
    long f = (long)f_poly.size() - 1;
    Vz x{mpz_class(0), mpz_class(1)};
    // t_k = X^(p^k) mod f_poly, by repeated p-th powering
    Vz t = x;
    std::vector<Vz> tk(f + 1);
    tk[0] = t;
    for (long k = 1; k <= f; ++k) {
        t = vz_powmod(t, pz, f_poly, pz);
        tk[k] = t;
    }
    Vz diff = tk[f];
    if (diff.size() < 2) diff.resize(2, mpz_class(0));
    diff[1] -= 1;
    if (!fp_trim(vz_mod(diff, pz)).empty()) return false;   // X^(p^f) != X
    for (long q = 2; q <= f; ++q) {
        if (f % q != 0) continue;
        bool qprime = true;
        for (long d = 2; d * d <= q; ++d) if (q % d == 0) { qprime = false; break; }
        if (!qprime) continue;
        Vz dk = tk[f / q];
        if (dk.size() < 2) dk.resize(2, mpz_class(0));
        dk[1] -= 1;
        Vz g = fp_gcd(f_poly, dk, pz);
        if (g.size() != 1) return false;
    }
    return true;
}

// Inverse of a unit in Z[X]/(F, p^prec): invert mod p, then Hensel-double.
static Vz vz_inverse(const Vz& a, const Vz& F, long p, int prec) {
    mpz_class pz(p);
    // extended Euclid over F_p between a and F
    Vz r0 = vz_mod(F, pz), r1 = fp_trim(vz_mod(a, pz));
    Vz s0{}, s1{mpz_class(1)};
    if (r1.empty()) throw DomainError("ZpE: inverse of non-unit");
    while (true) {
        Vz rem = fp_rem(r0, r1, pz);
        // quotient-free update: compute s2 = s0 - q*s1 by long division replay
        // do explicit division to get q
        Vz aa = fp_trim(vz_mod(r0, pz)), bb = r1;
        mpz_class lead_inv;
        mpz_invert(lead_inv.get_mpz_t(), bb.back().get_mpz_t(), pz.get_mpz_t());
        Vz q(aa.size() >= bb.size() ? aa.size() - bb.size() + 1 : 1, mpz_class(0));
        while (aa.size() >= bb.size()) {
            mpz_class c = aa.back() * lead_inv % pz;
            size_t shift = aa.size() - bb.size();
            q[shift] = c;
            for (size_t i = 0; i < bb.size(); ++i)
                aa[shift + i] = ((aa[shift + i] - c * bb[i]) % pz + pz) % pz;
            aa = fp_trim(std::move(aa));
            if (aa.empty()) break;
        }
        // s2 = s0 - q * s1 (mod p)
        Vz qs(q.size() + (s1.empty() ? 1 : s1.size()), mpz_class(0));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        Vz s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), mpz_class(0));
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        s2 = fp_trim(vz_mod(std::move(s2), pz));
        r0 = r1; r1 = fp_trim(rem);
        s0 = s1; s1 = s2;
        if (r1.empty()) break;
    }
    if (r0.size() != 1) throw DomainError("ZpE: inverse of non-unit");
    mpz_class g_inv;
    mpz_invert(g_inv.get_mpz_t(), r0[0].get_mpz_t(), pz.get_mpz_t());
    Vz b = s0;
    for (auto& x : b) x = x * g_inv % pz;
    long f = (long)F.size() - 1;
    b.resize(f, mpz_class(0));
    // Hensel: b <- b(2 - ab), doubling digits up to prec
    int have = 1;
    mpz_class mod = pz;
    while (have < prec) {
        have = std::min(2 * have, prec);
        mpz_ui_pow_ui(mod.get_mpz_t(), (unsigned long)p, (unsigned long)have);
        Vz ab = vz_mulmod(a, b, F, mod);
        Vz two_minus(ab.size(), mpz_class(0));
        for (size_t i = 0; i < ab.size(); ++i) two_minus[i] = -ab[i];
        two_minus[0] += 2;
        b = vz_mulmod(b, two_minus, F, mod);
    }
    return b;
}

std::shared_ptr<const ZpExtRing> ZpExtRing::get(long p, int f, int prec) {
    if (p < 3 || p % 2 == 0) throw DomainError("ZpExtRing: p must be an odd prime");
    mpz_class pz(p);
    if (!mpz_probab_prime_p(pz.get_mpz_t(), 32)) throw DomainError("ZpExtRing: p must be prime");
    if (f < 1 || f > 16) throw ScaleError("ZpExtRing: degree beyond supported scale");
    if (prec < 1 || prec > 4096) throw ScaleError("ZpExtRing: precision beyond supported scale");

    static std::map<std::tuple<long, int, int>, std::shared_ptr<const ZpExtRing>> cache;
    auto key = std::make_tuple(p, f, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    auto ring = std::shared_ptr<ZpExtRing>(new ZpExtRing());
    ring->p_ = p;
    ring->f_ = f;
    ring->prec_ = prec;
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), (unsigned long)p, (unsigned long)prec);

    if (f == 1) {
        ring->F_ = {mpz_class(0), mpz_class(1)};   // X, so the ring is Z_p itself
    } else {
        // deterministic search for a monic irreducible of degree f over F_p
        Vz fbar;
        for (long counter = 0;; ++counter) {
            fbar.assign(f + 1, mpz_class(0));
            fbar[f] = 1;
            long c = counter;
            for (int i = 0; i < f && (c > 0 || i == 0); ++i) {
                fbar[i] = c % p;
                c /= p;
            }
            if (c > 0) throw ScaleError("ZpExtRing: no irreducible polynomial found");
            if (fp_irreducible(fbar, p)) break;
        }
        ring->F_ = vz_mod(fbar, m);
    }

    const Vz& F = ring->F_;

    // Frobenius: the root of F congruent to x^p mod p, by Newton iteration.
    Vz x(f, mpz_class(0));
    Vz r;
    if (f == 1) {
        r = {mpz_class((-F[0]) % m)};   // the unique root of the linear modulus
    } else {
        x[1] = 1;
        r = vz_powmod(x, pz, F, pz);
        Vz Fder(f, mpz_class(0));
        for (long i = 1; i <= f; ++i) Fder[i - 1] = F[i] * i;
        for (int it2 = 0; it2 < 64; ++it2) {
            Vz val = vz_eval_poly(F, r, F, m);
            bool zero = true;
            for (auto& v : val) if (v % m != 0) { zero = false; break; }
            if (zero) break;
            Vz der = vz_eval_poly(Fder, r, F, m);
            Vz der_inv = vz_inverse(der, F, p, prec);
            Vz corr = vz_mulmod(val, der_inv, F, m);
            for (long i = 0; i < f; ++i) r[i] -= corr[i];
            r = vz_mod(std::move(r), m);
        }
    }
    ring->frob_pow_.assign(f, Vz(f, mpz_class(0)));
    ring->frob_pow_[0][0] = 1;
    for (long i = 1; i < f; ++i) ring->frob_pow_[i] = vz_mulmod(ring->frob_pow_[i - 1], r, F, m);

    // Teichmueller generator: residue-field generator, then q-power iteration.
    mpz_class q1;
    mpz_ui_pow_ui(q1.get_mpz_t(), (unsigned long)p, (unsigned long)f);
    q1 -= 1;
    auto fac = factor_desk(q1);
    Vz g;
    for (long c0 = 0;; ++c0) {
        if (c0 >= p * (f > 1 ? p : 1)) throw ScaleError("ZpExtRing: no residue generator found");
        g.assign(f, mpz_class(0));
        if (f == 1) {
            g[0] = 1 + c0;
        } else {
            g[1] = 1;
            g[0] = c0;
        }
        bool ok = fp_trim(vz_mod(g, pz)).size() > 0;
        for (auto& [ql, e] : fac) {
            if (!ok) break;
            (void)e;
            Vz t = vz_powmod(g, q1 / ql, F, pz);
            if (t.size() > 0 && t[0] == 1) {
                bool is_one = true;
                for (size_t i = 1; i < t.size(); ++i) if (t[i] != 0) { is_one = false; break; }
                if (is_one) ok = false;
            }
        }
        if (ok) break;
    }
    mpz_class qq = q1 + 1;
    Vz z = g;
    for (int i = 0; i <= prec + 1; ++i) {
        Vz z2 = vz_powmod(z, qq, F, m);
        if (z2 == z) break;
        z = z2;
    }
    ring->zeta_ = z;

    auto out = std::shared_ptr<const ZpExtRing>(ring);
    return cache.emplace(key, out).first->second;
}

mpz_class ZpExtRing::pk() const {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), (unsigned long)p_, (unsigned long)prec_);
    return m;
}

// ---- elements ----

void ZpE::normalize() {
    c_.resize(R_->f(), mpz_class(0));
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), (unsigned long)R_->p(), (unsigned long)prec_);
    c_ = vz_mod(std::move(c_), m);
}

ZpE::ZpE(std::shared_ptr<const ZpExtRing> R, int prec, std::vector<mpz_class> coeffs)
    : R_(std::move(R)), prec_(prec), c_(std::move(coeffs)) {
    if (!R_) throw DomainError("ZpE: null ring");
    if (prec_ < 1) throw PrecisionError("ZpE: at least one digit required");
    if (prec_ > R_->prec()) throw PrecisionError("ZpE: precision above ring precision");
    normalize();
}

ZpE::ZpE(std::shared_ptr<const ZpExtRing> R, const Zp& z)
    : R_(std::move(R)), prec_(z.prec()) {
    if (z.p() != R_->p()) throw DomainError("ZpE: mixed primes");
    if (prec_ > R_->prec()) throw PrecisionError("ZpE: precision above ring precision");
    c_.assign(R_->f(), mpz_class(0));
    c_[0] = z.residue_full();
    normalize();
}

ZpE ZpE::zero(std::shared_ptr<const ZpExtRing> R) {
    int prec = R->prec();
    return ZpE(std::move(R), prec, {});
}

ZpE ZpE::one(std::shared_ptr<const ZpExtRing> R) {
    int prec = R->prec();
    return ZpE(std::move(R), prec, {mpz_class(1)});
}

ZpE ZpE::gen(std::shared_ptr<const ZpExtRing> R) {
    int prec = R->prec();
    std::vector<mpz_class> c(R->f(), mpz_class(0));
    if (R->f() == 1) c[0] = (-R->modulus_poly()[0]) % R->pk();
    else c[1] = 1;
    return ZpE(std::move(R), prec, std::move(c));
}

ZpE ZpE::zeta(std::shared_ptr<const ZpExtRing> R) {
    int prec = R->prec();
    auto z = R->zeta_coeffs();
    return ZpE(std::move(R), prec, z);
}

bool ZpE::is_zero() const {
    for (auto& x : c_) if (x != 0) return false;
    return true;
}

bool ZpE::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i) if (c_[i] != 0) return false;
    return true;
}

long ZpE::val() const {
    long best = prec_;
    for (auto& x : c_) {
        if (x == 0) continue;
        mpz_class t = x;
        long v = 0;
        while (mpz_divisible_ui_p(t.get_mpz_t(), (unsigned long)R_->p())) {
            mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), (unsigned long)R_->p());
            ++v;
        }
        best = std::min(best, v);
    }
    return best;
}

void ZpE::require_same_ring(const ZpE& o) const {
    if (R_->p() != o.R_->p() || R_->f() != o.R_->f())
        throw DomainError("ZpE: mixed rings");
}

ZpE ZpE::operator-() const {
    std::vector<mpz_class> c = c_;
    for (auto& x : c) x = -x;
    return ZpE(R_, prec_, std::move(c));
}

ZpE ZpE::operator+(const ZpE& o) const {
    require_same_ring(o);
    std::vector<mpz_class> c = c_;
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
    return ZpE(R_, std::min(prec_, o.prec_), std::move(c));
}

ZpE ZpE::operator-(const ZpE& o) const { return *this + (-o); }

ZpE ZpE::operator*(const ZpE& o) const {
    require_same_ring(o);
    int prec = std::min(prec_, o.prec_);
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), (unsigned long)R_->p(), (unsigned long)prec);
    return ZpE(R_, prec, vz_mulmod(c_, o.c_, R_->modulus_poly(), m));
}

bool ZpE::operator==(const ZpE& o) const {
    require_same_ring(o);
    int prec = std::min(prec_, o.prec_);
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), (unsigned long)R_->p(), (unsigned long)prec);
    for (size_t i = 0; i < c_.size(); ++i) {
        mpz_class a, b;
        mpz_fdiv_r(a.get_mpz_t(), c_[i].get_mpz_t(), m.get_mpz_t());
        mpz_fdiv_r(b.get_mpz_t(), o.c_[i].get_mpz_t(), m.get_mpz_t());
        if (a != b) return false;
    }
    return true;
}

ZpE ZpE::inv() const {
    if (!is_unit()) throw DomainError("ZpE::inv: not a unit");
    return ZpE(R_, prec_, vz_inverse(c_, R_->modulus_poly(), R_->p(), prec_));
}

ZpE ZpE::div_exact(const ZpE& o) const {
    require_same_ring(o);
    if (o.is_zero()) throw DomainError("ZpE::div_exact: division by zero");
    long vb = o.val();
    int out_prec = std::min(prec_, o.prec_) - (int)vb;
    if (out_prec < 1) throw PrecisionError("ZpE::div_exact: no digits left");
    if (is_zero()) return ZpE(R_, out_prec, {});
    if (val() < vb) throw DomainError("ZpE::div_exact: not divisible");
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)R_->p(), (unsigned long)vb);
    std::vector<mpz_class> a = c_, b = o.c_;
    for (auto& x : a) x /= pk;
    for (auto& x : b) x /= pk;
    return ZpE(R_, out_prec, std::move(a)) * ZpE(R_, out_prec, std::move(b)).inv();
}

ZpE ZpE::pow(const mpz_class& e) const {
    if (e < 0) return inv().pow(mpz_class(-e));
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), (unsigned long)R_->p(), (unsigned long)prec_);
    return ZpE(R_, prec_, vz_powmod(c_, e, R_->modulus_poly(), m));
}

ZpE ZpE::with_prec(int k) const {
    if (k > prec_) throw PrecisionError("ZpE::with_prec: cannot add digits");
    return ZpE(R_, k, c_);
}

ZpE ZpE::frobenius() const {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), (unsigned long)R_->p(), (unsigned long)prec_);
    std::vector<mpz_class> out(R_->f(), mpz_class(0));
    for (long i = 0; i < R_->f(); ++i) {
        if (c_[i] == 0) continue;
        const auto& ri = R_->frob_powers()[i];
        for (long j = 0; j < R_->f(); ++j) out[j] += c_[i] * ri[j];
    }
    return ZpE(R_, prec_, std::move(out));
}

ZpE ZpE::teichmuller() const {
    if (is_zero()) return *this;
    if (!is_unit()) throw DomainError("ZpE::teichmuller: not a unit");
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), (unsigned long)R_->p(), (unsigned long)R_->f());
    ZpE x = *this;
    for (int i = 0; i <= prec_ + 1; ++i) {
        ZpE y = x.pow(q);
        if (y.c_ == x.c_) return x;
        x = y;
    }
    throw PrecisionError("ZpE::teichmuller: no convergence");
}

bool ZpE::is_constant() const {
    for (size_t i = 1; i < c_.size(); ++i) if (c_[i] != 0) return false;
    return true;
}

Zp ZpE::constant_part() const {
    if (!is_constant()) throw DomainError("ZpE::constant_part: not in Z_p");
    return Zp(R_->p(), prec_, c_.empty() ? mpz_class(0) : c_[0]);
}

ZpE ZpE::zero_like() const { return ZpE(R_, prec_, {}); }
ZpE ZpE::one_like() const { return ZpE(R_, prec_, {mpz_class(1)}); }
ZpE ZpE::from_int_like(long n) const { return ZpE(R_, prec_, {mpz_class(n)}); }

std::string ZpE::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i].get_str();
    }
    os << "] mod " << R_->p() << "^" << prec_;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const ZpE& z) { return os << z.str(); }

} // namespace endo
