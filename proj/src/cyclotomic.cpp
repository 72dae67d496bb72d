#include "endoscopy/cyclotomic.hpp"
#include "endoscopy/errors.hpp"
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace endo {

// ---- dense polynomial helpers, constant term first ----

static void rpoly_trim(std::vector<Rat>& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

static std::vector<Rat> rpoly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> out(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

// a = q*b + r with deg r < deg b; b nonzero.
static void rpoly_divmod(std::vector<Rat> a, const std::vector<Rat>& b,
                         std::vector<Rat>& q, std::vector<Rat>& r) {
    rpoly_trim(a);
    std::vector<Rat> bb = b;
    rpoly_trim(bb);
    if (bb.empty()) throw DomainError("rpoly_divmod: zero divisor");
    q.assign(a.size() > bb.size() ? a.size() - bb.size() + 1 : 1, Rat(0));
    Rat lead = bb.back();
    while (a.size() >= bb.size()) {
        Rat f = a.back() / lead;
        size_t shift = a.size() - bb.size();
        q[shift] = f;
        for (size_t i = 0; i < bb.size(); ++i)
            a[shift + i] -= f * bb[i];
        a.pop_back();
        rpoly_trim(a);
        if (a.empty()) break;
    }
    rpoly_trim(q);
    r = a;
}

// Extended gcd: returns g (monic or constant) with u*a + v*b = g.
static void rpoly_gcdext(std::vector<Rat> a, std::vector<Rat> b,
                         std::vector<Rat>& g, std::vector<Rat>& u) {
    std::vector<Rat> u0{Rat(1)}, u1{};
    rpoly_trim(a);
    rpoly_trim(b);
    while (!b.empty()) {
        std::vector<Rat> q, r;
        rpoly_divmod(a, b, q, r);
        std::vector<Rat> qu1 = rpoly_mul(q, u1);
        std::vector<Rat> u2 = u0;
        if (u2.size() < qu1.size()) u2.resize(qu1.size(), Rat(0));
        for (size_t i = 0; i < qu1.size(); ++i) u2[i] -= qu1[i];
        rpoly_trim(u2);
        a = b; u0 = u1;
        b = r; u1 = u2;
    }
    g = a;
    u = u0;
}

// ---- cyclotomic polynomials over Z ----

static const std::vector<mpz_class>& cyclotomic_poly(long m);

static std::vector<mpz_class> compute_cyclotomic(long m) {
    // X^m - 1 divided by the product of Phi_d over proper divisors d of m.
    std::vector<mpz_class> num(m + 1, mpz_class(0));
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        const auto& phid = cyclotomic_poly(d);
        // exact monic long division
        std::vector<mpz_class> q(num.size() - phid.size() + 1, mpz_class(0));
        for (long i = (long)q.size() - 1; i >= 0; --i) {
            mpz_class c = num[i + phid.size() - 1];
            q[i] = c;
            if (c == 0) continue;
            for (size_t j = 0; j < phid.size(); ++j)
                num[i + j] -= c * phid[j];
        }
        num = q;
    }
    return num;
}

static const std::vector<mpz_class>& cyclotomic_poly(long m) {
    static std::map<long, std::vector<mpz_class>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    return cache.emplace(m, compute_cyclotomic(m)).first->second;
}

std::shared_ptr<const CycRing> CycRing::get(long m) {
    if (m < 1) throw DomainError("CycRing: conductor must be positive");
    if (m > 10000) throw ScaleError("CycRing: conductor beyond supported scale");
    static std::map<long, std::shared_ptr<const CycRing>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto ring = std::shared_ptr<const CycRing>(new CycRing(m, cyclotomic_poly(m)));
    return cache.emplace(m, ring).first->second;
}

// ---- elements ----

static std::vector<Rat> reduce_mod_ring(std::vector<Rat> v, const CycRing& R) {
    long d = R.degree();
    const auto& phi = R.modulus();
    for (long i = (long)v.size() - 1; i >= d; --i) {
        Rat c = v[i];
        if (c.is_zero()) continue;
        // Phi is monic: v -= c * X^(i-d) * Phi
        for (long j = 0; j <= d; ++j)
            v[i - d + j] -= c * Rat(phi[j]);
    }
    v.resize(d, Rat(0));
    return v;
}

Cyc::Cyc(const Rat& r) : ring_(CycRing::get(1)), c_{r} {}

Cyc Cyc::zeta(long m) { return zeta_pow(m, 1); }

Cyc Cyc::zeta_pow(long m, long k) {
    auto R = CycRing::get(m);
    k = ((k % m) + m) % m;
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = Rat(1);
    return Cyc(R, reduce_mod_ring(std::move(v), *R));
}

bool Cyc::is_zero() const {
    for (auto& c : c_) if (!c.is_zero()) return false;
    return true;
}

bool Cyc::is_one() const {
    if (c_.empty() || c_[0] != Rat(1)) return false;
    for (size_t i = 1; i < c_.size(); ++i) if (!c_[i].is_zero()) return false;
    return true;
}

bool Cyc::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i) if (!c_[i].is_zero()) return false;
    return true;
}

Rat Cyc::rational_part() const {
    if (!is_rational()) throw DomainError("Cyc::rational_part: not rational");
    return c_.empty() ? Rat(0) : c_[0];
}

long Cyc::val() const { return is_zero() ? VAL_INF : 0; }

Cyc Cyc::in_ring(long m2) const {
    long m = conductor();
    if (m2 == m) return *this;
    if (m2 % m != 0) throw DomainError("Cyc::in_ring: conductor must be a multiple");
    auto R2 = CycRing::get(m2);
    long stride = m2 / m;
    std::vector<Rat> v((c_.size() - 1) * stride + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i * stride] = c_[i];
    return Cyc(R2, reduce_mod_ring(std::move(v), *R2));
}

void Cyc::align(Cyc& a, Cyc& b) {
    long ma = a.conductor(), mb = b.conductor();
    if (ma == mb) return;
    long l = std::lcm(ma, mb);
    a = a.in_ring(l);
    b = b.in_ring(l);
}

Cyc Cyc::operator-() const {
    std::vector<Rat> v = c_;
    for (auto& x : v) x = -x;
    return Cyc(ring_, std::move(v));
}

Cyc Cyc::operator+(const Cyc& o) const {
    Cyc a = *this, b = o;
    align(a, b);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
    Cyc a = *this, b = o;
    align(a, b);
    std::vector<Rat> prod = rpoly_mul(a.c_, b.c_);
    if (prod.empty()) prod.assign(1, Rat(0));
    return Cyc(a.ring_, reduce_mod_ring(std::move(prod), *a.ring_));
}

bool Cyc::operator==(const Cyc& o) const {
    Cyc a = *this, b = o;
    align(a, b);
    return a.c_ == b.c_;
}

Cyc Cyc::inv() const {
    if (is_zero()) throw DomainError("Cyc::inv: zero");
    std::vector<Rat> phi;
    for (auto& z : ring_->modulus()) phi.push_back(Rat(z));
    std::vector<Rat> g, u;
    rpoly_gcdext(c_, phi, g, u);
    if (g.size() != 1)
        throw DomainError("Cyc::inv: element shares a factor with the modulus");
    Rat ginv = g[0].inv();
    std::vector<Rat> v = u;
    for (auto& x : v) x *= ginv;
    return Cyc(ring_, reduce_mod_ring(std::move(v), *ring_));
}

Cyc Cyc::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Cyc out = one_like(), base = *this;
    while (e > 0) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

std::optional<long> Cyc::root_of_unity_exponent() const {
    long m = conductor();
    for (long k = 0; k < m; ++k)
        if (*this == zeta_pow(m, k)) return k;
    return std::nullopt;
}

std::optional<long> Cyc::root_of_unity_order() const {
    auto k = root_of_unity_exponent();
    if (!k) return std::nullopt;
    long m = conductor();
    return m / std::gcd(m, *k);
}

std::string Cyc::str() const {
    long m = conductor();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) { os << c_[i].str(); continue; }
        if (c_[i] != Rat(1)) os << c_[i].str() << "*";
        os << "z" << m;
        if (i > 1) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyc& z) { return os << z.str(); }

} // namespace endo
