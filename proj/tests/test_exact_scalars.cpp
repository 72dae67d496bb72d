#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include "endoscopy/rational.hpp"
#include "endoscopy/padic.hpp"
#include "endoscopy/zp_ext.hpp"
#include "endoscopy/cyclotomic.hpp"
#include "endoscopy/square_class.hpp"
#include "endoscopy/factor.hpp"

using namespace endo;

TEST_CASE("rational basics") {
    CHECK(Rat::parse("3/6") == Rat(1, 2));
    CHECK(Rat::parse("-14") == Rat(-14));
    CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
    CHECK(Rat(5).inv() == Rat(1, 5));
    CHECK(val_p(Rat(50, 27), 5) == 2);
    CHECK(val_p(Rat(50, 27), 3) == -3);
    CHECK(unit_part_p(Rat(50, 27), 5) == Rat(2, 27));
    CHECK(is_square_q(Rat(49, 16)));
    CHECK(!is_square_q(Rat(-4)));
    CHECK(!is_square_q(Rat(8)));
    CHECK(sqrt_q(Rat(49, 16)) == Rat(7, 4));
}

TEST_CASE("square units modulo 5^4 against full enumeration") {
    const long p = 5;
    const int K = 4;
    long pk = 625;
    // oracle: squares of all residues
    std::set<long> squares;
    for (long x = 0; x < pk; ++x) squares.insert((x * x) % pk);
    for (long u = 0; u < pk; ++u) {
        if (u % p == 0) continue;
        Zp z(p, K, u);
        CHECK(z.is_square_unit() == (squares.count(u) != 0));
    }
    CHECK(Zp(p, K, 6L).is_square_unit());
    CHECK(!Zp(p, K, 2L).is_square_unit());
}

TEST_CASE("sqrt_unit: exactness and deterministic sign") {
    for (long p : {5L, 7L, 13L}) {
        const int K = 4;
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, K);
        for (long u = 1; u < 200; ++u) {
            if (u % p == 0) continue;
            Zp z(p, K, u);
            if (!z.is_square_unit()) {
                CHECK_THROWS_AS(z.sqrt_unit(), DomainError);
                continue;
            }
            Zp r = z.sqrt_unit();
            CHECK(r * r == z);
            CHECK(r.residue() <= (p - 1) / 2);
        }
    }
}

TEST_CASE("truncated arithmetic tracks precision") {
    Zp a(5, 3, 7L), b(5, 2, 3L);
    CHECK((a + b).prec() == 2);
    CHECK((a * b).prec() == 2);
    Zp c(5, 3, 50L);     // val 2
    CHECK(c.val() == 2);
    Zp d(5, 3, 10L);     // val 1
    CHECK(c.div_exact(d).prec() == 2);
    CHECK(c.div_exact(d) == Zp(5, 2, 5L));
    Zp e(5, 1, 2L);
    CHECK_THROWS_AS(e.div_exact(d), PrecisionError);
    CHECK_THROWS_AS(d.div_exact(c), DomainError);      // 10 not divisible by 50
    CHECK_THROWS_AS(Zp(5, 3, 0L).inv(), DomainError);
    CHECK(Zp(5, 3, 4L) == Zp(5, 8, 4L));               // equality at shared digits
    CHECK(Zp(5, 3, 4L) != Zp(5, 3, 9L));
    CHECK(Zp(5, 3, 129L) == Zp(5, 2, 4L));             // 129 = 4 + 5^3
}

TEST_CASE("teichmuller lifts") {
    for (long p : {5L, 7L}) {
        const int K = 6;
        for (long u : {2L, 3L, p - 1, p + 2}) {
            if (u % p == 0) continue;
            Zp w = Zp(p, K, u).teichmuller();
            CHECK(w.pow(p - 1).is_one());
            CHECK(w.residue() == u % p);
        }
    }
}

TEST_CASE("hilbert symbol at odd p: pinned values and conic oracle at p=3") {
    // the class of the smallest nonresidue paired with p
    CHECK(quadratic_nonresidue(5) == 2);
    CHECK(hilbert_symbol(Rat(2), Rat(5), 5) == -1);
    CHECK(hilbert_symbol(Rat(5), Rat(5), 5) == 1);     // (p,p) = leg(-1), p=1 mod 4
    CHECK(hilbert_symbol(Rat(3), Rat(3), 3) == -1);    // p=3 mod 4

    // oracle at p = 3: z^2 = a x^2 + b y^2 has a primitive solution mod 27
    // iff the symbol is 1 (coefficients of valuation <= 1, odd p)
    auto conic_solvable = [](long a, long b) {
        for (long x = 0; x < 27; ++x)
            for (long y = 0; y < 27; ++y)
                for (long z = 0; z < 27; ++z) {
                    if (x % 3 == 0 && y % 3 == 0 && z % 3 == 0) continue;
                    if (((a * x * x + b * y * y - z * z) % 27 + 27) % 27 == 0) return true;
                }
        return false;
    };
    for (long a : {1L, 2L, 3L, 6L})
        for (long b : {1L, 2L, 3L, 6L}) {
            int sym = hilbert_symbol(Rat(a), Rat(b), 3);
            CHECK(sym == (conic_solvable(a, b) ? 1 : -1));
        }

    // bilinearity and symmetry on a sample grid
    std::vector<Rat> xs = {Rat(1), Rat(2), Rat(3), Rat(5), Rat(7), Rat(-1),
                           Rat(10), Rat(1, 5), Rat(-6, 35)};
    for (long p : {3L, 5L, 7L}) {
        for (auto& x : xs)
            for (auto& y : xs) {
                CHECK(hilbert_symbol(x, y, p) == hilbert_symbol(y, x, p));
                CHECK(hilbert_symbol(x * x, y, p) == 1);
                CHECK(hilbert_symbol(-x, x, p) == 1);
                for (auto& z : xs)
                    CHECK(hilbert_symbol(x * y, z, p) ==
                          hilbert_symbol(x, z, p) * hilbert_symbol(y, z, p));
            }
    }
}

TEST_CASE("square classes") {
    CHECK(SquareClassQ(Rat(18)).canonical() == 2);
    CHECK(SquareClassQ(Rat(-8)).canonical() == -2);
    CHECK(SquareClassQ(Rat(2)) == SquareClassQ(Rat(50)));
    CHECK(SquareClassQ(Rat(2)) * SquareClassQ(Rat(8)) == SquareClassQ(Rat(1)));
    CHECK(SquareClassQ(Rat(3, 5)) == SquareClassQ(Rat(15)));

    SquareClassZp u(Zp(5, 4, 6L)), v(Zp(5, 4, 2L));
    CHECK(u.is_trivial());
    CHECK(!v.is_trivial());
    CHECK((u * v).canonical() == 2);

    SquareClassQp a(Rat(10), 5);
    CHECK(a.has_odd_val());
    CHECK(!a.unit_is_residue());
    CHECK(a.canonical() == Rat(10));
    CHECK(SquareClassQp(Rat(30), 5) == SquareClassQp(Rat(120), 5));
    CHECK(SquareClassQp(Rat(4), 5).is_trivial());
}

TEST_CASE("cyclotomic arithmetic") {
    Cyc z8 = Cyc::zeta(8);
    CHECK(z8.pow(8).is_one());
    CHECK(z8.pow(4) == Cyc(-1));
    CHECK((z8 * z8.inv()).is_one());
    Cyc s = Cyc(1) + Cyc::zeta(5) + Cyc::zeta_pow(5, 2) + Cyc::zeta_pow(5, 3) + Cyc::zeta_pow(5, 4);
    CHECK(s.is_zero());
    CHECK((Cyc::zeta(3) + Cyc::zeta_pow(3, 2)) == Cyc(-1));
    Cyc mixed = Cyc::zeta(4) * Cyc::zeta(6);
    CHECK(mixed.root_of_unity_order() == 12);
    CHECK(Cyc::zeta(12).root_of_unity_exponent() == 1);
    CHECK((Cyc::zeta(7) + Cyc(1)).root_of_unity_order() == std::nullopt);
    CHECK(Cyc(Rat(2, 3)).is_rational());
    CHECK((Cyc::zeta(5) / Cyc::zeta(5)).rational_part() == Rat(1));
    // inverse against explicit geometric relation: (1 - z5)^-1 * (1 - z5) = 1
    Cyc t = Cyc(1) - Cyc::zeta(5);
    CHECK((t.inv() * t).is_one());
}

TEST_CASE("unramified extension ring") {
    auto R = ZpExtRing::get(5, 2, 6);
    ZpE zeta = ZpE::zeta(R);
    CHECK(zeta.pow(24).is_one());
    CHECK(zeta.pow(12) == -ZpE::one(R));
    CHECK(!(zeta.pow(8).is_one()));
    // Frobenius is a ring map of order f fixing Z_p
    ZpE x = zeta + ZpE::one(R);
    CHECK(x.frobenius().frobenius() == x);
    CHECK(x.frobenius() * zeta.frobenius() == (x * zeta).frobenius());
    CHECK(zeta.frobenius() == zeta.pow(5));
    ZpE c(R, Zp(5, 6, 17L));
    CHECK(c.frobenius() == c);
    CHECK(c.is_constant());
    CHECK(c.constant_part() == Zp(5, 6, 17L));
    CHECK(!zeta.is_constant());
    CHECK((x * x.inv()).is_one());
    // valuation and division
    ZpE y = x * ZpE(R, Zp(5, 6, 25L));
    CHECK(y.val() == 2);
    CHECK(y.div_exact(ZpE(R, Zp(5, 6, 5L))).val() == 1);
    // degree-3 ring sanity
    auto R3 = ZpExtRing::get(3, 3, 4);
    ZpE z3 = ZpE::zeta(R3);
    CHECK(z3.pow(26).is_one());
    CHECK(!(z3.pow(13).is_one()));
    ZpE w = z3.frobenius();
    CHECK(w == z3.pow(3));
}

TEST_CASE("desk-scale factorization") {
    auto f = factor_desk(mpz_class(720));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::make_pair(mpz_class(2), 4));
    CHECK(f[1] == std::make_pair(mpz_class(3), 2));
    CHECK(f[2] == std::make_pair(mpz_class(5), 1));
    mpz_class semiprime = mpz_class(1000000007) * mpz_class(1000000009);
    CHECK_THROWS_AS(factor_desk(semiprime), ScaleError);
    CHECK(prime_to_part(mpz_class(1500), 5) == 12);
    CHECK(mult_order(mpz_class(2), mpz_class(625), mpz_class(500)) == 500);
    CHECK(mult_order(mpz_class(7), mpz_class(8), mpz_class(2)) == 2);
}
