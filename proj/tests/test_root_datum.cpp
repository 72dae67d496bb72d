#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>

#include "endoscopy/cyclotomic.hpp"
#include "endoscopy/root_datum.hpp"
#include "endoscopy/steinberg.hpp"
#include "endoscopy/torus.hpp"
#include "endoscopy/weyl.hpp"

using namespace endo;

namespace {

TorusPoint<Cyc> zeta_point(const std::vector<long>& exps, long m = 24) {
    TorusPoint<Cyc> t;
    for (long e : exps) t.x.push_back(Cyc::zeta_pow(m, e));
    return t;
}

TorusPoint<Rat> rat_point(const std::vector<long>& num) {
    TorusPoint<Rat> t;
    for (long v : num) t.x.push_back(Rat(v));
    return t;
}

std::vector<IVec> sorted(std::vector<IVec> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("builtin data validate with expected root counts") {
    struct Row {
        Family f;
        long n;
        long roots;
        long rank;
    };
    const Row rows[] = {
        {Family::GL, 1, 0, 1},        {Family::GL, 3, 6, 3},       {Family::GL, 5, 20, 5},
        {Family::SL, 2, 2, 1},        {Family::SL, 5, 20, 4},      {Family::PGL, 2, 2, 1},
        {Family::PGL, 5, 20, 4},      {Family::Sp, 2, 2, 1},       {Family::Sp, 4, 8, 2},
        {Family::Sp, 8, 32, 4},       {Family::SO_odd, 3, 2, 1},   {Family::SO_odd, 5, 8, 2},
        {Family::SO_odd, 9, 32, 4},   {Family::SO_even, 4, 4, 2},  {Family::SO_even, 8, 24, 4},
        {Family::GSpin_odd, 3, 2, 2}, {Family::GSpin_odd, 7, 18, 4},
        {Family::GLxGm, 2, 2, 3},     {Family::GLxGm, 6, 30, 7},
    };
    for (const Row& r : rows) {
        RootDatum rd = builtin_datum(r.f, r.n);
        CHECK_NOTHROW(validate_datum(rd));
        CHECK((long)rd.roots.size() == r.roots);
        CHECK(rd.torus_rank() == r.rank);
        CHECK(rd.n_param == r.n);
    }
    CHECK(builtin_datum(Family::Sp, 4).name == "Sp(4)");
    CHECK(builtin_datum(Family::GSpin_odd, 5).name == "GSpin(5)");
    CHECK(builtin_datum(Family::GLxGm, 4).name == "Gl(4)xGm");
}

TEST_CASE("standard involutions square to one and preserve the relation") {
    for (Family f : {Family::GL, Family::SL, Family::PGL}) {
        RootDatum rd = builtin_datum(f, 5);
        Involution th = standard_involution(rd);
        CHECK(th.on_char * th.on_char == IMat::identity(rd.ambient_rank));
        CHECK(th.on_char * th.on_cochar.transpose() == IMat::identity(rd.ambient_rank));
        if (rd.rel.c == 1) {
            IMat img = th.on_char * rd.rel;
            CHECK((img == rd.rel || img == rd.rel * IMat::from_rows({{-1}})));
        }
    }
    RootDatum so8 = builtin_datum(Family::SO_even, 8);
    CHECK(standard_involution(so8).on_char * standard_involution(so8).on_char ==
          IMat::identity(4));
    RootDatum gg = builtin_datum(Family::GLxGm, 6);
    Involution th = standard_involution(gg);
    CHECK(th.on_char * th.on_char == IMat::identity(7));
}

TEST_CASE("series detection") {
    CHECK(standard_twist(Family::PGL, 5).series == "A2n");
    CHECK(standard_twist(Family::PGL, 3).series == "A2n");
    CHECK(standard_twist(Family::GLxGm, 6).series == "A2n-1");
    CHECK(standard_twist(Family::SO_even, 8).series == "Dn+1");
    RootDatum gl5 = builtin_datum(Family::GL, 5);
    CHECK(make_twist(gl5, standard_involution(gl5)).series == "generic");
    CHECK(make_twist(gl5, identity_involution(gl5)).series == "split");
    RootDatum sl5 = builtin_datum(Family::SL, 5);
    CHECK(make_twist(sl5, standard_involution(sl5)).series == "generic");
    RootDatum pgl4 = builtin_datum(Family::PGL, 4);
    CHECK(make_twist(pgl4, standard_involution(pgl4)).series == "generic");
}

TEST_CASE("orbit sums and scales on the odd projective series") {
    TwistSetup s = standard_twist(Family::PGL, 5);
    long short_mid = s.G.find_root({0, 1, -1, 0, 0});
    long long_mid = s.G.find_root({1, 0, 0, 0, -1});
    long generic = s.G.find_root({1, -1, 0, 0, 0});
    REQUIRE(short_mid >= 0);
    REQUIRE(long_mid >= 0);
    REQUIRE(generic >= 0);

    CHECK(sum_scale(s, short_mid) == 2);
    CHECK(sum_scale(s, long_mid) == 1);
    CHECK(sum_scale(s, generic) == 1);
    CHECK(twisted_sum(s, short_mid, true) == IVec{0, 2, 0, -2, 0});
    CHECK(twisted_sum(s, short_mid, false) == IVec{0, 1, 0, -1, 0});
    CHECK(twisted_sum(s, generic, true) == IVec{1, -1, 0, 1, -1});
    CHECK(twisted_sum(s, long_mid, true) == IVec{1, 0, 0, 0, -1});

    CHECK(coinvariant_project_char(s, {1, -1, 0, 0, 0}) == IVec{1, -1});
    CHECK(coinvariant_project_char(s, {0, 1, -1, 0, 0}) == IVec{0, 1});
    CHECK(fixed_char_coords(s, {0, 2, 0, -2, 0}) == IVec{0, 2});
    CHECK(fixed_char_coords(s, {1, 0, 0, 0, -1}) == IVec{1, 0});
}

TEST_CASE("divisibility filters") {
    TwistSetup a4 = standard_twist(Family::PGL, 5);
    ShortMiddleFilter f = short_middle_filter(a4);
    CHECK(f.sm_roots.size() == 16);    // the four long middle roots drop out
    CHECK(f.sm_coroots.size() == 16);

    TwistSetup a5 = standard_twist(Family::GLxGm, 6);
    ShortMiddleFilter g = short_middle_filter(a5);
    CHECK(g.sm_roots.size() == 30);
    CHECK(g.sm_coroots.size() == 30);

    TwistSetup d4 = standard_twist(Family::SO_even, 8);
    ShortMiddleFilter h = short_middle_filter(d4);
    CHECK(h.sm_roots.size() == 24);
    CHECK(h.sm_coroots.size() == 24);
}

TEST_CASE("endoscopic data of the three series match the expected groups") {
    for (long n = 1; n <= 4; ++n) {
        RootDatum h = endoscopic_datum(standard_twist(Family::PGL, 2 * n + 1));
        CHECK(h.family == Family::Sp);
        CHECK(h.n_param == 2 * n);
        CHECK(h.name == "Sp(" + std::to_string(2 * n) + ")");
        CHECK((long)h.roots.size() == 2 * n * n);
    }
    for (long n = 1; n <= 4; ++n) {
        RootDatum h = endoscopic_datum(standard_twist(Family::GLxGm, 2 * n));
        CHECK(h.family == Family::GSpin_odd);
        CHECK(h.n_param == 2 * n + 1);
        CHECK(h.ambient_rank == n + 1);
        CHECK((long)h.roots.size() == 2 * n * n);
    }
    for (long n = 1; n <= 4; ++n) {
        RootDatum h = endoscopic_datum(standard_twist(Family::SO_even, 2 * n + 2));
        CHECK(h.family == Family::Sp);
        CHECK(h.n_param == 2 * n);
        CHECK((long)h.roots.size() == 2 * n * n);
    }
}

TEST_CASE("generic charts reproduce the recorded construction") {
    // The full-lattice and quotient-lattice presentations of the odd special
    // linear group fold to data isomorphic to the recorded projective one.
    RootDatum target = builtin_datum(Family::Sp, 4);
    for (Family f : {Family::GL, Family::SL}) {
        RootDatum rd = builtin_datum(f, 5);
        RootDatum h = endoscopic_datum(make_twist(rd, standard_involution(rd)));
        CHECK(h.ambient_rank == 2);
        CHECK((long)h.roots.size() == 8);
        CHECK(data_isomorphic(h, target));
    }
}

TEST_CASE("based isomorphism distinguishes dual pairs") {
    CHECK(data_isomorphic(builtin_datum(Family::Sp, 4), builtin_datum(Family::Sp, 4)));
    CHECK(data_isomorphic(builtin_datum(Family::GL, 3), builtin_datum(Family::GL, 3)));
    CHECK_FALSE(data_isomorphic(builtin_datum(Family::Sp, 2), builtin_datum(Family::SO_odd, 3)));
    CHECK_FALSE(data_isomorphic(builtin_datum(Family::Sp, 4), builtin_datum(Family::SO_odd, 5)));
    CHECK_FALSE(data_isomorphic(builtin_datum(Family::Sp, 6), builtin_datum(Family::SO_odd, 7)));
}

TEST_CASE("twisted centralizer systems of the rank-four odd projective group") {
    TwistSetup s = standard_twist(Family::PGL, 5);
    struct Case {
        std::vector<long> exps;  // exponents of zeta_24
        std::string shape;
    };
    // zeta_4 = zeta_24^6, zeta_8 = zeta_24^3, zeta_6 = zeta_24^4, zeta_12 = zeta_24^2
    const Case cases[] = {
        {{0, 0, 0, 0, 0}, "SO(5)"},
        {{6, 6, 0, 18, 18}, "Sp(4)"},
        {{6, 0, 0, 0, 18}, "SO(3)xSp(2)"},
        {{3, 0, 0, 0, 21}, "SO(3)xGl(1)"},
        {{3, 3, 0, 21, 21}, "Gl(2)"},
        {{6, 3, 0, 21, 18}, "Sp(2)xGl(1)"},
        {{4, 2, 0, 22, 20}, "Gl(1)xGl(1)"},
    };
    for (const Case& c : cases) {
        TorusPoint<Cyc> t = zeta_point(c.exps);
        FixedSystem br = fixed_system_branch_route(s, t);
        FixedSystem nr = fixed_system_norm_route(s, t);
        CHECK(br.shape == c.shape);
        CHECK(nr.shape == c.shape);
        CHECK(sorted(br.folded) == sorted(nr.folded));
    }
}

TEST_CASE("the two centralizer routes agree on random points") {
    std::mt19937_64 rng(20240817);
    for (long m : {5L, 7L}) {
        TwistSetup s = standard_twist(Family::PGL, m);
        for (int it = 0; it < 15; ++it) {
            std::vector<long> exps(m);
            for (long& e : exps) e = (long)(rng() % 24);
            TorusPoint<Cyc> t = zeta_point(exps);
            FixedSystem br = fixed_system_branch_route(s, t);
            FixedSystem nr = fixed_system_norm_route(s, t);
            CHECK(sorted(br.folded) == sorted(nr.folded));
            CHECK(br.shape == nr.shape);
        }
    }
}

TEST_CASE("branch route on the even orthogonal series") {
    TwistSetup s = standard_twist(Family::SO_even, 6);
    // identity point: every orbit sum evaluates to one, nothing is divisible
    TorusPoint<Cyc> one = zeta_point({0, 0, 0});
    FixedSystem fs = fixed_system_branch_route(s, one);
    CHECK(fs.shape == "SO(5)");  // folded B2 system in the two-dimensional chart
}

TEST_CASE("weyl group enumeration") {
    CHECK(weyl_elements(builtin_datum(Family::GL, 3)).size() == 6);
    CHECK(weyl_elements(builtin_datum(Family::Sp, 4)).size() == 8);
    CHECK(weyl_elements(builtin_datum(Family::SO_odd, 5)).size() == 8);
    CHECK(weyl_elements(builtin_datum(Family::SO_even, 4)).size() == 4);
    CHECK(weyl_elements(builtin_datum(Family::SO_odd, 7)).size() == 48);
    CHECK(weyl_elements(builtin_datum(Family::GSpin_odd, 5)).size() == 8);

    RootDatum pgl5 = builtin_datum(Family::PGL, 5);
    CHECK(weyl_theta_fixed(pgl5, standard_involution(pgl5)).size() == 8);
}

TEST_CASE("weyl orbit equality of torus points") {
    RootDatum gl3 = builtin_datum(Family::GL, 3);
    CHECK(weyl_orbit_equal(gl3, rat_point({2, 3, 5}), rat_point({5, 3, 2})));
    CHECK(weyl_orbit_equal(gl3, rat_point({2, 3, 5}), rat_point({3, 5, 2})));
    CHECK_FALSE(weyl_orbit_equal(gl3, rat_point({2, 3, 5}), rat_point({2, 3, 7})));

    RootDatum pgl3 = builtin_datum(Family::PGL, 3);
    CHECK(points_equal(pgl3, rat_point({1, 2, 4}), rat_point({3, 6, 12})));
    CHECK(weyl_orbit_equal(pgl3, rat_point({1, 2, 4}), rat_point({12, 3, 6})));
    CHECK_FALSE(weyl_orbit_equal(pgl3, rat_point({1, 2, 4}), rat_point({1, 2, 5})));
}
