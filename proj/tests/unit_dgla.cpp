#include "doctest.h"
#include "mmb/dgla.hpp"
#include "test_util.hpp"

using namespace mmb;
using namespace mmbtest;

namespace {

const DgLaSpec& ym() {
    static DgLaSpec g = build_ym(sl2());
    return g;
}

const DgLaSpec& gr() {
    static DgLaSpec g = build_gr();
    return g;
}

std::vector<int> homology_at(const DgLaSpec& g, const Mom& k) {
    return homology_dims(PolyComplex{g.grading, g.d}, k);
}

void check_splittings(const ZigZagData& zz) {
    int n = zz.quot.grading.total(), nm = zz.mid.grading.total(), ns = zz.sub.grading.total();
    CHECK(zz.r * zz.l == QMat::identity(n));
    CHECK(zz.lp * zz.rp == QMat::identity(ns));
    CHECK((zz.r * zz.rp).is_zero());
    CHECK((zz.lp * zz.l).is_zero());
    CHECK(zz.l * zz.r + zz.rp * zz.lp == QMat::identity(nm));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
        Mom k = rand_mom(rng);
        QMat dm = zz.mid.d.eval(k);
        CHECK(zz.r * dm == zz.quot.d.eval(k) * zz.r);
        CHECK(dm * zz.rp == zz.rp * zz.sub.d.eval(k));
    }
}

void check_gamma_maps(const ZigZagData& zz) {
    std::mt19937_64 rng(9);
    for (int s = 0; s < 2; ++s) {
        PolyComplex G = build_gamma(zz.twice_h, s == 0 ? -1 : 1);
        for (int t = 0; t < 3; ++t) {
            Mom k = rand_mom(rng);
            CHECK(zz.sub.d.eval(k) * zz.phi[s] == zz.phi[s] * G.d.eval(k));
        }
        CHECK(zz.psi[s] * zz.phi[s] == QMat::identity(G.grading.total()));
        CHECK((zz.psi[1 - s] * zz.phi[s]).is_zero());
    }
}

}  // namespace

TEST_CASE("sl2 is a valid internal algebra; broken ones are rejected") {
    LieAlgebra u = sl2();
    CHECK_NOTHROW(validate(u));
    LieAlgebra bad = u;
    bad.form(2, 2) = QI(0);
    CHECK_THROWS_AS(validate(bad), InvalidInternalAlgebra);
    bad = u;
    bad.f[0 * 3 + 1] = QVec{QI(1), QI(0), QI(0)};
    CHECK_THROWS_AS(validate(bad), InvalidInternalAlgebra);
    CHECK_THROWS_AS(build_ym(bad), InvalidInternalAlgebra);
}

TEST_CASE("graded dimensions") {
    CHECK(ym().grading.lo == 0);
    CHECK(ym().grading.dims == std::vector<int>{3, 21, 21, 3});
    CHECK(ym().base_dim == 16);
    CHECK(gr().grading.lo == 0);
    CHECK(gr().grading.dims == std::vector<int>{10, 40, 50, 24, 4});
    CHECK(gr().zz.sub.grading.dims == std::vector<int>{10, 16, 6});
}

TEST_CASE("dgla axioms") {
    for (const DgLaSpec* g : {&ym(), &gr()}) {
        AxiomReport rep = check_axioms(*g, 40, 123);
        INFO(g->label);
        CHECK(rep.d_squared);
        for (const auto& f : rep.failures) INFO(f);
        CHECK(rep.failures.empty());
    }
}

TEST_CASE("homology is the two helicities on shell and vanishes off shell") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 10; ++t) {
        Mom k = rand_onshell(rng);
        CHECK(homology_at(ym(), k) == std::vector<int>{0, 6, 6, 0});
        CHECK(homology_at(gr(), k) == std::vector<int>{0, 2, 2, 0, 0});
        Mom q = rand_offshell(rng);
        CHECK(homology_at(ym(), q) == std::vector<int>{0, 0, 0, 0});
        CHECK(homology_at(gr(), q) == std::vector<int>{0, 0, 0, 0, 0});
    }
}

TEST_CASE("zig-zag data: splittings, exact middle, gamma identification") {
    for (const DgLaSpec* g : {&ym(), &gr()}) {
        INFO(g->label);
        const ZigZagData& zz = g->zz;
        CHECK(zz.mid.square_vanishes());
        CHECK(zz.sub.square_vanishes());
        check_splittings(zz);
        check_gamma_maps(zz);
        std::mt19937_64 rng(3);
        for (int t = 0; t < 4; ++t) {
            Mom k = t % 2 ? rand_onshell(rng) : rand_offshell(rng);
            for (int h : homology_dims(zz.mid, k)) CHECK(h == 0);
        }
    }
}
