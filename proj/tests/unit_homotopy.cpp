#include "doctest.h"
#include "mmb/homotopy.hpp"
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

void check_empty(const std::vector<std::string>& f) {
    for (const auto& s : f) INFO(s);
    CHECK(f.empty());
}

Mom near(const Mom& q, std::mt19937_64& rng) {
    Mom dk = rand_mom(rng, 3).scaled(QI(1, 17));
    return q + dk;
}

const Mom kQ{QI(1), QI(0), QI(0), QI(0)};

}  // namespace

TEST_CASE("homological perturbation") {
    PolyComplex G = build_gamma(4, +1);
    Contraction c = build_contraction(G.d.eval(kQ), G.grading, 1);
    int n = G.grading.total();
    Contraction same = hpl_perturb(c, QMat(n, n));
    CHECK(same.h == c.h);
    CHECK(same.i == c.i);
    CHECK(same.p == c.p);
    CHECK(same.dhom.is_zero());

    Mom k = Mom::outer({QI(1), QI(1, 10)}, {QI(1), QI(1, 7)});
    Contraction pk = hpl_perturb(c, G.d.eval(k) - G.d.eval(kQ));
    check_empty(contraction_failures(pk, G.d.eval(k)));
    std::mt19937_64 rng(4);
    for (int t = 0; t < 5; ++t) {
        Mom k2 = near(kQ, rng);
        check_empty(contraction_failures(hpl_perturb(c, G.d.eval(k2) - G.d.eval(kQ)), G.d.eval(k2)));
    }
    CHECK_THROWS_AS(hpl_perturb(c, -G.d.eval(kQ)), PerturbationTooLarge);
}

TEST_CASE("trivial homotopies") {
    PolyComplex G = build_gamma(4, +1);
    Mom k{QI(1), QI(0), QI(0), QI(1)};
    QMat H = trivial_homotopy(G, k);
    QMat d = G.d.eval(k);
    CHECK((H * H).is_zero());
    CHECK(H * d + d * H == QMat::identity(G.grading.total()));

    std::mt19937_64 rng(12);
    Mom q = rand_offshell(rng);
    QMat Hy = trivial_homotopy(ym(), q, 3);
    QMat dy = ym().d.eval(q);
    CHECK((Hy * Hy).is_zero());
    CHECK(Hy * dy + dy * Hy == QMat::identity(ym().dim()));

    CHECK_THROWS_AS(trivial_homotopy(G, kQ), OnShellInternalLine);
    CHECK_THROWS_AS(trivial_homotopy(ym(), rand_onshell(rng)), OnShellInternalLine);
}

TEST_CASE("optimal homotopy of Gamma_2") {
    PolyComplex G = build_gamma(4, +1);
    OptimalHomotopy oh = optimal_homotopy(G, kQ, 1);
    CHECK(oh.xi() == Mom{QI(0), QI(0), QI(0), QI(1)});
    // exact division along q + t xi reproduces the derivative formula
    CHECK(oh.dprime_along_line(kQ) == oh.dprime_q());
    check_empty(oh.failures(oh.at(kQ)));
    std::mt19937_64 rng(21);
    for (int t = 0; t < 4; ++t) {
        Mom k = near(kQ, rng);
        REQUIRE_FALSE(k.Q().is_zero());
        auto a = oh.at(k);
        check_empty(oh.failures(a));
        CHECK(oh.dprime_along_line(k) == a.dprime);
    }
    Mom kon = Mom::outer({QI(1), QI(1, 3)}, {QI(1), QI(-2, 5)});
    check_empty(oh.failures(oh.at(kon)));
    CHECK_THROWS_AS(optimal_homotopy(G, Mom{QI(1), QI(0), QI(0), QI(1)}, 1), NotRegularHomologyPoint);
}

TEST_CASE("optimal homotopies of the dglas") {
    std::mt19937_64 rng(31);
    for (const DgLaSpec* g : {&ym(), &gr()}) {
        INFO(g->label);
        Mom q = rand_onshell(rng, 3);
        OptimalHomotopy oh = optimal_homotopy(*g, q, 5);
        check_empty(oh.failures(oh.at(q)));
        Mom k = near(q, rng);
        check_empty(oh.failures(oh.at(k)));
    }
}

TEST_CASE("ABC connection between homotopies") {
    PolyComplex G = build_gamma(4, +1);
    std::mt19937_64 rng(41);
    Mom q = rand_onshell(rng);
    QMat d = G.d.eval(q);
    QMat h1 = build_contraction(d, G.grading, 1).h;
    QMat h2 = build_contraction(d, G.grading, 2).h;
    ABC same = abc_connect(d, h1, h1);
    CHECK(same.hC == h1);
    CHECK(same.a.is_zero());
    CHECK(same.b.is_zero());
    CHECK(same.c.is_zero());
    ABC t = abc_connect(d, h1, h2);
    CHECK(h1 != h2);
    CHECK(t.hC == h2);
    check_empty(abc_constraint_failures(d, h1, t));
    CHECK_THROWS_AS(abc_connect(d, h1, h1.scaled(QI(2))), NotAHomotopy);
}

TEST_CASE("zig-zag homotopy equivalences") {
    std::mt19937_64 rng(51);
    {
        Mom k = rand_onshell(rng);
        ZigZag z = zigzag_equivalence(ym(), k, 1);
        check_empty(zigzag_failures(z));
        // homology classes of C map to homology classes of the Gamma summands
        const ZigZagData& zz = ym().zz;
        Contraction c = build_contraction(z.d, zz.quot.grading, 0);
        Contraction cs = build_contraction(z.dsub, zz.sub.grading, 0);
        CHECK(c.homology.total() == 4);
        QMat classes = cs.p * z.L * c.i;
        CHECK(rank(classes) == 4);
        for (int s = 0; s < 2; ++s) {
            PolyComplex G = build_gamma(2, s == 0 ? -1 : 1);
            QMat img = zz.psi[s] * z.L * c.i;
            CHECK((G.d.eval(k) * img).is_zero());
            Contraction cg = build_contraction(G.d.eval(k), G.grading, 0);
            CHECK(rank(cg.p * img) == 2);
        }
    }
    {
        Mom k = rand_offshell(rng);
        ZigZag z = zigzag_equivalence(gr(), k, 2);
        check_empty(zigzag_failures(z));
    }
    CHECK_THROWS_AS(zigzag_equivalence(ym(), Mom::zero(), 1), MiddleNotExact);
}
