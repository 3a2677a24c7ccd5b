#include <algorithm>
#include <optional>

#include "doctest.h"
#include "mmb/amplitudes.hpp"
#include "mmb/errors.hpp"
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

QVec unit(int n, int a) {
    QVec e(n);
    e[a] = QI(1);
    return e;
}

// dual of e_a under the invariant form, or 1 for GR
QVec dual(const DgLaSpec& g, int a) {
    if (!g.u) return unit(1, 0);
    QMat inv = inverse(g.u->form);
    QVec e(g.u->dim);
    for (int b = 0; b < g.u->dim; ++b) e[b] = inv(a, b);
    return e;
}

// d' of a degree-one cycle at k: derivative of d along a transversal
// direction divided by the derivative of Q.
QVec dprime(const DgLaSpec& g, const Mom& k, const QVec& x) {
    Mom xi = k.transversal();
    return scale(g.d.linear(xi).apply(x), k.dQ(xi).inv());
}

KinematicTuple swap_legs(KinematicTuple k, int a, int b) {
    std::swap(k.sp[a - 1], k.sp[b - 1]);
    std::swap(k.helicities[a - 1], k.helicities[b - 1]);
    return k;
}

bool two_of(const std::string& h, char c) { return std::count(h.begin(), h.end(), c) == 2; }

const std::vector<std::string> kPatterns3 = {"+++", "++-", "+-+", "-++", "+--", "-+-", "--+", "---"};

}  // namespace

TEST_CASE("helicity states are cycles") {
    for (const DgLaSpec* g : {&ym(), &gr()}) {
        INFO(g->label);
        std::uint64_t st = 3;
        for (int t = 0; t < 3; ++t) {
            SpinorPair sp{random_spinor(st), random_spinor(st)};
            if (sp.k().is_zero()) continue;
            QVec u = default_colors(*g, 2)[1];
            HelicityState p = helicity_state(*g, sp, 1, u, t), m = helicity_state(*g, sp, -1, u, t);
            QMat dk = g->d.eval(sp.k());
            CHECK(g->vec_degree(p.vec) == 1);
            CHECK(is_zero_vec(dk.apply(p.vec)));
            CHECK(is_zero_vec(dk.apply(m.vec)));
            CHECK(rank(QMat::hstack(QMat::column(p.vec), QMat::column(m.vec))) == 2);
            // same k, spinors rescaled inversely
            QI lam(2, 1);
            SpinorPair sp2{scale(sp.v, lam), scale(sp.w, lam.inv())};
            int m2 = g->twice_h();
            CHECK(helicity_state(*g, sp2, 1, u, t).vec == scale(p.vec, lam.pow(m2)));
            CHECK(helicity_state(*g, sp2, -1, u, t).vec == scale(m.vec, lam.pow(-m2)));
        }
    }
}

TEST_CASE("output covector reads the matching class") {
    for (const DgLaSpec* g : {&ym(), &gr()}) {
        INFO(g->label);
        std::uint64_t st = 17;
        SpinorPair sp{random_spinor(st), random_spinor(st)};
        Mom k = sp.k();
        for (int a = 0; a < g->udim(); ++a)
            for (int sign : {1, -1}) {
                HelicityState s = helicity_state(*g, sp, sign, unit(g->udim(), a), 2);
                QVec y = dprime(*g, k, s.vec);
                CHECK(is_zero_vec(g->d.eval(k).apply(y)));
                for (int b = 0; b < g->udim(); ++b) {
                    QI expect = a == b ? QI(1) : QI(0);
                    CHECK(output_covector(*g, sp, sign, dual(*g, b), 4)(y) == expect);
                    CHECK(output_covector(*g, sp, -sign, dual(*g, b), 4)(y) == QI(0));
                }
                QVec x = random_element(*g, 1, st);
                CHECK(output_covector(*g, sp, sign, dual(*g, a), 4)(g->d.eval(k).apply(x)) == QI(0));
            }
    }
}

TEST_CASE("three-point amplitudes follow the branch selection rule") {
    for (const DgLaSpec* g : {&ym(), &gr()}) {
        INFO(g->label);
        for (const auto& h : kPatterns3)
            for (Branch br : {Branch::plus, Branch::minus}) {
                INFO(h);
                bool allowed = br == Branch::plus ? two_of(h, '+') : two_of(h, '-');
                std::optional<QI> ratio;
                for (int t = 0; t < 3; ++t) {
                    KinematicTuple kin = sample_onshell_tuple(3, h, 40 + t, br);
                    QI a = amplitude(*g, kin, 5).value;
                    if (!allowed) {
                        CHECK(a.is_zero());
                        continue;
                    }
                    QI c = three_point_closed_form(kin, h, g->twice_h());
                    REQUIRE_FALSE(c.is_zero());
                    if (!ratio) ratio = a / c;
                    CHECK(a / c == *ratio);
                }
                if (allowed) CHECK_FALSE(ratio->is_zero());
            }
    }
}

TEST_CASE("closed form needs the matching branch") {
    KinematicTuple kin = sample_onshell_tuple(3, "++-", 1, Branch::minus);
    CHECK_THROWS_AS(three_point_closed_form(kin, "++-", 2), WrongBranch);
    CHECK(three_point_closed_form(kin, "+++", 2).is_zero());
}

TEST_CASE("four-point helicity violation") {
    for (const DgLaSpec* g : {&ym(), &gr()}) {
        INFO(g->label);
        int trials = g == &ym() ? 3 : 1;
        for (int t = 0; t < trials; ++t)
            for (std::string h : {"-+++", "+---", "++++", "----", "+-++"}) {
                INFO(h);
                CHECK(amplitude(*g, sample_onshell_tuple(4, h, 60 + t), 1).value.is_zero());
            }
        CHECK_FALSE(amplitude(*g, sample_onshell_tuple(4, "--++", 60), 1).value.is_zero());
    }
}

TEST_CASE("gauge independence and tree sums") {
    GaugeReport rep = gauge_independence_suite(ym(), 4, "--++", 2, 9, 3);
    CHECK(rep.all_equal());
    CHECK_FALSE(rep.values[0][0] == rep.values[1][0]);
    KinematicTuple kin = sample_onshell_tuple(4, "-+-+", 8);
    QI a = amplitude(ym(), kin, 1).value;
    AmplitudeValue t = amplitude_by_trees(ym(), kin, 2);
    CHECK(t.value == a);
    CHECK(t.trees == 3);
    CHECK(amplitude(ym(), kin, 1).value == a);
    AmplitudeValue dropped = amplitude_by_trees(ym(), kin, 2, {}, 0);
    CHECK(dropped.trees == 2);
    CHECK(dropped.value != a);
    CHECK_FALSE(gauge_independence_suite(ym(), 4, "--++", 1, 9, 3, true).all_equal());
}

TEST_CASE("leg permutations") {
    for (int N : {4, 5}) {
        std::string h = N == 4 ? "-+-+" : "-+-++";
        KinematicTuple kin = sample_onshell_tuple(N, h, 70 + N);
        auto col = default_colors(ym(), N);
        QI a = amplitude(ym(), kin, 3, col).value;
        REQUIRE_FALSE(a.is_zero());
        for (int i = 1; i < N; ++i)
            for (int j = i + 1; j <= N; ++j) {
                if (N == 5 && j == N) continue;
                auto c = col;
                std::swap(c[i - 1], c[j - 1]);
                CHECK(amplitude(ym(), swap_legs(kin, i, j), 3, c).value == a);
            }
    }
}

TEST_CASE("homogeneity on fixed classes") {
    for (std::string h : {"--++", "-+-+", "+--+"}) {
        KinematicTuple kin = sample_onshell_tuple(4, h, 90);
        for (QI lam : {QI(2), QI(3), QI(1, 1)})
            CHECK(fixed_class_scaling(ym(), kin, lam, 4) == lam.pow(-3));
    }
}

TEST_CASE("on-shell internal line is rejected") {
    Pencil p = pencil_through_divisor(4, Divisor::parse(4, "ppmm:12|34"), "-++-", 3);
    CHECK_THROWS_AS(amplitude(ym(), p.base(), 1), OnShellInternalLine);
}
