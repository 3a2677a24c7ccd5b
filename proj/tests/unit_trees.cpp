#include "doctest.h"
#include "mmb/errors.hpp"
#include "mmb/homotopy.hpp"
#include "mmb/trees.hpp"
#include "test_util.hpp"

using namespace mmb;
using namespace mmbtest;

namespace {

long double_factorial(int k) {
    long r = 1;
    for (; k > 1; k -= 2) r *= k;
    return r;
}

const DgLaSpec& ym() {
    static DgLaSpec g = build_ym(sl2());
    return g;
}

// Trivial homotopies on every internal line of every tree with n inputs.
HomotopyAssignment trivial_assignment(const DgLaSpec& g, const std::vector<Mom>& k) {
    HomotopyAssignment H;
    H.k = k;
    int n = static_cast<int>(k.size());
    for (Mask J = 1; J < (Mask(1) << n); ++J)
        if (popcount(J) >= 2 && popcount(J) < n) {
            Mom s;
            for (int l : labels(J)) s = s + k[l - 1];
            H.H[J] = trivial_homotopy(g, s, J);
        }
    return H;
}

}  // namespace

TEST_CASE("tree counts") {
    for (int n = 2; n <= 7; ++n) CHECK(static_cast<long>(enumerate_trees(n).size()) == double_factorial(2 * n - 3));
    CHECK(enumerate_trees(3).size() == 3);
    CHECK(enumerate_trees(5).size() == 105);
    for (const auto& t : enumerate_trees(5)) {
        CHECK(t.internal_lines().size() == 3);
        CHECK(TrivalentTree::parse(t.str()).str() == t.str());
    }
}

TEST_CASE("planar embeddings") {
    CHECK(planar_embeddings(TrivalentTree::parse("(12)")).size() == 2);
    CHECK(planar_embeddings(TrivalentTree::parse("((12)3)")).size() == 4);
    CHECK(planar_embeddings(TrivalentTree::parse("((12)(34))")).size() == 8);
    for (const auto& e : planar_embeddings(TrivalentTree::parse("(((12)3)4)")))
        CHECK(e.canonical().str() == "(((12)3)4)");
}

TEST_CASE("koszul signs") {
    auto P = TrivalentTree::parse("(((12)3)(45))");
    auto Q = TrivalentTree::parse("((((12)3)4)5)");
    for (int m = 0; m < 32; ++m) {
        std::vector<int> x(5);
        for (int j = 0; j < 5; ++j) x[j] = 1 + ((m >> j) & 1);
        int e = 1 + x[0] + x[1] + x[2];
        CHECK(koszul_sign(P, x) == (e % 2 ? -1 : 1));
        CHECK(koszul_sign(Q, x) == 1);
    }
    for (const auto& t : enumerate_trees(5))
        for (const auto& e : planar_embeddings(t)) CHECK(koszul_sign(e, {1, 1, 1, 1, 1}) == 1);
    CHECK(koszul_sign(TrivalentTree::parse("(21)"), {1, 1}) == 1);
    CHECK(koszul_sign(TrivalentTree::parse("(12)"), {2, 2}) == 1);
    CHECK(koszul_sign(TrivalentTree::parse("(21)"), {2, 2}) == -1);
}

TEST_CASE("two inputs give p[i x1, i x2]") {
    std::mt19937_64 rng(4);
    const DgLaSpec& g = ym();
    Mom k1 = rand_onshell(rng, 3), k2 = rand_onshell(rng, 3);
    std::uint64_t st = 5;
    QVec x = random_element(g, 1, st), y = random_element(g, 1, st);
    HomotopyAssignment H;
    H.k = {k1, k2};
    CHECK(eval_tree(TrivalentTree::parse("(12)"), g, H, {x, y}) == g.bracket(k1, k2, x, y));
    CHECK(eval_tree(TrivalentTree::parse("(21)"), g, H, {x, y}) == g.bracket(k1, k2, x, y));
    CHECK(is_zero_vec(eval_tree(TrivalentTree::parse("(12)"), g, H, {QVec(g.dim()), y})));
}

TEST_CASE("planar embedding independence") {
    std::mt19937_64 rng(7);
    const DgLaSpec& g = ym();
    std::uint64_t st = 11;
    for (int n = 3; n <= 4; ++n)
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<Mom> k;
            std::vector<QVec> x;
            for (int j = 0; j < n; ++j) {
                k.push_back(rand_mom(rng, 3));
                x.push_back(random_element(g, 1 + static_cast<int>(rng() % 2), st));
            }
            HomotopyAssignment H = trivial_assignment(g, k);
            for (const auto& t : enumerate_trees(n)) {
                QVec ref = eval_tree(t, g, H, x);
                for (const auto& e : planar_embeddings(t)) CHECK(eval_tree(e, g, H, x) == ref);
            }
        }
}

TEST_CASE("missing homotopy") {
    HomotopyAssignment H;
    H.k = {Mom{QI(1), QI(0), QI(0), QI(0)}, Mom{QI(0), QI(0), QI(0), QI(1)}, Mom{QI(1), QI(1), QI(0), QI(0)}};
    std::vector<QVec> x(3, QVec(ym().dim()));
    CHECK_THROWS_AS(eval_tree(TrivalentTree::parse("((12)3)"), ym(), H, x), IncompleteAssignment);
}

TEST_CASE("obstructions are cocycles") {
    std::mt19937_64 rng(21);
    for (const DgLaSpec* g : {&ym()}) {
        for (int n = 3; n <= 4; ++n) {
            std::vector<Mom> k;
            std::vector<QVec> x;
            for (int j = 0; j < n; ++j) {
                Mom kj = rand_onshell(rng, 3);
                PointContraction pc(g->grading, g->d.eval(kj), j + 1);
                Contraction c = pc.full();
                k.push_back(kj);
                QVec cls = rand_vec(rng, c.homology.total(), 3);
                for (int a = 0; a < c.homology.total(); ++a)
                    if (c.homology.degree_of(a) != 1) cls[a] = QI(0);
                x.push_back(c.i.apply(cls));
            }
            HomotopyAssignment H = trivial_assignment(*g, k);
            Mom K;
            for (const Mom& m : k) K = K + m;
            QMat dK = g->d.eval(K);
            QVec sum(g->dim());
            bool single_closed = true;
            for (const auto& t : enumerate_trees(n)) {
                QVec v = eval_tree(t, *g, H, x);
                if (!is_zero_vec(dK.apply(v))) single_closed = false;
                sum = sum + v;
            }
            CHECK(is_zero_vec(dK.apply(sum)));
            CHECK(!single_closed);
            // N: random map lowering degree by one
            QMat Nm(g->dim(), g->dim());
            for (int r = 0; r < g->dim(); ++r)
                for (int c = 0; c < g->dim(); ++c)
                    if (g->degree_of(r) + 1 == g->degree_of(c)) Nm(r, c) = rand_qi(rng, 2);
            CHECK(is_zero_vec(Nm.apply(dK.apply(sum))));
        }
    }
}
