#include "doctest.h"
#include "test_util.hpp"

#include "mmb/contraction.hpp"

using namespace mmb;
using namespace mmbtest;

namespace {

void check_contraction(const Contraction& C, const QMat& d) {
    int hn = C.homology.total();
    CHECK((C.h * C.h).is_zero());
    CHECK(C.h * d * C.h == C.h);
    CHECK(d * C.h * d == d);
    CHECK(C.p * C.i == QMat::identity(hn));
    CHECK(C.i * C.p == QMat::identity(d.rows()) - d * C.h - C.h * d);
}

}  // namespace

TEST_CASE("rank factorization") {
    auto [C0, R0] = rank_factorize(QMat(2, 2));
    CHECK(C0.cols() == 0);
    CHECK(R0.rows() == 0);
    auto [C1, R1] = rank_factorize(QMat::identity(3));
    CHECK(C1 * R1 == QMat::identity(3));
    QMat A = QMat::column({QI(1), QI(2)}) * QMat::column({QI(3), QI(4)}).transpose();
    auto [C2, R2] = rank_factorize(A);
    CHECK(C2.cols() == 1);
    CHECK(C2 * R2 == A);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(QMat::identity(3)).cols() == 0);
    QMat row(1, 2);
    row(0, 0) = QI(1);
    row(0, 1) = QI(1);
    QMat K = kernel_basis(row);
    REQUIRE(K.cols() == 1);
    CHECK(K(0, 0) == -K(1, 0));
    std::mt19937_64 rng(3);
    QMat A = rand_mat(rng, 5, 3) * rand_mat(rng, 3, 7);
    REQUIRE(rank(A) == 3);
    QMat K2 = kernel_basis(A, seeded_order(7, 11));
    CHECK(K2.cols() == 4);
    CHECK((A * K2).is_zero());
    CHECK(rank(K2) == 4);
}

TEST_CASE("contractions of small complexes") {
    Grading g0{0, {2}};
    Contraction c0 = build_contraction(QMat(2, 2), g0, 1);
    CHECK(c0.h.is_zero());
    CHECK(c0.i * c0.p == QMat::identity(2));

    Grading g1{0, {1, 1}};
    QMat d(2, 2);
    d(1, 0) = QI(1);
    Contraction c1 = build_contraction(d, g1, 1);
    CHECK(c1.homology.total() == 0);
    CHECK(c1.h(0, 1) == QI(1));
    check_contraction(c1, d);

    QMat bad(2, 2);
    bad(0, 0) = QI(1);
    CHECK_THROWS_AS(build_contraction(bad, Grading{0, {2}}, 1), NotADifferential);
}

TEST_CASE("contractions of the Lorentz complexes") {
    PolyComplex G = build_gamma(4, +1);
    Mom q{QI(1), QI(0), QI(0), QI(0)};
    QMat d = G.d.eval(q);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Contraction C = build_contraction(d, G.grading, seed);
        CHECK(C.homology.dims == std::vector<int>{1, 1, 0});
        check_contraction(C, d);
    }
    std::mt19937_64 rng(9);
    for (int t = 0; t < 5; ++t) {
        Mom k = rand_offshell(rng);
        QMat dk = G.d.eval(k);
        Contraction C = build_contraction(dk, G.grading, t + 1);
        CHECK(C.homology.total() == 0);
        check_contraction(C, dk);
    }
}
