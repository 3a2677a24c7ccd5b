#include "doctest.h"
#include "test_util.hpp"

using namespace mmb;
using namespace mmbtest;

namespace {

// Polynomial model of S^m C^2: a map from monomials X^l Y^{m-l} to vectors.
// The splitting z^m -> z^{m-1} (x) z is P -> (1/m)(dP/dX (x) e1 + dP/dY (x) e2).
// Builds the two blocks of the complex at k in the monomial basis, then
// rescales to the basis (-1)^l C(m,l) X^l Y^{m-l}.
QI binom(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return QI(mpq_class(r));
}

std::pair<QMat, QMat> gamma_from_polynomials(int m, int sign, const Mom& k) {
    // 2x2 helpers
    auto mul = [](const std::array<QI, 4>& A, const std::array<QI, 4>& B) {
        return std::array<QI, 4>{A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
                                 A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
    };
    std::array<QI, 4> eps{QI(0), QI(1), QI(-1), QI(0)};
    std::array<QI, 4> kp{k.a, k.b, k.c, k.d}, kt{k.a, k.c, k.b, k.d};
    std::array<QI, 4> k1 = sign > 0 ? kt : kp;  // first map uses k^-
    std::array<QI, 4> k2 = sign > 0 ? kp : kt;
    auto first = mul(k1, eps);               // z -> k^- eps z
    auto second = mul(mul(eps, k2), eps);    // x (x) y -> x^T eps k eps y
    auto sigma = [&](int mm, int l) { return (l % 2 ? -binom(mm, l) : binom(mm, l)); };
    QMat A(2 * m, m + 1), B(m >= 2 ? m - 1 : 0, 2 * m);
    for (int l = 0; l <= m; ++l) {
        // dP/dY of X^l Y^{m-l} = (m-l) X^l Y^{m-l-1} -> S^{m-1} index l, with e2
        // dP/dX = l X^{l-1} Y^{m-l} -> index l-1, with e1
        for (int alpha = 0; alpha < 2; ++alpha) {
            QI img1 = first[alpha * 2 + 0];  // (k eps e1)_alpha
            QI img2 = first[alpha * 2 + 1];  // (k eps e2)_alpha
            if (l < m) A(2 * l + alpha, l) += img2 * QI(m - l) / QI(m) * sigma(m, l) / sigma(m - 1, l);
            if (l > 0) A(2 * (l - 1) + alpha, l) += img1 * QI(l) / QI(m) * sigma(m, l) / sigma(m - 1, l - 1);
        }
    }
    for (int j = 0; j < m && m >= 2; ++j)
        for (int alpha = 0; alpha < 2; ++alpha) {
            // split X^j Y^{m-1-j}: X-derivative gives x = e1 at index j-1,
            // Y-derivative gives x = e2 at index j
            if (j > 0)
                B(j - 1, 2 * j + alpha) += second[0 * 2 + alpha] * QI(j) / QI(m - 1) *
                                           sigma(m - 1, j) / sigma(m - 2, j - 1);
            if (j < m - 1)
                B(j, 2 * j + alpha) += second[1 * 2 + alpha] * QI(m - 1 - j) / QI(m - 1) *
                                       sigma(m - 1, j) / sigma(m - 2, j);
        }
    return {A, B};
}

}  // namespace

TEST_CASE("Gamma_2 blocks verbatim") {
    PolyComplex G = build_gamma(4, +1);
    CHECK(G.grading.dims == std::vector<int>{5, 8, 3});
    // a b c d as distinct primes so entries can be read off
    Mom k{QI(2), QI(3), QI(5), QI(7)};
    QMat d1 = G.block(1).eval(k), d2 = G.block(2).eval(k);
    const long a = 2, b = 3, c = 5, dd = 7;
    long first[8][5] = {{a, c, 0, 0, 0}, {b, dd, 0, 0, 0}, {0, a, c, 0, 0}, {0, b, dd, 0, 0},
                        {0, 0, a, c, 0}, {0, 0, b, dd, 0}, {0, 0, 0, a, c}, {0, 0, 0, b, dd}};
    long second[3][8] = {{b, -a, dd, -c, 0, 0, 0, 0},
                         {0, 0, b, -a, dd, -c, 0, 0},
                         {0, 0, 0, 0, b, -a, dd, -c}};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 5; ++j) CHECK(d1(i, j) == QI(first[i][j]));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 8; ++j) CHECK(d2(i, j) == QI(second[i][j]));

    PolyComplex Gm = build_gamma(4, -1);
    Mom kt = k.transpose();
    CHECK(Gm.d.eval(k) == G.d.eval(kt));
}

TEST_CASE("Gamma blocks agree with the polynomial construction") {
    std::mt19937_64 rng(4);
    for (int m = 1; m <= 5; ++m)
        for (int sign : {1, -1}) {
            PolyComplex G = build_gamma(m, sign);
            Mom k = rand_mom(rng);
            auto [A, B] = gamma_from_polynomials(m, sign, k);
            CHECK(G.block(1).eval(k) == A);
            if (m >= 2) CHECK(G.block(2).eval(k) == B);
        }
}

TEST_CASE("Gamma squares to zero and has the expected homology") {
    for (int m = 1; m <= 6; ++m)
        for (int sign : {1, -1}) CHECK(build_gamma(m, sign).square_vanishes());
    PolyComplex G1 = build_gamma(2, +1);
    CHECK(G1.grading.dims == std::vector<int>{3, 4, 1});
    CHECK(homology_dims(G1, Mom::zero()) == std::vector<int>{3, 4, 1});
    PolyComplex G = build_gamma(4, +1);
    CHECK(homology_dims(G, Mom{QI(1), QI(0), QI(0), QI(1)}) == std::vector<int>{0, 0, 0});
    CHECK(homology_dims(G, Mom{QI(1), QI(0), QI(0), QI(0)}) == std::vector<int>{1, 1, 0});
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        int sign = t % 2 ? 1 : -1;
        PolyComplex Gs = build_gamma(4, sign);
        CHECK(homology_dims(Gs, rand_onshell(rng)) == std::vector<int>{1, 1, 0});
        CHECK(homology_dims(Gs, rand_offshell(rng)) == std::vector<int>{0, 0, 0});
    }
}

TEST_CASE("spinor powers span degree-one homology") {
    std::mt19937_64 rng(2);
    for (int m = 1; m <= 4; ++m)
        for (int t = 0; t < 5; ++t) {
            QVec v = rand_vec(rng, 2), w = rand_vec(rng, 2);
            if (is_zero_vec(v) || is_zero_vec(w)) continue;
            Mom k = Mom::outer(v, w);
            CHECK(is_zero_vec(build_gamma(m, +1).block(1).eval(k).apply(spinor_power(v, m))));
            CHECK(is_zero_vec(build_gamma(m, -1).block(1).eval(k).apply(spinor_power(w, m))));
        }
}
