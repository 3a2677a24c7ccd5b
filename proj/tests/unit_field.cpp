#include "doctest.h"
#include "test_util.hpp"

#include "mmb/errors.hpp"
#include "mmb/field.hpp"

using namespace mmb;
using namespace mmbtest;

TEST_CASE("gaussian rational arithmetic") {
    CHECK(QI(1, 1) * QI(1, -1) == QI(2));
    CHECK(QI::frac(3, 2) + QI::frac(-3, 2) == QI(0));
    CHECK(QI(2, 3) / QI(2, 3) == QI(1));
    CHECK_THROWS_AS(QI(1) / QI(0), DegenerateScalar);
    CHECK(qi_arith(QI(1, 1), QI(1, -1), Op::mul) == QI(2));

    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        QI a = rand_qi(rng), b = rand_qi(rng), c = rand_qi(rng);
        a /= rand_nonzero(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("scalar strings round trip") {
    for (QI x : {QI(0), QI(3), QI::frac(-7, 4), QI(mpq_class(1, 2), mpq_class(-3, 4)), QI(0, 1),
                 QI(-2, 5)}) {
        CHECK(QI::parse(x.str()) == x);
    }
    CHECK(QI(mpq_class(1, 2), mpq_class(-3, 4)).str() == "1/2-3/4*i");
    CHECK(QI::parse("i") == QI(0, 1));
    CHECK(QI::parse("-i") == QI(0, -1));
}

TEST_CASE("rational function evaluation") {
    RatFun1 t = RatFun1::t();
    RatFun1 inv_t = RatFun1(QI(1)) / t;
    CHECK(ratfun_eval(inv_t, QI(2)) == QI::frac(1, 2));
    RatFun1 f = (t * t - RatFun1(QI(1))) / (t - RatFun1(QI(1)));
    CHECK(f.den().degree() == 0);
    CHECK(ratfun_eval(f, QI(3)) == QI(4));
    CHECK(ratfun_eval(t, QI::i()) == QI::i());
    CHECK_THROWS_AS(ratfun_eval(inv_t, QI(0)), PoleHit);
}

TEST_CASE("rational interpolation") {
    std::vector<std::pair<QI, QI>> s;
    for (int x : {0, 2, 3, 4, 5, 6}) s.push_back({QI(x), QI(1) / QI(x - 1)});
    RatFun1 f = ratfun_interpolate(s, 1);
    CHECK(f == RatFun1(Poly(QI(1)), Poly(std::vector<QI>{QI(-1), QI(1)})));

    s.clear();
    for (int x = 0; x < 8; ++x) s.push_back({QI(x), QI(7)});
    CHECK(ratfun_interpolate(s, 2) == RatFun1(QI(7)));

    // (2t+1)/(t^2+1); value at 10 computed directly: 21/101
    s.clear();
    for (int x = 0; x < 9; ++x) s.push_back({QI(x), QI(2 * x + 1) / QI(x * x + 1)});
    RatFun1 g = ratfun_interpolate(s, 2);
    CHECK(ratfun_eval(g, QI(10)) == QI::frac(21, 101));

    // degree too small
    CHECK_THROWS_AS(ratfun_interpolate(s, 1), InterpolationMismatch);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        std::uniform_int_distribution<int> deg(0, 8);
        std::vector<QI> n(deg(rng) + 1), d(deg(rng) + 1);
        for (auto& x : n) x = rand_qi(rng);
        for (auto& x : d) x = rand_qi(rng);
        if (Poly(d).is_zero()) continue;
        RatFun1 r{Poly(n), Poly(d)};
        std::vector<std::pair<QI, QI>> ss;
        for (int x = 1; static_cast<int>(ss.size()) < 2 * 8 + 5; ++x) {
            QI t(x, 1 - x % 3);
            if (r.den().eval(t).is_zero()) continue;
            ss.push_back({t, r.eval(t)});
        }
        CHECK(ratfun_interpolate(ss, 8) == r);
    }
}
