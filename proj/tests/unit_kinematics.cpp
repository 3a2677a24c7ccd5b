#include "doctest.h"
#include "mmb/errors.hpp"
#include "mmb/kinematics.hpp"

using namespace mmb;

TEST_CASE("three-point branches conserve momentum") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        KinematicTuple p = sample_onshell_tuple(3, "++-", seed, Branch::plus);
        CHECK(p.conserves());
        CHECK(p.generic());
        CHECK(three_point_branch(p) == Branch::plus);
        CHECK(p.sp[0].v == p.sp[1].v);
        KinematicTuple m = sample_onshell_tuple(3, "--+", seed, Branch::minus);
        CHECK(m.conserves());
        CHECK(three_point_branch(m) == Branch::minus);
    }
}

TEST_CASE("generic tuples for N = 4..6") {
    for (int N = 4; N <= 6; ++N)
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            KinematicTuple t = sample_onshell_tuple(N, "", seed);
            CHECK(t.conserves());
            CHECK(t.generic());
            for (int i = 1; i <= N; ++i) CHECK(t.k(i).Q().is_zero());
            CHECK(t.helicities == std::string(N, '+'));
        }
    KinematicTuple t = sample_onshell_tuple(5, "--+++", 9);
    int internal = 0;
    for (Mask J = 1; J < (1u << 5); ++J)
        if (popcount(J) >= 2 && popcount(J) <= 3) {
            CHECK(!t.QJ(J).is_zero());
            ++internal;
        }
    CHECK(internal == 20);  // each of the 10 values Q_J = Q_{J^c} appears twice
    CHECK(sample_onshell_tuple(5, "", 4).sp[2].v == sample_onshell_tuple(5, "", 4).sp[2].v);
}

TEST_CASE("divisor catalog") {
    CHECK(divisors(4).size() == 8);
    CHECK(divisors(5).size() == 20);
    CHECK(divisors(6).size() == 40);
    for (int N = 4; N <= 6; ++N)
        for (const Divisor& d : divisors(N)) CHECK(Divisor::parse(N, d.name()).name() == d.name());
    CHECK(Divisor::parse(4, "ppmm:12|34").poles() == std::vector<Mask>{mask_of({1, 2})});
    CHECK(Divisor::parse(5, "p+:45").poles() == std::vector<Mask>{mask_of({1, 2, 3})});
    CHECK_THROWS_AS(Divisor::parse(5, "Q:123"), WrongDivisor);
    CHECK_THROWS_AS(Divisor::parse(4, "ppmm:12|3"), UsageError);
}

TEST_CASE("pencils cross their divisor transversally") {
    for (int N = 4; N <= 6; ++N)
        for (const Divisor& d : divisors(N)) {
            Pencil p = pencil_through_divisor(N, d, "", 3);
            KinematicTuple b = p.base();
            CHECK(b.conserves());
            CHECK(d.contains(b));
            for (Mask J : d.poles()) {
                CHECK(b.QJ(J).is_zero());
                CHECK(!p.dQ(J).is_zero());
            }
            for (long t : {1L, 2L, 5L}) {
                KinematicTuple k = p.at(QI(t));
                CHECK(k.conserves());
                for (int i = 1; i <= N; ++i) CHECK(k.k(i).Q().is_zero());
            }
            CHECK(p.at(QI(3, 1)).generic());
        }
}

TEST_CASE("pencil through the all-plus divisor") {
    Pencil p = pencil_through_divisor(4, Divisor::parse(4, "pppp"), "-++-", 2);
    KinematicTuple b = p.base();
    for (Mask J : {mask_of({1, 2}), mask_of({1, 3}), mask_of({2, 3})}) CHECK(b.QJ(J).is_zero());
    const auto& s = b.sp;
    QI e12 = eps(s[0].w, s[1].w), e34 = eps(s[2].w, s[3].w), e23 = eps(s[1].w, s[2].w);
    QI e14 = eps(s[0].w, s[3].w), e31 = eps(s[2].w, s[0].w), e24 = eps(s[1].w, s[3].w);
    CHECK((e12 * e34 + e23 * e14 + e31 * e24).is_zero());
    CHECK(!e12.is_zero());
    CHECK(p.at(QI(3)).helicities == "-++-");
}

TEST_CASE("pencil for N = 5 at p+_12 avoids other divisors") {
    Divisor d = Divisor::parse(5, "p+:12");
    Pencil p = pencil_through_divisor(5, d, "", 11);
    CHECK(p.QJ(mask_of({1, 2})).eval(QI(0)).is_zero());
    for (long t = 1; t <= 6; ++t) {
        KinematicTuple k = p.at(QI(t));
        if (k.generic()) CHECK(k.vanishing().empty());
    }
}
