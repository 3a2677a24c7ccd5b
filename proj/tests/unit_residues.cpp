#include "doctest.h"
#include "mmb/errors.hpp"
#include "mmb/residues.hpp"

using namespace mmb;

namespace {

const DgLaSpec& ym() {
    static DgLaSpec g = build_ym(sl2());
    return g;
}

// Tuple with the legs listed in order relabeled 1..N.
KinematicTuple reorder(const KinematicTuple& k, const std::vector<int>& legs) {
    KinematicTuple out;
    out.N = k.N;
    for (int l : legs) {
        out.sp.push_back(k.sp[l - 1]);
        out.helicities += k.helicities[l - 1];
    }
    return out;
}

}  // namespace

TEST_CASE("calibration on the ppmm divisor") {
    CHECK(calibrate_factorization(ym(), 1) == QI(1));
    FactorizationReport rep =
        check_factorization(ym(), "+-+-", Divisor::parse(4, "ppmm:12|34"), 2, 5);
    CHECK(rep.constant());
    CHECK(*rep.ratio() == QI(1));
}

TEST_CASE("three-term case on the all-plus divisor") {
    Divisor div = Divisor::parse(4, "pppp");
    FactorizationReport rep = check_factorization(ym(), "-+++", div, 1, 2);
    const FactorizationTrial& t = rep.trials[0];
    CHECK(t.residue.is_zero());
    CHECK(t.rhs.is_zero());
    CHECK(t.indeterminate);
    REQUIRE(t.terms.size() == 3);
    for (size_t drop = 0; drop < 3; ++drop) {
        CHECK_FALSE(t.terms[drop].total.is_zero());
        QI partial;
        for (size_t j = 0; j < 3; ++j)
            if (j != drop) partial += t.terms[j].total * t.inv_dQ[j];
        CHECK_FALSE(partial.is_zero());
    }
    for (const char* name : {"pppp", "mmmm"}) {
        Pencil p = pencil_through_divisor(4, Divisor::parse(4, name), "", 7);
        auto r = relative_residues(p);
        CHECK(r[0] == r[1]);
        CHECK(r[1] == r[2]);
        CHECK_FALSE(r[0].is_zero());
    }
}

TEST_CASE("MHV residues at N = 5") {
    std::string h = "--+++";
    for (const char* name : {"p-:12", "p-:34", "p+:12"}) {
        INFO(name);
        Pencil p = pencil_through_divisor(5, Divisor::parse(5, name), h, 11);
        CHECK(extract_residue(ym(), p, 1).value.is_zero());
    }
    Pencil p = pencil_through_divisor(5, Divisor::parse(5, "p+:13"), h, 11);
    CHECK_FALSE(extract_residue(ym(), p, 1).value.is_zero());
}

TEST_CASE("two pencils through one base point") {
    Divisor div = Divisor::parse(5, "p+:13");
    Mask J = mask_of({1, 3});
    Pencil p = pencil_through_divisor(5, div, "-++-+", 21);
    Pencil q = shift_pencil(p.base(), div, 3, 5);
    REQUIRE(q.base().sp[0].v == p.base().sp[0].v);
    REQUIRE_FALSE(q.dQ(J) == p.dQ(J));
    ResidueSample a = extract_residue(ym(), p, 1), b = extract_residue(ym(), q, 2);
    CHECK_FALSE(a.value.is_zero());
    CHECK(a.value * p.dQ(J) == b.value * q.dQ(J));
    CHECK(a.value != b.value);
}

TEST_CASE("fusion") {
    KinematicTuple generic = sample_onshell_tuple(4, "-++-", 3);
    CHECK_THROWS_AS(fuse(ym(), generic, Divisor::parse(4, "ppmm:12|34"), mask_of({1, 2}), 1),
                    WrongDivisor);

    // a three-point +++ side contributes nothing
    Divisor pp = Divisor::parse(4, "pppp");
    Pencil p = pencil_through_divisor(4, pp, "++++", 3);
    FusionValue f = fuse(ym(), p.base(), pp, mask_of({1, 2}), 1);
    CHECK(f.by_zeta[1].is_zero());

    // J and its complement at N = 6 with zeta exchanged
    Divisor q = Divisor::parse(6, "Q:123");
    Pencil r = pencil_through_divisor(6, q, "--++-+", 5);
    KinematicTuple base = r.base();
    std::vector<QVec> col = default_colors(ym(), 6), col2;
    for (int l : {4, 5, 6, 1, 2, 3}) col2.push_back(col[l - 1]);
    FusionValue a = fuse(ym(), base, q, mask_of({1, 2, 3}), 1, col);
    KinematicTuple swapped = reorder(base, {4, 5, 6, 1, 2, 3});
    FusionValue b = fuse(ym(), swapped, q, mask_of({1, 2, 3}), 1, col2);
    CHECK_FALSE(a.total.is_zero());
    CHECK(a.by_zeta[0] == b.by_zeta[1]);
    CHECK(a.by_zeta[1] == b.by_zeta[0]);
}
