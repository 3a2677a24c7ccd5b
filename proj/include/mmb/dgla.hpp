#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmb/complex.hpp"

namespace mmb {

struct LieAlgebra {
    int dim = 0;
    std::vector<std::string> names;
    std::vector<QVec> f;  // f[a*dim+b] = coordinates of [e_a, e_b]
    QMat form;            // symmetric invariant form

    QVec bracket(const QVec& x, const QVec& y) const;
    QI pair(const QVec& x, const QVec& y) const;
};

// e, f, h with [h,e]=2e, [h,f]=-2f, [e,f]=h and the trace form.
LieAlgebra sl2();
// Throws InvalidInternalAlgebra unless antisymmetric, Jacobi, and the form is
// symmetric, nondegenerate and invariant.
void validate(const LieAlgebra& u);

// Bracket coefficient c0 + k1.(c1..c4) + k2.(c5..c8) in (a,b,c,d) slots.
struct BracketTerm {
    int out = 0;
    std::array<QI, 9> c;
    QI eval(const Mom& k1, const Mom& k2) const;
};

// Short exact sequence 0 -> C'' -> C' -> C -> 0 with exact middle term and
// constant splittings, plus chain isomorphisms from the Lorentz complexes
// onto C''. For YM everything here is stated for the algebra before
// tensoring with u.
struct ZigZagData {
    PolyComplex quot;    // C
    PolyComplex mid;     // C'
    PolyComplex sub;     // C''
    QMat r, rp, l, lp;   // r: C'->C, rp: C''->C', l: C->C', lp: C'->C''
    int twice_h = 2;
    // phi[s]: Gamma_s -> C'' (degree +1), psi[s]: C'' -> Gamma_s, index 0 = minus, 1 = plus
    QMat phi[2], psi[2];
};

struct DgLaSpec {
    std::string label;
    Grading grading;
    PolyMatrix d;
    std::vector<std::vector<BracketTerm>> table;  // index i*dim+j
    ZigZagData zz;
    std::optional<LieAlgebra> u;  // YM only
    int base_dim = 0;             // dim before tensoring with u (YM), else dim

    int dim() const { return grading.total(); }
    int twice_h() const { return zz.twice_h; }
    int udim() const { return u ? u->dim : 1; }
    QVec bracket(const Mom& k1, const Mom& k2, const QVec& x, const QVec& y) const;
    int degree_of(int index) const { return grading.degree_of(index); }
    int vec_degree(const QVec& x) const;  // -1 if zero, -2 if inhomogeneous
};

DgLaSpec build_ym(const LieAlgebra& u);
DgLaSpec build_gr();

struct AxiomReport {
    bool d_squared = true;
    int samples = 0;
    std::vector<std::string> failures;
    bool ok() const { return d_squared && failures.empty(); }
};

AxiomReport check_axioms(const DgLaSpec& g, int samples, std::uint64_t seed);

// Random element of one degree with small Gaussian integer entries.
QVec random_element(const DgLaSpec& g, int deg, std::uint64_t& state);

}  // namespace mmb
