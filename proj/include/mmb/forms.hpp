#pragma once

#include <array>

#include "mmb/complex.hpp"

namespace mmb::forms {

// Monomials dx^I of the exterior algebra on dx^0..dx^3, indexed by position
// in degree-then-lexicographic order: 1 | 0 1 2 3 | 01 02 03 12 13 23 |
// 012 013 023 123 | 0123. Bit mu of a mask stands for dx^mu.
constexpr std::array<int, 16> kMask = {0, 1, 2, 4, 8, 3, 5, 9, 6, 10, 12, 7, 11, 13, 14, 15};

int index_of(int mask);
int degree(int index);
int offset(int deg);  // first index of a degree
int count(int deg);   // binomial(4, deg)

// dx^A ^ dx^B = sign dx^{A|B}; sign 0 when A and B overlap.
int wedge_sign(int maskA, int maskB);

using Form = QVec;  // length 16

Form zero();
Form basis(int mask);
Form wedge(const Form& a, const Form& b);
// Self-dual (s=+1) or anti-self-dual (s=-1) two-form dx^0 dx^a + s i dx^b dx^c,
// (a,b,c) a cyclic permutation of (1,2,3), a in 1..3.
Form self_dual(int a, int s);
// sum_mu k_mu dx^mu for the momentum slot s in 1..4 (unit momentum in a,b,c,d).
Form momentum_form(int slot);
Form momentum_form(const Mom& k);
// Derivation extending dx^rho -> sum_sigma M(sigma, rho) dx^sigma.
Form derivation(const QMat& M, const Form& a);

}  // namespace mmb::forms
