#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mmb/complex.hpp"

namespace mmb {

// k = v w^T
struct SpinorPair {
    QVec v, w;

    Mom k() const { return Mom::outer(v, w); }
    SpinorPair transpose() const { return {w, v}; }
};

// eps(x, y) = x^T ((0,1),(-1,0)) y
QI eps(const QVec& x, const QVec& y);

// m = v w^T for nonzero m with det m = 0; throws DegenerateScalar otherwise.
SpinorPair rank_one_factor(const Mom& m);

using Mask = unsigned;

inline int popcount(Mask m) { return __builtin_popcount(m); }
// Labels 1..N of the bits set in m, ascending.
std::vector<int> labels(Mask m);
Mask mask_of(const std::vector<int>& labels);

struct KinematicTuple {
    int N = 0;
    std::vector<SpinorPair> sp;
    std::string helicities;  // one of '+' '-' per leg, may be empty

    Mom k(int leg) const { return sp[leg - 1].k(); }
    Mom kJ(Mask J) const;
    QI QJ(Mask J) const { return kJ(J).Q(); }
    bool conserves() const;
    // Nonzero momenta, pairwise independent, all internal Q_J nonzero.
    bool generic() const;
    // Labels of internal subsets J (not containing N, 2 <= |J| <= N-2) with Q_J = 0.
    std::vector<Mask> vanishing() const;
    KinematicTuple transpose() const;
};

enum class Branch { plus, minus };  // shared v, shared w

// Uniformly drawn Gaussian integer vector with components in the box [-r, r].
QVec random_spinor(std::uint64_t& state, int r = 3);

KinematicTuple sample_onshell_tuple(int N, const std::string& helicities, std::uint64_t seed,
                                    Branch branch = Branch::plus);
// Branch of a three-point tuple, or throws WrongBranch if neither.
Branch three_point_branch(const KinematicTuple& t);

struct Divisor {
    enum Kind { qj, plus, minus, allplus, allminus, ppmm };
    int N = 0;
    Kind kind = qj;
    Mask J = 0;  // qj: the subset; plus/minus: the pair; ppmm: the pair sharing v

    std::string name() const;
    static Divisor parse(int N, const std::string& s);
    // Internal subsets J (N not in J) whose Q_J vanishes on the divisor.
    std::vector<Mask> poles() const;
    bool contains(const KinematicTuple& t) const;
};

std::vector<Divisor> divisors(int N);

// Family of tuples with polynomial spinors in t, on the divisor at t = 0.
struct Pencil {
    Divisor div;
    std::string helicities;
    std::vector<std::array<Poly, 2>> v, w;

    int N() const { return static_cast<int>(v.size()); }
    KinematicTuple at(const QI& t) const;
    KinematicTuple base() const { return at(QI(0)); }
    Poly QJ(Mask J) const;
    QI dQ(Mask J) const { return QJ(J).derivative().eval(QI(0)); }
    int degree() const;  // max degree of the spinor entries
};

Pencil pencil_through_divisor(int N, const Divisor& div, const std::string& helicities,
                              std::uint64_t seed);

// Pencil through a base point on div: v_a += t v_c, w_c -= t w_a, or the
// transposed shift on the minus-type divisors.
Pencil shift_pencil(const KinematicTuple& base, const Divisor& div, int a, int c);

// Glues lo (legs J..., K) and hi (legs -K, rest...) into one tuple after
// moving hi by k -> A k B^T so that its first leg is -K; lo legs go to the
// labels of J in order, hi legs to the remaining labels.
KinematicTuple glue(const KinematicTuple& lo, const KinematicTuple& hi, Mask J, int N,
                    std::uint64_t& state);

}  // namespace mmb
