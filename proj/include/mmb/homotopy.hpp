#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmb/contraction.hpp"
#include "mmb/dgla.hpp"

namespace mmb {

// Perturbation of base (for d) to d + delta:
// h' = h(1+delta h)^-1, i' = (1+h delta)^-1 i, p' = p(1+delta h)^-1,
// dhom' = dhom + p(1+delta h)^-1 delta i.
Contraction hpl_perturb(const Contraction& base, const QMat& delta);

// Names of the contraction identities that fail for d.
std::vector<std::string> contraction_failures(const Contraction& c, const QMat& d);

// H with H^2 = 0 and Hd + dH = 1 at an off-shell point.
QMat trivial_homotopy(const PolyComplex& C, const Mom& k, std::uint64_t seed = 0);
QMat trivial_homotopy(const DgLaSpec& g, const Mom& k, std::uint64_t seed = 0);

// Homotopy regular along the cone through an on-shell point q:
// p d i = Q dprime, and H = h + (1/Q) i hprime p off the cone.
class OptimalHomotopy {
public:
    struct At {
        Mom k;
        QI Q;
        Contraction c;      // perturbed contraction at k; c.dhom = Q dprime
        QMat dprime, hprime;
        QMat H;             // empty when Q = 0
    };

    OptimalHomotopy(PolyComplex C, const Mom& q, std::uint64_t seed);

    const Mom& q() const { return q_; }
    const Mom& xi() const { return xi_; }
    const Contraction& base() const { return base_; }
    const QMat& dprime_q() const { return dprime_q_; }

    At at(const Mom& k) const;
    // dprime by exact division along the line q + t(k - q), or q + t xi when k = q.
    QMat dprime_along_line(const Mom& k) const;
    std::vector<std::string> failures(const At& a) const;

private:
    QMat dhom_on_line(const Mom& dir, const QI& t) const;

    PolyComplex C_;
    Mom q_, xi_;
    Contraction base_, base_prime_;
    QMat dprime_q_;
};

OptimalHomotopy optimal_homotopy(const PolyComplex& C, const Mom& q, std::uint64_t seed);
OptimalHomotopy optimal_homotopy(const DgLaSpec& g, const Mom& q, std::uint64_t seed);

struct ABC {
    QMat a, b, c;
    QMat hA, hB, hC;
};

// Connects h to hp through the transformations A, B, C.
ABC abc_connect(const QMat& d, const QMat& h, const QMat& hp);
// Constraint equations for (a, b, c) relative to the homotopies they act on.
std::vector<std::string> abc_constraint_failures(const QMat& d, const QMat& h, const ABC& t);

// Homotopy equivalence between the quotient C (before tensoring with u for
// YM) and the subcomplex C'' at k, via the exact middle complex C'.
struct ZigZag {
    Mom k;
    QMat d, dsub;   // differentials of C and C'' at k
    QMat R, L;      // R: C'' -> C, L: C -> C'', both shifting degree by one
    QMat u, usub;   // RL = 1 - du - ud, LR = 1 - dsub usub - usub dsub
};

ZigZag zigzag_equivalence(const DgLaSpec& g, const Mom& k, std::uint64_t seed);
std::vector<std::string> zigzag_failures(const ZigZag& z);

}  // namespace mmb
