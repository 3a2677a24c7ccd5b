#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mmb/complex.hpp"

namespace mmb {

// (h, i, p) for a differential d with ip = 1 - dh - hd; i and p are indexed by
// a basis of a complex graded by `homology`, with differential dhom (empty
// when zero).
struct Contraction {
    Grading ambient;
    Grading homology;
    QMat h, i, p;
    QMat dhom;
};

// Contraction of a pointwise differential built one degree at a time.
// Degree j uses: pivot coordinates C^j complementing ker d^j, a complement
// X^j of im d^{j-1} in ker d^j, and V^j = d(C^{j-1}) + X^j + C^j.
class PointContraction {
public:
    PointContraction(Grading g, QMat d, std::uint64_t seed);

    const Grading& grading() const { return g_; }
    const QMat& d() const { return d_; }
    int homology_dim(int deg);

    // v lives in degree deg (local coordinates of that degree)
    QVec h(int deg, const QVec& v);        // -> degree deg-1
    QVec p(int deg, const QVec& v);        // -> homology coordinates
    QVec i(int deg, const QVec& x);        // homology coordinates -> degree deg
    QVec dmap(int deg, const QVec& v);     // -> degree deg+1
    // 1 - dh - hd applied to v
    QVec proj(int deg, const QVec& v);

    Contraction full();

private:
    struct Level {
        bool ready = false;
        std::vector<int> pivots;  // coordinates spanning C^j
        QMat homology_basis;      // columns spanning X^j
        QMat minv;                // coordinates w.r.t. [d e_{C^{j-1}} | X^j | e_{C^j}]
        int nb = 0;
    };
    QMat block(int deg) const;  // d: deg -> deg+1
    const std::vector<int>& pivots(int deg);
    Level& level(int deg);

    Grading g_;
    QMat d_;
    std::uint64_t seed_;
    std::map<int, std::vector<int>> piv_;
    std::map<int, Level> lv_;
};

Contraction build_contraction(const QMat& d, const Grading& g, std::uint64_t seed);

// Random permutation of 0..n-1 keyed by seed.
std::vector<int> seeded_order(int n, std::uint64_t seed);

}  // namespace mmb
