#pragma once

#include <random>

#include "mmb/complex.hpp"

namespace mmbtest {

using namespace mmb;

inline QI rand_qi(std::mt19937_64& rng, int box = 5, bool complex = true) {
    std::uniform_int_distribution<int> u(-box, box);
    return complex ? QI(u(rng), u(rng)) : QI(u(rng));
}

inline QI rand_nonzero(std::mt19937_64& rng, int box = 5) {
    QI x;
    while (x.is_zero()) x = rand_qi(rng, box);
    return x;
}

inline QVec rand_vec(std::mt19937_64& rng, int n, int box = 5) {
    QVec v(n);
    for (auto& x : v) x = rand_qi(rng, box);
    return v;
}

inline QMat rand_mat(std::mt19937_64& rng, int r, int c, int box = 5) {
    QMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = rand_qi(rng, box);
    return m;
}

inline Mom rand_mom(std::mt19937_64& rng, int box = 5) {
    return {rand_qi(rng, box), rand_qi(rng, box), rand_qi(rng, box), rand_qi(rng, box)};
}

inline Mom rand_offshell(std::mt19937_64& rng, int box = 5) {
    Mom k;
    while (k.Q().is_zero()) k = rand_mom(rng, box);
    return k;
}

inline Mom rand_onshell(std::mt19937_64& rng, int box = 5) {
    Mom k;
    while (k.is_zero()) k = Mom::outer(rand_vec(rng, 2, box), rand_vec(rng, 2, box));
    return k;
}

}  // namespace mmbtest
