#include "mmb/forms.hpp"

#include <bit>

namespace mmb::forms {

int index_of(int mask) {
    for (int k = 0; k < 16; ++k)
        if (kMask[k] == mask) return k;
    return -1;
}

int degree(int index) { return std::popcount(static_cast<unsigned>(kMask[index])); }

int offset(int deg) {
    static constexpr int o[6] = {0, 1, 5, 11, 15, 16};
    return o[deg];
}

int count(int deg) { return offset(deg + 1) - offset(deg); }

int wedge_sign(int A, int B) {
    if (A & B) return 0;
    int inversions = 0;
    for (int a = 0; a < 4; ++a)
        if (A & (1 << a))
            for (int b = 0; b < a; ++b)
                if (B & (1 << b)) ++inversions;
    return inversions % 2 ? -1 : 1;
}

Form zero() { return Form(16); }

Form basis(int mask) {
    Form f = zero();
    f[index_of(mask)] = QI(1);
    return f;
}

Form wedge(const Form& a, const Form& b) {
    Form out = zero();
    for (int x = 0; x < 16; ++x) {
        if (a[x].is_zero()) continue;
        for (int y = 0; y < 16; ++y) {
            if (b[y].is_zero()) continue;
            int s = wedge_sign(kMask[x], kMask[y]);
            if (s == 0) continue;
            QI v = a[x] * b[y];
            out[index_of(kMask[x] | kMask[y])] += s > 0 ? v : -v;
        }
    }
    return out;
}

Form self_dual(int a, int s) {
    int b = a % 3 + 1, c = b % 3 + 1;
    Form f = basis((1 << 0) | (1 << a));
    // dx^b dx^c in the ordered basis
    int sign = b < c ? 1 : -1;
    f[index_of((1 << b) | (1 << c))] = QI(0, s * sign);
    return f;
}

Form momentum_form(int slot) {
    Form f = zero();
    for (int mu = 0; mu < 4; ++mu) f[index_of(1 << mu)] = lorentz_form(mu)[slot - 1];
    return f;
}

Form momentum_form(const Mom& k) {
    Form f = zero();
    for (int mu = 0; mu < 4; ++mu) f[index_of(1 << mu)] = lorentz(k, mu);
    return f;
}

Form derivation(const QMat& M, const Form& a) {
    Form out = zero();
    for (int x = 0; x < 16; ++x) {
        if (a[x].is_zero()) continue;
        int mask = kMask[x];
        for (int rho = 0; rho < 4; ++rho) {
            if (!(mask & (1 << rho))) continue;
            int below = mask & ((1 << rho) - 1), above = mask & ~((1 << (rho + 1)) - 1);
            for (int sigma = 0; sigma < 4; ++sigma) {
                const QI& m = M(sigma, rho);
                if (m.is_zero()) continue;
                int s1 = wedge_sign(below, 1 << sigma);
                if (s1 == 0) continue;
                int s2 = wedge_sign(below | (1 << sigma), above);
                if (s2 == 0) continue;
                QI v = a[x] * m;
                out[index_of(below | (1 << sigma) | above)] += s1 * s2 > 0 ? v : -v;
            }
        }
    }
    return out;
}

}  // namespace mmb::forms
