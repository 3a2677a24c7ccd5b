#include "mmb/contraction.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace mmb {

std::vector<int> seeded_order(int n, std::uint64_t seed) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    if (seed == 0) return o;
    std::mt19937_64 rng(seed);
    std::shuffle(o.begin(), o.end(), rng);
    return o;
}

PointContraction::PointContraction(Grading g, QMat d, std::uint64_t seed)
    : g_(std::move(g)), d_(std::move(d)), seed_(seed) {}

QMat PointContraction::block(int deg) const {
    return d_.block(g_.offset(deg + 1), g_.offset(deg), g_.dim(deg + 1), g_.dim(deg));
}

const std::vector<int>& PointContraction::pivots(int deg) {
    auto it = piv_.find(deg);
    if (it != piv_.end()) return it->second;
    std::vector<int> piv;
    int n = g_.dim(deg), m = g_.dim(deg + 1);
    if (n > 0 && m > 0) {
        QMat b = block(deg);
        piv = rref_inplace(b, seeded_order(n, seed_ * 7919 + 2 * deg + 1));
    }
    return piv_[deg] = piv;
}

PointContraction::Level& PointContraction::level(int deg) {
    Level& L = lv_[deg];
    if (L.ready) return L;
    int n = g_.dim(deg);
    QMat dout = (g_.dim(deg + 1) > 0 && n > 0) ? block(deg) : QMat(g_.dim(deg + 1), n);
    QMat din = (g_.dim(deg - 1) > 0 && n > 0) ? block(deg - 1) : QMat(n, g_.dim(deg - 1));
    if (din.cols() > 0 && dout.rows() > 0 && !(dout * din).is_zero())
        throw NotADifferential("d^2 != 0 at degree " + std::to_string(deg));
    const auto& pin = pivots(deg - 1);
    const auto& pout = pivots(deg);
    // boundaries d e_l for l in C^{j-1}
    QMat B(n, static_cast<int>(pin.size()));
    for (size_t c = 0; c < pin.size(); ++c)
        for (int r = 0; r < n; ++r) B(r, c) = din(r, pin[c]);
    QMat Z = kernel_basis(dout, seeded_order(n, seed_ * 104729 + 2 * deg + 3));
    std::vector<int> pick =
        greedy_complement(B, Z, seeded_order(Z.cols(), seed_ * 15485863 + deg + 5));
    QMat X(n, static_cast<int>(pick.size()));
    for (size_t c = 0; c < pick.size(); ++c)
        for (int r = 0; r < n; ++r) X(r, c) = Z(r, pick[c]);
    QMat M(n, n);
    M.set_block(0, 0, B);
    M.set_block(0, B.cols(), X);
    for (size_t c = 0; c < pout.size(); ++c) M(pout[c], B.cols() + X.cols() + c) = QI(1);
    if (B.cols() + X.cols() + static_cast<int>(pout.size()) != n)
        throw NotADifferential("inconsistent ranks at degree " + std::to_string(deg));
    L.minv = n > 0 ? inverse(M) : QMat();
    L.pivots = pout;
    L.homology_basis = X;
    L.nb = B.cols();
    L.ready = true;
    return L;
}

int PointContraction::homology_dim(int deg) {
    if (g_.dim(deg) == 0) return 0;
    return level(deg).homology_basis.cols();
}

QVec PointContraction::h(int deg, const QVec& v) {
    QVec out(g_.dim(deg - 1));
    if (g_.dim(deg) == 0 || out.empty()) return out;
    Level& L = level(deg);
    const auto& pin = pivots(deg - 1);
    QVec c = L.minv.apply(v);
    for (int k = 0; k < L.nb; ++k) out[pin[k]] = c[k];
    return out;
}

QVec PointContraction::p(int deg, const QVec& v) {
    if (g_.dim(deg) == 0) return {};
    Level& L = level(deg);
    QVec c = L.minv.apply(v);
    return QVec(c.begin() + L.nb, c.begin() + L.nb + L.homology_basis.cols());
}

QVec PointContraction::i(int deg, const QVec& x) {
    if (g_.dim(deg) == 0) return {};
    return level(deg).homology_basis.apply(x);
}

QVec PointContraction::dmap(int deg, const QVec& v) {
    if (g_.dim(deg + 1) == 0 || g_.dim(deg) == 0) return QVec(g_.dim(deg + 1));
    return block(deg).apply(v);
}

QVec PointContraction::proj(int deg, const QVec& v) {
    QVec out = v;
    if (g_.dim(deg - 1) > 0) out = out - dmap(deg - 1, h(deg, v));
    if (g_.dim(deg + 1) > 0) out = out - h(deg + 1, dmap(deg, v));
    return out;
}

Contraction PointContraction::full() {
    Contraction C;
    C.ambient = g_;
    C.homology.lo = g_.lo;
    for (int deg = g_.lo; deg <= g_.hi(); ++deg) C.homology.dims.push_back(homology_dim(deg));
    int n = g_.total(), hn = C.homology.total();
    C.h = QMat(n, n);
    C.i = QMat(n, hn);
    C.p = QMat(hn, n);
    for (int deg = g_.lo; deg <= g_.hi(); ++deg) {
        int nd = g_.dim(deg);
        if (nd == 0) continue;
        int o = g_.offset(deg), ho = C.homology.offset(deg), hd = C.homology.dim(deg);
        for (int c = 0; c < nd; ++c) {
            QVec e(nd);
            e[c] = QI(1);
            if (deg > g_.lo && g_.dim(deg - 1) > 0) {
                QVec hv = h(deg, e);
                int o2 = g_.offset(deg - 1);
                for (size_t r = 0; r < hv.size(); ++r) C.h(o2 + r, o + c) = hv[r];
            }
            if (hd > 0) {
                QVec pv = p(deg, e);
                for (int r = 0; r < hd; ++r) C.p(ho + r, o + c) = pv[r];
            }
        }
        if (hd > 0) {
            const QMat& X = level(deg).homology_basis;
            C.i.set_block(o, ho, X);
        }
    }
    return C;
}

Contraction build_contraction(const QMat& d, const Grading& g, std::uint64_t seed) {
    if (!(d * d).is_zero()) throw NotADifferential("d^2 != 0");
    PointContraction pc(g, d, seed);
    return pc.full();
}

}  // namespace mmb
