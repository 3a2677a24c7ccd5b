#include "mmb/complex.hpp"

namespace mmb {

std::string Mom::str() const {
    return "(" + a.str() + ", " + b.str() + ", " + c.str() + ", " + d.str() + ")";
}

std::array<QI, 4> lorentz_form(int mu) {
    QI h = QI::frac(1, 2);
    switch (mu) {
        case 0: return {h, QI(0), QI(0), h};
        case 1: return {QI(0), h, h, QI(0)};
        case 2: return {QI(0), QI(mpq_class(0), mpq_class(1, 2)), QI(mpq_class(0), mpq_class(-1, 2)), QI(0)};
        default: return {h, QI(0), QI(0), -h};
    }
}

QI lorentz(const Mom& k, int mu) {
    auto f = lorentz_form(mu);
    return f[0] * k.a + f[1] * k.b + f[2] * k.c + f[3] * k.d;
}

QMat PolyMatrix::eval(const Mom& k) const {
    QMat out = m_[0];
    for (int s = 0; s < 4; ++s) {
        const QI& x = k[s];
        if (x.is_zero()) continue;
        out += m_[s + 1].scaled(x);
    }
    return out;
}

QMat PolyMatrix::linear(const Mom& xi) const {
    QMat out(rows(), cols());
    for (int s = 0; s < 4; ++s)
        if (!xi[s].is_zero()) out += m_[s + 1].scaled(xi[s]);
    return out;
}

bool PolyMatrix::is_zero() const {
    for (const auto& m : m_)
        if (!m.is_zero()) return false;
    return true;
}

bool PolyMatrix::product_vanishes(const PolyMatrix& A, const PolyMatrix& B) {
    if (!(A.m_[0] * B.m_[0]).is_zero()) return false;
    for (int s = 1; s <= 4; ++s) {
        if (!(A.m_[0] * B.m_[s] + A.m_[s] * B.m_[0]).is_zero()) return false;
        for (int t = s; t <= 4; ++t) {
            QMat q = A.m_[s] * B.m_[t];
            if (t != s) q += A.m_[t] * B.m_[s];
            if (!q.is_zero()) return false;
        }
    }
    return true;
}

PolyMatrix PolyMatrix::block(int r0, int c0, int nr, int nc) const {
    PolyMatrix out(nr, nc);
    for (int s = 0; s < 5; ++s) out.m_[s] = m_[s].block(r0, c0, nr, nc);
    return out;
}

void PolyMatrix::set_block(int r0, int c0, const PolyMatrix& b) {
    for (int s = 0; s < 5; ++s) m_[s].set_block(r0, c0, b.m_[s]);
}

int Grading::total() const {
    int t = 0;
    for (int x : dims) t += x;
    return t;
}

int Grading::dim(int deg) const {
    if (deg < lo || deg > hi()) return 0;
    return dims[deg - lo];
}

int Grading::offset(int deg) const {
    int o = 0;
    for (int g = lo; g < deg && g <= hi(); ++g) o += dims[g - lo];
    return o;
}

int Grading::degree_of(int index) const {
    int o = 0;
    for (size_t g = 0; g < dims.size(); ++g) {
        o += dims[g];
        if (index < o) return lo + static_cast<int>(g);
    }
    return hi() + 1;
}

PolyMatrix PolyComplex::block(int deg) const {
    return d.block(grading.offset(deg + 1), grading.offset(deg), grading.dim(deg + 1),
                   grading.dim(deg));
}

PolyComplex build_gamma(int m, int sign) {
    // Slots: 1=a, 2=b, 3=c, 4=d. The minus complex swaps b and c.
    const int sa = 1, sd = 4;
    const int sb = sign > 0 ? 2 : 3, sc = sign > 0 ? 3 : 2;
    PolyComplex C;
    C.grading.lo = 1;
    C.grading.dims = {m + 1, 2 * m};
    if (m >= 2) C.grading.dims.push_back(m - 1);
    int n = C.grading.total();
    C.d = PolyMatrix(n, n);
    int o1 = C.grading.offset(1), o2 = C.grading.offset(2), o3 = C.grading.offset(3);
    // S^m -> S^{m-1} (x) C^2, rows (j, alpha)
    for (int j = 0; j < m; ++j) {
        C.d.coef(sa)(o2 + 2 * j, o1 + j) = QI(1);
        C.d.coef(sc)(o2 + 2 * j, o1 + j + 1) = QI(1);
        C.d.coef(sb)(o2 + 2 * j + 1, o1 + j) = QI(1);
        C.d.coef(sd)(o2 + 2 * j + 1, o1 + j + 1) = QI(1);
    }
    // S^{m-1} (x) C^2 -> S^{m-2}
    for (int i = 0; i + 1 < m; ++i) {
        C.d.coef(sb)(o3 + i, o2 + 2 * i) = QI(1);
        C.d.coef(sa)(o3 + i, o2 + 2 * i + 1) = QI(-1);
        C.d.coef(sd)(o3 + i, o2 + 2 * (i + 1)) = QI(1);
        C.d.coef(sc)(o3 + i, o2 + 2 * (i + 1) + 1) = QI(-1);
    }
    return C;
}

std::vector<int> homology_dims(const Grading& g, const QMat& d) {
    std::vector<int> out;
    for (int deg = g.lo; deg <= g.hi(); ++deg) {
        int n = g.dim(deg);
        int rout = 0, rin = 0;
        if (deg < g.hi() && n > 0 && g.dim(deg + 1) > 0)
            rout = rank(d.block(g.offset(deg + 1), g.offset(deg), g.dim(deg + 1), n));
        if (deg > g.lo && n > 0 && g.dim(deg - 1) > 0)
            rin = rank(d.block(g.offset(deg), g.offset(deg - 1), n, g.dim(deg - 1)));
        out.push_back(n - rout - rin);
    }
    return out;
}

std::vector<int> homology_dims(const PolyComplex& C, const Mom& k) {
    return homology_dims(C.grading, C.d.eval(k));
}

QVec spinor_power(const QVec& z, int m) {
    QVec out(m + 1);
    for (int l = 0; l <= m; ++l) {
        QI x = z[0].pow(l) * z[1].pow(m - l);
        out[l] = (l % 2) ? -x : x;
    }
    return out;
}

}  // namespace mmb
