#pragma once

#include <array>
#include <string>
#include <vector>

#include "mmb/field.hpp"
#include "mmb/matrix.hpp"

namespace mmb {

using QMat = Mat<QI>;
using QVec = Vec<QI>;

// Momentum as the 2x2 matrix (a b; c d), Q = ad - bc.
struct Mom {
    QI a, b, c, d;

    static Mom zero() { return {}; }
    QI Q() const { return a * d - b * c; }
    bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
    const QI& operator[](int k) const { return k == 0 ? a : k == 1 ? b : k == 2 ? c : d; }
    QI& operator[](int k) { return k == 0 ? a : k == 1 ? b : k == 2 ? c : d; }

    Mom operator+(const Mom& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mom operator-(const Mom& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mom operator-() const { return {-a, -b, -c, -d}; }
    Mom scaled(const QI& s) const { return {a * s, b * s, c * s, d * s}; }
    bool operator==(const Mom& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    Mom transpose() const { return {a, c, b, d}; }

    // v w^T
    static Mom outer(const QVec& v, const QVec& w) {
        return {v[0] * w[0], v[0] * w[1], v[1] * w[0], v[1] * w[1]};
    }
    // Gradient of Q in (a,b,c,d) coordinates.
    std::array<QI, 4> gradQ() const { return {d, -c, -b, a}; }
    // Conjugated gradient; Q-dot along it is |a|^2+|b|^2+|c|^2+|d|^2 > 0.
    Mom transversal() const { return {d.conj(), -c.conj(), -b.conj(), a.conj()}; }
    QI dQ(const Mom& xi) const {
        auto g = gradQ();
        return g[0] * xi.a + g[1] * xi.b + g[2] * xi.c + g[3] * xi.d;
    }
    std::string str() const;
};

// Lorentz components k_mu as linear forms in (a,b,c,d):
// a = k0+k3, d = k0-k3, b = k1 - i k2, c = k1 + i k2.
std::array<QI, 4> lorentz_form(int mu);
QI lorentz(const Mom& k, int mu);

// Matrix with entries c0 + ca a + cb b + cc c + cd d.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(int r, int c) : m_{QMat(r, c), QMat(r, c), QMat(r, c), QMat(r, c), QMat(r, c)} {}

    int rows() const { return m_[0].rows(); }
    int cols() const { return m_[0].cols(); }
    // slot 0 is the constant part, slots 1..4 the a,b,c,d coefficients
    QMat& coef(int s) { return m_[s]; }
    const QMat& coef(int s) const { return m_[s]; }

    QMat eval(const Mom& k) const;
    // Derivative along xi (the linear part evaluated at xi).
    QMat linear(const Mom& xi) const;
    bool is_zero() const;
    // Whether A(k) B(k) vanishes identically, checked on coefficients.
    static bool product_vanishes(const PolyMatrix& A, const PolyMatrix& B);
    PolyMatrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const PolyMatrix& b);

private:
    std::array<QMat, 5> m_;
};

// Graded dimensions starting at homological degree `lo`.
struct Grading {
    int lo = 0;
    std::vector<int> dims;

    int total() const;
    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    int dim(int deg) const;
    int offset(int deg) const;
    int degree_of(int index) const;
};

struct PolyComplex {
    Grading grading;
    PolyMatrix d;  // full square matrix of degree +1

    PolyMatrix block(int deg) const;  // d: deg -> deg+1
    bool square_vanishes() const { return PolyMatrix::product_vanishes(d, d); }
};

// Lorentz complex with dims (2h+1, 4h, 2h-1) in degrees 1,2,3; twice_h = 2h.
PolyComplex build_gamma(int twice_h, int sign);

std::vector<int> homology_dims(const Grading& g, const QMat& d);
std::vector<int> homology_dims(const PolyComplex& C, const Mom& k);

// Coordinates of z^{⊗m} in the basis used by build_gamma.
QVec spinor_power(const QVec& z, int m);

}  // namespace mmb
