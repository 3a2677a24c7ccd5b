#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mmb {

// Gaussian rational re + im*i with exact GMP rationals.
class QI {
public:
    QI() = default;
    QI(long n) : re_(n) {}
    QI(const mpq_class& re) : re_(re) {}
    QI(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}
    QI(long re, long im) : re_(re), im_(im) {}

    static QI i() { return QI(0, 1); }
    static QI frac(long p, long q);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    QI conj() const { return QI(re_, -im_); }
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }
    QI inv() const;

    QI& operator+=(const QI& o);
    QI& operator-=(const QI& o);
    QI& operator*=(const QI& o);
    QI& operator/=(const QI& o);
    QI operator-() const { return QI(-re_, -im_); }

    friend QI operator+(QI a, const QI& b) { return a += b; }
    friend QI operator-(QI a, const QI& b) { return a -= b; }
    friend QI operator*(QI a, const QI& b) { return a *= b; }
    friend QI operator/(QI a, const QI& b) { return a /= b; }
    friend bool operator==(const QI& a, const QI& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const QI& a, const QI& b) { return !(a == b); }

    // "p/q" or "p/q+r/s*i"
    std::string str() const;
    static QI parse(const std::string& s);

    // Integer exponent, negative allowed for nonzero base.
    QI pow(long e) const;

private:
    mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const QI& x);

enum class Op { add, sub, mul, div };
QI qi_arith(const QI& a, const QI& b, Op op);

// Dense univariate polynomial, coefficients low to high, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<QI> c) : c_(std::move(c)) { trim(); }
    Poly(const QI& c0) : c_{c0} { trim(); }
    static Poly t() { return Poly(std::vector<QI>{QI(0), QI(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<QI>& coeffs() const { return c_; }
    QI coeff(int j) const { return j < static_cast<int>(c_.size()) && j >= 0 ? c_[j] : QI(0); }
    const QI& lead() const { return c_.back(); }

    QI eval(const QI& t) const;
    Poly monic() const;
    Poly derivative() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(const QI& s) const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // a = q*b + r
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    static Poly gcd(Poly a, Poly b);

    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<QI> c_;
};

// Reduced quotient num/den with den monic and gcd(num, den) = 1.
class RatFun1 {
public:
    RatFun1() : num_(), den_(QI(1)) {}
    RatFun1(const QI& c) : num_(c), den_(QI(1)) {}
    RatFun1(const Poly& n) : num_(n), den_(QI(1)) {}
    RatFun1(const Poly& n, const Poly& d);
    static RatFun1 t() { return RatFun1(Poly::t()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    QI eval(const QI& t) const;

    RatFun1& operator+=(const RatFun1& o);
    RatFun1& operator-=(const RatFun1& o);
    RatFun1& operator*=(const RatFun1& o);
    RatFun1& operator/=(const RatFun1& o);
    RatFun1 operator-() const;
    friend RatFun1 operator+(RatFun1 a, const RatFun1& b) { return a += b; }
    friend RatFun1 operator-(RatFun1 a, const RatFun1& b) { return a -= b; }
    friend RatFun1 operator*(RatFun1 a, const RatFun1& b) { return a *= b; }
    friend RatFun1 operator/(RatFun1 a, const RatFun1& b) { return a /= b; }
    friend bool operator==(const RatFun1& a, const RatFun1& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun1& a, const RatFun1& b) { return !(a == b); }

    std::string str() const;

private:
    void normalize();
    Poly num_, den_;
};

QI ratfun_eval(const RatFun1& f, const QI& t);

// Fits with the first 2*bound+2 samples, then checks every sample.
RatFun1 ratfun_interpolate(const std::vector<std::pair<QI, QI>>& samples, int degree_bound);

}  // namespace mmb
