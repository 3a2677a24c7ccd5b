#include "mmb/field.hpp"

#include <ostream>

#include "mmb/errors.hpp"
#include "mmb/matrix.hpp"

namespace mmb {

QI QI::frac(long p, long q) {
    mpq_class r(p, q);
    r.canonicalize();
    return QI(r);
}

QI QI::inv() const {
    if (is_zero()) throw DegenerateScalar("division by zero");
    mpq_class n = norm2();
    return QI(re_ / n, -im_ / n);
}

QI& QI::operator+=(const QI& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

QI& QI::operator-=(const QI& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

QI& QI::operator*=(const QI& o) {
    if (sgn(o.im_) == 0) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    if (sgn(im_) == 0) {
        im_ = re_ * o.im_;
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
}

QI& QI::operator/=(const QI& o) {
    if (o.is_zero()) throw DegenerateScalar("division by zero");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inv();
}

QI QI::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    QI result(1), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

std::string QI::str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string s = re_.get_str();
    if (sgn(im_) > 0) s += "+";
    s += im_.get_str() + "*i";
    return s;
}

QI QI::parse(const std::string& s0) {
    std::string s;
    for (char ch : s0)
        if (ch != ' ') s += ch;
    if (s.empty()) throw DegenerateScalar("empty scalar string");
    auto rat = [](const std::string& t) {
        if (t.empty() || t == "+") return mpq_class(1);
        if (t == "-") return mpq_class(-1);
        std::string u = t[0] == '+' ? t.substr(1) : t;
        mpq_class r;
        if (r.set_str(u, 10) != 0) throw DegenerateScalar("bad rational '" + t + "'");
        r.canonicalize();
        return r;
    };
    bool imag = s.back() == 'i';
    if (!imag) return QI(rat(s));
    std::string body = s.substr(0, s.size() - 1);
    if (!body.empty() && body.back() == '*') body.pop_back();
    // split at the last sign that is not the leading one
    size_t cut = std::string::npos;
    for (size_t k = body.size(); k-- > 1;)
        if (body[k] == '+' || body[k] == '-') {
            cut = k;
            break;
        }
    if (cut == std::string::npos) return QI(mpq_class(0), rat(body));
    return QI(rat(body.substr(0, cut)), rat(body.substr(cut)));
}

std::ostream& operator<<(std::ostream& os, const QI& x) { return os << x.str(); }

QI qi_arith(const QI& a, const QI& b, Op op) {
    switch (op) {
        case Op::add: return a + b;
        case Op::sub: return a - b;
        case Op::mul: return a * b;
        case Op::div: return a / b;
    }
    return QI();
}

// ---- Poly

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QI Poly::eval(const QI& t) const {
    QI acc;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
}

Poly Poly::monic() const {
    if (c_.empty()) return *this;
    return scaled(lead().inv());
}

Poly Poly::derivative() const {
    std::vector<QI> d;
    for (size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * QI(static_cast<long>(k)));
    return Poly(std::move(d));
}

Poly& Poly::operator+=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<QI> c(a.c_.size() + b.c_.size() - 1);
    for (size_t x = 0; x < a.c_.size(); ++x) {
        if (a.c_[x].is_zero()) continue;
        for (size_t y = 0; y < b.c_.size(); ++y) c[x + y] += a.c_[x] * b.c_[y];
    }
    return Poly(std::move(c));
}

Poly Poly::operator-() const { return scaled(QI(-1)); }

Poly Poly::scaled(const QI& s) const {
    std::vector<QI> c = c_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DegenerateScalar("polynomial division by zero");
    std::vector<QI> r = a.c_;
    int db = b.degree();
    std::vector<QI> q(std::max(0, a.degree() - db + 1));
    QI linv = b.lead().inv();
    for (int k = a.degree(); k >= db; --k) {
        if (r[k].is_zero()) continue;
        QI f = r[k] * linv;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string Poly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string s;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c_[k].str() + ")";
        if (k >= 1) s += "*" + var;
        if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
}

// ---- RatFun1

RatFun1::RatFun1(const Poly& n, const Poly& d) : num_(n), den_(d) {
    if (den_.is_zero()) throw DegenerateScalar("zero denominator");
    normalize();
}

void RatFun1::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(QI(1));
        return;
    }
    if (den_.degree() > 0) {
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::divmod(num_, g).first;
            den_ = Poly::divmod(den_, g).first;
        }
    }
    QI l = den_.lead();
    if (!l.is_one()) {
        QI li = l.inv();
        num_ = num_.scaled(li);
        den_ = den_.scaled(li);
    }
}

QI RatFun1::eval(const QI& t) const {
    QI dv = den_.eval(t);
    if (dv.is_zero()) throw PoleHit("pole at t = " + t.str());
    return num_.eval(t) / dv;
}

RatFun1& RatFun1::operator+=(const RatFun1& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RatFun1& RatFun1::operator-=(const RatFun1& o) { return *this += -o; }

RatFun1& RatFun1::operator*=(const RatFun1& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatFun1& RatFun1::operator/=(const RatFun1& o) {
    if (o.is_zero()) throw DegenerateScalar("rational function division by zero");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
}

RatFun1 RatFun1::operator-() const {
    RatFun1 r = *this;
    r.num_ = -r.num_;
    return r;
}

std::string RatFun1::str() const {
    if (den_.degree() == 0) return num_.str();
    return "[" + num_.str() + "] / [" + den_.str() + "]";
}

QI ratfun_eval(const RatFun1& f, const QI& t) { return f.eval(t); }

RatFun1 ratfun_interpolate(const std::vector<std::pair<QI, QI>>& samples, int degree_bound) {
    const int D = degree_bound;
    const int nfit = 2 * D + 2;
    if (D < 0 || static_cast<int>(samples.size()) < nfit)
        throw InterpolationMismatch("too few samples for degree bound " + std::to_string(D));
    // unknowns n_0..n_D, e_0..e_D with n(t) - y e(t) = 0
    Mat<QI> A(nfit, 2 * D + 2);
    for (int s = 0; s < nfit; ++s) {
        const auto& [t, y] = samples[s];
        QI tp(1);
        for (int j = 0; j <= D; ++j) {
            A(s, j) = tp;
            A(s, D + 1 + j) = -(y * tp);
            tp *= t;
        }
    }
    Mat<QI> K = kernel_basis(A);
    for (int col = 0; col < K.cols(); ++col) {
        std::vector<QI> n(D + 1), e(D + 1);
        for (int j = 0; j <= D; ++j) {
            n[j] = K(j, col);
            e[j] = K(D + 1 + j, col);
        }
        Poly pe(e);
        if (pe.is_zero()) continue;
        RatFun1 f(Poly(n), pe);
        bool ok = true;
        for (const auto& [t, y] : samples) {
            QI dv = f.den().eval(t);
            if (dv.is_zero() || f.num().eval(t) != y * dv) {
                ok = false;
                break;
            }
        }
        if (ok) return f;
        break;
    }
    throw InterpolationMismatch("samples inconsistent with degree bound " + std::to_string(D));
}

}  // namespace mmb
