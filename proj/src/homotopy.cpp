#include "mmb/homotopy.hpp"

namespace mmb {

namespace {

QMat dhom_or_zero(const Contraction& c) {
    int n = c.homology.total();
    return c.dhom.rows() == n && c.dhom.cols() == n ? c.dhom : QMat(n, n);
}

void expect(std::vector<std::string>& out, bool ok, const char* name) {
    if (!ok) out.push_back(name);
}

Contraction contraction_at(const PolyComplex& C, const Mom& k, std::uint64_t seed) {
    PointContraction pc(C.grading, C.d.eval(k), seed);
    Contraction c = pc.full();
    c.dhom = QMat(c.homology.total(), c.homology.total());
    return c;
}

}  // namespace

Contraction hpl_perturb(const Contraction& base, const QMat& delta) {
    int n = base.ambient.total();
    QMat Id = QMat::identity(n);
    auto Minv = try_inverse(Id + delta * base.h);
    if (!Minv) throw PerturbationTooLarge("1 + delta h is singular");
    Contraction c = base;
    c.h = base.h * *Minv;
    c.p = base.p * *Minv;
    c.i = base.i - base.h * (*Minv * (delta * base.i));
    c.dhom = dhom_or_zero(base) + c.p * (delta * base.i);
    return c;
}

std::vector<std::string> contraction_failures(const Contraction& c, const QMat& d) {
    std::vector<std::string> out;
    int n = c.ambient.total(), m = c.homology.total();
    QMat dh = dhom_or_zero(c);
    expect(out, (c.h * c.h).is_zero(), "h^2 = 0");
    expect(out, c.h * d * c.h == c.h, "hdh = h");
    expect(out, (c.h * c.i).is_zero(), "hi = 0");
    expect(out, (c.p * c.h).is_zero(), "ph = 0");
    expect(out, c.p * c.i == QMat::identity(m), "pi = 1");
    expect(out, c.i * c.p == QMat::identity(n) - d * c.h - c.h * d, "ip = 1 - dh - hd");
    expect(out, d * c.i == c.i * dh, "di = i dhom");
    expect(out, c.p * d == dh * c.p, "pd = dhom p");
    return out;
}

QMat trivial_homotopy(const PolyComplex& C, const Mom& k, std::uint64_t seed) {
    PointContraction pc(C.grading, C.d.eval(k), seed);
    Contraction c = pc.full();
    if (c.homology.total() != 0) throw OnShellInternalLine("homology nonzero at " + k.str());
    return c.h;
}

QMat trivial_homotopy(const DgLaSpec& g, const Mom& k, std::uint64_t seed) {
    return trivial_homotopy(PolyComplex{g.grading, g.d}, k, seed);
}

// ---- optimal homotopy

OptimalHomotopy::OptimalHomotopy(PolyComplex C, const Mom& q, std::uint64_t seed)
    : C_(std::move(C)), q_(q) {
    if (q.is_zero() || !q.Q().is_zero())
        throw NotRegularHomologyPoint("expected a nonzero point with Q = 0, got " + q.str());
    xi_ = q.transversal();
    base_ = contraction_at(C_, q, seed);
    QI Qdot = q.dQ(xi_);
    dprime_q_ = (base_.p * C_.d.linear(xi_) * base_.i).scaled(Qdot.inv());
    if (!(dprime_q_ * dprime_q_).is_zero())
        throw NotRegularHomologyPoint("induced differential does not square to zero");
    PointContraction pc(base_.homology, dprime_q_, seed + 1);
    base_prime_ = pc.full();
    if (base_prime_.homology.total() != 0)
        throw NotRegularHomologyPoint("induced differential is not exact at " + q.str());
}

QMat OptimalHomotopy::dhom_on_line(const Mom& dir, const QI& t) const {
    QMat delta = C_.d.linear(dir).scaled(t);
    return hpl_perturb(base_, delta).dhom;
}

QMat OptimalHomotopy::dprime_along_line(const Mom& k) const {
    Mom dir = k == q_ ? xi_ : k - q_;
    QI t_eval = k == q_ ? QI(0) : QI(1);
    int m = base_.homology.total();
    // Q(q + t dir) = t (grad Q . dir) + t^2 Q(dir)
    QI lin = q_.dQ(dir), quad = dir.Q();
    std::vector<QI> ts;
    std::vector<QMat> vals;
    long next = 1;
    auto grow = [&](size_t want) {
        while (ts.size() < want) {
            QI t(next++);
            if (next > 100000) throw InterpolationMismatch("no usable sample points");
            if (t == t_eval) continue;
            QI Qt = t * lin + t * t * quad;
            if (Qt.is_zero()) continue;
            QMat v;
            try {
                v = dhom_on_line(dir, t);
            } catch (const PerturbationTooLarge&) {
                continue;
            }
            ts.push_back(t);
            vals.push_back(v.scaled(Qt.inv()));
        }
    };
    for (int D = 2; D <= 64; D *= 2) {
        grow(static_cast<size_t>(2 * D + 6));
        QMat out(m, m);
        bool ok = true;
        for (int r = 0; r < m && ok; ++r)
            for (int c = 0; c < m && ok; ++c) {
                std::vector<std::pair<QI, QI>> s;
                for (size_t j = 0; j < ts.size(); ++j) s.push_back({ts[j], vals[j](r, c)});
                try {
                    RatFun1 f = ratfun_interpolate(s, D);
                    if (f.den().eval(QI(0)).is_zero())
                        throw NotRegularHomologyPoint("p d i is not divisible by Q");
                    out(r, c) = f.eval(t_eval);
                } catch (const InterpolationMismatch&) {
                    ok = false;
                } catch (const PoleHit&) {
                    throw PerturbationTooLarge("pole at the evaluation point");
                }
            }
        if (ok) return out;
    }
    throw InterpolationMismatch("degree bound exceeded along line");
}

OptimalHomotopy::At OptimalHomotopy::at(const Mom& k) const {
    At a;
    a.k = k;
    a.Q = k.Q();
    a.c = hpl_perturb(base_, C_.d.eval(k) - C_.d.eval(q_));
    if (!a.Q.is_zero()) a.dprime = a.c.dhom.scaled(a.Q.inv());
    else if (k == q_) a.dprime = dprime_q_;
    else a.dprime = dprime_along_line(k);
    a.hprime = hpl_perturb(base_prime_, a.dprime - dprime_q_).h;
    if (!a.Q.is_zero())
        a.H = a.c.h + a.c.i * a.hprime * a.c.p.scaled(a.Q.inv());
    return a;
}

std::vector<std::string> OptimalHomotopy::failures(const At& a) const {
    QMat d = C_.d.eval(a.k);
    std::vector<std::string> out = contraction_failures(a.c, d);
    int m = base_.homology.total(), n = C_.grading.total();
    expect(out, a.c.dhom == a.dprime.scaled(a.Q), "pdi = Q dprime");
    expect(out, (a.dprime * a.dprime).is_zero(), "dprime^2 = 0");
    expect(out, a.hprime * a.dprime + a.dprime * a.hprime == QMat::identity(m),
           "hprime dprime + dprime hprime = 1");
    if (!a.Q.is_zero()) {
        expect(out, (a.H * a.H).is_zero(), "H^2 = 0");
        expect(out, a.H * d + d * a.H == QMat::identity(n), "Hd + dH = 1");
    }
    return out;
}

OptimalHomotopy optimal_homotopy(const PolyComplex& C, const Mom& q, std::uint64_t seed) {
    return OptimalHomotopy(C, q, seed);
}

OptimalHomotopy optimal_homotopy(const DgLaSpec& g, const Mom& q, std::uint64_t seed) {
    return OptimalHomotopy(PolyComplex{g.grading, g.d}, q, seed);
}

// ---- ABC

namespace {

bool is_homotopy(const QMat& d, const QMat& h) {
    return (h * h).is_zero() && h * d * h == h && d * h * d == d;
}

QMat pi_of(const QMat& d, const QMat& h) {
    return QMat::identity(d.rows()) - d * h - h * d;
}

}  // namespace

ABC abc_connect(const QMat& d, const QMat& h, const QMat& hp) {
    if (!is_homotopy(d, h) || !is_homotopy(d, hp))
        throw NotAHomotopy("need h^2 = 0, hdh = h, dhd = d");
    QMat Id = QMat::identity(d.rows());
    ABC t;
    t.a = -(d * hp * pi_of(d, h));
    t.hA = h * (Id - t.a * pi_of(d, h));
    t.b = -(t.hA * d * hp * t.hA);
    QMat dbd = d * t.b * d;
    t.hB = (Id + dbd) * t.hA * (Id - dbd);
    t.c = -(pi_of(d, t.hB) * hp * d);
    t.hC = (Id - pi_of(d, t.hB) * t.c) * t.hB;
    return t;
}

std::vector<std::string> abc_constraint_failures(const QMat& d, const QMat& h, const ABC& t) {
    std::vector<std::string> out;
    QMat pi = pi_of(d, h), piA = pi_of(d, t.hA), piB = pi_of(d, t.hB);
    expect(out, (d * t.a).is_zero() && (pi * t.a).is_zero() && (t.a * d).is_zero() &&
                    (t.a * h).is_zero(),
           "da = pi a = ad = ah = 0");
    expect(out, (piA * t.b).is_zero() && (t.hA * t.b).is_zero() && (t.b * t.hA).is_zero() &&
                    (t.b * piA).is_zero(),
           "pi b = hb = bh = b pi = 0");
    expect(out, (t.hB * t.c).is_zero() && (d * t.c).is_zero() && (t.c * piB).is_zero() &&
                    (t.c * d).is_zero(),
           "hc = dc = c pi = cd = 0");
    expect(out, is_homotopy(d, t.hA) && is_homotopy(d, t.hB) && is_homotopy(d, t.hC),
           "intermediate homotopies");
    return out;
}

// ---- zig-zag

ZigZag zigzag_equivalence(const DgLaSpec& g, const Mom& k, std::uint64_t seed) {
    const ZigZagData& zz = g.zz;
    if (k.is_zero()) throw MiddleNotExact("middle complex has homology at k = 0");
    QMat dm = zz.mid.d.eval(k);
    PointContraction pc(zz.mid.grading, dm, seed);
    Contraction cm = pc.full();
    if (cm.homology.total() != 0) throw MiddleNotExact("middle complex has homology at " + k.str());
    ZigZag z;
    z.k = k;
    z.d = zz.quot.d.eval(k);
    z.dsub = zz.sub.d.eval(k);
    z.R = zz.r * cm.h * zz.rp;
    z.L = zz.lp * dm * zz.l;
    z.u = zz.r * cm.h * zz.l;
    z.usub = zz.lp * cm.h * zz.rp;
    return z;
}

std::vector<std::string> zigzag_failures(const ZigZag& z) {
    std::vector<std::string> out;
    int n = z.d.rows(), ns = z.dsub.rows();
    expect(out, z.L * z.d == -(z.dsub * z.L), "Ld = -d''L");
    expect(out, z.R * z.dsub == -(z.d * z.R), "Rd'' = -dR");
    expect(out, z.R * z.L == QMat::identity(n) - z.d * z.u - z.u * z.d, "RL = 1 - du - ud");
    expect(out, z.L * z.R == QMat::identity(ns) - z.dsub * z.usub - z.usub * z.dsub,
           "LR = 1 - d''u'' - u''d''");
    return out;
}

}  // namespace mmb
