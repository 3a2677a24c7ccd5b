#include "mmb/kinematics.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "mmb/errors.hpp"

namespace mmb {

namespace {

constexpr int kRetries = 500;

QVec vec2(const QI& x, const QI& y) { return QVec{x, y}; }

QI det2(const QVec& x, const QVec& y) { return x[0] * y[1] - x[1] * y[0]; }

// 2x2 matrices as column pairs.
struct M2 {
    QI a, b, c, d;
    QVec apply(const QVec& x) const { return vec2(a * x[0] + b * x[1], c * x[0] + d * x[1]); }
    QI det() const { return a * d - b * c; }
    M2 inv() const {
        QI s = det().inv();
        return {d * s, -b * s, -c * s, a * s};
    }
    M2 operator*(const M2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    static M2 cols(const QVec& x, const QVec& y) { return {x[0], y[0], x[1], y[1]}; }
};

bool independent(const Mom& x, const Mom& y) {
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q)
            if (!(x[p] * y[q] - x[q] * y[p]).is_zero()) return true;
    return false;
}

// rank-one factorization m = v w^T; m must be nonzero with det 0
SpinorPair factor(const Mom& m) {
    if (!m.a.is_zero()) return {vec2(m.a, m.c), vec2(QI(1), m.b / m.a)};
    if (!m.c.is_zero()) return {vec2(m.a, m.c), vec2(QI(1), m.d / m.c)};
    return {vec2(m.b, m.d), vec2(QI(0), QI(1))};
}

QVec nonzero_spinor(std::uint64_t& state) {
    for (;;) {
        QVec x = random_spinor(state);
        if (!is_zero_vec(x)) return x;
    }
}

std::string pad_helicities(const std::string& h, int N) {
    return h.empty() ? std::string(N, '+') : h;
}

KinematicTuple sample_three(std::uint64_t& state, Branch branch) {
    KinematicTuple t;
    t.N = 3;
    QVec v = nonzero_spinor(state);
    QVec w1 = nonzero_spinor(state), w2 = nonzero_spinor(state);
    QVec w3 = scale(w1 + w2, QI(-1));
    t.sp = {{v, w1}, {v, w2}, {v, w3}};
    return branch == Branch::plus ? t : t.transpose();
}

std::optional<KinematicTuple> try_sample_generic(int N, std::uint64_t& state) {
    KinematicTuple t;
    t.N = N;
    Mom P;
    for (int i = 0; i < N - 2; ++i) {
        SpinorPair s{nonzero_spinor(state), nonzero_spinor(state)};
        t.sp.push_back(s);
        P = P - s.k();
    }
    // det(P - v w^T) = det P - w^T adj(P) v with v on a line v0 + s v1
    QVec w = nonzero_spinor(state), v0 = random_spinor(state), v1 = nonzero_spinor(state);
    auto wadj = [&](const QVec& v) {
        QVec av = vec2(P.d * v[0] - P.b * v[1], -P.c * v[0] + P.a * v[1]);
        return w[0] * av[0] + w[1] * av[1];
    };
    QI den = wadj(v1);
    if (den.is_zero()) return std::nullopt;
    QI s = (P.Q() - wadj(v0)) / den;
    QVec v = v0 + scale(v1, s);
    t.sp.push_back({v, w});
    Mom last = P - Mom::outer(v, w);
    if (last.is_zero() || !last.Q().is_zero()) return std::nullopt;
    t.sp.push_back(factor(last));
    if (!t.conserves() || !t.generic()) return std::nullopt;
    return t;
}

KinematicTuple sample_generic(int N, std::uint64_t& state) {
    for (int r = 0; r < kRetries; ++r)
        if (auto t = try_sample_generic(N, state)) return *t;
    throw SamplingFailure("no generic tuple for N = " + std::to_string(N));
}

// Shift v_a += t v_c, w_c -= t w_a; keeps conservation.
void plus_shift(Pencil& p, int a, int c) {
    Poly t = Poly::t();
    for (int r = 0; r < 2; ++r) {
        Poly va = p.v[a - 1][r], wc = p.w[c - 1][r];
        p.v[a - 1][r] = va + t * p.v[c - 1][r];
        p.w[c - 1][r] = wc - t * p.w[a - 1][r];
    }
}

Pencil constant_pencil(const KinematicTuple& k, const Divisor& div) {
    Pencil p;
    p.div = div;
    p.helicities = k.helicities;
    for (const auto& s : k.sp) {
        p.v.push_back({Poly(s.v[0]), Poly(s.v[1])});
        p.w.push_back({Poly(s.w[0]), Poly(s.w[1])});
    }
    return p;
}

Pencil transpose(Pencil p, const Divisor& div) {
    std::swap(p.v, p.w);
    p.div = div;
    return p;
}

int first_label(Mask m) { return labels(m).front(); }

Pencil allplus_pencil(std::uint64_t& state) {
    // v_i = v + t eta_i; w from Cramer kernel vectors of [v_1..v_4], divided by t
    QVec v = nonzero_spinor(state);
    std::vector<QVec> eta;
    for (int i = 0; i < 4; ++i) eta.push_back(random_spinor(state));
    // m_ij / t = det(v, eta_j) - det(v, eta_i) + t det(eta_i, eta_j)
    auto m = [&](int i, int j) {
        return Poly(std::vector<QI>{det2(v, eta[j]) - det2(v, eta[i]),
                                    det2(eta[i], eta[j])});
    };
    std::vector<std::array<Poly, 4>> ker;
    const int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (const auto& tr : triples) {
        std::array<Poly, 4> x;
        int i = tr[0], j = tr[1], l = tr[2];
        x[i] = m(j, l);
        x[j] = -m(i, l);
        x[l] = m(i, j);
        ker.push_back(x);
    }
    Pencil p;
    p.v.resize(4);
    p.w.resize(4);
    std::array<Poly, 4> comb[2];
    for (int col = 0; col < 2; ++col)
        for (const auto& x : ker) {
            QI c = random_spinor(state)[0];
            for (int i = 0; i < 4; ++i) comb[col][i] += x[i].scaled(c);
        }
    Poly t = Poly::t();
    for (int i = 0; i < 4; ++i) {
        for (int r = 0; r < 2; ++r) p.v[i][r] = Poly(v[r]) + t.scaled(eta[i][r]);
        p.w[i] = {comb[0][i], comb[1][i]};
    }
    return p;
}

bool acceptable(const Pencil& p) {
    KinematicTuple b = p.base();
    if (!b.conserves() || !p.div.contains(b)) return false;
    std::vector<Mask> poles = p.div.poles();
    for (Mask J : poles) {
        Poly q = p.QJ(J);
        if (!q.eval(QI(0)).is_zero() || p.dQ(J).is_zero()) return false;
    }
    for (int i = 1; i <= b.N; ++i) {
        if (b.k(i).is_zero()) return false;
        for (int j = i + 1; j <= b.N; ++j)
            if (!independent(b.k(i), b.k(j))) return false;
    }
    Mask all = (Mask(1) << (b.N - 1)) - 1;
    for (Mask J = 1; J <= all; ++J) {
        int s = popcount(J);
        if (s < 2 || s > b.N - 2) continue;
        bool pole = std::find(poles.begin(), poles.end(), J) != poles.end();
        if (!pole && b.QJ(J).is_zero()) return false;
    }
    return p.at(QI(3, 1)).generic();
}

Pencil build_pencil(int N, const Divisor& div, std::uint64_t& state) {
    switch (div.kind) {
    case Divisor::minus:
        return transpose(build_pencil(N, {N, Divisor::plus, div.J}, state), div);
    case Divisor::allminus:
        return transpose(build_pencil(N, {N, Divisor::allplus, 0}, state), div);
    case Divisor::ppmm: {
        Mask rest = ((Mask(1) << N) - 1) & ~div.J;
        KinematicTuple lo = sample_three(state, Branch::plus);
        KinematicTuple hi = sample_three(state, Branch::minus);
        Pencil p = constant_pencil(glue(lo, hi, div.J, N, state), div);
        plus_shift(p, first_label(div.J), first_label(rest));
        return p;
    }
    case Divisor::allplus: {
        Pencil p = allplus_pencil(state);
        p.div = div;
        return p;
    }
    case Divisor::plus:
    case Divisor::qj: {
        int m = popcount(div.J);
        KinematicTuple lo = m == 2 ? sample_three(state, Branch::plus) : sample_generic(m + 1, state);
        KinematicTuple hi = sample_generic(N - m + 1, state);
        Pencil p = constant_pencil(glue(lo, hi, div.J, N, state), div);
        Mask rest = ((Mask(1) << N) - 1) & ~div.J;
        plus_shift(p, first_label(div.J), first_label(rest));
        return p;
    }
    }
    throw WrongDivisor(div.name());
}

}  // namespace

QI eps(const QVec& x, const QVec& y) { return det2(x, y); }

Pencil shift_pencil(const KinematicTuple& base, const Divisor& div, int a, int c) {
    if (!div.contains(base)) throw WrongDivisor("base point is not on " + div.name());
    if (a == c || a < 1 || c < 1 || a > base.N || c > base.N) throw UsageError("bad shift legs");
    bool minus = div.kind == Divisor::minus || div.kind == Divisor::allminus;
    Pencil p = constant_pencil(minus ? base.transpose() : base, div);
    plus_shift(p, a, c);
    if (minus) std::swap(p.v, p.w);
    p.helicities = base.helicities;
    return p;
}

SpinorPair rank_one_factor(const Mom& m) {
    if (m.is_zero() || !m.Q().is_zero()) throw DegenerateScalar("not a nonzero rank-one momentum");
    return factor(m);
}

std::vector<int> labels(Mask m) {
    std::vector<int> out;
    for (int b = 0; b < 32; ++b)
        if (m & (Mask(1) << b)) out.push_back(b + 1);
    return out;
}

Mask mask_of(const std::vector<int>& ls) {
    Mask m = 0;
    for (int l : ls) m |= Mask(1) << (l - 1);
    return m;
}

Mom KinematicTuple::kJ(Mask J) const {
    Mom s;
    for (int l : labels(J)) s = s + k(l);
    return s;
}

bool KinematicTuple::conserves() const { return kJ((Mask(1) << N) - 1).is_zero(); }

std::vector<Mask> KinematicTuple::vanishing() const {
    std::vector<Mask> out;
    Mask all = (Mask(1) << (N - 1)) - 1;
    for (Mask J = 1; J <= all; ++J) {
        int s = popcount(J);
        if (s >= 2 && s <= N - 2 && QJ(J).is_zero()) out.push_back(J);
    }
    return out;
}

bool KinematicTuple::generic() const {
    for (int i = 1; i <= N; ++i) {
        if (k(i).is_zero()) return false;
        for (int j = i + 1; j <= N; ++j)
            if (!independent(k(i), k(j))) return false;
    }
    return vanishing().empty();
}

KinematicTuple KinematicTuple::transpose() const {
    KinematicTuple t = *this;
    for (auto& s : t.sp) s = s.transpose();
    return t;
}

QVec random_spinor(std::uint64_t& state, int r) {
    std::mt19937_64 rng(state++);
    auto draw = [&] { return static_cast<long>(rng() % (2 * r + 1)) - r; };
    long a = draw(), b = draw(), c = draw(), d = draw();
    return vec2(QI(a, b), QI(c, d));
}

KinematicTuple sample_onshell_tuple(int N, const std::string& helicities, std::uint64_t seed,
                                    Branch branch) {
    if (N < 3) throw UsageError("need N >= 3");
    if (!helicities.empty() && static_cast<int>(helicities.size()) != N)
        throw UsageError("helicity string length differs from N");
    std::uint64_t state = seed * 1000003 + static_cast<std::uint64_t>(N);
    KinematicTuple t;
    if (N == 3) {
        for (int r = 0; r < kRetries && t.N == 0; ++r) {
            KinematicTuple c = sample_three(state, branch);
            if (c.generic()) t = c;
        }
        if (t.N == 0) throw SamplingFailure("no generic three-point tuple");
    } else {
        t = sample_generic(N, state);
    }
    t.helicities = pad_helicities(helicities, N);
    return t;
}

Branch three_point_branch(const KinematicTuple& t) {
    if (t.N != 3) throw WrongBranch("not a three-point tuple");
    auto shared = [&](bool left) {
        for (int i = 1; i < 3; ++i) {
            const QVec& x = left ? t.sp[0].v : t.sp[0].w;
            const QVec& y = left ? t.sp[i].v : t.sp[i].w;
            if (!det2(x, y).is_zero()) return false;
        }
        return true;
    };
    if (shared(true)) return Branch::plus;
    if (shared(false)) return Branch::minus;
    throw WrongBranch("three-point tuple on neither branch");
}

std::string Divisor::name() const {
    auto digits = [](Mask m) {
        std::string s;
        for (int l : labels(m)) s += std::to_string(l);
        return s;
    };
    switch (kind) {
    case qj: return "Q:" + digits(J);
    case plus: return "p+:" + digits(J);
    case minus: return "p-:" + digits(J);
    case allplus: return "pppp";
    case allminus: return "mmmm";
    case ppmm: return "ppmm:" + digits(J) + "|" + digits(((Mask(1) << N) - 1) & ~J);
    }
    return "";
}

Divisor Divisor::parse(int N, const std::string& s) {
    auto subset = [&](const std::string& d) {
        std::vector<int> ls;
        for (char ch : d) {
            if (ch < '1' || ch > '9' || ch - '0' > N) throw UsageError("bad divisor label in " + s);
            ls.push_back(ch - '0');
        }
        return mask_of(ls);
    };
    Divisor out{N, qj, 0};
    if (s == "pppp") out.kind = allplus;
    else if (s == "mmmm") out.kind = allminus;
    else if (s.rfind("ppmm:", 0) == 0) {
        auto bar = s.find('|');
        if (bar == std::string::npos) throw UsageError("ppmm needs ab|cd");
        out.kind = ppmm;
        out.J = subset(s.substr(5, bar - 5));
        if (out.J != (((Mask(1) << N) - 1) & ~subset(s.substr(bar + 1))))
            throw UsageError("ppmm parts must partition the legs");
    } else if (s.rfind("p+:", 0) == 0) {
        out.kind = plus;
        out.J = subset(s.substr(3));
    } else if (s.rfind("p-:", 0) == 0) {
        out.kind = minus;
        out.J = subset(s.substr(3));
    } else if (s.rfind("Q:", 0) == 0) {
        out.J = subset(s.substr(2));
    } else {
        throw UsageError("unknown divisor " + s);
    }
    bool ok = false;
    for (const Divisor& d : divisors(N))
        if (d.name() == out.name()) ok = true;
    if (!ok) throw WrongDivisor(s + " is not a divisor for N = " + std::to_string(N));
    return out;
}

std::vector<Mask> Divisor::poles() const {
    Mask all = (Mask(1) << N) - 1, top = Mask(1) << (N - 1);
    if (kind == allplus || kind == allminus) return {mask_of({1, 2}), mask_of({1, 3}), mask_of({2, 3})};
    return {J & top ? all & ~J : J};
}

bool Divisor::contains(const KinematicTuple& t) const {
    auto vpar = [&](int i, int j) { return det2(t.sp[i - 1].v, t.sp[j - 1].v).is_zero(); };
    auto wpar = [&](int i, int j) { return det2(t.sp[i - 1].w, t.sp[j - 1].w).is_zero(); };
    std::vector<int> ls = labels(J);
    switch (kind) {
    case qj: return t.QJ(J).is_zero();
    case plus: return vpar(ls[0], ls[1]);
    case minus: return wpar(ls[0], ls[1]);
    case allplus: return vpar(1, 2) && vpar(1, 3) && vpar(1, 4);
    case allminus: return wpar(1, 2) && wpar(1, 3) && wpar(1, 4);
    case ppmm: {
        std::vector<int> rest = labels(((Mask(1) << N) - 1) & ~J);
        return vpar(ls[0], ls[1]) && wpar(rest[0], rest[1]);
    }
    }
    return false;
}

std::vector<Divisor> divisors(int N) {
    if (N < 4) throw UsageError("divisors need N >= 4");
    std::vector<Divisor> out;
    if (N == 4) {
        out.push_back({4, Divisor::allplus, 0});
        out.push_back({4, Divisor::allminus, 0});
        for (int a = 1; a <= 4; ++a)
            for (int b = a + 1; b <= 4; ++b) out.push_back({4, Divisor::ppmm, mask_of({a, b})});
        return out;
    }
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) {
            out.push_back({N, Divisor::plus, mask_of({i, j})});
            out.push_back({N, Divisor::minus, mask_of({i, j})});
        }
    Mask all = (Mask(1) << (N - 1)) - 1;
    for (Mask J = 1; J <= all; ++J)
        if (popcount(J) >= 3 && N - popcount(J) >= 3) out.push_back({N, Divisor::qj, J});
    return out;
}

KinematicTuple Pencil::at(const QI& t) const {
    KinematicTuple k;
    k.N = N();
    k.helicities = helicities;
    for (int i = 0; i < k.N; ++i)
        k.sp.push_back({vec2(v[i][0].eval(t), v[i][1].eval(t)), vec2(w[i][0].eval(t), w[i][1].eval(t))});
    return k;
}

Poly Pencil::QJ(Mask J) const {
    Poly m[2][2];
    for (int l : labels(J))
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m[r][c] += v[l - 1][r] * w[l - 1][c];
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

int Pencil::degree() const {
    int d = 0;
    for (int i = 0; i < N(); ++i)
        for (int r = 0; r < 2; ++r) d = std::max({d, v[i][r].degree(), w[i][r].degree()});
    return d;
}

Pencil pencil_through_divisor(int N, const Divisor& div, const std::string& helicities,
                              std::uint64_t seed) {
    if (div.N != N) throw WrongDivisor(div.name() + " is for N = " + std::to_string(div.N));
    std::uint64_t state = seed * 7777 + 17;
    for (int r = 0; r < kRetries; ++r) {
        Pencil p;
        try {
            p = build_pencil(N, div, state);
        } catch (const DegenerateScalar&) {
            continue;
        }
        p.helicities = pad_helicities(helicities, N);
        if (acceptable(p)) return p;
    }
    throw SamplingFailure("no pencil through " + div.name());
}

KinematicTuple glue(const KinematicTuple& lo, const KinematicTuple& hi, Mask J, int N,
                    std::uint64_t& state) {
    if (popcount(J) + 1 != lo.N || N - popcount(J) + 1 != hi.N)
        throw UsageError("glue: leg counts do not match");
    const SpinorPair& K = lo.sp.back();
    const SpinorPair& h0 = hi.sp.front();
    QVec target_w = scale(K.w, QI(-1));
    for (int r = 0; r < kRetries; ++r) {
        QVec x = random_spinor(state), y = random_spinor(state);
        QVec x2 = random_spinor(state), y2 = random_spinor(state);
        M2 Sa = M2::cols(h0.v, x), Ta = M2::cols(K.v, x2);
        M2 Sb = M2::cols(h0.w, y), Tb = M2::cols(target_w, y2);
        if (Sa.det().is_zero() || Ta.det().is_zero() || Sb.det().is_zero() || Tb.det().is_zero())
            continue;
        M2 A = Ta * Sa.inv(), B = Tb * Sb.inv();
        KinematicTuple out;
        out.N = N;
        out.sp.resize(N);
        std::vector<int> jl = labels(J), rl = labels(((Mask(1) << N) - 1) & ~J);
        for (size_t i = 0; i < jl.size(); ++i) out.sp[jl[i] - 1] = lo.sp[i];
        for (size_t i = 0; i < rl.size(); ++i)
            out.sp[rl[i] - 1] = {A.apply(hi.sp[i + 1].v), B.apply(hi.sp[i + 1].w)};
        return out;
    }
    throw SamplingFailure("glue: no invertible frame");
}

}  // namespace mmb
