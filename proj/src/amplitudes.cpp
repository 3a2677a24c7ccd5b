#include "mmb/amplitudes.hpp"

#include <algorithm>

#include "mmb/errors.hpp"
#include "mmb/homotopy.hpp"

namespace mmb {

namespace {

int gamma_index(int sign) { return sign > 0 ? 1 : 0; }

// Element of the base complex (C for YM, g for GR) tensored with u.
QVec tensor_u(const DgLaSpec& g, const QVec& base, const QVec& u) {
    if (!g.u) return base;
    int nu = g.udim();
    QVec out(g.dim());
    for (size_t i = 0; i < base.size(); ++i) {
        if (base[i].is_zero()) continue;
        for (int a = 0; a < nu; ++a)
            if (!u[a].is_zero()) out[i * nu + a] = base[i] * u[a];
    }
    return out;
}

// Contracts the u factor of y with c.
QVec contract_u(const DgLaSpec& g, const QVec& y, const QVec& c) {
    if (!g.u) return y;
    int nu = g.udim();
    QVec out(g.base_dim);
    for (int i = 0; i < g.base_dim; ++i)
        for (int a = 0; a < nu; ++a)
            if (!y[i * nu + a].is_zero() && !c[a].is_zero()) out[i] += y[i * nu + a] * c[a];
    return out;
}

QVec slice(const QVec& x, const Grading& gr, int deg) {
    int o = gr.offset(deg);
    return QVec(x.begin() + o, x.begin() + o + gr.dim(deg));
}

QVec embed(const QVec& x, const Grading& gr, int deg) {
    QVec out(gr.total());
    std::copy(x.begin(), x.end(), out.begin() + gr.offset(deg));
    return out;
}

// spinor power in the degree-one slot of the Gamma complex
QVec gamma_power(const PolyComplex& G, const QVec& z, int m) {
    return embed(spinor_power(z, m), G.grading, 1);
}

std::vector<QVec> colors_or_default(const DgLaSpec& g, const KinematicTuple& kin,
                                    const std::vector<QVec>& colors) {
    return colors.empty() ? default_colors(g, kin.N) : colors;
}

int helicity_sign(const KinematicTuple& kin, int leg) {
    if (static_cast<int>(kin.helicities.size()) != kin.N) throw UsageError("helicities missing");
    char c = kin.helicities[leg - 1];
    if (c != '+' && c != '-') throw UsageError("helicity must be + or -");
    return c == '+' ? 1 : -1;
}

std::vector<HelicityState> input_states(const DgLaSpec& g, const KinematicTuple& kin,
                                        std::uint64_t seed, const std::vector<QVec>& colors) {
    std::vector<HelicityState> out;
    for (int i = 1; i < kin.N; ++i)
        out.push_back(helicity_state(g, kin.sp[i - 1], -helicity_sign(kin, i), colors[i - 1],
                                     mix_seed(seed, 100 + i)));
    return out;
}

OutputCovector output_for(const DgLaSpec& g, const KinematicTuple& kin, std::uint64_t seed,
                          const std::vector<QVec>& colors) {
    const SpinorPair& s = kin.sp[kin.N - 1];
    SpinorPair out{s.v, scale(s.w, QI(-1))};
    return OutputCovector(g, out, helicity_sign(kin, kin.N), colors[kin.N - 1], mix_seed(seed, 7));
}

void require_three_or_more(const KinematicTuple& kin) {
    if (kin.N < 3) throw UsageError("amplitudes need N >= 3");
    if (!kin.conserves()) throw UsageError("momentum is not conserved");
}

long tree_count(int n) {
    long r = 1;
    for (int k = 2 * n - 3; k > 1; k -= 2) r *= k;
    return r;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed * 0x9E3779B97F4A7C15ULL + salt * 0xBF58476D1CE4E5B9ULL + 1;
    x ^= x >> 31;
    return x;
}

HelicityState helicity_state(const DgLaSpec& g, const SpinorPair& sp, int sign, const QVec& u,
                             std::uint64_t seed) {
    Mom k = sp.k();
    if (k.is_zero()) throw SingularMomentum("state at k = 0");
    const ZigZagData& zz = g.zz;
    int m = zz.twice_h;
    PolyComplex G = build_gamma(m, sign);
    QVec x2 = zz.phi[gamma_index(sign)].apply(gamma_power(G, sign > 0 ? sp.v : sp.w, m));
    QVec y = zz.rp.apply(x2);
    PointContraction mid(zz.mid.grading, zz.mid.d.eval(k), seed);
    QVec hy = embed(mid.h(2, slice(y, zz.mid.grading, 2)), zz.mid.grading, 1);
    HelicityState s;
    s.sp = sp;
    s.sign = sign;
    s.twice_h = m;
    s.u = u;
    s.vec = tensor_u(g, zz.r.apply(hy), u);
    return s;
}

OutputCovector::OutputCovector(const DgLaSpec& g, const SpinorPair& sp, int sign, const QVec& u,
                               std::uint64_t)
    : g_(&g) {
    Mom k = sp.k();
    if (k.is_zero()) throw SingularMomentum("covector at k = 0");
    const ZigZagData& zz = g.zz;
    int m = zz.twice_h;
    if (g.u) u_ = g.u->form.apply(u);
    QMat L = zz.lp * zz.mid.d.eval(k) * zz.l;
    toGamma_ = zz.psi[gamma_index(sign)] * L;
    PolyComplex G = build_gamma(m, sign);
    gamma_grading_ = G.grading;
    Mom xi = k.transversal();
    QVec s = gamma_power(G, sign > 0 ? sp.v : sp.w, m);
    QVec c0 = slice(G.d.linear(xi).apply(s), G.grading, 2);
    c0 = scale(c0, k.dQ(xi).inv());
    QMat d1 = G.block(1).eval(k);
    basis_ = QMat::hstack(QMat::column(c0), d1);
}

QVec OutputCovector::to_gamma(const QVec& y) const {
    QVec z = toGamma_.apply(contract_u(*g_, y, u_));
    return slice(z, gamma_grading_, 2);
}

QI OutputCovector::operator()(const QVec& y) const {
    QVec z = to_gamma(y);
    auto x = solve(basis_, QMat::column(z));
    if (!x) throw NotADifferential("output is not a cycle");
    // sign fixed so that d' of the matching helicity_state maps to 1
    return -(*x)(0, 0);
}

OutputCovector output_covector(const DgLaSpec& g, const SpinorPair& sp, int sign, const QVec& u,
                               std::uint64_t seed) {
    return OutputCovector(g, sp, sign, u, seed);
}

std::vector<QVec> default_colors(const DgLaSpec& g, int N) {
    int nu = g.udim();
    std::vector<QVec> out;
    for (int l = 1; l <= N; ++l) {
        QVec e(nu);
        long x = 1;
        for (int a = 0; a < nu; ++a, x *= l + 1) e[a] = QI(x + a);
        out.push_back(e);
    }
    return out;
}

AmplitudeValue amplitude(const DgLaSpec& g, const KinematicTuple& kin, std::uint64_t seed,
                         const std::vector<QVec>& colors_in) {
    require_three_or_more(kin);
    std::vector<QVec> colors = colors_or_default(g, kin, colors_in);
    int n = kin.N - 1;
    std::vector<HelicityState> in = input_states(g, kin, seed, colors);
    Mask full = (Mask(1) << n) - 1;
    std::vector<QVec> Z(full + 1);
    for (int i = 0; i < n; ++i) Z[Mask(1) << i] = in[i].vec;
    std::vector<Mask> order;
    for (Mask S = 1; S <= full; ++S)
        if (popcount(S) >= 2) order.push_back(S);
    std::stable_sort(order.begin(), order.end(),
                     [](Mask a, Mask b) { return popcount(a) < popcount(b); });
    QVec root;
    for (Mask S : order) {
        Mask low = S & (~S + 1);
        QVec Y(g.dim());
        // unordered splits S = A + B with the lowest leg in A
        for (Mask A = (S - 1) & S; A; A = (A - 1) & S) {
            if (!(A & low)) continue;
            Mask B = S & ~A;
            Y = Y - g.bracket(kin.kJ(A), kin.kJ(B), Z[A], Z[B]);
        }
        if (S == full) {
            root = Y;
            break;
        }
        Mom kS = kin.kJ(S);
        if (kS.Q().is_zero()) throw OnShellInternalLine("Q_J = 0 on an internal line");
        PointContraction pc(g.grading, g.d.eval(kS), mix_seed(seed, S));
        Z[S] = embed(pc.h(2, slice(Y, g.grading, 2)), g.grading, 1);
    }
    AmplitudeValue out;
    out.helicities = kin.helicities;
    out.value = output_for(g, kin, seed, colors)(root);
    out.trees = tree_count(n);
    return out;
}

AmplitudeValue amplitude_by_trees(const DgLaSpec& g, const KinematicTuple& kin, std::uint64_t seed,
                                  const std::vector<QVec>& colors_in, int skip) {
    require_three_or_more(kin);
    std::vector<QVec> colors = colors_or_default(g, kin, colors_in);
    int n = kin.N - 1;
    std::vector<HelicityState> in = input_states(g, kin, seed, colors);
    HomotopyAssignment H;
    std::vector<QVec> x;
    for (int i = 0; i < n; ++i) {
        H.k.push_back(kin.k(i + 1));
        x.push_back(in[i].vec);
    }
    Mask full = (Mask(1) << n) - 1;
    for (Mask S = 1; S < full; ++S)
        if (popcount(S) >= 2) {
            Mom kS = kin.kJ(S);
            if (kS.Q().is_zero()) throw OnShellInternalLine("Q_J = 0 on an internal line");
            H.H[S] = trivial_homotopy(g, kS, mix_seed(seed, S));
        }
    QVec sum(g.dim());
    std::vector<TrivalentTree> trees = enumerate_trees(n);
    long used = 0;
    for (size_t t = 0; t < trees.size(); ++t) {
        if (static_cast<int>(t) == skip) continue;
        sum = sum + eval_tree(trees[t], g, H, x);
        ++used;
    }
    // eval_tree carries the fixed sign (-1)^{x_{n-1}+x_{n-3}+...} on top of
    // the node signs; for degree-one inputs it is (-1)^{floor(n/2)}
    if ((n / 2) % 2) sum = scale(sum, QI(-1));
    OutputCovector cov = output_for(g, kin, seed, colors);
    Mom K = -kin.k(kin.N);
    if (!is_zero_vec(g.d.eval(K).apply(sum))) {
        PointContraction pc(g.grading, g.d.eval(K), mix_seed(seed, 9));
        sum = embed(pc.proj(2, slice(sum, g.grading, 2)), g.grading, 2);
    }
    AmplitudeValue out;
    out.helicities = kin.helicities;
    out.value = cov(sum);
    out.trees = used;
    return out;
}

QI three_point_closed_form(const KinematicTuple& kin, const std::string& hel, int twice_h) {
    if (kin.N != 3 || hel.size() != 3) throw UsageError("closed form is for three points");
    int plus = static_cast<int>(std::count(hel.begin(), hel.end(), '+'));
    if (plus == 0 || plus == 3) return QI(0);
    Branch br = three_point_branch(kin);
    bool two_plus = plus == 2;
    if (two_plus != (br == Branch::plus)) throw WrongBranch("helicities " + hel + " need the other branch");
    KinematicTuple t = br == Branch::plus ? kin : kin.transpose();
    char pair_sign = two_plus ? '+' : '-';
    // shared spinor v = v_1, v_l = lambda_l v, w'_l = lambda_l w_l
    const QVec& v = t.sp[0].v;
    int r = v[0].is_zero() ? 1 : 0;
    std::vector<QI> lambda;
    std::vector<QVec> wp;
    for (int l = 0; l < 3; ++l) {
        lambda.push_back(t.sp[l].v[r] / v[r]);
        wp.push_back(scale(t.sp[l].w, lambda.back()));
    }
    std::vector<int> pair;
    int single = -1;
    for (int l = 0; l < 3; ++l) {
        if (hel[l] == pair_sign) pair.push_back(l);
        else single = l;
    }
    int h = twice_h / 2;
    QI val = eps(wp[pair[0]], wp[pair[1]]).pow(h);
    val *= (lambda[pair[0]] * lambda[pair[1]]).pow(twice_h).inv();
    val *= lambda[single].pow(twice_h);
    return val;
}

QI fixed_class_scaling(const DgLaSpec& g, const KinematicTuple& kin, const QI& lambda,
                       std::uint64_t seed) {
    QI a = amplitude(g, kin, seed).value;
    if (a.is_zero()) throw DegenerateScalar("amplitude vanishes at the reference tuple");
    KinematicTuple scaled = kin;
    for (auto& s : scaled.sp) s.v = scale(s.v, lambda);
    int m = g.twice_h();
    int weight = 1;
    for (int i = 1; i < kin.N; ++i)
        if (helicity_sign(kin, i) < 0) weight += m;
    if (helicity_sign(kin, kin.N) > 0) weight -= m;
    return amplitude(g, scaled, seed).value / a / lambda.pow(weight);
}

bool GaugeReport::all_equal() const {
    for (const auto& row : values)
        for (const QI& x : row)
            if (!(x == row.front())) return false;
    return true;
}

GaugeReport gauge_independence_suite(const DgLaSpec& g, int N, const std::string& helicities,
                                     int trials, std::uint64_t seed, int seeds, bool drop_tree) {
    GaugeReport rep;
    rep.trials = trials;
    rep.seeds = seeds;
    for (int t = 0; t < trials; ++t) {
        KinematicTuple kin = sample_onshell_tuple(N, helicities, mix_seed(seed, 1000 + t));
        std::vector<QI> row;
        for (int s = 0; s < seeds; ++s) {
            std::uint64_t hs = mix_seed(seed, 5000 + 31 * t + s);
            row.push_back(drop_tree ? amplitude_by_trees(g, kin, hs, {}, 0).value
                                    : amplitude(g, kin, hs).value);
        }
        rep.values.push_back(row);
    }
    return rep;
}

}  // namespace mmb
