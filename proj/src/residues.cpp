#include "mmb/residues.hpp"

#include "mmb/errors.hpp"

namespace mmb {

namespace {

constexpr int kMaxDegree = 64;

std::vector<QVec> dual_basis(const LieAlgebra& u) {
    QMat inv = inverse(u.form);
    std::vector<QVec> out;
    for (int a = 0; a < u.dim; ++a) {
        QVec e(u.dim);
        for (int b = 0; b < u.dim; ++b) e[b] = inv(a, b);
        out.push_back(e);
    }
    return out;
}

QVec unit(int n, int a) {
    QVec e(n);
    e[a] = QI(1);
    return e;
}

}  // namespace

ResidueSample extract_residue(const DgLaSpec& g, const Pencil& pencil, std::uint64_t seed,
                              const std::vector<QVec>& colors) {
    int N = pencil.N();
    std::vector<std::pair<QI, QI>> samples;
    long next = 1;
    auto fill = [&](size_t want) {
        while (samples.size() < want) {
            QI t(next++);
            if (next > 4 * kMaxDegree + 64) throw SamplingFailure("too few generic points on the pencil");
            KinematicTuple kin = pencil.at(t);
            if (!kin.generic()) continue;
            samples.emplace_back(t, t * amplitude(g, kin, seed, colors).value);
        }
    };
    for (int D = 2 * (N - 2); D <= kMaxDegree; D *= 2) {
        fill(2 * D + 5);
        RatFun1 f;
        try {
            f = ratfun_interpolate(samples, D);
        } catch (const InterpolationMismatch&) {
            continue;
        }
        if (f.den().eval(QI(0)).is_zero()) throw PoleHit("pole of order two or more at t = 0");
        ResidueSample r;
        r.div = pencil.div;
        r.value = f.eval(QI(0));
        r.degree_bound = D;
        r.samples = static_cast<int>(samples.size());
        return r;
    }
    throw InterpolationMismatch("no rational fit up to degree " + std::to_string(kMaxDegree));
}

SpinorPair factor_internal(const KinematicTuple& base, Mask J) {
    Mom k = base.kJ(J);
    if (!k.Q().is_zero()) throw WrongDivisor("Q_J does not vanish");
    return rank_one_factor(k);
}

FusionValue fuse(const DgLaSpec& g, const KinematicTuple& base, const Divisor& div, Mask J,
                 std::uint64_t seed, const std::vector<QVec>& colors_in) {
    if (!div.contains(base)) throw WrongDivisor("tuple is not on " + div.name());
    int N = base.N;
    if (static_cast<int>(base.helicities.size()) != N) throw UsageError("helicities missing");
    std::vector<QVec> colors = colors_in.empty() ? default_colors(g, N) : colors_in;
    SpinorPair kJ = factor_internal(base, J);
    Mask all = (Mask(1) << N) - 1;
    std::vector<int> lo_legs = labels(J), hi_legs = labels(all & ~J);

    KinematicTuple lo, hi;
    lo.N = static_cast<int>(lo_legs.size()) + 1;
    hi.N = static_cast<int>(hi_legs.size()) + 1;
    std::vector<QVec> lo_colors, hi_colors;
    for (int l : lo_legs) {
        lo.sp.push_back(base.sp[l - 1]);
        lo.helicities += base.helicities[l - 1];
        lo_colors.push_back(colors[l - 1]);
    }
    lo.sp.push_back({kJ.v, scale(kJ.w, QI(-1))});
    hi.sp.push_back(kJ);
    hi_colors.push_back(QVec());
    for (int l : hi_legs) {
        hi.sp.push_back(base.sp[l - 1]);
        hi_colors.push_back(colors[l - 1]);
    }
    lo_colors.push_back(QVec());

    std::vector<QVec> down, up;
    if (g.u) {
        for (int a = 0; a < g.u->dim; ++a) down.push_back(unit(g.u->dim, a));
        up = dual_basis(*g.u);
    } else {
        down = up = {QVec(1, QI(1))};
    }

    FusionValue out;
    out.J = J;
    for (int z = 0; z < 2; ++z) {
        char zeta = z ? '+' : '-';
        KinematicTuple l = lo, h = hi;
        l.helicities += zeta;
        h.helicities = std::string(1, z ? '-' : '+');
        for (int leg : hi_legs) h.helicities += base.helicities[leg - 1];
        QI sum;
        for (size_t a = 0; a < down.size(); ++a) {
            lo_colors.back() = down[a];
            hi_colors.front() = up[a];
            QI x = amplitude(g, l, mix_seed(seed, 11), lo_colors).value;
            if (x.is_zero()) continue;
            sum += x * amplitude(g, h, mix_seed(seed, 13), hi_colors).value;
        }
        out.by_zeta[z] = sum;
        out.total += sum;
    }
    return out;
}

bool FactorizationReport::constant() const {
    std::optional<QI> r;
    for (const auto& t : trials) {
        if (t.indeterminate) continue;
        if (!t.ratio) return false;
        if (r && !(*r == *t.ratio)) return false;
        r = t.ratio;
    }
    return r.has_value();
}

std::optional<QI> FactorizationReport::ratio() const {
    for (const auto& t : trials)
        if (t.ratio) return t.ratio;
    return std::nullopt;
}

FactorizationReport check_factorization(const DgLaSpec& g, const std::string& helicities,
                                        const Divisor& div, int trials, std::uint64_t seed) {
    FactorizationReport rep;
    rep.div = div;
    rep.helicities = helicities;
    for (int i = 0; i < trials; ++i) {
        std::uint64_t s = mix_seed(seed, 300 + i);
        Pencil p = pencil_through_divisor(div.N, div, helicities, s);
        FactorizationTrial tr;
        tr.residue = extract_residue(g, p, mix_seed(s, 1)).value;
        KinematicTuple base = p.base();
        for (Mask J : div.poles()) {
            tr.terms.push_back(fuse(g, base, div, J, mix_seed(s, 2)));
            tr.inv_dQ.push_back(p.dQ(J).inv());
            tr.rhs += tr.terms.back().total * tr.inv_dQ.back();
        }
        tr.indeterminate = tr.residue.is_zero() && tr.rhs.is_zero();
        if (!tr.rhs.is_zero() && !tr.residue.is_zero()) tr.ratio = tr.residue / tr.rhs;
        rep.trials.push_back(tr);
    }
    return rep;
}

std::array<QI, 3> relative_residues(const Pencil& p) {
    if (p.N() != 4 || (p.div.kind != Divisor::allplus && p.div.kind != Divisor::allminus))
        throw WrongDivisor("relative residues need the N = 4 all-plus or all-minus divisor");
    KinematicTuple b = p.base();
    bool plus = p.div.kind == Divisor::allplus;
    auto s = [&](int l) { return plus ? b.sp[l - 1].w : b.sp[l - 1].v; };
    auto e = [&](int i, int j) { return eps(s(i), s(j)); };
    return {e(1, 2) * e(3, 4) / p.dQ(mask_of({1, 2})), e(3, 1) * e(2, 4) / p.dQ(mask_of({1, 3})),
            e(2, 3) * e(1, 4) / p.dQ(mask_of({2, 3}))};
}

QI calibrate_factorization(const DgLaSpec& g, std::uint64_t seed) {
    Divisor div = Divisor::parse(4, "ppmm:12|34");
    FactorizationReport rep = check_factorization(g, "-++-", div, 1, seed);
    if (!rep.ratio()) throw DegenerateScalar("calibration point has a zero side");
    return *rep.ratio();
}

}  // namespace mmb
