#include "mmb/dgla.hpp"

#include <algorithm>
#include <random>

#include "mmb/contraction.hpp"
#include "mmb/forms.hpp"

namespace mmb {

namespace {

using forms::Form;

// Coordinates with respect to the columns of B, where [B | C] is invertible.
// `extra` collects the complement coordinates; x lies in span(B) iff extra x = 0.
struct Frame {
    QMat B, coords, extra;
};

Frame make_frame(const QMat& B, const QMat& C) {
    QMat T = QMat::hstack(B, C);
    QMat Ti = inverse(T);
    return {B, Ti.block(0, 0, B.cols(), T.rows()), Ti.block(B.cols(), 0, C.cols(), T.rows())};
}

// Complement spanned by coordinate vectors.
Frame make_frame(const QMat& B) {
    int n = B.rows();
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k;
    std::vector<int> pick = greedy_complement(B, QMat::identity(n), order);
    QMat C(n, static_cast<int>(pick.size()));
    for (size_t c = 0; c < pick.size(); ++c) C(pick[c], c) = QI(1);
    return make_frame(B, C);
}

void require_in_span(const Frame& F, const QMat& X, const char* what) {
    if (F.extra.rows() > 0 && !(F.extra * X).is_zero())
        throw NotADifferential(std::string("construction inconsistency: ") + what);
}

// Stable sort of (degree, vector) pairs into a basis matrix.
struct BasisList {
    std::vector<std::pair<int, QVec>> items;
    void add(int deg, QVec v) { items.push_back({deg, std::move(v)}); }
    void sort() {
        std::stable_sort(items.begin(), items.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    QMat matrix(int ambient) const {
        QMat M(ambient, static_cast<int>(items.size()));
        for (size_t c = 0; c < items.size(); ++c)
            for (int r = 0; r < ambient; ++r) M(r, c) = items[c].second[r];
        return M;
    }
    Grading grading() const {
        Grading g;
        g.lo = items.front().first;
        for (const auto& it : items) {
            int slot = it.first - g.lo;
            if (static_cast<int>(g.dims.size()) <= slot) g.dims.resize(slot + 1, 0);
            ++g.dims[slot];
        }
        return g;
    }
};

// Conjugate a slotwise operator on an ambient space into frame coordinates:
// coords * A * B.
PolyMatrix restrict(const Frame& F, const std::array<QMat, 5>& A, const char* what) {
    PolyMatrix P(F.B.cols(), F.B.cols());
    for (int s = 0; s < 5; ++s) {
        QMat AB = A[s] * F.B;
        require_in_span(F, AB, what);
        P.coef(s) = F.coords * AB;
    }
    return P;
}

PolyMatrix conjugate(const QMat& left, const PolyMatrix& A, const QMat& right) {
    PolyMatrix P(left.rows(), right.cols());
    for (int s = 0; s < 5; ++s) P.coef(s) = left * A.coef(s) * right;
    return P;
}

// Solve for constant chain maps Gamma -> target with degree shift +1;
// returns a basis of the solution space.
std::vector<QMat> chain_maps(const PolyComplex& G, const PolyComplex& T) {
    int n = T.grading.total(), m = G.grading.total();
    // unknown (i, j) allowed if deg_T(i) = deg_G(j) + 1
    std::vector<std::pair<int, int>> unk;
    std::vector<int> uidx(static_cast<size_t>(n) * m, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (T.grading.degree_of(i) == G.grading.degree_of(j) + 1) {
                uidx[static_cast<size_t>(i) * m + j] = static_cast<int>(unk.size());
                unk.push_back({i, j});
            }
    std::vector<QVec> rows;
    for (int s = 0; s < 5; ++s) {
        const QMat& DT = T.d.coef(s);
        const QMat& DG = G.d.coef(s);
        if (DT.is_zero() && DG.is_zero()) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                QVec row(unk.size());
                bool any = false;
                for (int l = 0; l < n; ++l) {
                    if (DT(i, l).is_zero()) continue;
                    int u = uidx[static_cast<size_t>(l) * m + j];
                    if (u < 0) continue;
                    row[u] += DT(i, l);
                    any = true;
                }
                for (int l = 0; l < m; ++l) {
                    if (DG(l, j).is_zero()) continue;
                    int u = uidx[static_cast<size_t>(i) * m + l];
                    if (u < 0) continue;
                    row[u] -= DG(l, j);
                    any = true;
                }
                if (any) rows.push_back(std::move(row));
            }
    }
    QMat E(static_cast<int>(rows.size()), static_cast<int>(unk.size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < unk.size(); ++c) E(r, c) = rows[r][c];
    QMat K = kernel_basis(E);
    std::vector<QMat> out;
    for (int c = 0; c < K.cols(); ++c) {
        QMat phi(n, m);
        for (size_t u = 0; u < unk.size(); ++u) phi(unk[u].first, unk[u].second) = K(u, c);
        out.push_back(phi);
    }
    return out;
}

// Fill phi/psi: one chain map from each Gamma_s, jointly invertible.
void identify_gammas(ZigZagData& zz) {
    for (int s = 0; s < 2; ++s) {
        PolyComplex G = build_gamma(zz.twice_h, s == 0 ? -1 : 1);
        std::vector<QMat> sols = chain_maps(G, zz.sub);
        if (sols.size() != 1)
            throw NotADifferential("expected a unique chain map from Gamma, found " +
                                   std::to_string(sols.size()));
        zz.phi[s] = sols[0];
    }
    QMat Phi = QMat::hstack(zz.phi[0], zz.phi[1]);
    auto Pinv = try_inverse(Phi);
    if (!Pinv) throw NotADifferential("Gamma summands do not exhaust the subcomplex");
    int m = zz.phi[0].cols();
    zz.psi[0] = Pinv->block(0, 0, m, Phi.rows());
    zz.psi[1] = Pinv->block(m, 0, m, Phi.rows());
}

QMat kron_identity(const QMat& A, int n) {
    QMat K(A.rows() * n, A.cols() * n);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) {
            if (A(i, j).is_zero()) continue;
            for (int a = 0; a < n; ++a) K(i * n + a, j * n + a) = A(i, j);
        }
    return K;
}

}  // namespace

// ---- internal Lie algebra

QVec LieAlgebra::bracket(const QVec& x, const QVec& y) const {
    QVec out(dim);
    for (int a = 0; a < dim; ++a) {
        if (x[a].is_zero()) continue;
        for (int b = 0; b < dim; ++b) {
            if (y[b].is_zero()) continue;
            out = out + scale(f[a * dim + b], x[a] * y[b]);
        }
    }
    return out;
}

QI LieAlgebra::pair(const QVec& x, const QVec& y) const {
    QVec fy = form.apply(y);
    QI s;
    for (int a = 0; a < dim; ++a) s += x[a] * fy[a];
    return s;
}

LieAlgebra sl2() {
    LieAlgebra u;
    u.dim = 3;
    u.names = {"e", "f", "h"};
    u.f.assign(9, QVec(3));
    auto set = [&](int a, int b, QVec v) {
        u.f[a * 3 + b] = v;
        u.f[b * 3 + a] = scale(v, QI(-1));
    };
    set(0, 1, {QI(0), QI(0), QI(1)});   // [e,f] = h
    set(2, 0, {QI(2), QI(0), QI(0)});   // [h,e] = 2e
    set(2, 1, {QI(0), QI(-2), QI(0)});  // [h,f] = -2f
    u.form = QMat(3, 3);
    u.form(0, 1) = u.form(1, 0) = QI(1);
    u.form(2, 2) = QI(2);
    return u;
}

void validate(const LieAlgebra& u) {
    auto e = [&](int a) {
        QVec v(u.dim);
        v[a] = QI(1);
        return v;
    };
    if (u.dim < 3) throw InvalidInternalAlgebra("dimension below 3");
    if (u.form != u.form.transpose()) throw InvalidInternalAlgebra("form not symmetric");
    if (rank(u.form) != u.dim) throw InvalidInternalAlgebra("form degenerate");
    bool abelian = true;
    for (int a = 0; a < u.dim; ++a)
        for (int b = 0; b < u.dim; ++b) {
            QVec ab = u.bracket(e(a), e(b)), ba = u.bracket(e(b), e(a));
            if (!is_zero_vec(ab)) abelian = false;
            if (!is_zero_vec(ab + ba)) throw InvalidInternalAlgebra("bracket not antisymmetric");
            for (int c = 0; c < u.dim; ++c) {
                QVec j = u.bracket(e(a), u.bracket(e(b), e(c))) +
                         u.bracket(e(b), u.bracket(e(c), e(a))) +
                         u.bracket(e(c), u.bracket(e(a), e(b)));
                if (!is_zero_vec(j)) throw InvalidInternalAlgebra("Jacobi fails");
                if (u.pair(ab, e(c)) != u.pair(e(a), u.bracket(e(b), e(c))))
                    throw InvalidInternalAlgebra("form not invariant");
            }
        }
    if (abelian) throw InvalidInternalAlgebra("abelian");
}

// ---- bracket evaluation

QI BracketTerm::eval(const Mom& k1, const Mom& k2) const {
    QI v = c[0];
    for (int s = 0; s < 4; ++s) {
        if (!c[1 + s].is_zero() && !k1[s].is_zero()) v += c[1 + s] * k1[s];
        if (!c[5 + s].is_zero() && !k2[s].is_zero()) v += c[5 + s] * k2[s];
    }
    return v;
}

QVec DgLaSpec::bracket(const Mom& k1, const Mom& k2, const QVec& x, const QVec& y) const {
    int n = dim();
    QVec out(n);
    std::vector<int> nx, ny;
    for (int i = 0; i < n; ++i) {
        if (!x[i].is_zero()) nx.push_back(i);
        if (!y[i].is_zero()) ny.push_back(i);
    }
    for (int i : nx)
        for (int j : ny) {
            const auto& terms = table[static_cast<size_t>(i) * n + j];
            if (terms.empty()) continue;
            QI xy = x[i] * y[j];
            for (const auto& t : terms) {
                QI c = t.eval(k1, k2);
                if (!c.is_zero()) out[t.out] += c * xy;
            }
        }
    return out;
}

int DgLaSpec::vec_degree(const QVec& x) const {
    int deg = -1;
    for (int i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        int d = grading.degree_of(i);
        if (deg == -1) deg = d;
        else if (deg != d) return -2;
    }
    return deg;
}

// ---- Yang-Mills

// The algebra Omega + eps Omega with eps of degree -1, eps^2 = 0 and
// d(eps b) = b - eps db; coordinates: eps*16 + form index.
namespace {

constexpr int kE = 32;

QVec ym_embed(const Form& f, bool eps) {
    QVec v(kE);
    for (int x = 0; x < 16; ++x) v[(eps ? 16 : 0) + x] = f[x];
    return v;
}

QVec ym_product(const QVec& x, const QVec& y) {
    Form x0(x.begin(), x.begin() + 16), x1(x.begin() + 16, x.end());
    Form y0(y.begin(), y.begin() + 16), y1(y.begin() + 16, y.end());
    QVec out = ym_embed(forms::wedge(x0, y0), false);
    // x0 * eps y1 = (-1)^{|x0|} eps x0 y1, for homogeneous parts
    Form odd = forms::zero(), even = forms::zero();
    for (int k = 0; k < 16; ++k) (forms::degree(k) % 2 ? odd : even)[k] = x0[k];
    Form t = forms::wedge(even, y1) - forms::wedge(odd, y1) + forms::wedge(x1, y0);
    return out + ym_embed(t, true);
}

// slot 0: eps b -> b ; slots 1..4: z -> k z, eps b -> -eps k b
QMat ym_dslot(int s) {
    QMat D(kE, kE);
    for (int x = 0; x < 16; ++x) {
        Form e = forms::zero();
        e[x] = QI(1);
        if (s == 0) {
            D(x, 16 + x) = QI(1);
            continue;
        }
        Form kb = forms::wedge(forms::momentum_form(s), e);
        for (int y = 0; y < 16; ++y) {
            if (kb[y].is_zero()) continue;
            D(y, x) = kb[y];
            D(16 + y, 16 + x) = -kb[y];
        }
    }
    return D;
}

}  // namespace

DgLaSpec build_ym(const LieAlgebra& u) {
    validate(u);
    using forms::basis;
    using forms::self_dual;
    auto m3 = [](int a, int b, int c) { return (1 << a) | (1 << b) | (1 << c); };
    std::vector<int> threes = {m3(0, 1, 2), m3(0, 1, 3), m3(0, 2, 3), m3(1, 2, 3)};

    // basis of the subquotient, as lifts
    BasisList A;
    A.add(0, ym_embed(basis(0), false));
    for (int mu = 0; mu < 4; ++mu) A.add(1, ym_embed(basis(1 << mu), false));
    for (int a = 1; a <= 3; ++a) A.add(1, ym_embed(self_dual(a, +1), true));
    for (int a = 1; a <= 3; ++a) A.add(2, ym_embed(self_dual(a, +1), false));
    for (int t : threes) A.add(2, ym_embed(basis(t), true));
    A.add(3, ym_embed(basis(15), true));
    // the ideal I_- and a complement of Omega + eps I_+
    BasisList Im, Ex;
    for (int a = 1; a <= 3; ++a) Im.add(2, ym_embed(self_dual(a, -1), false));
    for (int t : threes) Im.add(3, ym_embed(basis(t), false));
    Im.add(4, ym_embed(basis(15), false));
    Ex.add(-1, ym_embed(basis(0), true));
    for (int mu = 0; mu < 4; ++mu) Ex.add(0, ym_embed(basis(1 << mu), true));
    for (int a = 1; a <= 3; ++a) Ex.add(1, ym_embed(self_dual(a, -1), true));

    QMat S = A.matrix(kE), IM = Im.matrix(kE), EX = Ex.matrix(kE);
    // a-coordinates of elements of Omega + eps I_+ : drop the I_- part
    QMat Tinv = inverse(QMat::hstack(S, QMat::hstack(IM, EX)));
    QMat P = Tinv.block(0, 0, S.cols(), kE);
    QMat exOnly = Tinv.block(S.cols() + IM.cols(), 0, EX.cols(), kE);

    std::array<QMat, 5> D32;
    for (int s = 0; s < 5; ++s) D32[s] = ym_dslot(s);

    const int na = S.cols();
    PolyMatrix da(na, na);
    for (int s = 0; s < 5; ++s) {
        QMat X = D32[s] * S;
        if (!(exOnly * X).is_zero()) throw NotADifferential("YM differential leaves the subalgebra");
        da.coef(s) = P * X;
    }
    // products in the subquotient
    std::vector<std::vector<std::pair<int, QI>>> prod(static_cast<size_t>(na) * na);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            QVec xy = ym_product(S.col(i), S.col(j));
            if (is_zero_vec(xy)) continue;
            if (!is_zero_vec(exOnly.apply(xy))) throw NotADifferential("YM product leaves the subalgebra");
            QVec c = P.apply(xy);
            for (int l = 0; l < na; ++l)
                if (!c[l].is_zero()) prod[static_cast<size_t>(i) * na + j].push_back({l, c[l]});
        }

    DgLaSpec g;
    g.label = "YM";
    g.u = u;
    g.base_dim = na;
    const int nu = u.dim;
    g.grading = A.grading();
    for (auto& x : g.grading.dims) x *= nu;
    int n = na * nu;
    g.d = PolyMatrix(n, n);
    for (int s = 0; s < 5; ++s) g.d.coef(s) = kron_identity(da.coef(s), nu);
    g.table.assign(static_cast<size_t>(n) * n, {});
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (const auto& [l, c] : prod[static_cast<size_t>(i) * na + j])
                for (int a = 0; a < nu; ++a)
                    for (int b = 0; b < nu; ++b) {
                        const QVec& ab = u.f[a * nu + b];
                        for (int cc = 0; cc < nu; ++cc) {
                            if (ab[cc].is_zero()) continue;
                            BracketTerm t;
                            t.out = l * nu + cc;
                            t.c[0] = c * ab[cc];
                            g.table[static_cast<size_t>(i * nu + a) * n + (j * nu + b)].push_back(t);
                        }
                    }

    // Middle complex (Omega + eps I_+) + I_+ inside the ambient kE + 16.
    const int amb = kE + 16;
    auto lift = [&](const QVec& x) {
        QVec v(amb);
        for (int k = 0; k < kE; ++k) v[k] = x[k];
        return v;
    };
    auto second = [&](const Form& f) {
        QVec v(amb);
        for (int k = 0; k < 16; ++k) v[kE + k] = f[k];
        return v;
    };
    BasisList Mid, Sub;
    Mid.add(0, lift(ym_embed(basis(0), false)));
    for (int mu = 0; mu < 4; ++mu) Mid.add(1, lift(ym_embed(basis(1 << mu), false)));
    for (int a = 1; a <= 3; ++a) Mid.add(2, lift(ym_embed(self_dual(a, +1), false)));
    for (int a = 1; a <= 3; ++a) Mid.add(2, lift(ym_embed(self_dual(a, -1), false)));
    for (int t : threes) Mid.add(3, lift(ym_embed(basis(t), false)));
    Mid.add(4, lift(ym_embed(basis(15), false)));
    for (int a = 1; a <= 3; ++a) Mid.add(1, lift(ym_embed(self_dual(a, +1), true)));
    for (int t : threes) Mid.add(2, lift(ym_embed(basis(t), true)));
    Mid.add(3, lift(ym_embed(basis(15), true)));
    for (int a = 1; a <= 3; ++a) Mid.add(2, second(self_dual(a, +1)));
    for (int t : threes) Mid.add(3, second(basis(t)));
    Mid.add(4, second(basis(15)));
    Mid.sort();
    // C'' = I_- + I_+
    for (int a = 1; a <= 3; ++a) Sub.add(2, lift(ym_embed(self_dual(a, -1), false)));
    for (int t : threes) Sub.add(3, lift(ym_embed(basis(t), false)));
    Sub.add(4, lift(ym_embed(basis(15), false)));
    for (int a = 1; a <= 3; ++a) Sub.add(2, second(self_dual(a, +1)));
    for (int t : threes) Sub.add(3, second(basis(t)));
    Sub.add(4, second(basis(15)));
    Sub.sort();

    std::array<QMat, 5> D48;
    for (int s = 0; s < 5; ++s) {
        QMat D(amb, amb);
        D.set_block(0, 0, D32[s]);
        if (s == 0) {
            for (int k = 0; k < 16; ++k) D(kE + k, 16 + k) = QI(1);  // eps b -> b
        } else {
            D.set_block(kE, kE, D32[s].block(0, 0, 16, 16));  // k wedge
        }
        D48[s] = D;
    }
    QMat BM = Mid.matrix(amb), BS = Sub.matrix(amb);
    Frame FM = make_frame(BM), FS = make_frame(BS);
    ZigZagData& zz = g.zz;
    zz.twice_h = 2;
    zz.quot.grading = A.grading();
    zz.quot.d = da;
    zz.mid.grading = Mid.grading();
    zz.mid.d = restrict(FM, D48, "YM middle differential");
    zz.sub.grading = Sub.grading();
    zz.sub.d = restrict(FS, D48, "YM subcomplex differential");
    require_in_span(FM, BS, "subcomplex inside middle");
    zz.rp = FM.coords * BS;
    // r: middle -> subquotient; l: subquotient -> middle
    QMat Pamb(na, amb);
    Pamb.set_block(0, 0, P);
    zz.r = Pamb * BM;
    QMat Samb(amb, na);
    Samb.set_block(0, 0, S);
    zz.l = FM.coords * Samb;
    // l': x -> x - S P x (in I_-) plus the second summand, in C'' coordinates
    QMat Id = QMat::identity(amb);
    QMat proj = Id - Samb * Pamb;
    QMat X = proj * BM;
    require_in_span(FS, X, "splitting into the subcomplex");
    zz.lp = FS.coords * X;
    identify_gammas(zz);
    return g;
}

// ---- General relativity

namespace {

// v basis: 0..3 = d_mu, 4..9 = T_{01},T_{02},T_{03},T_{12},T_{13},T_{23}
const std::array<std::pair<int, int>, 6> kPairs = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

QMat so_matrix(int A) {
    // T_{mu nu}(dx^rho) = eta^{rho mu} dx^nu - eta^{rho nu} dx^mu, eta = diag(-1,1,1,1)
    auto eta = [](int x) { return x == 0 ? QI(-1) : QI(1); };
    auto [mu, nu] = kPairs[A];
    QMat M(4, 4);
    M(nu, mu) += eta(mu);
    M(mu, nu) -= eta(nu);
    return M;
}

// so structure constants in the T basis
std::vector<QVec> so_bracket_table() {
    QMat Mb(16, 6);
    std::array<QMat, 6> T;
    for (int A = 0; A < 6; ++A) {
        T[A] = so_matrix(A);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) Mb(4 * r + c, A) = T[A](r, c);
    }
    std::vector<QVec> out(36);
    for (int A = 0; A < 6; ++A)
        for (int B = 0; B < 6; ++B) {
            QMat C = T[A] * T[B] - T[B] * T[A];
            QVec cv(16);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) cv[4 * r + c] = C(r, c);
            auto sol = solve_vec(Mb, cv);
            if (!sol) throw NotADifferential("so(1,3) not closed");
            out[A * 6 + B] = *sol;
        }
    return out;
}

constexpr int kV = 10;
constexpr int kBig = 16 * kV;

int big(int form_index, int v) { return form_index * kV + v; }

using Sparse = std::vector<BracketTerm>;

void add_term(Sparse& acc, int out, int slot, const QI& v) {
    for (auto& t : acc)
        if (t.out == out) {
            t.c[slot] += v;
            return;
        }
    BracketTerm t;
    t.out = out;
    t.c[slot] = v;
    acc.push_back(t);
}

void prune(Sparse& acc) {
    std::erase_if(acc, [](const BracketTerm& t) {
        return std::all_of(t.c.begin(), t.c.end(), [](const QI& x) { return x.is_zero(); });
    });
}

void add_form(Sparse& acc, const Form& f, int v, int slot, const QI& scale) {
    for (int x = 0; x < 16; ++x)
        if (!f[x].is_zero()) add_term(acc, big(x, v), slot, f[x] * scale);
}

// Apply a sparse column map to the output index of a sparse bracket.
Sparse project(const Sparse& t, const std::vector<std::vector<std::pair<int, QI>>>& cols) {
    Sparse out;
    for (const auto& term : t)
        for (const auto& [c, w] : cols[term.out])
            for (int s = 0; s < 9; ++s)
                if (!term.c[s].is_zero()) add_term(out, c, s, w * term.c[s]);
    prune(out);
    return out;
}

}  // namespace

DgLaSpec build_gr() {
    std::array<QMat, 6> T;
    for (int A = 0; A < 6; ++A) T[A] = so_matrix(A);
    std::vector<QVec> sob = so_bracket_table();

    // full bracket table on Omega (x) v
    std::vector<Sparse> bigtab(static_cast<size_t>(kBig) * kBig);
    auto action = [&](int v, const Form& w, int slot_base, std::vector<std::pair<int, Form>>& out) {
        // v(w) as a list of (slot, form); slot_base 0 for k1 (slots 1..4), 4 for k2
        if (v < 4) {
            for (int s = 1; s <= 4; ++s) {
                QI c = lorentz_form(v)[s - 1];
                if (!c.is_zero()) out.push_back({slot_base + s, scale(w, c)});
            }
        } else {
            out.push_back({0, forms::derivation(T[v - 4], w)});
        }
    };
    for (int x = 0; x < 16; ++x)
        for (int v = 0; v < kV; ++v)
            for (int y = 0; y < 16; ++y)
                for (int vp = 0; vp < kV; ++vp) {
                    Form w = forms::zero(), wp = forms::zero();
                    w[x] = QI(1);
                    wp[y] = QI(1);
                    Sparse acc;
                    // (w v(w')) (x) v'
                    std::vector<std::pair<int, Form>> a1;
                    action(v, wp, 4, a1);
                    for (auto& [slot, f] : a1) {
                        Form r = forms::wedge(w, f);
                        if (!is_zero_vec(r)) add_form(acc, r, vp, slot, QI(1));
                    }
                    // - (v'(w) w') (x) v
                    std::vector<std::pair<int, Form>> a2;
                    action(vp, w, 0, a2);
                    for (auto& [slot, f] : a2) {
                        Form r = forms::wedge(f, wp);
                        if (!is_zero_vec(r)) add_form(acc, r, v, slot, QI(-1));
                    }
                    // (w w') (x) [v, v']
                    if (v >= 4 && vp >= 4) {
                        Form r = forms::wedge(w, wp);
                        const QVec& c = sob[(v - 4) * 6 + (vp - 4)];
                        if (!is_zero_vec(r))
                            for (int C = 0; C < 6; ++C)
                                if (!c[C].is_zero()) add_form(acc, r, 4 + C, 0, c[C]);
                    }
                    prune(acc);
                    bigtab[static_cast<size_t>(big(x, v)) * kBig + big(y, vp)] = std::move(acc);
                }

    // [X, Y] with X at momentum zero, as slot coefficients in the momentum of Y
    auto big_bracket = [&](const QVec& X, const QVec& Y) {
        std::array<QVec, 5> out;
        for (auto& o : out) o = QVec(kBig);
        for (int i = 0; i < kBig; ++i) {
            if (X[i].is_zero()) continue;
            for (int j = 0; j < kBig; ++j) {
                if (Y[j].is_zero()) continue;
                QI xy = X[i] * Y[j];
                for (const auto& t : bigtab[static_cast<size_t>(i) * kBig + j]) {
                    if (!t.c[0].is_zero()) out[0][t.out] += t.c[0] * xy;
                    for (int s = 1; s <= 4; ++s)
                        if (!t.c[4 + s].is_zero()) out[s][t.out] += t.c[4 + s] * xy;
                }
            }
        }
        return out;
    };

    // m = sum dx^mu (x) d_mu ; d = [m, -] with m at momentum zero
    QVec mvec(kBig);
    for (int mu = 0; mu < 4; ++mu) mvec[big(forms::index_of(1 << mu), mu)] = QI(1);
    std::array<QMat, 5> Dbig;
    for (auto& D : Dbig) D = QMat(kBig, kBig);
    for (int j = 0; j < kBig; ++j) {
        QVec e(kBig);
        e[j] = QI(1);
        auto cols = big_bracket(mvec, e);
        for (int s = 0; s < 5; ++s)
            for (int l = 0; l < kBig; ++l)
                if (!cols[s][l].is_zero()) Dbig[s](l, j) = cols[s][l];
    }

    // ideal: symmetric traceless pairings of (anti-)self-dual forms with
    // their images in so, then the Omega-span
    auto so_image = [&](const Form& f) {
        QVec a(kV);
        for (int A = 0; A < 6; ++A) {
            auto [mu, nu] = kPairs[A];
            a[4 + A] = f[forms::index_of((1 << mu) | (1 << nu))];
        }
        return a;
    };
    auto tensor = [&](const Form& f, const QVec& v) {
        QVec out(kBig);
        for (int x = 0; x < 16; ++x)
            if (!f[x].is_zero())
                for (int b = 0; b < kV; ++b)
                    if (!v[b].is_zero()) out[big(x, b)] += f[x] * v[b];
        return out;
    };
    std::vector<QMat> Ss;
    {
        auto mk = [](std::initializer_list<std::tuple<int, int, int>> entries) {
            QMat S(3, 3);
            for (auto [i, j, v] : entries) S(i, j) += QI(v);
            return S;
        };
        Ss.push_back(mk({{0, 0, 1}, {1, 1, -1}}));
        Ss.push_back(mk({{1, 1, 1}, {2, 2, -1}}));
        Ss.push_back(mk({{0, 1, 1}, {1, 0, 1}}));
        Ss.push_back(mk({{0, 2, 1}, {2, 0, 1}}));
        Ss.push_back(mk({{1, 2, 1}, {2, 1, 1}}));
    }
    std::vector<QVec> gens[5];
    for (int s : {+1, -1})
        for (const QMat& S : Ss) {
            QVec gsum(kBig);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    if (!S(a, b).is_zero())
                        gsum = gsum + scale(tensor(forms::self_dual(a + 1, s),
                                                   so_image(forms::self_dual(b + 1, s))),
                                            S(a, b));
            gens[2].push_back(gsum);
        }
    auto wedge_left = [&](int mask, const QVec& X) {
        QVec out(kBig);
        for (int x = 0; x < 16; ++x)
            for (int b = 0; b < kV; ++b) {
                const QI& c = X[big(x, b)];
                if (c.is_zero()) continue;
                int sg = forms::wedge_sign(mask, forms::kMask[x]);
                if (sg == 0) continue;
                out[big(forms::index_of(mask | forms::kMask[x]), b)] += sg > 0 ? c : -c;
            }
        return out;
    };
    for (const auto& G : gens[2])
        for (int mu = 0; mu < 4; ++mu) gens[3].push_back(wedge_left(1 << mu, G));
    for (const auto& G : gens[3])
        for (int mu = 0; mu < 4; ++mu) gens[4].push_back(wedge_left(1 << mu, G));

    std::vector<QVec> Ibasis;
    std::vector<int> Ipivot;
    std::vector<int> Idims;
    for (int deg = 2; deg <= 4; ++deg) {
        QMat M(static_cast<int>(gens[deg].size()), kBig);
        for (size_t r = 0; r < gens[deg].size(); ++r)
            for (int c = 0; c < kBig; ++c) M(r, c) = gens[deg][r][c];
        std::vector<int> piv = rref_inplace(M);
        Idims.push_back(static_cast<int>(piv.size()));
        for (size_t r = 0; r < piv.size(); ++r) {
            Ibasis.push_back(M.row(static_cast<int>(r)));
            Ipivot.push_back(piv[r]);
        }
    }
    if (Idims != std::vector<int>{10, 16, 6})
        throw NotADifferential("unexpected ideal dimensions");

    std::vector<char> isPivot(kBig, 0);
    for (int p : Ipivot) isPivot[p] = 1;
    std::vector<int> keep;
    for (int j = 0; j < kBig; ++j)
        if (!isPivot[j]) keep.push_back(j);
    const int n = static_cast<int>(keep.size());
    const int nI = static_cast<int>(Ibasis.size());

    // pi: Omega (x) v -> g, s: g -> Omega (x) v, rp: I -> Omega (x) v, lp: pivot coordinates
    QMat Pi(n, kBig), Sl(kBig, n), Rp(kBig, nI), Lp(nI, kBig);
    for (int c = 0; c < n; ++c) {
        Sl(keep[c], c) = QI(1);
        Pi(c, keep[c]) = QI(1);
    }
    for (int q = 0; q < nI; ++q) {
        Lp(q, Ipivot[q]) = QI(1);
        for (int j = 0; j < kBig; ++j) Rp(j, q) = Ibasis[q][j];
        for (int c = 0; c < n; ++c)
            if (!Ibasis[q][keep[c]].is_zero()) Pi(c, Ipivot[q]) -= Ibasis[q][keep[c]];
    }

    DgLaSpec g;
    g.label = "GR";
    g.base_dim = n;
    g.grading.lo = 0;
    for (int deg = 0; deg <= 4; ++deg) {
        int cnt = 0;
        for (int j : keep)
            if (forms::degree(j / kV) == deg) ++cnt;
        g.grading.dims.push_back(cnt);
    }
    PolyMatrix Dp(kBig, kBig);
    for (int s = 0; s < 5; ++s) Dp.coef(s) = Dbig[s];
    g.d = conjugate(Pi, Dp, Sl);

    // I must be a subcomplex
    for (int s = 0; s < 5; ++s)
        if (!(Pi * Dbig[s] * Rp).is_zero()) throw NotADifferential("ideal not a subcomplex");

    std::vector<std::vector<std::pair<int, QI>>> picols(kBig);
    for (int c = 0; c < n; ++c)
        for (int l = 0; l < kBig; ++l)
            if (!Pi(c, l).is_zero()) picols[l].push_back({c, Pi(c, l)});

    // I must be an ideal
    for (int i = 0; i < kBig; ++i)
        for (int q = 0; q < nI; ++q) {
            Sparse acc;
            for (int j = 0; j < kBig; ++j) {
                if (Ibasis[q][j].is_zero()) continue;
                for (const auto& t : bigtab[static_cast<size_t>(i) * kBig + j])
                    for (int s = 0; s < 9; ++s)
                        if (!t.c[s].is_zero()) add_term(acc, t.out, s, t.c[s] * Ibasis[q][j]);
            }
            if (!project(acc, picols).empty())
                throw NotADifferential("ideal not closed under the bracket");
        }

    g.table.assign(static_cast<size_t>(n) * n, {});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& t = bigtab[static_cast<size_t>(keep[i]) * kBig + keep[j]];
            if (!t.empty()) g.table[static_cast<size_t>(i) * n + j] = project(t, picols);
        }

    ZigZagData& zz = g.zz;
    zz.twice_h = 4;
    zz.quot.grading = g.grading;
    zz.quot.d = g.d;
    zz.mid.grading = Grading{0, {10, 40, 60, 40, 10}};
    zz.mid.d = Dp;
    zz.sub.grading = Grading{2, Idims};
    zz.sub.d = conjugate(Lp, Dp, Rp);
    zz.r = Pi;
    zz.rp = Rp;
    zz.l = Sl;
    zz.lp = Lp;
    identify_gammas(zz);
    return g;
}

// ---- axioms

QVec random_element(const DgLaSpec& g, int deg, std::uint64_t& state) {
    std::mt19937_64 rng(state++);
    std::uniform_int_distribution<int> u(-3, 3);
    QVec x(g.dim());
    int o = g.grading.offset(deg), n = g.grading.dim(deg);
    for (int k = 0; k < n; ++k) x[o + k] = QI(u(rng), u(rng) / 2);
    return x;
}

AxiomReport check_axioms(const DgLaSpec& g, int samples, std::uint64_t seed) {
    AxiomReport rep;
    rep.samples = samples;
    rep.d_squared = PolyMatrix::product_vanishes(g.d, g.d);
    if (!rep.d_squared) rep.failures.push_back("d^2 != 0");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(-4, 4);
    auto mom = [&]() { return Mom{QI(u(rng), u(rng)), QI(u(rng)), QI(u(rng)), QI(u(rng), u(rng))}; };
    int lo = g.grading.lo, hi = g.grading.hi();
    std::uniform_int_distribution<int> dd(lo, hi);
    std::uint64_t st = seed * 1000003 + 17;
    auto sgn = [](int e) { return e % 2 ? QI(-1) : QI(1); };
    for (int t = 0; t < samples; ++t) {
        Mom k1 = mom(), k2 = mom(), k3 = mom();
        // degrees with a nonzero bracket target
        int dx, dy, dz;
        do {
            dx = dd(rng);
            dy = dd(rng);
            dz = dd(rng);
        } while (dx + dy + dz > hi);
        QVec x = random_element(g, dx, st), y = random_element(g, dy, st), z = random_element(g, dz, st);
        // Leibniz
        QVec lhs = g.d.eval(k1 + k2).apply(g.bracket(k1, k2, x, y));
        QVec rhs = g.bracket(k1, k2, g.d.eval(k1).apply(x), y) +
                   scale(g.bracket(k1, k2, x, g.d.eval(k2).apply(y)), sgn(dx));
        if (lhs != rhs) rep.failures.push_back("Leibniz sample " + std::to_string(t));
        // antisymmetry
        QVec xy = g.bracket(k1, k2, x, y), yx = g.bracket(k2, k1, y, x);
        if (!is_zero_vec(xy + scale(yx, sgn(dx * dy))))
            rep.failures.push_back("antisymmetry sample " + std::to_string(t));
        // Jacobi
        QVec j1 = scale(g.bracket(k1, k2 + k3, x, g.bracket(k2, k3, y, z)), sgn(dx * dz));
        QVec j2 = scale(g.bracket(k2, k3 + k1, y, g.bracket(k3, k1, z, x)), sgn(dy * dx));
        QVec j3 = scale(g.bracket(k3, k1 + k2, z, g.bracket(k1, k2, x, y)), sgn(dz * dy));
        if (!is_zero_vec(j1 + j2 + j3)) rep.failures.push_back("Jacobi sample " + std::to_string(t));
    }
    return rep;
}

}  // namespace mmb
