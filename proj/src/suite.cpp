#include "mmb/suite.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <thread>

#include "mmb/amplitudes.hpp"
#include "mmb/errors.hpp"
#include "mmb/homotopy.hpp"
#include "mmb/residues.hpp"
#include "mmb/trees.hpp"

namespace mmb {

namespace {

struct Tally {
    int checks = 0;
    std::vector<std::string> fails;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) fails.push_back(what);
    }
    void none(const std::vector<std::string>& f, const std::string& what) {
        ++checks;
        for (const auto& s : f) fails.push_back(what + ": " + s);
    }
};

const DgLaSpec& ym() {
    static DgLaSpec g = build_ym(sl2());
    return g;
}

const DgLaSpec& gr() {
    static DgLaSpec g = build_gr();
    return g;
}

std::vector<const DgLaSpec*> theories() { return {&ym(), &gr()}; }

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t s) : eng(s) {}

    QI qi(int box) {
        std::uniform_int_distribution<int> u(-box, box);
        return QI(u(eng), u(eng));
    }
    QVec vec(int n, int box) {
        QVec v(n);
        for (auto& x : v) x = qi(box);
        return v;
    }
    Mom mom(int box) { return {qi(box), qi(box), qi(box), qi(box)}; }
    Mom offshell(int box) {
        Mom k;
        while (k.Q().is_zero()) k = mom(box);
        return k;
    }
    Mom onshell(int box) {
        Mom k;
        while (k.is_zero()) k = Mom::outer(vec(2, box), vec(2, box));
        return k;
    }
    Mom near(const Mom& q) { return q + mom(3).scaled(QI(1) / QI(17)); }
};

std::string label(const DgLaSpec& g) { return g.u ? "YM" : "GR"; }

KinematicTuple permuted(const KinematicTuple& k, const std::vector<int>& order) {
    KinematicTuple out;
    out.N = k.N;
    for (int l : order) {
        out.sp.push_back(k.sp[l - 1]);
        out.helicities += k.helicities[l - 1];
    }
    return out;
}

std::vector<QVec> permuted(const std::vector<QVec>& c, const std::vector<int>& order) {
    std::vector<QVec> out;
    for (int l : order) out.push_back(c[l - 1]);
    return out;
}

std::uint64_t salted(const SuiteOptions& o, std::uint64_t salt) { return mix_seed(o.seed, salt); }

// every sum over two or more legs stays off shell
bool internal_lines_offshell(const std::vector<Mom>& k) {
    for (unsigned mask = 1; mask < (1u << k.size()); ++mask) {
        if (std::popcount(mask) < 2) continue;
        Mom s;
        for (size_t j = 0; j < k.size(); ++j)
            if (mask >> j & 1) s = s + k[j];
        if (s.Q().is_zero()) return false;
    }
    return true;
}

// 1
void dgla_axioms(const SuiteOptions& o, Tally& t) {
    int samples = o.quick ? 20 : 100;
    for (const DgLaSpec* g : theories()) {
        AxiomReport rep = check_axioms(*g, samples, salted(o, 1));
        t.expect(rep.d_squared, label(*g) + " d^2 = 0");
        t.none(rep.failures, label(*g));
    }
}

// 2
void dimensions(const SuiteOptions&, Tally& t) {
    std::vector<int> ym_dims;
    for (int x : {1, 7, 7, 1}) ym_dims.push_back(x * ym().udim());
    t.expect(ym().grading.lo == 0 && ym().grading.dims == ym_dims, "YM grading");
    t.expect(gr().grading.lo == 0 && gr().grading.dims == std::vector<int>{10, 40, 50, 24, 4},
             "GR grading");
    PolyComplex G = build_gamma(4, +1);
    t.expect(G.grading.dims == std::vector<int>{5, 8, 3}, "Gamma_2 dims");
    Mom k{QI(2), QI(3), QI(5), QI(7)};
    QMat d1 = G.block(1).eval(k), d2 = G.block(2).eval(k);
    const long a = 2, b = 3, c = 5, d = 7;
    long first[8][5] = {{a, c, 0, 0, 0}, {b, d, 0, 0, 0}, {0, a, c, 0, 0}, {0, b, d, 0, 0},
                        {0, 0, a, c, 0}, {0, 0, b, d, 0}, {0, 0, 0, a, c}, {0, 0, 0, b, d}};
    long second[3][8] = {{b, -a, d, -c, 0, 0, 0, 0}, {0, 0, b, -a, d, -c, 0, 0}, {0, 0, 0, 0, b, -a, d, -c}};
    bool same = true;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 5; ++j) same = same && d1(i, j) == QI(first[i][j]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 8; ++j) same = same && d2(i, j) == QI(second[i][j]);
    t.expect(same, "Gamma_2 blocks");
    t.expect(build_gamma(4, -1).d.eval(k) == G.d.eval(k.transpose()), "Gamma_-2 is the transpose");
}

// 3
void homology(const SuiteOptions& o, Tally& t) {
    Rng rng(salted(o, 3));
    int n = o.quick ? 5 : 20;
    for (int i = 0; i < n; ++i) {
        Mom on = rng.onshell(5), off = rng.offshell(5);
        for (int m : {2, 4})
            for (int s : {1, -1}) {
                PolyComplex G = build_gamma(m, s);
                t.expect(homology_dims(G, on) == std::vector<int>{1, 1, 0}, "Gamma on shell");
                t.expect(homology_dims(G, off) == std::vector<int>{0, 0, 0}, "Gamma off shell");
            }
        t.expect(homology_dims(PolyComplex{ym().grading, ym().d}, on) == std::vector<int>{0, 6, 6, 0},
                 "YM on shell");
        t.expect(homology_dims(PolyComplex{ym().grading, ym().d}, off) == std::vector<int>(4, 0),
                 "YM off shell");
        t.expect(homology_dims(PolyComplex{gr().grading, gr().d}, on) ==
                     std::vector<int>{0, 2, 2, 0, 0},
                 "GR on shell");
        t.expect(homology_dims(PolyComplex{gr().grading, gr().d}, off) == std::vector<int>(5, 0),
                 "GR off shell");
    }
}

// 4
void homotopies(const SuiteOptions& o, Tally& t) {
    Rng rng(salted(o, 4));
    int n = o.quick ? 5 : 20;
    for (int i = 0; i < n; ++i) {
        std::string tag = "instance " + std::to_string(i);
        PolyComplex G = build_gamma(4, i % 2 ? 1 : -1);
        int dim = G.grading.total();
        Mom q = rng.onshell(3);
        QMat dq = G.d.eval(q);
        Contraction c = build_contraction(dq, G.grading, i);
        t.none(contraction_failures(c, dq), tag + " contraction");
        Mom k = rng.near(q);
        QMat dk = G.d.eval(k);
        t.none(contraction_failures(hpl_perturb(c, dk - dq), dk), tag + " HPL");
        Mom p = rng.offshell(5);
        QMat H = trivial_homotopy(G, p, i), dp = G.d.eval(p);
        t.expect((H * H).is_zero() && H * dp + dp * H == QMat::identity(dim), tag + " trivial");
        OptimalHomotopy oh = optimal_homotopy(G, q, i);
        t.none(oh.failures(oh.at(q)), tag + " optimal at q");
        if (!k.Q().is_zero()) {
            auto at = oh.at(k);
            t.none(oh.failures(at), tag + " optimal near q");
            t.expect(oh.dprime_along_line(k) == at.dprime, tag + " pdi = Q d' by division");
        }
        QMat h1 = c.h, h2 = build_contraction(dq, G.grading, i + 101).h;
        ABC abc = abc_connect(dq, h1, h2);
        t.expect(abc.hC == h2, tag + " ABC reconstructs h'");
        t.none(abc_constraint_failures(dq, h1, abc), tag + " ABC constraints");
    }
    int m = o.quick ? 1 : 2;
    for (const DgLaSpec* g : theories())
        for (int i = 0; i < m; ++i) {
            std::string tag = label(*g) + " " + std::to_string(i);
            Mom q = rng.onshell(3);
            OptimalHomotopy oh = optimal_homotopy(*g, q, i);
            t.none(oh.failures(oh.at(q)), tag + " optimal at q");
            Mom k = rng.near(q);
            if (!k.Q().is_zero()) t.none(oh.failures(oh.at(k)), tag + " optimal near q");
            Mom p = rng.offshell(5);
            QMat H = trivial_homotopy(*g, p, i), dp = g->d.eval(p);
            t.expect((H * H).is_zero() && H * dp + dp * H == QMat::identity(g->dim()), tag + " trivial");
            t.none(zigzag_failures(zigzag_equivalence(*g, q, i)), tag + " zig-zag");
        }
}

HomotopyAssignment trivial_assignment(const DgLaSpec& g, const std::vector<Mom>& k, std::uint64_t seed) {
    HomotopyAssignment H;
    H.k = k;
    int n = static_cast<int>(k.size());
    for (Mask J = 1; J < (Mask(1) << n); ++J)
        if (popcount(J) >= 2 && popcount(J) < n) {
            Mom s;
            for (int l : labels(J)) s = s + k[l - 1];
            H.H[J] = trivial_homotopy(g, s, mix_seed(seed, J));
        }
    return H;
}

long double_factorial(int k) {
    long r = 1;
    for (; k > 1; k -= 2) r *= k;
    return r;
}

// 5
void tree_layer(const SuiteOptions& o, Tally& t) {
    for (int n = 2; n <= 7; ++n)
        t.expect(static_cast<long>(enumerate_trees(n).size()) == double_factorial(2 * n - 3),
                 "|T_" + std::to_string(n) + "|");
    Rng rng(salted(o, 5));
    std::uint64_t st = salted(o, 55);
    int trials = o.quick ? 1 : 3;
    for (int n = 2; n <= 4; ++n)
        for (int trial = 0; trial < trials; ++trial) {
            std::vector<Mom> k;
            std::vector<QVec> x;
            for (int j = 0; j < n; ++j) {
                k.push_back(rng.offshell(3));
                x.push_back(random_element(ym(), 1 + static_cast<int>(rng.eng() % 2), st));
            }
            HomotopyAssignment H = trivial_assignment(ym(), k, st);
            for (const auto& tr : enumerate_trees(n)) {
                QVec ref = eval_tree(tr, ym(), H, x);
                for (const auto& e : planar_embeddings(tr))
                    t.expect(eval_tree(e, ym(), H, x) == ref, "embedding of " + tr.str());
            }
        }
    for (const DgLaSpec* g : theories())
        for (int n = 3; n <= 4; ++n) {
            std::vector<Mom> k;
            do {
                k.clear();
                for (int j = 0; j < n; ++j) k.push_back(rng.onshell(3));
            } while (!internal_lines_offshell(k));
            std::vector<QVec> x;
            for (int j = 0; j < n; ++j) {
                const Mom& kj = k[j];
                PointContraction pc(g->grading, g->d.eval(kj), j + 1);
                Contraction c = pc.full();
                QVec cls = rng.vec(c.homology.total(), 3);
                for (int a = 0; a < c.homology.total(); ++a)
                    if (c.homology.degree_of(a) != 1) cls[a] = QI(0);
                x.push_back(c.i.apply(cls));
            }
            HomotopyAssignment H = trivial_assignment(*g, k, st);
            Mom K;
            for (const Mom& m : k) K = K + m;
            QVec sum(g->dim());
            for (const auto& tr : enumerate_trees(n)) sum = sum + eval_tree(tr, *g, H, x);
            t.expect(is_zero_vec(g->d.eval(K).apply(sum)),
                     label(*g) + " tree sum is closed, n = " + std::to_string(n));
        }
}

// 6
void gauge(const SuiteOptions& o, Tally& t) {
    int trials = o.quick ? 2 : 5;
    struct Case {
        const DgLaSpec* g;
        int N;
        std::string h;
    };
    std::vector<Case> cases = {{&ym(), 4, "--++"}, {&gr(), 4, "-+-+"}, {&ym(), 5, "--+++"}, {&gr(), 5, "-+-++"}};
    for (const auto& c : cases) {
        GaugeReport rep = gauge_independence_suite(*c.g, c.N, c.h, trials, salted(o, 6 + c.N), 3);
        std::string tag = label(*c.g) + " N=" + std::to_string(c.N) + " " + c.h;
        t.expect(rep.all_equal(), tag + " seeds agree");
        for (const auto& row : rep.values) t.expect(!row.front().is_zero(), tag + " nonzero");
    }
    GaugeReport bad = gauge_independence_suite(ym(), 4, "--++", 1, salted(o, 66), 3, true);
    t.expect(!bad.all_equal(), "dropping a tree breaks seed independence");
    KinematicTuple kin = sample_onshell_tuple(5, "-+-++", salted(o, 67));
    t.expect(amplitude_by_trees(ym(), kin, 3).value == amplitude(ym(), kin, 4).value,
             "YM N=5 sum over 105 trees");
}

// 7
void three_point(const SuiteOptions& o, Tally& t) {
    int n = o.quick ? 3 : 10;
    std::vector<std::string> patterns = {"+++", "++-", "+-+", "-++", "+--", "-+-", "--+", "---"};
    for (const DgLaSpec* g : theories())
        for (const auto& h : patterns)
            for (Branch br : {Branch::plus, Branch::minus}) {
                long plus = std::count(h.begin(), h.end(), '+');
                bool allowed = br == Branch::plus ? plus == 2 : plus == 1;
                std::string tag = label(*g) + " " + h + (br == Branch::plus ? " X+" : " X-");
                std::optional<QI> ratio;
                for (int i = 0; i < (allowed ? n : 3); ++i) {
                    KinematicTuple kin = sample_onshell_tuple(3, h, salted(o, 700 + i), br);
                    QI a = amplitude(*g, kin, salted(o, 71 + i)).value;
                    if (!allowed) {
                        t.expect(a.is_zero(), tag + " vanishes");
                        continue;
                    }
                    QI r = a / three_point_closed_form(kin, h, g->twice_h());
                    if (!ratio) ratio = r;
                    t.expect(!r.is_zero() && r == *ratio, tag + " ratio");
                }
            }
}

// 8
void helicity_violation(const SuiteOptions& o, Tally& t) {
    int n = o.quick ? 3 : 10;
    for (const DgLaSpec* g : theories())
        for (std::string h : {"-+++", "+---"})
            for (int i = 0; i < n; ++i) {
                KinematicTuple kin = sample_onshell_tuple(4, h, salted(o, 800 + i));
                t.expect(amplitude(*g, kin, salted(o, 81 + i)).value.is_zero(), label(*g) + " " + h);
            }
}

// 9
void pair_divisor(const SuiteOptions& o, Tally& t) {
    QI c = calibrate_factorization(ym(), salted(o, 9));
    FactorizationReport rep = check_factorization(ym(), "-+-++", Divisor::parse(5, "p+:12"),
                                                  o.quick ? 1 : 3, salted(o, 91));
    t.expect(rep.constant() && rep.ratio() && *rep.ratio() == c, "YM N=5 p+:12 ratio");
    std::vector<std::string> zero_at;
    for (const Divisor& d : divisors(5))
        if (d.kind == Divisor::minus) zero_at.push_back(d.name());
    if (o.quick) zero_at = {"p-:12", "p-:45"};
    zero_at.push_back("p+:12");
    for (const auto& name : zero_at) {
        Pencil p = pencil_through_divisor(5, Divisor::parse(5, name), "--+++", salted(o, 92));
        t.expect(extract_residue(ym(), p, salted(o, 93)).value.is_zero(), "--+++ at " + name);
    }
}

// 10
void four_point(const SuiteOptions& o, Tally& t) {
    QI c = calibrate_factorization(ym(), salted(o, 9));
    for (const DgLaSpec* g : theories()) {
        std::string tag = label(*g);
        FactorizationReport pm = check_factorization(*g, "-++-", Divisor::parse(4, "ppmm:12|34"), 1,
                                                     salted(o, 101));
        t.expect(pm.constant() && *pm.ratio() == c, tag + " ppmm ratio");
        for (auto [name, h] : {std::pair{"pppp", "-+++"}, std::pair{"mmmm", "+---"}}) {
            Divisor div = Divisor::parse(4, name);
            FactorizationReport rep = check_factorization(*g, h, div, 1, salted(o, 102));
            const FactorizationTrial& tr = rep.trials[0];
            t.expect(tr.residue.is_zero(), tag + " " + name + " residue vanishes");
            t.expect(tr.rhs.is_zero(), tag + " " + name + " A + A' + A'' = 0");
            for (size_t j = 0; j < tr.terms.size(); ++j)
                t.expect(!tr.terms[j].total.is_zero(), tag + " " + name + " term nonzero");
            Pencil p = pencil_through_divisor(4, div, h, salted(o, 103));
            auto r = relative_residues(p);
            t.expect(r[0] == r[1] && r[1] == r[2] && !r[0].is_zero(), tag + " " + name + " relative residues");
        }
    }
}

// 11
void homogeneity(const SuiteOptions& o, Tally& t) {
    for (const DgLaSpec* g : theories())
        for (std::string h : {"--++", "-+-+"}) {
            if (g == &gr() && o.quick && h != "--++") continue;
            KinematicTuple kin = sample_onshell_tuple(4, h, salted(o, 110));
            for (QI lam : {QI(2), QI(3), QI(1, 1)})
                t.expect(fixed_class_scaling(*g, kin, lam, salted(o, 111)) == lam.pow(-3),
                         label(*g) + " " + h + " at lambda = " + lam.str());
        }
}

// 12
void permutations(const SuiteOptions& o, Tally& t) {
    for (const DgLaSpec* g : theories())
        for (int N : {4, 5}) {
            std::string h = N == 4 ? "-+-+" : "-++-+";
            KinematicTuple kin = sample_onshell_tuple(N, h, salted(o, 120 + N));
            std::vector<QVec> col = default_colors(*g, N);
            QI a = amplitude(*g, kin, salted(o, 121), col).value;
            std::vector<int> order(N);
            std::iota(order.begin(), order.end(), 1);
            std::vector<std::vector<int>> perms;
            bool all = g == &ym() || N == 4;
            if (o.quick) all = N == 4 && g == &ym();
            if (all) {
                while (std::next_permutation(order.begin(), order.end() - 1)) perms.push_back(order);
            } else {
                for (int j = 2; j < N; ++j) {
                    std::vector<int> p = order;
                    std::swap(p[0], p[j - 1]);
                    perms.push_back(p);
                }
            }
            std::string tag = label(*g) + " N=" + std::to_string(N);
            for (const auto& p : perms)
                t.expect(amplitude(*g, permuted(kin, p), salted(o, 122), permuted(col, p)).value == a,
                         tag + " input permutation");
        }
    for (const DgLaSpec* g : theories())
        for (int j = 1; j <= 3; ++j) {
            std::optional<QI> ratio;
            for (int i = 0; i < (o.quick ? 2 : 3); ++i) {
                KinematicTuple kin = sample_onshell_tuple(4, "--++", salted(o, 1230 + i));
                std::vector<QVec> col = default_colors(*g, 4);
                std::vector<int> p = {1, 2, 3, 4};
                std::swap(p[j - 1], p[3]);
                QI a = amplitude(*g, kin, salted(o, 124), col).value;
                QI b = amplitude(*g, permuted(kin, p), salted(o, 125), permuted(col, p)).value;
                if (a.is_zero()) {
                    t.expect(false, label(*g) + " output exchange reference vanishes");
                    continue;
                }
                if (!ratio) ratio = b / a;
                t.expect(b / a == *ratio, label(*g) + " output exchange with leg " + std::to_string(j));
            }
        }
}

struct Entry {
    const char* title;
    std::function<void(const SuiteOptions&, Tally&)> run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {"dgLa axioms", dgla_axioms},
        {"graded dimensions and Gamma_2 blocks", dimensions},
        {"homology on and off shell", homology},
        {"homotopy identities", homotopies},
        {"tree layer", tree_layer},
        {"gauge independence", gauge},
        {"three-point match", three_point},
        {"helicity violation", helicity_violation},
        {"factorization on a pair divisor", pair_divisor},
        {"factorization at N = 4", four_point},
        {"homogeneity", homogeneity},
        {"permutation invariance", permutations},
    };
    return e;
}

}  // namespace

const std::string& criterion_title(int id) {
    static std::vector<std::string> titles = [] {
        std::vector<std::string> out;
        for (const auto& e : entries()) out.push_back(e.title);
        return out;
    }();
    if (id < 1 || id > kCriteria) throw UsageError("no criterion " + std::to_string(id));
    return titles[id - 1];
}

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
    CriterionResult r;
    r.id = id;
    r.title = criterion_title(id);
    auto start = std::chrono::steady_clock::now();
    Tally t;
    try {
        entries()[id - 1].run(opt, t);
        r.pass = t.fails.empty() && t.checks > 0;
        if (!t.fails.empty()) {
            r.detail = t.fails.front();
            if (t.fails.size() > 1) r.detail += " (+" + std::to_string(t.fails.size() - 1) + " more)";
        }
    } catch (const Error& e) {
        r.pass = false;
        r.detail = e.what();
    }
    r.checks = t.checks;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt) {
    std::vector<int> ids = opt.only;
    if (ids.empty())
        for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
    for (int id : ids) criterion_title(id);
    // build both algebras before any worker starts
    ym();
    gr();
    std::vector<CriterionResult> out(ids.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < ids.size(); i = next++) out[i] = run_criterion(ids[i], opt);
    };
    int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(ids.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace mmb
