#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmb/amplitudes.hpp"
#include "mmb/errors.hpp"
#include "mmb/residues.hpp"
#include "mmb/suite.hpp"
#include "mmb/trees.hpp"

using json = nlohmann::ordered_json;
using namespace mmb;

namespace {

json to_json(const QI& x) { return x.str(); }

json to_json(const QVec& v) {
    json a = json::array();
    for (const QI& x : v) a.push_back(x.str());
    return a;
}

QVec vec_from(const json& j) {
    QVec v;
    for (const auto& x : j) v.push_back(QI::parse(x.get<std::string>()));
    return v;
}

json to_json(const KinematicTuple& k) {
    json sp = json::array();
    for (const auto& s : k.sp) sp.push_back({{"v", to_json(s.v)}, {"w", to_json(s.w)}});
    return {{"N", k.N}, {"spinors", sp}, {"helicities", k.helicities}};
}

KinematicTuple tuple_from(const json& j) {
    KinematicTuple k;
    k.N = j.at("N").get<int>();
    for (const auto& s : j.at("spinors")) k.sp.push_back({vec_from(s.at("v")), vec_from(s.at("w"))});
    if (j.contains("helicities")) k.helicities = j.at("helicities").get<std::string>();
    if (static_cast<int>(k.sp.size()) != k.N) throw UsageError("spinor count differs from N");
    for (const auto& s : k.sp)
        if (s.v.size() != 2 || s.w.size() != 2) throw UsageError("spinors have two components");
    return k;
}

json to_json(const Poly& p) {
    json a = json::array();
    for (const QI& c : p.coeffs()) a.push_back(c.str());
    return a;
}

json to_json(const PolyMatrix& m) {
    json entries = json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            json coef = json::array();
            bool nonzero = false;
            for (int s = 0; s < 5; ++s) {
                coef.push_back(m.coef(s)(r, c).str());
                nonzero = nonzero || !m.coef(s)(r, c).is_zero();
            }
            if (nonzero) entries.push_back({{"row", r}, {"col", c}, {"coef", coef}});
        }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"basis", {"1", "a", "b", "c", "d"}}, {"entries", entries}};
}

json to_json(const Grading& g) { return {{"lo", g.lo}, {"dims", g.dims}}; }

const DgLaSpec& theory(const std::string& name) {
    if (name == "ym") {
        static DgLaSpec ym = build_ym(sl2());
        return ym;
    }
    if (name == "gr") {
        static DgLaSpec gr = build_gr();
        return gr;
    }
    throw UsageError("theory must be ym or gr");
}

Branch branch_from(const std::string& s) {
    if (s == "plus") return Branch::plus;
    if (s == "minus") return Branch::minus;
    throw UsageError("branch must be plus or minus");
}

std::uint64_t default_seed() {
    const char* s = std::getenv("MMB_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 1;
}

struct Output {
    std::string path;
    void emit(const json& j) const {
        if (path.empty()) {
            std::cout << j.dump(2) << "\n";
            return;
        }
        std::ofstream f(path);
        if (!f) throw UsageError("cannot write " + path);
        f << j.dump(2) << "\n";
    }
};

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal-model amplitudes of the YM and GR dgLas"};
    app.require_subcommand(1);
    Output out;
    std::uint64_t seed = default_seed();
    std::string theory_name = "ym", helicities, branch = "plus", divisor, kin_file, only;
    int n = 4, trials = 3, seeds = 3, twice_h = 2, sign = 1, jobs = 1;
    bool quick = false, drop_tree = false, text = false, timing = false;
    int status = 0;
    std::function<void()> action;

    auto common = [&](CLI::App* c) {
        c->add_option("--seed", seed, "seed (default MMB_SEED or 1)");
        c->add_option("--out", out.path, "write JSON here instead of stdout");
    };
    auto with_theory = [&](CLI::App* c) {
        c->add_option("--theory", theory_name, "ym or gr")->check(CLI::IsMember({"ym", "gr"}));
    };

    auto* dgla = app.add_subcommand("dgla", "dgLa data");
    dgla->require_subcommand(1);
    auto* dgla_dump = dgla->add_subcommand("dump", "grading, differential and bracket constants");
    with_theory(dgla_dump);
    common(dgla_dump);
    dgla_dump->callback([&] {
        action = [&] {
            const DgLaSpec& g = theory(theory_name);
            json table = json::array();
            int dim = g.dim();
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    for (const BracketTerm& t : g.table[i * dim + j]) {
                        json c = json::array();
                        for (const QI& x : t.c) c.push_back(x.str());
                        table.push_back({{"i", i}, {"j", j}, {"out", t.out}, {"coef", c}});
                    }
            json j = {{"theory", g.label}, {"grading", to_json(g.grading)}, {"d", to_json(g.d)},
                      {"bracket_basis", {"1", "a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2"}},
                      {"bracket", table}};
            if (g.u) j["internal_algebra"] = {{"names", g.u->names}, {"dim", g.u->dim}};
            out.emit(j);
        };
    });

    auto* gamma = app.add_subcommand("gamma", "Lorentz complexes");
    gamma->require_subcommand(1);
    auto* gamma_dump = gamma->add_subcommand("dump", "blocks of Gamma");
    gamma_dump->add_option("--twice-h", twice_h, "2h")->check(CLI::Range(1, 12));
    gamma_dump->add_option("--sign", sign, "+1 or -1")->check(CLI::IsMember({1, -1}));
    gamma_dump->add_flag("--text", text, "plain text instead of JSON");
    common(gamma_dump);
    gamma_dump->callback([&] {
        action = [&] {
            PolyComplex G = build_gamma(twice_h, sign);
            if (text) {
                for (int deg = G.grading.lo; deg < G.grading.hi(); ++deg) {
                    PolyMatrix b = G.block(deg);
                    std::cout << "d" << deg << " (" << b.rows() << "x" << b.cols() << ")\n";
                    const char* names[5] = {"", "a", "b", "c", "d"};
                    for (int r = 0; r < b.rows(); ++r) {
                        for (int c = 0; c < b.cols(); ++c) {
                            std::string e;
                            for (int s = 0; s < 5; ++s) {
                                const QI& x = b.coef(s)(r, c);
                                if (x.is_zero()) continue;
                                std::string xs = x.str();
                                if (s > 0 && xs == "1") xs.clear();
                                if (s > 0 && xs == "-1") xs = "-";
                                if (!e.empty() && xs[0] != '-') e += "+";
                                e += xs + names[s];
                            }
                            std::cout << (c ? " " : "") << (e.empty() ? "0" : e);
                        }
                        std::cout << "\n";
                    }
                }
                return;
            }
            json blocks = json::array();
            for (int deg = G.grading.lo; deg < G.grading.hi(); ++deg)
                blocks.push_back({{"degree", deg}, {"map", to_json(G.block(deg))}});
            out.emit({{"twice_h", twice_h}, {"sign", sign}, {"grading", to_json(G.grading)}, {"blocks", blocks}});
        };
    });

    auto* kin = app.add_subcommand("kin", "kinematics");
    kin->require_subcommand(1);
    auto* kin_sample = kin->add_subcommand("sample", "on-shell momentum-conserving tuple");
    kin_sample->add_option("--n", n, "number of legs")->check(CLI::Range(3, 12));
    kin_sample->add_option("--helicities", helicities, "one of + - per leg");
    kin_sample->add_option("--branch", branch, "three-point branch plus|minus");
    common(kin_sample);
    kin_sample->callback([&] {
        action = [&] { out.emit(to_json(sample_onshell_tuple(n, helicities, seed, branch_from(branch)))); };
    });
    auto* kin_pencil = kin->add_subcommand("pencil", "pencil through a divisor");
    kin_pencil->add_option("--n", n, "number of legs")->check(CLI::Range(4, 12));
    kin_pencil->add_option("--divisor", divisor, "e.g. pppp, ppmm:12|34, p+:12, Q:123")->required();
    kin_pencil->add_option("--helicities", helicities, "one of + - per leg");
    common(kin_pencil);
    kin_pencil->callback([&] {
        action = [&] {
            Divisor d = Divisor::parse(n, divisor);
            Pencil p = pencil_through_divisor(n, d, helicities, seed);
            json legs = json::array();
            for (int l = 0; l < p.N(); ++l)
                legs.push_back({{"v", {to_json(p.v[l][0]), to_json(p.v[l][1])}},
                                {"w", {to_json(p.w[l][0]), to_json(p.w[l][1])}}});
            json dq = json::object();
            for (Mask J : d.poles()) {
                std::string key;
                for (int l : labels(J)) key += std::to_string(l);
                dq[key] = p.dQ(J).str();
            }
            out.emit({{"divisor", d.name()}, {"helicities", p.helicities}, {"spinors", legs},
                      {"base", to_json(p.base())}, {"dQ_at_base", dq}});
        };
    });

    auto* trees = app.add_subcommand("trees", "trivalent trees");
    trees->require_subcommand(1);
    auto* trees_enum = trees->add_subcommand("enumerate", "one parenthesization per line");
    trees_enum->add_option("--n", n, "number of leaves")->check(CLI::Range(1, 9));
    trees_enum->callback([&] {
        action = [&] {
            for (const auto& t : enumerate_trees(n)) std::cout << t.str() << "\n";
        };
    });

    auto* amp = app.add_subcommand("amp", "amplitudes");
    amp->require_subcommand(1);
    auto* amp_eval = amp->add_subcommand("eval", "one amplitude");
    with_theory(amp_eval);
    amp_eval->add_option("--helicities", helicities, "one of + - per leg");
    amp_eval->add_option("--kin", kin_file, "tuple JSON; sampled from the seed when absent");
    amp_eval->add_option("--n", n, "legs when sampling")->check(CLI::Range(3, 9));
    amp_eval->add_flag("--tree-sum", drop_tree, "sum tree by tree instead of the recursion");
    amp_eval->add_flag("--timing", timing, "add wall time (output is then not reproducible)");
    common(amp_eval);
    amp_eval->callback([&] {
        action = [&] {
            const DgLaSpec& g = theory(theory_name);
            KinematicTuple k;
            if (!kin_file.empty()) {
                std::ifstream f(kin_file);
                if (!f) throw UsageError("cannot read " + kin_file);
                k = tuple_from(json::parse(f));
            } else {
                if (!helicities.empty()) n = static_cast<int>(helicities.size());
                k = sample_onshell_tuple(n, helicities, seed);
            }
            if (!helicities.empty()) k.helicities = helicities;
            auto t0 = std::chrono::steady_clock::now();
            AmplitudeValue a = drop_tree ? amplitude_by_trees(g, k, seed) : amplitude(g, k, seed);
            json j = {{"theory", g.label}, {"helicities", a.helicities}, {"value", a.value.str()},
                      {"trees_evaluated", a.trees}};
            if (timing) j["timing"] = since(t0);
            out.emit(j);
        };
    });
    auto* amp_gauge = amp->add_subcommand("gauge-test", "equality across homotopy seeds");
    with_theory(amp_gauge);
    amp_gauge->add_option("--n", n, "legs")->check(CLI::Range(3, 9));
    amp_gauge->add_option("--helicities", helicities, "one of + - per leg")->required();
    amp_gauge->add_option("--trials", trials, "kinematic trials");
    amp_gauge->add_option("--seeds", seeds, "homotopy seeds per trial");
    amp_gauge->add_flag("--drop-tree", drop_tree, "omit one tree (negative control)");
    common(amp_gauge);
    amp_gauge->callback([&] {
        action = [&] {
            n = static_cast<int>(helicities.size());
            GaugeReport r = gauge_independence_suite(theory(theory_name), n, helicities, trials, seed, seeds, drop_tree);
            json vals = json::array();
            for (const auto& row : r.values) {
                json a = json::array();
                for (const QI& x : row) a.push_back(x.str());
                vals.push_back(a);
            }
            bool ok = r.all_equal();
            status = ok ? 0 : 1;
            out.emit({{"theory", theory(theory_name).label}, {"helicities", helicities}, {"trials", r.trials},
                      {"seeds", r.seeds}, {"drop_tree", drop_tree}, {"values", vals}, {"pass", ok}});
        };
    });
    auto* amp_three = amp->add_subcommand("three-point", "ratio to the closed form");
    with_theory(amp_three);
    amp_three->add_option("--helicities", helicities, "three of + -")->required();
    amp_three->add_option("--branch", branch, "plus|minus");
    amp_three->add_option("--trials", trials, "tuples");
    common(amp_three);
    amp_three->callback([&] {
        action = [&] {
            const DgLaSpec& g = theory(theory_name);
            json rows = json::array();
            std::optional<QI> first;
            bool ok = true;
            for (int t = 0; t < trials; ++t) {
                KinematicTuple k = sample_onshell_tuple(3, helicities, mix_seed(seed, t), branch_from(branch));
                QI a = amplitude(g, k, seed).value;
                QI c = three_point_closed_form(k, helicities, g.twice_h());
                json row = {{"value", a.str()}, {"closed_form", c.str()}};
                if (!c.is_zero()) {
                    QI r = a / c;
                    row["ratio"] = r.str();
                    if (!first) first = r;
                    ok = ok && r == *first;
                } else {
                    ok = ok && a.is_zero();
                }
                rows.push_back(row);
            }
            status = ok ? 0 : 1;
            out.emit({{"theory", g.label}, {"helicities", helicities}, {"branch", branch}, {"trials", rows}, {"pass", ok}});
        };
    });

    auto* res = app.add_subcommand("res", "residues");
    res->require_subcommand(1);
    auto* res_check = res->add_subcommand("check", "residue against fusion along pencils");
    with_theory(res_check);
    res_check->add_option("--n", n, "legs")->check(CLI::Range(4, 8));
    res_check->add_option("--divisor", divisor, "divisor name")->required();
    res_check->add_option("--helicities", helicities, "one of + - per leg (default -++- ...)");
    res_check->add_option("--trials", trials, "pencils");
    common(res_check);
    res_check->callback([&] {
        action = [&] {
            const DgLaSpec& g = theory(theory_name);
            if (helicities.empty()) {
                helicities = std::string(n, '+');
                helicities[0] = helicities[n - 1] = '-';
            }
            if (static_cast<int>(helicities.size()) != n) throw UsageError("need one helicity per leg");
            Divisor d = Divisor::parse(n, divisor);
            FactorizationReport r = check_factorization(g, helicities, d, trials, seed);
            json rows = json::array();
            bool ok = true;
            for (const auto& t : r.trials) {
                json terms = json::array();
                for (size_t j = 0; j < t.terms.size(); ++j) {
                    std::string key;
                    for (int l : labels(t.terms[j].J)) key += std::to_string(l);
                    terms.push_back({{"J", key}, {"zeta_minus", t.terms[j].by_zeta[0].str()},
                                     {"zeta_plus", t.terms[j].by_zeta[1].str()},
                                     {"inv_dQ", t.inv_dQ[j].str()}});
                }
                json row = {{"residue", t.residue.str()}, {"fusion", t.rhs.str()}, {"terms", terms}};
                if (t.indeterminate) row["ratio"] = "indeterminate";
                else if (t.ratio) row["ratio"] = t.ratio->str();
                else {
                    row["ratio"] = "one side zero";
                    ok = false;
                }
                rows.push_back(row);
            }
            bool any = r.ratio().has_value();
            ok = ok && (!any || r.constant());
            status = ok ? 0 : 1;
            json j = {{"theory", g.label}, {"divisor", d.name()}, {"helicities", helicities}, {"trials", rows}};
            j["constant_ratio"] = any ? json(r.ratio()->str()) : json(nullptr);
            j["pass"] = ok;
            out.emit(j);
        };
    });

    auto* suite = app.add_subcommand("suite", "acceptance battery");
    suite->add_flag("--quick", quick, "fewer trials");
    suite->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 64));
    suite->add_option("--only", only, "comma-separated criterion ids");
    common(suite);
    suite->callback([&] {
        action = [&] {
            SuiteOptions o;
            o.quick = quick;
            o.seed = seed;
            o.jobs = jobs;
            std::stringstream ss(only);
            for (std::string tok; std::getline(ss, tok, ',');)
                if (!tok.empty()) o.only.push_back(std::stoi(tok));
            json rows = json::array();
            bool ok = true;
            for (const auto& r : run_suite(o)) {
                rows.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass},
                                {"checks", r.checks}, {"detail", r.detail}, {"seconds", r.seconds}});
                ok = ok && r.pass;
            }
            status = ok ? 0 : 1;
            out.emit({{"seed", seed}, {"quick", quick}, {"criteria", rows}, {"pass", ok}});
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        if (action) action();
    } catch (const Error& e) {
        std::cerr << json({{"error", e.name()}, {"message", e.what()}}).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json({{"error", "UsageError"}, {"message", e.what()}}).dump() << "\n";
        return 2;
    }
    return status;
}
