#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qes/closedforms.hpp"
#include "qes/elimination.hpp"
#include "qes/numverify.hpp"
#include "qes/physmap.hpp"

namespace qes::cli {

namespace {

using json = nlohmann::ordered_json;

const std::set<std::string> kCommands{"secular", "roots", "kernel", "verify", "physmap", "numcheck"};
const std::vector<std::string> kDefaultD{"100", "1000", "10000"};

constexpr long double kHarmonicTolerance = 1e-6L;
// below this every row is rounding noise and monotonicity is meaningless
constexpr long double kRoundoff = 1e-10L;

struct Instance {
    int code = kOk;
    std::string error;
    std::string text;
    std::vector<std::string> csv;
    json data;
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

std::vector<Rational> rationals(const std::vector<std::string>& v) {
    std::vector<Rational> out;
    for (const auto& x : v) out.push_back(parse_rational(x));
    return out;
}

std::vector<std::string> strings(const std::vector<BigInt>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

std::string bracket(const std::vector<BigInt>& v) { return "[" + join(strings(v), ",") + "]"; }

std::string short_value(const AlgebraicReal& a) {
    if (auto r = a.as_rational()) return to_string(*r);
    return "~" + format_real(a.approx(), 12);
}

std::string tuple_text(const SolutionTuple& t) {
    std::vector<std::string> v;
    for (const auto& x : t.values) v.push_back(short_value(x));
    return "(" + join(v, ", ") + ")";
}

json tuple_json(const SolutionTuple& t) {
    json j;
    j["vars"] = t.vars;
    json exact = json::array(), approx = json::array();
    for (const auto& x : t.values) {
        exact.push_back(to_string(x));
        approx.push_back(format_real(x.approx()));
    }
    j["values"] = exact;
    j["approx"] = approx;
    if (!t.kernel.empty()) j["kernel"] = strings(t.kernel);
    if (t.context) {
        j["chi"] = to_string(t.context->chi);
        json ak = json::array();
        for (const auto& p : t.algebraic_kernel) {
            std::vector<std::string> c;
            for (const auto& x : p) c.push_back(to_string(x));
            ak.push_back(c);
        }
        j["kernel_in_u"] = ak;
    }
    return j;
}

struct Solved {
    TailSystem tails;
    SecularPoly secular;
};

Solved solve(const RunConfig& cfg, int N) {
    check_guard(cfg.q, N, cfg.guard_N);
    Solved s;
    s.tails = forward_substitute(build_trap(cfg.q, N));
    EliminationOptions opt;
    opt.pivot = cfg.pivot;
    opt.method = parse_method(cfg.method);
    s.secular = eliminate(s.tails, opt);
    return s;
}

Instance cmd_secular(const RunConfig& cfg, int N) {
    Instance r;
    Solved s = solve(cfg, N);
    const SecularPoly& sp = s.secular;
    r.text = to_string(sp.poly) + "\n";
    r.csv.push_back(std::to_string(cfg.q) + "," + std::to_string(N) + "," + sp.pivot + "," +
                    std::to_string(sp.poly.degree()) + "," + to_string(sp.poly));
    r.data["pivot"] = sp.pivot;
    r.data["method"] = to_string(sp.method);
    r.data["degree"] = sp.poly.degree();
    r.data["polynomial"] = to_string(sp.poly);
    json f = json::array();
    for (const auto& [p, m] : sp.factors) f.push_back(json{{"factor", to_string(p)}, {"multiplicity", m}});
    r.data["factors"] = f;
    r.data["provenance"] = sp.provenance;
    return r;
}

Instance cmd_roots(const RunConfig& cfg, int N) {
    Instance r;
    Solved s = solve(cfg, N);
    RealSolutionSet set = real_solutions(s.tails, s.secular);
    json tuples = json::array();
    int i = 0;
    for (const auto& t : set.tuples) {
        r.text += tuple_text(t) + "\n";
        tuples.push_back(tuple_json(t));
        std::vector<std::string> v;
        for (const auto& x : t.values) v.push_back(to_string(x));
        r.csv.push_back(std::to_string(cfg.q) + "," + std::to_string(N) + "," + std::to_string(++i) + "," +
                        join(v, ";") + "," + join(strings(t.kernel), ";"));
    }
    if (set.tuples.empty()) r.text += "no real tuples\n";
    r.data["vars"] = s.tails.vars;
    r.data["secular"] = to_string(s.secular.poly);
    r.data["tuples"] = tuples;
    r.data["complex_completion_only"] = set.complex_completion_only.size();
    r.data["log"] = set.log;
    return r;
}

Instance cmd_kernel(const RunConfig& cfg, int N) {
    Instance r;
    TrapMatrix m = build_trap(cfg.q, N);
    auto row = [&](const std::vector<std::string>& s, const std::vector<BigInt>& k) {
        r.csv.push_back(std::to_string(cfg.q) + "," + std::to_string(N) + "," + join(s, ";") + "," + join(strings(k), ";"));
        r.data["kernels"].push_back(json{{"s", s}, {"kernel", strings(k)}});
    };
    r.data["kernels"] = json::array();
    if (cfg.q == 0 || !cfg.s.empty()) {
        std::vector<Rational> s = rationals(cfg.s);
        std::vector<std::string> st;
        for (const auto& x : s) st.push_back(to_string(x));
        try {
            auto k = kernel_vector(m, s);
            r.text = (cfg.q ? "(" + join(st, ", ") + ") " : "") + bracket(k) + "\n";
            row(st, k);
        } catch (const DegenerateError& e) {
            r.code = kCounterexample;
            r.text = "(" + join(st, ", ") + ") no kernel: " + e.what() + "\n";
            r.data["failure"] = e.what();
        }
        return r;
    }
    Solved s = solve(cfg, N);
    RealSolutionSet set = real_solutions(s.tails, s.secular);
    for (const auto& t : set.tuples) {
        if (t.kernel.empty()) {
            r.text += tuple_text(t) + " irrational\n";
            continue;
        }
        std::vector<std::string> st;
        for (const auto& x : t.values) st.push_back(to_string(x));
        r.text += tuple_text(t) + " " + bracket(t.kernel) + "\n";
        row(st, t.kernel);
    }
    return r;
}

Instance cmd_verify(const RunConfig& cfg, int N) {
    Instance r;
    VerifyOptions opt;
    opt.solver = !cfg.tables;
    opt.guard_N = cfg.guard_N;
    ClosedFormReport rep = verify_closed_forms(cfg.q, N, opt);
    std::string solver = rep.solver_compared ? "compared(" + std::to_string(rep.solver_tuples) + ")" : "skipped";
    r.text = std::string(rep.ok() ? "PASS" : "FAIL") + " q=" + std::to_string(cfg.q) + " N=" + std::to_string(N) +
             " formula_tuples=" + std::to_string(rep.formula_tuples) + " solver=" + solver + "\n";
    json ce = json::array(), cand = json::array();
    for (const auto& c : rep.counterexamples) {
        r.text += "  counterexample (" + join(c.tuple, ", ") + ") " + c.condition + ": " + c.residual + "\n";
        ce.push_back(json{{"tuple", c.tuple}, {"condition", c.condition}, {"residual", c.residual}});
    }
    for (const auto& c : rep.candidates) {
        r.text += "  candidate " + c.variable + " = " + c.value + ": " + (c.root ? "root" : "not a root") + "\n";
        cand.push_back(json{{"variable", c.variable}, {"value", c.value}, {"root", c.root}});
    }
    for (const auto& n : rep.notes) r.text += "  note: " + n + "\n";
    r.csv.push_back(std::to_string(cfg.q) + "," + std::to_string(N) + "," + (rep.ok() ? "PASS" : "FAIL") + "," +
                    std::to_string(rep.formula_tuples) + "," + solver + "," + std::to_string(rep.counterexamples.size()));
    r.data["status"] = rep.ok() ? "PASS" : "FAIL";
    r.data["formula_tuples"] = rep.formula_tuples;
    r.data["solver_compared"] = rep.solver_compared;
    r.data["solver_tuples"] = rep.solver_tuples;
    r.data["counterexamples"] = ce;
    r.data["candidates"] = cand;
    r.data["notes"] = rep.notes;
    if (!rep.ok()) r.code = kCounterexample;
    return r;
}

QesSystem physical_system(const RunConfig& cfg, int N, const Rational& D) {
    std::vector<Rational> alpha = rationals(cfg.alpha);
    alpha.resize(static_cast<std::size_t>(cfg.q), Rational(0));
    alpha.push_back(parse_rational(cfg.gamma));
    QesSystem sys;
    sys.N = N;
    sys.L = cfg.L;
    sys.D = D;
    sys.potential = from_generators(cfg.q, alpha, std::vector<Rational>(static_cast<std::size_t>(cfg.q), Rational(0)));
    return sys;
}

const std::vector<std::string>& d_list(const RunConfig& cfg) { return cfg.D.empty() ? kDefaultD : cfg.D; }

Instance cmd_physmap(const RunConfig& cfg, int N) {
    Instance r;
    Solved s = solve(cfg, N);
    auto inputs = spectrum_inputs(real_solutions(s.tails, s.secular));
    r.data["spectra"] = json::array();
    for (const auto& d : d_list(cfg)) {
        PhysicalSpectrum spec = spectrum_from_tuples(physical_system(cfg, N, parse_rational(d)), inputs);
        r.text += "D=" + to_string(spec.D) + " tau=" + format_real(spec.tau) + " mu=" + format_real(spec.mu) + "\n";
        for (const auto& lv : spec.levels) {
            r.text += "  " + lv.label + " s=(" + join(lv.s, ", ") + ") E=" + format_real(lv.energy);
            if (!lv.energy_formal.empty()) r.text += " = " + lv.energy_formal;
            r.text += "\n";
        }
        std::string csv = to_csv(spec);
        std::istringstream lines(csv.substr(csv.find('\n') + 1));
        for (std::string line; std::getline(lines, line);) r.csv.push_back(line);
        r.data["spectra"].push_back(json::parse(to_json(spec)));
    }
    return r;
}

std::string catalog_text(int q, json& data) {
    std::string out;
    data = json::array();
    for (int k = 1; k <= 2 * q + 2; ++k) {
        PotentialFamily f = potential_catalog(q, k);
        std::string v = to_string(f);
        out += "k=" + std::to_string(k) + " V = " + v + "  (energy from slot " + std::to_string(f.energy_source) + ")\n";
        std::vector<std::string> e;
        for (const auto& x : f.exponents()) e.push_back(to_string(x));
        data.push_back(json{{"k", k}, {"potential", v}, {"exponents", e}, {"energy_source", f.energy_source}});
    }
    return out;
}

Instance harmonic_section() {
    Instance r;
    const int m = 3;
    auto exact = harmonic_levels(1, 0, m);
    auto num = harmonic_benchmark(1, 0, m);
    r.text = "harmonic omega=1 ell=0\n";
    r.data = json::array();
    for (std::size_t i = 0; i < exact.size(); ++i) {
        long double rel = std::fabs(num.values[i] - exact[i]) / exact[i];
        if (!(rel < kHarmonicTolerance)) r.code = kCounterexample;
        r.text += "  n=" + std::to_string(i) + " exact=" + format_real(exact[i]) + " numeric=" + format_real(num.values[i]) +
                  " rel_error=" + format_real(rel, 3) + "\n";
        r.data.push_back(json{{"n", i}, {"exact", format_real(exact[i])}, {"numeric", format_real(num.values[i])},
                              {"rel_error", format_real(rel, 3)}});
    }
    return r;
}

Instance cmd_numcheck(const RunConfig& cfg, int N) {
    Instance r;
    std::vector<Rational> roots;
    if (cfg.q == 1)
        for (const auto& x : q1_roots(N)) roots.emplace_back(x);
    else roots.emplace_back(0);
    r.data["trends"] = json::array();
    for (const auto& s : roots) {
        TrendConfig tc;
        tc.q = cfg.q;
        tc.N = N;
        tc.L = cfg.L;
        tc.alpha0 = cfg.alpha.empty() ? Rational(0) : parse_rational(cfg.alpha[0]);
        tc.gamma = parse_rational(cfg.gamma);
        tc.s = s;
        tc.D = rationals(d_list(cfg));
        TrendReport rep = largeD_trend(tc);
        std::string head = cfg.q == 1 ? "trend q=1 N=" + std::to_string(N) + " s=" + to_string(s) : "trend q=0 ground state";
        bool exact = std::all_of(rep.rows.begin(), rep.rows.end(), [](const TrendRow& x) {
            return std::fabs(x.predicted - x.numeric) < kRoundoff * (1 + std::fabs(x.numeric));
        });
        std::string verdict = rep.monotone ? "monotone" : exact ? "exact to rounding" : "NOT monotone";
        r.text += head + " " + verdict + "\n";
        json rows = json::array();
        for (const auto& row : rep.rows) {
            r.text += "  D=" + to_string(row.D) + " predicted=" + format_real(row.predicted) +
                      " numeric=" + format_real(row.numeric) + " rel_error=" + format_real(row.rel_error, 6) + "\n";
            rows.push_back(json{{"D", to_string(row.D)},
                                {"predicted", format_real(row.predicted)},
                                {"numeric", format_real(row.numeric)},
                                {"exact_qes", format_real(row.exact_qes)},
                                {"rel_error", format_real(row.rel_error, 6)},
                                {"flipped_rel_error", format_real(row.flipped_rel_error, 6)},
                                {"converged", row.converged}});
            r.csv.push_back(std::to_string(cfg.q) + "," + std::to_string(N) + "," + to_string(s) + "," + to_string(row.D) +
                            "," + format_real(row.predicted) + "," + format_real(row.numeric) + "," +
                            format_real(row.rel_error, 6));
        }
        if (!rep.monotone && !exact) r.code = kCounterexample;
        r.data["trends"].push_back(json{{"s", to_string(s)}, {"verdict", verdict}, {"rows", rows}});
    }
    return r;
}

Instance run_instance(const RunConfig& cfg, int N) {
    Instance r;
    try {
        if (cfg.command == "secular") r = cmd_secular(cfg, N);
        else if (cfg.command == "roots") r = cmd_roots(cfg, N);
        else if (cfg.command == "kernel") r = cmd_kernel(cfg, N);
        else if (cfg.command == "verify") r = cmd_verify(cfg, N);
        else if (cfg.command == "physmap") r = cmd_physmap(cfg, N);
        else r = cmd_numcheck(cfg, N);
    } catch (const GuardExceeded& e) {
        r = Instance{kGuard, e.what(), "", {}, {}};
    } catch (const std::invalid_argument& e) {
        r = Instance{kInvalidConfig, e.what(), "", {}, {}};
    } catch (const std::exception& e) {
        r = Instance{kInternal, e.what(), "", {}, {}};
    }
    return r;
}

std::string csv_header(const RunConfig& cfg) {
    if (cfg.command == "secular") return "q,N,pivot,degree,polynomial";
    if (cfg.command == "roots") return "q,N,index,values,kernel";
    if (cfg.command == "kernel") return "q,N,s,kernel";
    if (cfg.command == "verify") return "q,N,status,formula_tuples,solver,counterexamples";
    if (cfg.command == "physmap") return "q,N,D,level,s,energy,couplings";
    return "q,N,s,D,predicted,numeric,rel_error";
}

int combine(int a, int b) {
    if (a >= kInvalidConfig) return a;
    if (b >= kInvalidConfig) return b;
    return std::max(a, b);
}

}  // namespace

std::vector<int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    auto num = [](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
        return v;
    };
    if (dots == std::string::npos) return {num(text)};
    int a = num(text.substr(0, dots)), b = num(text.substr(dots + 2));
    if (a > b) throw std::invalid_argument("empty range " + text);
    std::vector<int> out;
    for (int n = a; n <= b; ++n) out.push_back(n);
    return out;
}

void RunConfig::validate() const {
    if (!kCommands.count(command)) throw std::invalid_argument("unknown command '" + command + "'");
    if (q < 0 || q > 12) throw std::invalid_argument("q must be in 0..12");
    if (format != "text" && format != "json" && format != "csv") throw std::invalid_argument("format must be text, json or csv");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    if (L < 0) throw std::invalid_argument("L must be >= 0");
    if (guard_N && *guard_N < 1) throw std::invalid_argument("guard-N must be >= 1");
    parse_method(method);
    bool catalog_only = command == "physmap" && catalog;
    if (!catalog_only) {
        if (N.empty()) throw std::invalid_argument("--N or --N-range is required");
        for (int n : N)
            if (n < 1) throw std::invalid_argument("N must be >= 1");
    }
    if ((command == "secular" || command == "roots" || command == "physmap") && q < 1)
        throw std::invalid_argument(command + " needs q >= 1");
    if (command == "numcheck" && q > 1) throw std::invalid_argument("numcheck covers q = 0 and q = 1");
    if (command == "verify" && q > 5) throw std::invalid_argument("closed forms are known for q <= 5");
    if (!pivot.empty()) {
        auto v = q ? trap_variables(q) : std::vector<std::string>{};
        if (std::find(v.begin(), v.end(), pivot) == v.end()) throw std::invalid_argument("pivot '" + pivot + "' is not a variable for this q");
    }
    if (!s.empty() && s.size() != static_cast<std::size_t>(q)) throw std::invalid_argument("--s needs q values");
    rationals(s);
    if (!alpha.empty() && alpha.size() != static_cast<std::size_t>(q))
        throw std::invalid_argument("--alpha needs q values (alpha_0 .. alpha_{q-1})");
    rationals(alpha);
    if (parse_rational(gamma) <= 0) throw std::invalid_argument("gamma must be positive");
    for (const auto& d : D)
        if (parse_rational(d) <= 0) throw std::invalid_argument("D must be positive");
}

std::string RunConfig::to_json() const {
    json j;
    j["command"] = command;
    j["q"] = q;
    j["N"] = N;
    j["pivot"] = pivot;
    j["method"] = method;
    j["guard_N"] = guard_N ? json(*guard_N) : json(nullptr);
    j["D"] = D;
    j["gamma"] = gamma;
    j["alpha"] = alpha;
    j["s"] = s;
    j["L"] = L;
    j["format"] = format;
    j["out"] = out;
    j["jobs"] = jobs;
    j["seed"] = seed;
    j["tables"] = tables;
    j["catalog"] = catalog;
    return j.dump();
}

Output run(const RunConfig& cfg) {
    Output out;
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        out.code = kInvalidConfig;
        out.error = e.what();
        return out;
    }
    json doc;
    doc["tool"] = "qes";
    doc["version"] = QES_VERSION;
    doc["config"] = json::parse(cfg.to_json());
    std::vector<std::string> csv{csv_header(cfg)};
    std::string text;

    if (cfg.command == "physmap" && cfg.catalog) {
        json data;
        try {
            text = catalog_text(cfg.q, data);
        } catch (const std::exception& e) {
            out.code = kInvalidConfig;
            out.error = e.what();
            return out;
        }
        doc["catalog"] = data;
        csv = {"k,potential,energy_source"};
        for (const auto& d : data)
            csv.push_back(std::to_string(d["k"].get<int>()) + "," + d["potential"].get<std::string>() + "," +
                          std::to_string(d["energy_source"].get<int>()));
    } else {
        if (cfg.command == "numcheck") {
            Instance h = harmonic_section();
            out.code = combine(out.code, h.code);
            text += h.text;
            doc["harmonic"] = h.data;
        }
        std::vector<Instance> results(cfg.N.size());
        for (std::size_t start = 0; start < cfg.N.size(); start += static_cast<std::size_t>(cfg.jobs)) {
            std::size_t stop = std::min(cfg.N.size(), start + static_cast<std::size_t>(cfg.jobs));
            std::vector<std::future<Instance>> running;
            for (std::size_t i = start; i < stop; ++i)
                running.push_back(std::async(std::launch::async, run_instance, std::cref(cfg), cfg.N[i]));
            for (std::size_t i = start; i < stop; ++i) results[i] = running[i - start].get();
        }
        json list = json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            Instance& r = results[i];
            out.code = combine(out.code, r.code);
            std::string tag = "q=" + std::to_string(cfg.q) + " N=" + std::to_string(cfg.N[i]);
            if (!r.error.empty()) {
                out.error += (out.error.empty() ? "" : "\n") + (cfg.N.size() > 1 ? tag + ": " : "") + r.error;
                r.data = json{{"error", r.error}, {"exit_code", r.code}};
            }
            if (cfg.N.size() > 1 || cfg.command == "numcheck") text += "[" + tag + "]\n";
            text += r.text;
            for (auto& line : r.csv) csv.push_back(std::move(line));
            json entry;
            entry["q"] = cfg.q;
            entry["N"] = cfg.N[i];
            for (auto& [k, v] : r.data.items()) entry[k] = v;
            list.push_back(entry);
        }
        doc["results"] = list;
    }

    if (cfg.format == "json") out.body = doc.dump(2) + "\n";
    else if (cfg.format == "csv") out.body = join(csv, "\n") + "\n";
    else out.body = text;
    return out;
}

std::string artifact(const RunConfig& cfg, const Output& out) {
    if (cfg.format == "json") return out.body;
    return std::string("# qes ") + QES_VERSION + "\n# config " + cfg.to_json() + "\n" + out.body;
}

}  // namespace qes::cli
