#include "qes/closedforms.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace qes {

namespace {

BigInt lcm_den(const Rational& x, const Rational& y) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), x.get_den_mpz_t(), y.get_den_mpz_t());
    return l;
}

UniPoly quad(const BigInt& b, const BigInt& c) { return UniPoly("x", {c, b, BigInt(1)}); }

std::vector<std::string> describe(const std::vector<Surd5>& t) {
    std::vector<std::string> out;
    for (const auto& v : t) out.push_back(to_string(v));
    return out;
}

std::vector<Surd5> lift(const RootTuple& t) { return {t.begin(), t.end()}; }

// Every tail condition at the tuple; one counterexample per failing condition.
void check_tails(const TailSystem& ts, const std::vector<Surd5>& tuple, ClosedFormReport& rep) {
    for (std::size_t j = 0; j < ts.tails.size(); ++j) {
        Surd5 r = evaluate_in(ts.tails[j], tuple, Surd5{});
        if (!r.is_zero())
            rep.counterexamples.push_back({describe(tuple), "tail " + std::to_string(j), to_string(r)});
    }
}

void check_kernel(const TrapMatrix& m, const RootTuple& t, const std::optional<KernelVector>& expect,
                  ClosedFormReport& rep) {
    try {
        auto k = kernel_vector(m, t);
        if (expect && *expect != k) {
            std::ostringstream os;
            for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
            rep.counterexamples.push_back({describe(lift(t)), "kernel formula", os.str()});
        }
    } catch (const DegenerateError& e) {
        rep.counterexamples.push_back({describe(lift(t)), "kernel", e.what()});
    }
}

void compare_sets(const std::vector<std::vector<Surd5>>& formula, const RealSolutionSet& found,
                  ClosedFormReport& rep) {
    rep.solver_compared = true;
    rep.solver_tuples = found.tuples.size();
    std::vector<char> used(found.tuples.size(), 0);
    for (const auto& f : formula) {
        std::vector<AlgebraicReal> fa;
        for (const auto& v : f) fa.push_back(to_algebraic(v));
        bool hit = false;
        for (std::size_t i = 0; i < found.tuples.size() && !hit; ++i) {
            const auto& vals = found.tuples[i].values;
            if (used[i] || vals.size() != fa.size()) continue;
            bool same = true;
            for (std::size_t k = 0; k < fa.size() && same; ++k) same = vals[k] == fa[k];
            if (same) used[i] = hit = true;
        }
        if (!hit) rep.counterexamples.push_back({describe(f), "missing from solver set", ""});
    }
    for (std::size_t i = 0; i < found.tuples.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::string> t;
        for (const auto& v : found.tuples[i].values) t.push_back(to_string(v));
        rep.counterexamples.push_back({t, "solver tuple not in closed form", ""});
    }
}

bool within_guard(int q, int N, const VerifyOptions& opt) {
    try {
        check_guard(q, N, opt.guard_N);
        return true;
    } catch (const GuardExceeded&) {
        return false;
    }
}

}  // namespace

double Surd5::approx() const { return to_double(a) + to_double(b) * std::sqrt(5.0); }

std::string to_string(const Surd5& v) {
    if (v.b == 0) return to_string(v.a);
    BigInt c = lcm_den(v.a, v.b);
    BigInt A = BigInt(v.a * c), B = BigInt(v.b * c);
    std::string s = "(" + to_string(A) + (B < 0 ? "-" : "+") + to_string(BigInt(abs(B))) + "*sqrt5)/" + to_string(c);
    return s;
}

Surd5 parse_surd(std::string_view token) {
    static const std::regex surd(R"(\(([+-]?[0-9]+)([+-])([0-9]+)\*sqrt5\)/([0-9]+))");
    std::string s(token);
    std::smatch m;
    if (std::regex_match(s, m, surd)) {
        BigInt c = parse_bigint(m[4].str());
        if (c == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        BigInt b = parse_bigint(m[3].str());
        if (m[2].str() == "-") b = -b;
        return {make_rational(parse_bigint(m[1].str()), c), make_rational(b, c)};
    }
    try {
        return Surd5(parse_rational(s));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad table token '" + s + "'");
    }
}

AlgebraicReal to_algebraic(const Surd5& v, const std::string& var) {
    if (v.b == 0) return AlgebraicReal::from_rational(v.a, var);
    BigInt L = lcm_den(v.a, v.b);
    BigInt A = BigInt(v.a * L), B = BigInt(v.b * L);
    // (L x - A)^2 = 5 B^2
    UniPoly p(var, {BigInt(A * A - 5 * B * B), BigInt(-2 * L * A), BigInt(L * L)});
    auto roots = sturm_isolate(p.primitive_part());
    return roots.at(v.b > 0 ? 1 : 0);
}

Surd5 evaluate(const UniPoly& p, const Surd5& x) {
    Surd5 acc;
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + Surd5(Rational(p.coeff(i)));
    return acc;
}

const TableSection& TableData::section(std::string_view name) const {
    for (const auto& s : sections)
        if (s.name == name) return s;
    throw std::out_of_range("no table section '" + std::string(name) + "'");
}

TableData parse_tables(std::string_view text) {
    TableData d;
    std::vector<std::string> pending;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) throw std::invalid_argument("tables: empty line " + std::to_string(lineno));
        if (line[0] == '#') {
            pending.push_back(line);
            continue;
        }
        if (line[0] == '[') {
            if (line.back() != ']') throw std::invalid_argument("tables: bad header at line " + std::to_string(lineno));
            d.sections.push_back({std::move(pending), line.substr(1, line.size() - 2), {}});
            pending.clear();
            continue;
        }
        if (d.sections.empty() || !pending.empty())
            throw std::invalid_argument("tables: row outside a section at line " + std::to_string(lineno));
        std::istringstream row(line);
        std::vector<Surd5> vals;
        std::string tok;
        while (row >> tok) {
            try {
                vals.push_back(parse_surd(tok));
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(std::string(e.what()) + " at line " + std::to_string(lineno));
            }
        }
        d.sections.back().rows.push_back(std::move(vals));
    }
    if (!pending.empty()) throw std::invalid_argument("tables: trailing comment");
    return d;
}

std::string format_tables(const TableData& d) {
    std::string out;
    for (const auto& s : d.sections) {
        for (const auto& c : s.comments) out += c + "\n";
        out += "[" + s.name + "]\n";
        for (const auto& r : s.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out += (i ? " " : "") + to_string(r[i]);
            out += "\n";
        }
    }
    return out;
}

const TableData& embedded_tables() {
    static const TableData d = parse_tables(embedded_table_text());
    return d;
}

KernelVector q0_kernel(int N) {
    if (N < 1) throw std::invalid_argument("q0_kernel: N >= 1");
    KernelVector p;
    for (int n = 0; n < N; ++n) p.push_back((n % 2 ? -1 : 1) * binomial(static_cast<unsigned>(N - 1), static_cast<unsigned>(n)));
    return p;
}

std::vector<BigInt> q1_roots(int N) {
    if (N < 1) throw std::invalid_argument("q1_roots: N >= 1");
    std::vector<BigInt> r;
    for (int j = 1; j <= N; ++j) r.emplace_back(-N - 1 + 2 * j);
    return r;
}

KernelVector q1_kernel(int N, int j) {
    if (j < 1 || j > N) throw std::invalid_argument("q1_kernel: 1 <= j <= N");
    UniPoly f = UniPoly::constant("x", 1);
    for (int i = 0; i < N - j; ++i) f *= UniPoly("x", {1, 1});
    for (int i = 0; i < j - 1; ++i) f *= UniPoly("x", {1, -1});
    return {f.coeffs().begin(), f.coeffs().end()};
}

std::vector<RootTuple> q2_roots(int N) {
    if (N < 2) throw std::invalid_argument("q2_roots: N >= 2");
    std::vector<RootTuple> out;
    for (int j = 1; j <= (N + 1) / 2; ++j) out.push_back({Rational(N + 2 - 3 * j), Rational(N + 2 - 3 * j)});
    return out;
}

std::vector<RootTuple> q3_roots(int N) {
    if (N < 2) throw std::invalid_argument("q3_roots: N >= 2");
    std::vector<RootTuple> out;
    for (int j = 1; j <= (N + 1) / 2; ++j)
        for (int k = 1; k <= N + 2 - 2 * j; ++k) {
            Rational rt(-N - 3 + 2 * j + 2 * k);
            out.push_back({rt, Rational(N + 3 - 4 * j), rt});
        }
    return out;
}

std::vector<std::array<Surd5, 2>> q4_table_pairs(int N) {
    if (N < 4 || N > 6) throw std::invalid_argument("q4 table: N in {4, 5, 6}");
    std::vector<std::array<Surd5, 2>> out;
    for (const auto& r : embedded_tables().section("table1 N=" + std::to_string(N)).rows) {
        if (r.size() != 2) throw std::logic_error("table1 row width");
        out.push_back({r[0], r[1]});
    }
    return out;
}

std::vector<std::array<AlgebraicReal, 2>> q4_table_roots(int N) {
    std::vector<std::array<AlgebraicReal, 2>> out;
    for (const auto& [s3, s4] : q4_table_pairs(N)) out.push_back({to_algebraic(s3), to_algebraic(s4)});
    return out;
}

std::vector<std::vector<Surd5>> q4_table_tuples(int N) {
    std::vector<std::vector<Surd5>> out;
    for (const auto& [s3, s4] : q4_table_pairs(N)) out.push_back({s4, s3, s3, s4});
    return out;
}

UniPoly FactorFamily::P(int i) const {
    UniPoly f = UniPoly::constant("x", 1);
    for (const auto& g : factors.at(static_cast<std::size_t>(i - 1))) f *= g;
    return f;
}

UniPoly FactorFamily::product() const {
    UniPoly f = UniPoly::constant("x", 1);
    for (int i = 1; i <= 4; ++i) f *= P(i);
    return f;
}

FactorFamily q5_factor_family(int N) {
    if (N != 6 && N != 7) throw std::invalid_argument("q5_factor_family: N in {6, 7}");
    FactorFamily F;
    F.N = N;
    auto& [p1, p2, p3, p4] = F.factors;
    p1.push_back(UniPoly::monomial("x", 1, 1));
    for (int k = 1; k <= 5; ++k) p1.push_back(quad(0, -k * k));
    for (int k = 1; k <= 2; ++k) {
        p2.push_back(quad(-3 * k, 3 * k * k));
        p2.push_back(quad(0, 3 * k * k));
        p2.push_back(quad(3 * k, 3 * k * k));
    }
    for (int k = 1; k <= 5; ++k) {
        p3.push_back(quad(-k, k * k));
        p3.push_back(quad(k, k * k));
    }
    auto add_table = [&](const char* name) {
        // first column: constant term, remaining columns: linear coefficients
        for (const auto& r : embedded_tables().section(name).rows)
            for (std::size_t i = 1; i < r.size(); ++i) {
                BigInt c(r[0].a), b(r[i].a);
                p4.push_back(quad(-b, c));
                p4.push_back(quad(b, c));
            }
    };
    add_table("table2");
    if (N == 7) {
        p1.push_back(quad(0, -36));
        p2.push_back(quad(-9, 27));
        p2.push_back(quad(0, 27));
        p2.push_back(quad(9, 27));
        p3.push_back(quad(-6, 36));
        p3.push_back(quad(6, 36));
        add_table("table4");
    }
    return F;
}

bool positive_definite_quadratic(const UniPoly& f) {
    if (f.degree() != 2 || f.lead() <= 0) return false;
    return f.coeff(1) * f.coeff(1) - 4 * f.coeff(2) * f.coeff(0) < 0;
}

std::vector<std::array<BigInt, 3>> q5_table3_triples() {
    std::vector<std::array<BigInt, 3>> out;
    for (const auto& r : embedded_tables().section("table3").rows) {
        if (r.size() != 3) throw std::logic_error("table3 row width");
        out.push_back({BigInt(r[0].a), BigInt(r[1].a), BigInt(r[2].a)});
    }
    return out;
}

std::vector<RootTuple> q5_table3_roots() {
    std::vector<RootTuple> out;
    for (const auto& [s3, s4, s5] : q5_table3_triples())
        out.push_back({Rational(s5), Rational(s4), Rational(s3), Rational(s4), Rational(s5)});
    return out;
}

std::vector<Counterexample> check_tuples(const TailSystem& t, const std::vector<std::vector<Surd5>>& tuples) {
    ClosedFormReport rep;
    for (const auto& x : tuples) check_tails(t, x, rep);
    return rep.counterexamples;
}

ClosedFormReport verify_closed_forms(int q, int N, const VerifyOptions& opt) {
    if (q < 0 || q > 5) throw std::invalid_argument("verify_closed_forms: q <= 5");
    ClosedFormReport rep;
    rep.q = q;
    rep.N = N;
    TrapMatrix trap = build_trap(q, N);
    TailSystem ts = forward_substitute(trap);
    bool solver = opt.solver && within_guard(q, N, opt);
    if (opt.solver && !solver) rep.notes.push_back("solver comparison skipped by guard");

    auto solve = [&] {
        EliminationOptions eo;
        eo.cancel = opt.cancel;
        SecularPoly s = eliminate(ts, eo);
        return std::pair{s, real_solutions(ts, s, opt.cancel)};
    };

    std::vector<std::vector<Surd5>> formula;
    switch (q) {
        case 0: {
            rep.formula_tuples = 1;
            check_kernel(trap, {}, q0_kernel(N), rep);
            break;
        }
        case 1: {
            auto roots = q1_roots(N);
            for (int j = 1; j <= N; ++j) {
                RootTuple t{Rational(roots[static_cast<std::size_t>(j - 1)])};
                formula.push_back(lift(t));
                check_tails(ts, formula.back(), rep);
                check_kernel(trap, t, q1_kernel(N, j), rep);
            }
            break;
        }
        case 2:
        case 3: {
            for (const auto& t : q == 2 ? q2_roots(N) : q3_roots(N)) {
                formula.push_back(lift(t));
                check_tails(ts, formula.back(), rep);
                check_kernel(trap, t, std::nullopt, rep);
            }
            break;
        }
        case 4: {
            formula = q4_table_tuples(N);
            for (const auto& t : formula) check_tails(ts, t, rep);
            if (N == 4) {
                // the prose and the table disagree on the sign of the third root
                EliminationOptions eo;
                eo.cancel = opt.cancel;
                UniPoly sec = eliminate(ts, eo).poly;
                Rational h(1, 2);
                for (const Surd5& c : {Surd5(Rational(-h), h), Surd5(h, Rational(-h))})
                    rep.candidates.push_back({"s4", to_string(c), evaluate(sec, c).is_zero()});
            }
            break;
        }
        case 5: {
            FactorFamily F = q5_factor_family(N);
            for (int i = 1; i < 4; ++i)
                for (const auto& f : F.factors[static_cast<std::size_t>(i)])
                    if (!positive_definite_quadratic(f))
                        rep.counterexamples.push_back({{to_string(f)}, "P" + std::to_string(i + 1) + " factor has real roots", ""});
            UniPoly p1 = F.P(1);
            if (gcd(p1, p1.derivative()).degree() > 0) rep.counterexamples.push_back({{to_string(p1)}, "P1 not square-free", ""});
            if (N == 6) {
                for (const auto& t : q5_table3_roots()) {
                    formula.push_back(lift(t));
                    check_tails(ts, formula.back(), rep);
                    check_kernel(trap, t, std::nullopt, rep);
                    if (p1.eval(t[4]) != 0) rep.counterexamples.push_back({describe(lift(t)), "s5 not a root of P1", ""});
                }
            }
            rep.formula_tuples = formula.size();
            if (solver) {
                EliminationOptions eo;
                eo.cancel = opt.cancel;
                UniPoly sec = eliminate(ts, eo).poly;
                UniPoly prod = F.product().with_var(sec.var());
                rep.solver_compared = true;
                if (!(sec == prod)) rep.counterexamples.push_back({{}, "secular polynomial differs from P1*P2*P3*P4", ""});
                rep.notes.push_back("real tuple set not enumerated at q=5");
            }
            return rep;
        }
    }
    if (q > 0) rep.formula_tuples = formula.size();
    if (solver && q > 0) compare_sets(formula, solve().second, rep);
    return rep;
}

}  // namespace qes
