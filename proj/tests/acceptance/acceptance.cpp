#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "frozen_values.hpp"
#include "qes/closedforms.hpp"
#include "qes/elimination.hpp"
#include "qes/numverify.hpp"

using namespace qes;

namespace {

// wall-clock ceilings in seconds, one per criterion
const std::map<int, double> kBudget{{1, 3}, {2, 30}, {3, 300}, {4, 1800}, {5, 3600},
                                    {6, 10}, {7, 60}, {8, 600}, {9, 300}, {10, 3600}};
constexpr double kQuarticN5Budget = 3600;
constexpr long double kHarmonicRel = 1e-6L;
constexpr long double kTrendFinalRel = 0.02L;

struct Result {
    std::string status = "PASS";
    std::string detail;
    std::string artifact;

    void fail(const std::string& why) {
        status = "FAIL";
        detail += (detail.empty() ? "" : "; ") + why;
    }
    void log(const std::string& line) { artifact += line + "\n"; }
};

std::string join(const std::vector<std::string>& v, const std::string& sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

std::string tuple_string(const std::vector<Rational>& t) {
    std::vector<std::string> v;
    for (const auto& x : t) v.push_back(to_string(x));
    return "(" + join(v) + ")";
}

std::string kernel_string(const std::vector<BigInt>& k) {
    std::vector<std::string> v;
    for (const auto& x : k) v.push_back(to_string(x));
    return "[" + join(v) + "]";
}

struct Solved {
    TailSystem tails;
    SecularPoly secular;
};

Solved solve(int q, int N, const std::string& pivot = "", std::function<bool()> cancel = {}) {
    Solved s;
    s.tails = forward_substitute(build_trap(q, N));
    EliminationOptions opt;
    opt.pivot = pivot;
    opt.cancel = std::move(cancel);
    s.secular = eliminate(s.tails, opt);
    return s;
}

void check_secular(Result& r, int q, int N) {
    for (const auto& c : frozen::kSecular) {
        if (c.q != q || c.N != N) continue;
        std::string got = to_string(solve(q, N, c.pivot).secular.poly);
        r.log("secular q=" + std::to_string(q) + " N=" + std::to_string(N) + " " + got);
        if (got != c.poly) r.fail("q=" + std::to_string(q) + " N=" + std::to_string(N) + " secular mismatch: " + got);
        return;
    }
    r.fail("no frozen secular polynomial for q=" + std::to_string(q) + " N=" + std::to_string(N));
}

/// Rational tuples of the solver; irrational ones are reported by count.
std::set<std::vector<Rational>> rational_set(const RealSolutionSet& set, std::size_t& irrational) {
    std::set<std::vector<Rational>> out;
    irrational = 0;
    for (const auto& t : set.tuples) {
        if (auto v = t.rational_values()) out.insert(*v);
        else ++irrational;
    }
    return out;
}

Result criterion1() {
    Result r;
    for (int N : {3, 4, 5}) check_secular(r, 1, N);
    if (r.status == "PASS") r.detail = "q=1 secular polynomials N=3,4,5 verbatim";
    return r;
}

Result criterion2() {
    Result r;
    for (int N = 1; N <= 12; ++N) {
        Solved s = solve(1, N);
        RealSolutionSet set = real_solutions(s.tails, s.secular);
        std::set<Rational> expect;
        for (const auto& x : q1_roots(N)) expect.insert(Rational(x));
        std::set<Rational> got;
        for (const auto& t : set.tuples) {
            auto v = t.rational_values();
            if (!v) {
                r.fail("N=" + std::to_string(N) + " irrational root");
                continue;
            }
            const Rational& s1 = (*v)[0];
            got.insert(s1);
            Rational j = (s1 + N + 1) / 2;
            if (j.get_den() != 1 || j < 1 || j > N) {
                r.fail("N=" + std::to_string(N) + " root " + to_string(s1) + " outside the formula");
                continue;
            }
            auto expect_k = q1_kernel(N, static_cast<int>(j.get_num().get_si()));
            r.log("N=" + std::to_string(N) + " s=" + to_string(s1) + " kernel " + kernel_string(t.kernel));
            if (t.kernel != expect_k) r.fail("N=" + std::to_string(N) + " s=" + to_string(s1) + " kernel mismatch");
        }
        if (got != expect) r.fail("N=" + std::to_string(N) + " root set differs");
    }
    if (r.status == "PASS") r.detail = "q=1 roots -N-1+2j and binomial kernels, N=1..12";
    return r;
}

Result criterion3() {
    Result r;
    for (int N : {3, 4}) check_secular(r, 2, N);
    for (int N = 2; N <= 8; ++N) {
        Solved s = solve(2, N);
        std::size_t irr = 0;
        auto got = rational_set(real_solutions(s.tails, s.secular), irr);
        auto formula = q2_roots(N);
        std::set<std::vector<Rational>> expect(formula.begin(), formula.end());
        std::vector<std::string> g;
        for (const auto& t : got) g.push_back(tuple_string(t));
        r.log("N=" + std::to_string(N) + " tuples " + join(g, " "));
        if (irr) r.fail("N=" + std::to_string(N) + " has irrational tuples");
        if (got != expect) r.fail("N=" + std::to_string(N) + " tuple set differs from s=t=N+2-3j");
    }
    if (r.status == "PASS") r.detail = "q=2 secular N=3,4 verbatim; real tuples N=2..8 equal s=t=N+2-3j";
    return r;
}

Result criterion4() {
    Result r;
    for (int N : {3, 4, 5, 6}) check_secular(r, 3, N);
    for (int N = 2; N <= 8; ++N) {
        VerifyOptions opt;
        opt.solver = false;
        ClosedFormReport rep = verify_closed_forms(3, N, opt);
        r.log("N=" + std::to_string(N) + " formula tuples " + std::to_string(rep.formula_tuples) + " counterexamples " +
              std::to_string(rep.counterexamples.size()));
        if (!rep.ok() || rep.formula_tuples == 0) r.fail("N=" + std::to_string(N) + " formula tuples fail the tails");
    }
    if (r.status == "PASS") r.detail = "q=3 secular N=3..6 verbatim; formula tuples satisfy the tails for N=2..8";
    return r;
}

Result criterion5() {
    Result r;
    // N = 4: solver pairs against the table
    Solved s = solve(4, 4);
    RealSolutionSet set = real_solutions(s.tails, s.secular);
    auto table = q4_table_roots(4);
    std::vector<bool> used(table.size(), false);
    UniPoly golden = parse_unipoly("x^2 - x - 1"), golden_neg = parse_unipoly("x^2 + x - 1");
    for (const auto& t : set.tuples) {
        const AlgebraicReal &s3 = t.values.at(2), &s4 = t.values.at(3);
        r.log("N=4 pair (" + to_string(s3) + ", " + to_string(s4) + ")");
        bool found = false;
        for (std::size_t i = 0; i < table.size() && !found; ++i)
            if (!used[i] && table[i][0] == s3 && table[i][1] == s4) used[i] = found = true;
        if (!found) r.fail("solver pair not in the table");
        for (const auto* v : {&s3, &s4})
            if (!v->as_rational() && !algebraic_is_root(*v, golden) && !algebraic_is_root(*v, golden_neg))
                r.fail("irrational entry is not a golden-ratio conjugate");
    }
    if (set.tuples.size() != table.size()) r.fail("N=4 has " + std::to_string(set.tuples.size()) + " real pairs");
    VerifyOptions opt;
    opt.solver = false;
    std::string sign;
    for (int N : {4, 5, 6}) {
        ClosedFormReport rep = verify_closed_forms(4, N, opt);
        r.log("N=" + std::to_string(N) + " table tuples " + std::to_string(rep.formula_tuples) + " counterexamples " +
              std::to_string(rep.counterexamples.size()));
        if (!rep.ok() || rep.formula_tuples == 0) r.fail("N=" + std::to_string(N) + " table pairs fail the tails");
        for (const auto& c : rep.candidates) {
            r.log("candidate " + c.variable + "=" + c.value + (c.root ? " root" : " not a root"));
            if (c.root) sign = c.variable + "=" + c.value;
        }
    }
    // N = 5 quoted coefficients, under the time ceiling
    auto start = std::chrono::steady_clock::now();
    auto cancel = [start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > kQuarticN5Budget;
    };
    std::string head;
    try {
        UniPoly p = solve(4, 5, "s4", cancel).secular.poly;
        r.log("N=5 secular degree " + std::to_string(p.degree()));
        for (const auto& [e, c] : frozen::kQuarticN5)
            if (p.degree() < e || p.coeff(e) != BigInt(c)) r.fail("N=5 coefficient of s4^" + std::to_string(e));
        head = "N=5 quoted coefficients match";
    } catch (const GuardExceeded&) {
        head = "N=5 coefficients SKIPPED-BY-GUARD";
        r.log(head);
    }
    if (r.status == "PASS")
        r.detail = "q=4 N=4 real pairs equal the table (sign candidate " + sign + "); N=5,6 table pairs exact; " + head;
    return r;
}

Result criterion6() {
    Result r;
    auto check = [&r](int N, const frozen::Coefficients& quoted) {
        FactorFamily F = q5_factor_family(N);
        UniPoly p = F.product();
        r.log("N=" + std::to_string(N) + " degree " + std::to_string(p.degree()));
        for (const auto& [e, c] : quoted)
            if (p.degree() < e || p.coeff(e) != BigInt(c)) r.fail("N=" + std::to_string(N) + " coefficient of x^" + std::to_string(e));
        for (std::size_t i = 1; i < 4; ++i)
            for (const auto& f : F.factors[i])
                if (!positive_definite_quadratic(f)) r.fail("N=" + std::to_string(N) + " factor " + to_string(f) + " has real roots");
        return p;
    };
    check(6, frozen::kQuinticN6);
    UniPoly p7 = check(7, frozen::kQuinticN7);
    BigInt c = BigInt(frozen::kQuinticN7Constant) * 1000000;
    r.log("N=7 coefficient of x " + to_string(p7.coeff(1)));
    if (p7.coeff(1) != c) r.fail("N=7 coefficient of x");
    if (r.status == "PASS") r.detail = "q=5 products reproduce the quoted coefficients for N=6,7; every quadratic factor positive";
    return r;
}

Result criterion7() {
    Result r;
    TrapMatrix m = build_trap(5, 6);
    TailSystem t = forward_substitute(m);
    auto roots = q5_table3_roots();
    std::vector<std::vector<Surd5>> tuples;
    for (const auto& x : roots) tuples.emplace_back(x.begin(), x.end());
    auto bad = check_tuples(t, tuples);
    for (const auto& c : bad) r.fail("(" + join(c.tuple) + ") " + c.condition + " residual " + c.residual);
    for (const auto& x : roots) {
        try {
            auto k = kernel_vector(m, x);
            r.log(tuple_string(x) + " kernel " + kernel_string(k));
            if (k.size() != 6 || k[5] == 0) r.fail(tuple_string(x) + " p_5 = 0");
        } catch (const DegenerateError& e) {
            r.fail(tuple_string(x) + " " + e.what());
        }
    }
    if (roots.size() != 20) r.fail("expected 20 triples, got " + std::to_string(roots.size()));
    if (r.status == "PASS") r.detail = "all 20 q=5 N=6 table triples satisfy the six tails; one-dimensional kernels with p_5 != 0";
    return r;
}

Result criterion8() {
    Result r;
    std::size_t checked = 0, tuples = 0;
    for (int q = 1; q <= 3; ++q)
        for (int N = 1; N <= 6; ++N) {
            TrapMatrix m = build_trap(q, N);
            Solved s = solve(q, N);
            RealSolutionSet set = real_solutions(s.tails, s.secular);
            std::set<std::vector<Rational>> reported;
            for (const auto& t : set.tuples) {
                ++tuples;
                if (!brute_force_check(m, t)) r.fail("q=" + std::to_string(q) + " N=" + std::to_string(N) + " reported tuple fails the minors");
                if (auto v = t.rational_values()) reported.insert(*v);
            }
            const long bound = N + q + 2;
            std::vector<long> c(static_cast<std::size_t>(q), -bound);
            std::size_t passing = 0;
            while (true) {
                std::vector<Rational> cand(c.begin(), c.end());
                bool oracle = brute_force_check(m, cand);
                ++checked;
                if (oracle) ++passing;
                if (oracle != static_cast<bool>(reported.count(cand)))
                    r.fail("q=" + std::to_string(q) + " N=" + std::to_string(N) + " candidate " + tuple_string(cand) +
                           (oracle ? " passes but is not reported" : " reported but fails"));
                std::size_t i = 0;
                while (i < c.size() && c[i] == bound) c[i++] = -bound;
                if (i == c.size()) break;
                ++c[i];
            }
            r.log("q=" + std::to_string(q) + " N=" + std::to_string(N) + " tuples " + std::to_string(set.tuples.size()) +
                  " integer candidates passing " + std::to_string(passing));
        }
    if (r.status == "PASS")
        r.detail = std::to_string(tuples) + " tuples pass the minors oracle; " + std::to_string(checked) +
                   " integer candidates agree with the reported sets (q<=3, N<=6)";
    return r;
}

Result criterion9() {
    Result r;
    auto exact = harmonic_levels(1, 0, 3);
    auto num = harmonic_benchmark(1, 0, 3);
    long double worst = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        long double rel = std::fabs(num.values[i] - exact[i]) / exact[i];
        worst = std::max(worst, rel);
        r.log("harmonic n=" + std::to_string(i) + " exact " + format_real(exact[i]) + " numeric " + format_real(num.values[i]));
    }
    if (!(worst < kHarmonicRel)) r.fail("harmonic relative error " + format_real(worst, 3));
    std::string finals;
    for (long s : {-1L, 1L}) {
        TrendConfig c;
        c.s = s;
        TrendReport rep = largeD_trend(c);
        for (const auto& row : rep.rows)
            r.log("s=" + std::to_string(s) + " D=" + to_string(row.D) + " predicted " + format_real(row.predicted) +
                  " numeric " + format_real(row.numeric) + " rel " + format_real(row.rel_error, 6));
        if (!rep.monotone) r.fail("s=" + std::to_string(s) + " trend not monotone");
        long double last = rep.rows.back().rel_error;
        if (!(last < kTrendFinalRel)) r.fail("s=" + std::to_string(s) + " error at D=10^4 is " + format_real(last, 3));
        finals += (finals.empty() ? "" : ", ") + format_real(last, 2);
    }
    if (r.status == "PASS")
        r.detail = "harmonic levels within 1e-6 (E = omega(4n+2l+3)); q=1 N=2 trend monotone at both roots, error at D=10^4 " +
                   finals;
    return r;
}

using Criterion = std::function<Result()>;

}  // namespace

int main() {
    std::vector<Criterion> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                    criterion6, criterion7, criterion8, criterion9};
    std::vector<Result> first;
    int failures = 0;
    auto report = [&failures](int id, Result r, double seconds) {
        double budget = kBudget.at(id);
        if (seconds > budget) {
            std::ostringstream os;
            os << "over the " << budget << " s ceiling";
            r.fail(os.str());
        }
        if (r.status == "FAIL") ++failures;
        std::printf("criterion %2d: %s  %s\n", id, r.status.c_str(), r.detail.c_str());
        std::fflush(stdout);
    };
    auto timed = [](const Criterion& c, double& seconds) {
        auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = c();
        } catch (const std::exception& e) {
            r.fail(std::string("exception: ") + e.what());
        }
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        double seconds = 0;
        Result r = timed(criteria[i], seconds);
        first.push_back(r);
        report(static_cast<int>(i + 1), r, seconds);
    }

    // determinism: every criterion again, plus the command line front end twice
    double seconds = 0;
    Result det = timed(
        [&] {
            Result r;
            for (std::size_t i = 0; i < criteria.size(); ++i) {
                Result again = criteria[i]();
                if (again.artifact != first[i].artifact || again.status != first[i].status)
                    r.fail("criterion " + std::to_string(i + 1) + " artifact differs on rerun");
            }
            for (const char* cmd : {"secular", "roots", "verify"}) {
                qes::cli::RunConfig c;
                c.command = cmd;
                c.q = 3;
                c.N = {3, 4};
                c.format = "json";
                c.jobs = 2;
                if (qes::cli::run(c).body != qes::cli::run(c).body) r.fail(std::string(cmd) + " output differs on rerun");
            }
            if (embedded_table_sha256() != frozen::kTablesSha256) r.fail("embedded table checksum changed");
            if (r.status == "PASS") r.detail = "criteria 1-9 and CLI json outputs byte-identical on rerun";
            return r;
        },
        seconds);
    report(10, det, seconds);
    return failures ? 1 : 0;
}
