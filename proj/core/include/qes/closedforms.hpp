#ifndef QES_CLOSEDFORMS_HPP
#define QES_CLOSEDFORMS_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qes/elimination.hpp"
#include "qes/realroots.hpp"
#include "qes/unipoly.hpp"

namespace qes {

/// a + b*sqrt(5) with rational a, b.
struct Surd5 {
    Rational a, b;

    Surd5() = default;
    Surd5(long v) : a(v) {}
    Surd5(const Rational& v) : a(v) {}
    Surd5(const Rational& x, const Rational& y) : a(x), b(y) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    Surd5 conjugate() const { return {a, Rational(-b)}; }
    double approx() const;

    friend Surd5 operator+(const Surd5& x, const Surd5& y) { return {Rational(x.a + y.a), Rational(x.b + y.b)}; }
    friend Surd5 operator-(const Surd5& x, const Surd5& y) { return {Rational(x.a - y.a), Rational(x.b - y.b)}; }
    friend Surd5 operator*(const Surd5& x, const Surd5& y) {
        return {Rational(x.a * y.a + 5 * x.b * y.b), Rational(x.a * y.b + x.b * y.a)};
    }
    friend bool operator==(const Surd5& x, const Surd5& y) { return x.a == y.a && x.b == y.b; }
};

/// "7", "-3/2" or "(a+b*sqrt5)/c" with integers a, b, c (c > 0, smallest common denominator).
std::string to_string(const Surd5& v);
/// Accepts every form to_string emits, and "(a-b*sqrt5)/c".
Surd5 parse_surd(std::string_view token);
/// The defining quadratic (or linear polynomial) and isolating interval.
AlgebraicReal to_algebraic(const Surd5& v, const std::string& var = "x");
Surd5 evaluate(const UniPoly& p, const Surd5& x);

/// Plain-text table file: "# comment" lines, "[section]" headers, one
/// whitespace-separated tuple per line.
struct TableSection {
    std::vector<std::string> comments;  // comment lines directly before the header
    std::string name;
    std::vector<std::vector<Surd5>> rows;
};
struct TableData {
    std::vector<TableSection> sections;
    /// Throws std::out_of_range for an unknown section.
    const TableSection& section(std::string_view name) const;
};

/// Throws std::invalid_argument with the offending line number.
TableData parse_tables(std::string_view text);
/// Inverse of parse_tables for canonical input.
std::string format_tables(const TableData& d);

/// Table file compiled into the library, and its SHA-256 computed at configure time.
std::string_view embedded_table_text();
std::string_view embedded_table_sha256();
const TableData& embedded_tables();

using KernelVector = std::vector<BigInt>;
using RootTuple = std::vector<Rational>;  // full tuple in trap_variables(q) order

/// p_n = (-1)^n C(N-1, n).
KernelVector q0_kernel(int N);
/// -N-1+2j, j = 1..N.
std::vector<BigInt> q1_roots(int N);
/// Coefficients of (1+x)^(N-j) (1-x)^(j-1).
KernelVector q1_kernel(int N, int j);
/// s = t = N+2-3j, j = 1..floor((N+1)/2). Tuples (s, t).
std::vector<RootTuple> q2_roots(int N);
/// s = N+3-4j, r = t = -N-3+2j+2k, k = 1..N+2-2j, j = 1..floor((N+1)/2).
/// Tuples in (r, s, t) order.
std::vector<RootTuple> q3_roots(int N);

/// (s3, s4) pairs for N in {4, 5, 6}.
std::vector<std::array<Surd5, 2>> q4_table_pairs(int N);
std::vector<std::array<AlgebraicReal, 2>> q4_table_roots(int N);
/// (s1, s2, s3, s4) = (s4, s3, s3, s4).
std::vector<std::vector<Surd5>> q4_table_tuples(int N);

struct FactorFamily {
    int N = 6;
    /// factors[i] multiply to P_{i+1}; every entry of factors[1..3] is a quadratic.
    std::array<std::vector<UniPoly>, 4> factors;

    UniPoly P(int i) const;  // 1-based
    UniPoly product() const;
};

/// N in {6, 7}; polynomials in x.
FactorFamily q5_factor_family(int N);
/// x^2 + b x + c with b^2 - 4c < 0.
bool positive_definite_quadratic(const UniPoly& f);

/// (s3, s4, s5) rows as listed.
std::vector<std::array<BigInt, 3>> q5_table3_triples();
/// (s1, ..., s5) = (s5, s4, s3, s4, s5).
std::vector<RootTuple> q5_table3_roots();

struct Counterexample {
    std::vector<std::string> tuple;
    std::string condition;
    std::string residual;
};

/// One counterexample per (tuple, tail condition) with a nonzero residual.
std::vector<Counterexample> check_tuples(const TailSystem& t, const std::vector<std::vector<Surd5>>& tuples);

struct CandidateCheck {
    std::string variable;
    std::string value;
    bool root = false;
};

struct ClosedFormReport {
    int q = 0, N = 1;
    std::size_t formula_tuples = 0;
    bool solver_compared = false;
    std::size_t solver_tuples = 0;
    std::vector<Counterexample> counterexamples;
    std::vector<CandidateCheck> candidates;
    std::vector<std::string> notes;

    bool ok() const { return counterexamples.empty(); }
};

struct VerifyOptions {
    /// Compare with the elimination engine when N is within the guard.
    bool solver = true;
    std::optional<int> guard_N;
    std::function<bool()> cancel;
};

/// Checks every closed-form tuple against the exact tail conditions and, when
/// enabled, the solver's real tuple set (set equality). q <= 5.
ClosedFormReport verify_closed_forms(int q, int N, const VerifyOptions& opt = {});

}  // namespace qes

#endif  // QES_CLOSEDFORMS_HPP
