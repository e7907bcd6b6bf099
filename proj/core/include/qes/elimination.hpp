#ifndef QES_ELIMINATION_HPP
#define QES_ELIMINATION_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qes/groebner.hpp"
#include "qes/linalg.hpp"
#include "qes/magyari.hpp"
#include "qes/multipoly.hpp"
#include "qes/realroots.hpp"
#include "qes/unipoly.hpp"

namespace qes {

/// Kernel-coefficient polynomials and tail conditions of a trap matrix.
/// p[n] holds n! * p_n, an integer polynomial of total degree <= n (p[0] = 1).
/// tails[j] is row N-1+j of the trap matrix applied to p, made primitive.
struct TailSystem {
    int q = 0, N = 1;
    std::vector<std::string> vars;
    std::vector<MultiPoly> p;
    std::vector<MultiPoly> tails;
};

TailSystem forward_substitute(const TrapMatrix& m);

enum class Method { Auto, Direct, Resultant, Groebner };
std::string to_string(Method m);
/// "auto", "direct", "resultant", "groebner"; throws std::invalid_argument otherwise.
Method parse_method(const std::string& s);

/// s, s, t, s4, s5, ... for q = 1, 2, 3, 4, 5, ...
std::string default_pivot(int q);

struct EliminationOptions {
    std::string pivot;  // empty: default_pivot(q)
    Method method = Method::Auto;
    std::function<bool()> cancel;
};

struct SecularPoly {
    UniPoly poly;  // primitive, square-free, positive leading coefficient
    std::string pivot;
    Method method = Method::Auto;
    /// Square-free factorization of the raw eliminant: (factor, multiplicity).
    std::vector<std::pair<UniPoly, int>> factors;
    std::vector<std::string> provenance;
    std::size_t quotient_dimension = 0;  // Groebner path only
    std::shared_ptr<const GroebnerBasis> basis;
};

/// Eliminates every variable except the pivot from the tail conditions.
/// q = 1 reads the single condition directly; q = 2 and 3 can use iterated resultants;
/// q >= 3 defaults to the minimal polynomial of the pivot in the quotient algebra
/// of a Groebner basis.
SecularPoly eliminate(const TailSystem& t, const EliminationOptions& opt = {});

/// Element of Q[u] / (chi) for a monic chi. A default or scalar element has no
/// modulus and adopts the one of the other operand.
class QuotientElement {
   public:
    using Modulus = std::shared_ptr<const std::vector<Rational>>;  // monic, lowest first

    QuotientElement() = default;
    QuotientElement(long v) : c_{Rational(v)} { trim(); }
    QuotientElement(const Rational& v) : c_{v} { trim(); }
    QuotientElement(Modulus mod, std::vector<Rational> c);

    static Modulus make_modulus(const UniPoly& chi);
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// Value at a rational point (a root of the modulus when meaningful).
    Rational eval(const Rational& x) const;
    /// Integer polynomial with the same roots (denominators cleared).
    UniPoly to_unipoly(const std::string& var) const;

    friend QuotientElement operator+(const QuotientElement& a, const QuotientElement& b);
    friend QuotientElement operator-(const QuotientElement& a, const QuotientElement& b);
    friend QuotientElement operator*(const QuotientElement& a, const QuotientElement& b);
    friend bool operator==(const QuotientElement& a, const QuotientElement& b) { return a.c_ == b.c_; }

   private:
    void trim();
    void reduce();
    Modulus mod_;
    std::vector<Rational> c_;
};

/// Exact algebraic coordinates of a tuple: x_k = coords[k](alpha) with alpha a root of chi.
struct AlgebraicContext {
    UniPoly chi;
    AlgebraicReal alpha;
    std::vector<std::vector<Rational>> coords;
};

struct SolutionTuple {
    std::vector<std::string> vars;
    std::vector<AlgebraicReal> values;
    /// Integer kernel vector (rational tuples).
    std::vector<BigInt> kernel;
    /// Irrational tuples: coordinates in Q[u]/chi and p_0..p_{N-1} as polynomials in u (p_0 = 1).
    std::optional<AlgebraicContext> context;
    std::vector<std::vector<Rational>> algebraic_kernel;

    /// All coordinates when every one is rational.
    std::optional<std::vector<Rational>> rational_values() const;
};

struct RealSolutionSet {
    std::vector<SolutionTuple> tuples;
    /// Real roots of the secular polynomial that only extend to non-real tuples.
    std::vector<AlgebraicReal> complex_completion_only;
    std::vector<std::string> log;
};

/// Every real solution of the tail system, with kernel vectors. Uses the
/// Groebner basis carried by `s` (computing one if needed) and a separating
/// linear form, so each coordinate is a polynomial in one algebraic number.
RealSolutionSet real_solutions(const TailSystem& t, const SecularPoly& s,
                               const std::function<bool()>& cancel = {});

/// Kernel of the numeric trap matrix at a rational tuple, integer, gcd 1, p_0 > 0.
/// Throws DegenerateError when the kernel is not one-dimensional or p_{N-1} = 0.
std::vector<BigInt> kernel_vector(const TrapMatrix& m, const std::vector<Rational>& s);

/// True iff every N x N minor of the trap matrix vanishes at the tuple.
/// Refuses (GuardExceeded) above N = 8 unless overridden.
bool brute_force_check(const TrapMatrix& m, const std::vector<Rational>& s);
bool brute_force_check(const TrapMatrix& m, const SolutionTuple& tuple);

/// Default elimination ceilings: N <= 12 for q <= 3, N <= 6 above.
int default_guard_N(int q);
/// True when QES_GUARD_OVERRIDE=1 is set in the environment.
bool guard_override();
/// Throws GuardExceeded when N exceeds `limit` (default_guard_N(q) if nullopt) and
/// the override is not set.
void check_guard(int q, int N, std::optional<int> limit = std::nullopt);

/// Evaluates an integer polynomial at a point in any ring with a long constructor.
template <class R>
R evaluate_in(const MultiPoly& f, const std::vector<R>& point, const R& zero) {
    std::vector<std::vector<R>> powers(point.size());
    R acc = zero;
    for (const auto& [e, c] : f.terms()) {
        R term = zero + R(Rational(c));
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(point[i]);
            while (pw.size() < e[i]) pw.push_back(pw.back() * point[i]);
            term = term * pw[e[i] - 1];
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace qes

#endif  // QES_ELIMINATION_HPP
