#ifndef QES_MULTIPOLY_HPP
#define QES_MULTIPOLY_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qes/numeric.hpp"
#include "qes/unipoly.hpp"

namespace qes {

using Exponent = std::vector<unsigned>;

/// Orders exponent vectors lexicographically, largest first.
struct LexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const { return a > b; }
};

/// Sparse multivariate polynomial over the integers in a fixed variable list.
/// No zero coefficient is ever stored.
class MultiPoly {
   public:
    using TermMap = std::map<Exponent, BigInt, LexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(std::vector<std::string> vars, const BigInt& c);
    static MultiPoly variable(std::vector<std::string> vars, std::size_t index);
    static MultiPoly term(std::vector<std::string> vars, const BigInt& c, Exponent e);
    /// Embeds a univariate polynomial whose variable appears in `vars`.
    static MultiPoly from_unipoly(std::vector<std::string> vars, const UniPoly& p);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    /// Index of a variable; throws std::invalid_argument if unknown.
    std::size_t index_of(std::string_view var) const;

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    BigInt constant_term() const;
    /// Lex-leading term (first variable most significant).
    const std::pair<const Exponent, BigInt>& leading() const;

    int total_degree() const;
    int degree_in(std::size_t var) const;
    bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

    void add_term(const Exponent& e, const BigInt& c);

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const BigInt& k);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const BigInt& k) { return a *= k; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    std::optional<MultiPoly> exact_div(const MultiPoly& d) const;
    MultiPoly exact_div(const BigInt& k) const;

    /// Positive gcd of coefficients carrying the sign of the lex-leading coefficient.
    BigInt content() const;
    MultiPoly primitive_part() const;

    /// Dense coefficients in `var`, lowest first; each coefficient is free of `var`.
    std::vector<MultiPoly> coeffs_in(std::size_t var) const;
    static MultiPoly from_coeffs_in(std::vector<std::string> vars, std::size_t var, std::span<const MultiPoly> c);

    /// den^deg_var(f) * f(var = value): stays over the integers.
    MultiPoly substitute_scaled(std::size_t var, const Rational& value) const;
    Rational evaluate(std::span<const Rational> point) const;
    /// Requires that no variable other than `var` occurs.
    UniPoly to_unipoly(std::size_t var) const;

   private:
    void check_same(const MultiPoly& o) const;

    std::vector<std::string> vars_;
    TermMap terms_;
};

bool is_zero(const MultiPoly& p);
MultiPoly one_like(const MultiPoly& p);

/// Subresultant-PRS resultant with respect to `var`. Throws DegenerateError when
/// either input does not involve `var`.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var);

/// Canonical text: graded (total degree) descending, then lex; e.g. "s*t^2 - s^2 - 2*t".
std::string to_string(const MultiPoly& p);

/// Parses canonical text over a given variable list.
MultiPoly parse_multipoly(std::string_view text, const std::vector<std::string>& vars);

}  // namespace qes

#endif  // QES_MULTIPOLY_HPP
