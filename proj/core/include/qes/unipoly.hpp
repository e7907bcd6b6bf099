#ifndef QES_UNIPOLY_HPP
#define QES_UNIPOLY_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qes/numeric.hpp"

namespace qes {

/// Dense univariate polynomial over the integers, lowest degree first.
/// The coefficient vector is always trimmed: the leading coefficient is
/// nonzero unless the polynomial is zero (empty vector).
class UniPoly {
   public:
    UniPoly() : var_("x") {}
    explicit UniPoly(std::string var) : var_(std::move(var)) {}
    UniPoly(std::string var, std::vector<BigInt> coeffs);

    static UniPoly constant(std::string var, const BigInt& c);
    static UniPoly monomial(std::string var, const BigInt& c, unsigned degree);
    /// Product of (x - r) over the given integer roots.
    static UniPoly from_roots(std::string var, std::span<const BigInt> roots);

    const std::string& var() const { return var_; }
    UniPoly with_var(std::string var) const;

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const BigInt& coeff(int i) const;
    const BigInt& lead() const;
    std::span<const BigInt> coeffs() const { return c_; }

    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const UniPoly& o);
    UniPoly& operator*=(const BigInt& k);

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(UniPoly a, const BigInt& k) { return a *= k; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// Quotient when `d` divides exactly over the integers, nullopt otherwise.
    std::optional<UniPoly> exact_div(const UniPoly& d) const;
    /// Divides every coefficient by k; throws AlgebraError if any is not divisible.
    UniPoly exact_div(const BigInt& k) const;

    /// gcd of the coefficients, sign of the leading coefficient (0 for zero).
    BigInt content() const;
    /// p / content(p); leading coefficient positive.
    UniPoly primitive_part() const;
    UniPoly derivative() const;
    /// p(-x)
    UniPoly reflect() const;
    /// x^n p(1/x)
    UniPoly reverse() const;
    /// Number of trailing zero coefficients (multiplicity of the root 0).
    int zero_root_multiplicity() const;
    /// p / x^k
    UniPoly shift_down(int k) const;

    BigInt eval(const BigInt& x) const;
    Rational eval(const Rational& x) const;
    /// sign of p(x), without forming the full rational value.
    int sign_at(const Rational& x) const;
    double eval_double(double x) const;

   private:
    void trim();

    std::string var_;
    std::vector<BigInt> c_;
};

struct PseudoDivision {
    UniPoly quotient;
    UniPoly remainder;
};

/// lc(b)^(deg a - deg b + 1) * a = quotient * b + remainder.
PseudoDivision pseudo_divide(const UniPoly& a, const UniPoly& b);

/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Product of the distinct irreducible factors: same roots, all simple, primitive.
UniPoly squarefree_part(const UniPoly& f);

/// Yun's algorithm: f = content * prod_i g_i^i with g_i square-free, pairwise coprime.
/// Only factors of positive degree are returned, paired with their multiplicity.
std::vector<std::pair<UniPoly, int>> squarefree_factorization(const UniPoly& f);

/// Resultant via subresultant PRS. Both inputs nonzero.
BigInt resultant(const UniPoly& a, const UniPoly& b);

/// Canonical text: descending powers, explicit signs, `^` exponents, `*` products,
/// e.g. "s^10 - 27*s^7 + 27*s^4 - 729*s".
std::string to_string(const UniPoly& p);

/// Parses the canonical form. The variable is taken from the text; if the
/// text has no variable (a constant), `fallback_var` is used.
UniPoly parse_unipoly(std::string_view text, std::string_view fallback_var = "x");

}  // namespace qes

#endif  // QES_UNIPOLY_HPP
