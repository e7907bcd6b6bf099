#ifndef QES_NUMERIC_HPP
#define QES_NUMERIC_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qes {

/// Arbitrary-precision integer. Zero has a single canonical representation.
using BigInt = mpz_class;

/// Reduced fraction with positive denominator. Every value leaving this
/// library has been canonicalized.
using Rational = mpq_class;

class AlgebraError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when an operation hits a degenerate input it cannot resolve
/// (constant resultant operands, positive-dimensional components, ...).
class DegenerateError : public AlgebraError {
   public:
    using AlgebraError::AlgebraError;
};

/// Raised when an instance exceeds a configured cost ceiling.
class GuardExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

Rational make_rational(const BigInt& num, const BigInt& den);

std::string to_string(const BigInt& v);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& v);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

inline int sign(const BigInt& v) { return sgn(v); }
inline int sign(const Rational& v) { return sgn(v); }

/// Exact power with non-negative integer exponent.
BigInt pow(const BigInt& base, unsigned exponent);
Rational pow(const Rational& base, int exponent);

/// Exact square root of a non-negative rational when it is a perfect square.
bool rational_sqrt(const Rational& v, Rational& root);

/// floor / ceil of a rational.
BigInt floor(const Rational& v);
BigInt ceil(const Rational& v);

double to_double(const Rational& v);
long double to_long_double(const Rational& v);

/// printf %.<digits>Lg; "nan", "inf", "-inf" for non-finite values.
std::string format_real(long double v, int digits = 15);

}  // namespace qes

#endif  // QES_NUMERIC_HPP
