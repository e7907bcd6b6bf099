#include "qes/numeric.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qes {

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body)) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    BigInt v(std::string(body), 10);
    return negative ? BigInt(-v) : v;
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(text));
    BigInt num = parse_bigint(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
    return make_rational(num, parse_bigint(den_text));
}

BigInt factorial(unsigned n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt pow(const BigInt& base, unsigned exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Rational pow(const Rational& base, int exponent) {
    if (exponent < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        Rational inv = 1 / base;
        return pow(inv, -exponent);
    }
    return make_rational(pow(base.get_num(), static_cast<unsigned>(exponent)),
                         pow(base.get_den(), static_cast<unsigned>(exponent)));
}

bool rational_sqrt(const Rational& v, Rational& root) {
    if (v < 0) return false;
    if (!mpz_perfect_square_p(v.get_num_mpz_t()) || !mpz_perfect_square_p(v.get_den_mpz_t())) return false;
    BigInt n, d;
    mpz_sqrt(n.get_mpz_t(), v.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), v.get_den_mpz_t());
    root = make_rational(n, d);
    return true;
}

BigInt floor(const Rational& v) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return r;
}

BigInt ceil(const Rational& v) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return r;
}

double to_double(const Rational& v) { return v.get_d(); }

long double to_long_double(const Rational& v) {
    // mpq_get_d loses range for very large numerators; scale through exponents.
    long num_exp = 0, den_exp = 0;
    double num_m = mpz_get_d_2exp(&num_exp, v.get_num_mpz_t());
    double den_m = mpz_get_d_2exp(&den_exp, v.get_den_mpz_t());
    long double m = static_cast<long double>(num_m) / static_cast<long double>(den_m);
    long e = num_exp - den_exp;
    long double scale = 1.0L;
    long double two = 2.0L;
    long ae = e < 0 ? -e : e;
    while (ae > 0) {
        if (ae & 1) scale *= two;
        two *= two;
        ae >>= 1;
    }
    return e < 0 ? m / scale : m * scale;
}

}  // namespace qes

namespace qes {

std::string format_real(long double v, int digits) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
    return buf;
}

}  // namespace qes
