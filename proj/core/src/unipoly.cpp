#include "qes/unipoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qes/detail/prs.hpp"
#include "qes/detail/text.hpp"

namespace qes {

namespace {

const BigInt& zero_coeff() {
    static const BigInt z(0);
    return z;
}

BigInt divexact(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

UniPoly::UniPoly(std::string var, std::vector<BigInt> coeffs) : var_(std::move(var)), c_(std::move(coeffs)) {
    trim();
}

UniPoly UniPoly::constant(std::string var, const BigInt& c) { return UniPoly(std::move(var), {c}); }

UniPoly UniPoly::monomial(std::string var, const BigInt& c, unsigned degree) {
    std::vector<BigInt> v(degree + 1);
    v[degree] = c;
    return UniPoly(std::move(var), std::move(v));
}

UniPoly UniPoly::from_roots(std::string var, std::span<const BigInt> roots) {
    UniPoly p = constant(var, 1);
    for (const auto& r : roots) p *= UniPoly(var, {BigInt(-r), BigInt(1)});
    return p;
}

UniPoly UniPoly::with_var(std::string var) const {
    UniPoly p = *this;
    p.var_ = std::move(var);
    return p;
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigInt& UniPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero_coeff();
    return c_[static_cast<std::size_t>(i)];
}

const BigInt& UniPoly::lead() const { return c_.empty() ? zero_coeff() : c_.back(); }

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly(a.var_);
    std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return UniPoly(a.var_, std::move(r));
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
    *this = *this * o;
    return *this;
}

UniPoly& UniPoly::operator*=(const BigInt& k) {
    for (auto& c : c_) c *= k;
    trim();
    return *this;
}

std::optional<UniPoly> UniPoly::exact_div(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (is_zero()) return UniPoly(var_);
    if (degree() < d.degree()) return std::nullopt;
    std::vector<BigInt> rem = c_;
    const int dd = d.degree();
    std::vector<BigInt> q(static_cast<std::size_t>(degree() - dd + 1));
    for (int i = degree(); i >= dd; --i) {
        const BigInt& top = rem[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), d.lead().get_mpz_t())) return std::nullopt;
        BigInt f = divexact(top, d.lead());
        q[static_cast<std::size_t>(i - dd)] = f;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    for (const auto& c : rem)
        if (c != 0) return std::nullopt;
    return UniPoly(var_, std::move(q));
}

UniPoly UniPoly::exact_div(const BigInt& k) const {
    if (k == 0) throw std::domain_error("division by zero");
    UniPoly r = *this;
    for (auto& c : r.c_) {
        if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t()))
            throw AlgebraError("coefficient " + c.get_str() + " not divisible by " + k.get_str());
        c = divexact(c, k);
    }
    return r;
}

BigInt UniPoly::content() const {
    if (c_.empty()) return 0;
    BigInt g = 0;
    for (const auto& c : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return c_.back() < 0 ? BigInt(-g) : g;
}

UniPoly UniPoly::primitive_part() const {
    if (is_zero()) return *this;
    return exact_div(content());
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly(var_);
    std::vector<BigInt> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return UniPoly(var_, std::move(r));
}

UniPoly UniPoly::reflect() const {
    UniPoly r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
}

UniPoly UniPoly::reverse() const {
    std::vector<BigInt> r(c_.rbegin(), c_.rend());
    return UniPoly(var_, std::move(r));
}

int UniPoly::zero_root_multiplicity() const {
    int k = 0;
    while (k < static_cast<int>(c_.size()) && c_[static_cast<std::size_t>(k)] == 0) ++k;
    return k;
}

UniPoly UniPoly::shift_down(int k) const {
    if (k <= 0) return *this;
    for (int i = 0; i < k && i < static_cast<int>(c_.size()); ++i)
        if (c_[static_cast<std::size_t>(i)] != 0) throw AlgebraError("shift_down would drop a nonzero coefficient");
    if (k >= static_cast<int>(c_.size())) return UniPoly(var_);
    return UniPoly(var_, std::vector<BigInt>(c_.begin() + k, c_.end()));
}

BigInt UniPoly::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

namespace {

// Numerator of p(n/d) * d^deg.
BigInt homogeneous_eval(std::span<const BigInt> c, const BigInt& n, const BigInt& d) {
    if (c.empty()) return 0;
    BigInt acc = c.back();
    BigInt dpow = 1;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        dpow *= d;
        acc = acc * n + c[i] * dpow;
    }
    return acc;
}

}  // namespace

Rational UniPoly::eval(const Rational& x) const {
    if (c_.empty()) return 0;
    BigInt num = homogeneous_eval(c_, x.get_num(), x.get_den());
    return make_rational(num, pow(x.get_den(), static_cast<unsigned>(degree())));
}

int UniPoly::sign_at(const Rational& x) const { return sgn(homogeneous_eval(c_, x.get_num(), x.get_den())); }

double UniPoly::eval_double(double x) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].get_d();
    return acc;
}

PseudoDivision pseudo_divide(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-division by zero");
    const std::string& v = a.var();
    if (a.degree() < b.degree()) return {UniPoly(v), a};
    std::vector<BigInt> rem(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    const int da = a.degree();
    std::vector<BigInt> q(static_cast<std::size_t>(da - db + 1));
    const BigInt& lb = b.lead();
    for (int i = da; i >= db; --i) {
        for (auto& c : q) c *= lb;
        BigInt top = rem[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) rem[static_cast<std::size_t>(j)] *= lb;
        rem[static_cast<std::size_t>(i)] = 0;
        q[static_cast<std::size_t>(i - db)] += top;
        for (int j = 0; j < db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= top * b.coeff(j);
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UniPoly(v, std::move(q)), UniPoly(v, std::move(rem))};
}

namespace {

UniPoly subresultant_gcd(UniPoly a, UniPoly b) {
    if (a.degree() < b.degree()) std::swap(a, b);
    BigInt g = 1, h = 1;
    for (;;) {
        const int delta = a.degree() - b.degree();
        UniPoly r = pseudo_divide(a, b).remainder;
        if (r.is_zero()) return b.primitive_part();
        if (r.degree() == 0) return UniPoly::constant(a.var(), 1);
        a = std::move(b);
        b = r.exact_div(BigInt(g * pow(h, static_cast<unsigned>(delta))));
        g = a.lead();
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = divexact(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
        }
    }
}

// Heuristic gcd (evaluation at a large integer and reconstruction from the
// balanced base-xi expansion). Returns nullopt when the guess cannot be proven.
std::optional<UniPoly> heuristic_gcd(const UniPoly& a, const UniPoly& b) {
    BigInt bound = 0;
    for (const auto& c : a.coeffs()) bound = std::max(bound, BigInt(abs(c)));
    for (const auto& c : b.coeffs()) bound = std::max(bound, BigInt(abs(c)));
    BigInt xi = 2 * bound + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        BigInt ga = a.eval(xi), gb = b.eval(xi);
        BigInt gi;
        mpz_gcd(gi.get_mpz_t(), ga.get_mpz_t(), gb.get_mpz_t());
        if (gi != 0) {
            std::vector<BigInt> digits;
            BigInt rest = gi;
            BigInt half = xi / 2;
            while (rest != 0) {
                BigInt d;
                mpz_fdiv_r(d.get_mpz_t(), rest.get_mpz_t(), xi.get_mpz_t());
                if (d > half) d -= xi;
                digits.push_back(d);
                rest = (rest - d) / xi;
            }
            UniPoly cand = UniPoly(a.var(), std::move(digits)).primitive_part();
            if (!cand.is_zero() && a.exact_div(cand) && b.exact_div(cand)) return cand;
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

}  // namespace

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    UniPoly pa = a.primitive_part(), pb = b.primitive_part();
    if (pa.degree() == 0 || pb.degree() == 0) return UniPoly::constant(a.var(), 1);
    if (auto h = heuristic_gcd(pa, pb)) return *h;
    return subresultant_gcd(std::move(pa), std::move(pb));
}

UniPoly squarefree_part(const UniPoly& f) {
    if (f.is_zero()) throw std::domain_error("square-free part of zero");
    if (f.degree() == 0) return UniPoly::constant(f.var(), 1);
    UniPoly g = gcd(f, f.derivative());
    auto q = f.primitive_part().exact_div(g);
    if (!q) throw AlgebraError("gcd does not divide its argument");
    return q->primitive_part();
}

std::vector<std::pair<UniPoly, int>> squarefree_factorization(const UniPoly& f) {
    if (f.is_zero()) throw std::domain_error("square-free factorization of zero");
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly p = f.primitive_part();
    if (p.degree() == 0) return out;
    UniPoly dp = p.derivative();
    UniPoly a = gcd(p, dp);
    UniPoly b = *p.exact_div(a);
    UniPoly c = *dp.exact_div(a);
    UniPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        UniPoly g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        UniPoly nb = *b.exact_div(g);
        UniPoly nc = *d.exact_div(g);
        b = std::move(nb);
        d = nc - b.derivative();
        ++i;
    }
    return out;
}

BigInt resultant(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    std::vector<BigInt> va(a.coeffs().begin(), a.coeffs().end());
    std::vector<BigInt> vb(b.coeffs().begin(), b.coeffs().end());
    return detail::subresultant_resultant(std::move(va), std::move(vb),
                                          [](const BigInt& x, const BigInt& y) { return divexact(x, y); });
}

std::string to_string(const UniPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const BigInt& c = p.coeff(i);
        if (c == 0) continue;
        std::vector<std::pair<std::string, unsigned>> powers;
        if (i > 0) powers.emplace_back(p.var(), static_cast<unsigned>(i));
        detail::write_term(out, c, powers, first);
        first = false;
    }
    return out;
}

UniPoly parse_unipoly(std::string_view text, std::string_view fallback_var) {
    auto terms = detail::parse_terms(text);
    std::string var;
    std::map<unsigned, BigInt> acc;
    for (const auto& t : terms) {
        unsigned e = 0;
        for (const auto& [name, pw] : t.powers) {
            if (var.empty()) var = name;
            if (name != var) throw std::invalid_argument("univariate text mixes variables '" + var + "' and '" + name + "'");
            e += pw;
        }
        acc[e] += t.coeff;
    }
    if (var.empty()) var = std::string(fallback_var);
    unsigned top = acc.empty() ? 0 : acc.rbegin()->first;
    std::vector<BigInt> c(top + 1);
    for (auto& [e, v] : acc) c[e] = v;
    return UniPoly(std::move(var), std::move(c));
}

}  // namespace qes
