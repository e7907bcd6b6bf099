#include "qes/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qes/detail/prs.hpp"
#include "qes/detail/text.hpp"

namespace qes {

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const BigInt& c) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponent(p.nvars(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t index) {
    MultiPoly p(std::move(vars));
    if (index >= p.nvars()) throw std::out_of_range("variable index");
    Exponent e(p.nvars(), 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

MultiPoly MultiPoly::term(std::vector<std::string> vars, const BigInt& c, Exponent e) {
    MultiPoly p(std::move(vars));
    if (e.size() != p.nvars()) throw std::invalid_argument("exponent length mismatch");
    p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::from_unipoly(std::vector<std::string> vars, const UniPoly& u) {
    MultiPoly p(std::move(vars));
    std::size_t v = p.index_of(u.var());
    for (int i = 0; i <= u.degree(); ++i) {
        Exponent e(p.nvars(), 0);
        e[v] = static_cast<unsigned>(i);
        p.add_term(e, u.coeff(i));
    }
    return p;
}

std::size_t MultiPoly::index_of(std::string_view var) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == var) return i;
    throw std::invalid_argument("unknown variable '" + std::string(var) + "'");
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

BigInt MultiPoly::constant_term() const {
    auto it = terms_.find(Exponent(nvars(), 0));
    return it == terms_.end() ? BigInt(0) : it->second;
}

const std::pair<const Exponent, BigInt>& MultiPoly::leading() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return *terms_.begin();
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
    return d;
}

int MultiPoly::degree_in(std::size_t var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
}

void MultiPoly::add_term(const Exponent& e, const BigInt& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::check_same(const MultiPoly& o) const {
    if (vars_ != o.vars_) throw std::invalid_argument("polynomials over different variable lists");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const BigInt& k) {
    if (k == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_same(b);
    MultiPoly r(a.vars_);
    Exponent e(a.nvars());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto [it, fresh] = r.terms_.try_emplace(e, 0);
            mpz_addmul(it->second.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        }
    }
    std::erase_if(r.terms_, [](const auto& t) { return t.second == 0; });
    return r;
}

std::optional<MultiPoly> MultiPoly::exact_div(const MultiPoly& d) const {
    check_same(d);
    if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
    MultiPoly q(vars_), r = *this;
    const auto& [ld, lc] = d.leading();
    Exponent e(nvars());
    while (!r.is_zero()) {
        const auto& [lr, cr] = r.leading();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (lr[i] < ld[i]) return std::nullopt;
            e[i] = lr[i] - ld[i];
        }
        if (!mpz_divisible_p(cr.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
        BigInt f;
        mpz_divexact(f.get_mpz_t(), cr.get_mpz_t(), lc.get_mpz_t());
        q.add_term(e, f);
        Exponent t(nvars());
        for (const auto& [ed, cd] : d.terms_) {
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = ed[i] + e[i];
            r.add_term(t, -f * cd);
        }
    }
    return q;
}

MultiPoly MultiPoly::exact_div(const BigInt& k) const {
    if (k == 0) throw std::domain_error("division by zero");
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) {
        if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t()))
            throw AlgebraError("coefficient " + c.get_str() + " not divisible by " + k.get_str());
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), k.get_mpz_t());
    }
    return r;
}

BigInt MultiPoly::content() const {
    BigInt g = 0;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    if (!terms_.empty() && leading().second < 0) g = -g;
    return g;
}

MultiPoly MultiPoly::primitive_part() const {
    if (is_zero()) return *this;
    return exact_div(content());
}

std::vector<MultiPoly> MultiPoly::coeffs_in(std::size_t var) const {
    int d = degree_in(var);
    std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d + 1, 0)), MultiPoly(vars_));
    for (const auto& [e, c] : terms_) {
        Exponent t = e;
        t[var] = 0;
        out[e[var]].add_term(t, c);
    }
    return out;
}

MultiPoly MultiPoly::from_coeffs_in(std::vector<std::string> vars, std::size_t var, std::span<const MultiPoly> c) {
    MultiPoly r(std::move(vars));
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (const auto& [e, v] : c[i].terms_) {
            if (e[var] != 0) throw std::invalid_argument("coefficient depends on the main variable");
            Exponent t = e;
            t[var] = static_cast<unsigned>(i);
            r.add_term(t, v);
        }
    }
    return r;
}

MultiPoly MultiPoly::substitute_scaled(std::size_t var, const Rational& value) const {
    const int d = degree_in(var);
    MultiPoly r(vars_);
    if (d < 0) return r;
    std::vector<BigInt> npow(static_cast<std::size_t>(d) + 1), dpow(static_cast<std::size_t>(d) + 1);
    npow[0] = dpow[0] = 1;
    for (int i = 1; i <= d; ++i) {
        npow[static_cast<std::size_t>(i)] = npow[static_cast<std::size_t>(i) - 1] * value.get_num();
        dpow[static_cast<std::size_t>(i)] = dpow[static_cast<std::size_t>(i) - 1] * value.get_den();
    }
    for (const auto& [e, c] : terms_) {
        Exponent t = e;
        t[var] = 0;
        r.add_term(t, c * npow[e[var]] * dpow[static_cast<std::size_t>(d) - e[var]]);
    }
    return r;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars()) throw std::invalid_argument("evaluation point has wrong dimension");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) t *= pow(point[i], static_cast<int>(e[i]));
        acc += t;
    }
    return acc;
}

UniPoly MultiPoly::to_unipoly(std::size_t var) const {
    std::vector<BigInt> c(static_cast<std::size_t>(std::max(degree_in(var) + 1, 0)));
    for (const auto& [e, v] : terms_) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != var && e[i] != 0) throw std::invalid_argument("polynomial is not univariate in " + vars_[var]);
        c[e[var]] = v;
    }
    return UniPoly(vars_.at(var), std::move(c));
}

bool is_zero(const MultiPoly& p) { return p.is_zero(); }
MultiPoly one_like(const MultiPoly& p) { return MultiPoly::constant(p.vars(), 1); }

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
    if (f.is_zero() || g.is_zero()) throw DegenerateError("resultant of a zero polynomial");
    if (!f.depends_on(var) || !g.depends_on(var))
        throw DegenerateError("resultant: an operand is constant in " + f.vars().at(var));
    auto a = f.coeffs_in(var);
    auto b = g.coeffs_in(var);
    return detail::subresultant_resultant(std::move(a), std::move(b), [](const MultiPoly& x, const MultiPoly& y) {
        auto q = x.exact_div(y);
        if (!q) throw AlgebraError("inexact division inside the subresultant sequence");
        return *q;
    });
}

std::string to_string(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    std::vector<const std::pair<const Exponent, BigInt>*> order;
    for (const auto& t : p.terms()) order.push_back(&t);
    auto deg = [](const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); };
    std::stable_sort(order.begin(), order.end(), [&](auto* a, auto* b) { return deg(a->first) > deg(b->first); });
    std::string out;
    bool first = true;
    for (const auto* t : order) {
        std::vector<std::pair<std::string, unsigned>> powers;
        for (std::size_t i = 0; i < t->first.size(); ++i)
            if (t->first[i]) powers.emplace_back(p.vars()[i], t->first[i]);
        detail::write_term(out, t->second, powers, first);
        first = false;
    }
    return out;
}

MultiPoly parse_multipoly(std::string_view text, const std::vector<std::string>& vars) {
    MultiPoly p(vars);
    for (const auto& t : detail::parse_terms(text)) {
        Exponent e(vars.size(), 0);
        for (const auto& [name, pw] : t.powers) e[p.index_of(name)] += pw;
        p.add_term(e, t.coeff);
    }
    return p;
}

}  // namespace qes
