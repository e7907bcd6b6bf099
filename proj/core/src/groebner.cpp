#include "qes/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qes {

using Mono = GroebnerBasis::Mono;
using Poly = GroebnerBasis::Poly;

namespace {

Mono mono_mul(const Mono& a, const Mono& b, std::size_t n) {
    Mono r;
    r.wdeg = a.wdeg + b.wdeg;
    for (std::size_t i = 0; i < n; ++i) {
        unsigned s = unsigned(a.e[i]) + b.e[i];
        if (s > 0xFFFFu) throw AlgebraError("exponent overflow in Groebner basis computation");
        r.e[i] = static_cast<std::uint16_t>(s);
    }
    return r;
}

bool mono_divides(const Mono& a, const Mono& b, std::size_t n) {
    if (a.wdeg > b.wdeg) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

// b / a, assuming a | b
Mono mono_div(const Mono& b, const Mono& a, std::size_t n) {
    Mono r;
    r.wdeg = b.wdeg - a.wdeg;
    for (std::size_t i = 0; i < n; ++i) r.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
    return r;
}

Mono mono_lcm(const Mono& a, const Mono& b, const std::vector<unsigned>& w) {
    Mono r;
    for (std::size_t i = 0; i < w.size(); ++i) {
        r.e[i] = std::max(a.e[i], b.e[i]);
        r.wdeg += w[i] * r.e[i];
    }
    return r;
}

bool coprime(const Mono& a, const Mono& b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

BigInt vector_content(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    BigInt g = 0;
    for (const auto* v : {&a, &b})
        for (const auto& c : *v) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) return g;
        }
    return g;
}

void divide_all(std::vector<BigInt>& v, const BigInt& g) {
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

struct GbEngine {
    const GroebnerBasis& gb;
    std::size_t n;

    // f <- a*f[1:] - b*(t*g)[1:]; leading terms cancel by construction
    void combine(Poly& f, const BigInt& a, const BigInt& b, const Mono& t, const Poly& g) const {
        Poly out;
        out.m.reserve(f.m.size() + g.m.size());
        out.c.reserve(f.m.size() + g.m.size());
        std::size_t i = 1, j = 1;
        Mono tg;
        bool have = false;
        while (i < f.m.size() || j < g.m.size()) {
            if (j < g.m.size() && !have) {
                tg = mono_mul(t, g.m[j], n);
                have = true;
            }
            int cmp;
            if (i >= f.m.size())
                cmp = -1;
            else if (j >= g.m.size())
                cmp = 1;
            else
                cmp = gb.compare(f.m[i], tg);
            if (cmp > 0) {
                out.m.push_back(f.m[i]);
                out.c.push_back(a == 1 ? f.c[i] : BigInt(a * f.c[i]));
                ++i;
            } else if (cmp < 0) {
                out.m.push_back(tg);
                out.c.push_back(-b * g.c[j]);
                ++j;
                have = false;
            } else {
                BigInt v = a * f.c[i];
                mpz_submul(v.get_mpz_t(), b.get_mpz_t(), g.c[j].get_mpz_t());
                if (v != 0) {
                    out.m.push_back(tg);
                    out.c.push_back(std::move(v));
                }
                ++i;
                ++j;
                have = false;
            }
        }
        out.sugar = f.sugar;
        f = std::move(out);
    }

    const Poly* find_reducer(const Mono& m, const std::vector<const Poly*>& reducers) const {
        const Poly* best = nullptr;
        for (const Poly* g : reducers)
            if (mono_divides(g->m[0], m, n) && (!best || g->m.size() < best->m.size())) best = g;
        return best;
    }

    // Full reduction. Returns the reduced polynomial, primitive with positive lead;
    // num/den tracks result == (num/den) * f modulo the ideal.
    Poly reduce(Poly f, const std::vector<const Poly*>& reducers, BigInt& num, BigInt& den) const {
        Poly done;
        done.sugar = f.sugar;
        num = 1;
        den = 1;
        std::size_t steps = 0;
        while (!f.m.empty()) {
            const Poly* g = find_reducer(f.m[0], reducers);
            if (!g) {
                done.m.push_back(f.m[0]);
                done.c.push_back(std::move(f.c[0]));
                f.m.erase(f.m.begin());
                f.c.erase(f.c.begin());
                continue;
            }
            BigInt gam;
            mpz_gcd(gam.get_mpz_t(), g->c[0].get_mpz_t(), f.c[0].get_mpz_t());
            BigInt a, b;
            mpz_divexact(a.get_mpz_t(), g->c[0].get_mpz_t(), gam.get_mpz_t());
            mpz_divexact(b.get_mpz_t(), f.c[0].get_mpz_t(), gam.get_mpz_t());
            if (a < 0) {
                a = -a;
                b = -b;
            }
            Mono t = mono_div(f.m[0], g->m[0], n);
            f.sugar = std::max(f.sugar, t.wdeg + g->sugar);
            combine(f, a, b, t, *g);
            if (a != 1) {
                for (auto& c : done.c) c *= a;
                num *= a;
            }
            if (++steps % 16 == 0) {
                BigInt c = vector_content(done.c, f.c);
                if (c > 1) {
                    divide_all(done.c, c);
                    divide_all(f.c, c);
                    den *= c;
                }
            }
        }
        if (!done.m.empty()) {
            BigInt c = vector_content(done.c, {});
            if (done.c[0] < 0) c = -c;
            if (c != 1) {
                divide_all(done.c, c);
                den *= c;
            }
        }
        return done;
    }
};

GroebnerBasis::GroebnerBasis(std::vector<std::string> vars, MonomialOrder order)
    : vars_(std::move(vars)), order_(std::move(order)) {
    if (vars_.size() > kMaxGbVars) throw std::invalid_argument("too many variables for the Groebner engine");
    if (order_.weights.empty()) order_.weights.assign(vars_.size(), 1);
    if (order_.weights.size() != vars_.size()) throw std::invalid_argument("weight vector length mismatch");
    mult_.resize(vars_.size());
}

int GroebnerBasis::compare(const Mono& a, const Mono& b) const {
    if (a.wdeg != b.wdeg) return a.wdeg > b.wdeg ? 1 : -1;
    for (std::size_t i = vars_.size(); i-- > 0;)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
}

Mono GroebnerBasis::to_mono(const Exponent& e) const {
    Mono m;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (e[i] > 0xFFFFu) throw AlgebraError("exponent too large");
        m.e[i] = static_cast<std::uint16_t>(e[i]);
        m.wdeg += order_.weights[i] * e[i];
    }
    return m;
}

Exponent GroebnerBasis::to_exponent(const Mono& m) const {
    Exponent e(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) e[i] = m.e[i];
    return e;
}

Poly GroebnerBasis::to_poly(const MultiPoly& f) const {
    if (f.vars() != vars_) throw std::invalid_argument("polynomial over a different variable list");
    std::vector<std::pair<Mono, BigInt>> t;
    for (const auto& [e, c] : f.terms()) t.emplace_back(to_mono(e), c);
    std::sort(t.begin(), t.end(), [&](const auto& x, const auto& y) { return compare(x.first, y.first) > 0; });
    Poly p;
    for (auto& [m, c] : t) {
        p.sugar = std::max(p.sugar, m.wdeg);
        p.m.push_back(m);
        p.c.push_back(std::move(c));
    }
    return p;
}

MultiPoly GroebnerBasis::to_multi(const Poly& p) const {
    MultiPoly r(vars_);
    for (std::size_t i = 0; i < p.m.size(); ++i) r.add_term(to_exponent(p.m[i]), p.c[i]);
    return r;
}

GroebnerBasis GroebnerBasis::compute(const std::vector<MultiPoly>& gens, MonomialOrder order,
                                     const std::function<bool()>& cancel) {
    if (gens.empty()) throw std::invalid_argument("Groebner basis of an empty generator list");
    GroebnerBasis gb(gens.front().vars(), std::move(order));
    const std::size_t n = gb.vars_.size();
    const auto& w = gb.order_.weights;
    GbEngine eng{gb, n};

    std::vector<Poly> polys;
    std::vector<bool> active;
    struct Pair {
        std::size_t i, j;
        Mono lcm;
        std::uint32_t sugar;
    };
    std::vector<Pair> pairs;

    auto reducers = [&]() {
        std::vector<const Poly*> r;
        for (std::size_t k = 0; k < polys.size(); ++k)
            if (active[k]) r.push_back(&polys[k]);
        return r;
    };

    auto pair_sugar = [&](std::size_t i, std::size_t j, const Mono& l) {
        return std::max(polys[i].sugar + l.wdeg - polys[i].m[0].wdeg, polys[j].sugar + l.wdeg - polys[j].m[0].wdeg);
    };

    // Gebauer-Moeller update with the new polynomial at index h
    auto update = [&](std::size_t h) {
        const Mono& lh = polys[h].m[0];
        std::vector<Pair> cand;
        for (std::size_t g = 0; g < h; ++g)
            if (active[g]) {
                Mono l = mono_lcm(lh, polys[g].m[0], w);
                cand.push_back({g, h, l, pair_sugar(g, h, l)});
            }
        std::vector<Pair> kept;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            const Pair& p = cand[a];
            if (coprime(lh, polys[p.i].m[0], n)) {
                kept.push_back(p);
                continue;
            }
            bool redundant = false;
            for (std::size_t b = 0; b < cand.size() && !redundant; ++b) {
                if (b == a) continue;
                const Mono& lb = cand[b].lcm;
                if (mono_divides(lb, p.lcm, n) && !(lb == p.lcm && b > a)) redundant = true;
            }
            if (!redundant) kept.push_back(p);
        }
        for (auto& p : pairs) {
            // drop (i, j) if lm(h) | lcm(i, j) and lcm(i, h), lcm(j, h) both differ from lcm(i, j)
            if (!mono_divides(lh, p.lcm, n)) continue;
            Mono lih = mono_lcm(polys[p.i].m[0], lh, w), ljh = mono_lcm(polys[p.j].m[0], lh, w);
            if (!(lih == p.lcm) && !(ljh == p.lcm)) p.i = p.j = SIZE_MAX;
        }
        std::erase_if(pairs, [](const Pair& p) { return p.i == SIZE_MAX; });
        for (auto& p : kept)
            if (!coprime(lh, polys[p.i].m[0], n)) pairs.push_back(p);
        for (std::size_t g = 0; g < h; ++g)
            if (active[g] && mono_divides(lh, polys[g].m[0], n)) active[g] = false;
    };

    auto insert = [&](Poly p) {
        polys.push_back(std::move(p));
        active.push_back(true);
        update(polys.size() - 1);
    };

    for (const auto& f : gens) {
        if (f.is_zero()) continue;
        Poly p = gb.to_poly(f);
        BigInt num, den;
        Poly r = eng.reduce(std::move(p), reducers(), num, den);
        if (r.empty()) continue;
        insert(std::move(r));
    }

    while (!pairs.empty()) {
        if (cancel && cancel()) throw GuardExceeded("Groebner basis computation cancelled by the cost guard");
        auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
            if (a.sugar != b.sugar) return a.sugar < b.sugar;
            return gb.compare(a.lcm, b.lcm) < 0;
        });
        Pair p = *best;
        pairs.erase(best);
        ++gb.stats_.pairs_considered;
        const Poly& f = polys[p.i];
        const Poly& g = polys[p.j];
        BigInt gam;
        mpz_gcd(gam.get_mpz_t(), f.c[0].get_mpz_t(), g.c[0].get_mpz_t());
        BigInt a, b;
        mpz_divexact(a.get_mpz_t(), g.c[0].get_mpz_t(), gam.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), f.c[0].get_mpz_t(), gam.get_mpz_t());
        Mono tf = mono_div(p.lcm, f.m[0], n), tg = mono_div(p.lcm, g.m[0], n);
        Poly s;
        s.m.reserve(f.m.size());
        s.c.reserve(f.m.size());
        s.m.push_back(p.lcm);
        s.c.push_back(BigInt(1));
        for (std::size_t k = 1; k < f.m.size(); ++k) {
            s.m.push_back(mono_mul(tf, f.m[k], n));
            s.c.push_back(a * f.c[k]);
        }
        // s = a*tf*f - b*tg*g; write it via combine with a fake leading term
        eng.combine(s, BigInt(1), b, tg, g);
        s.sugar = p.sugar;
        ++gb.stats_.pairs_reduced;
        BigInt num, den;
        Poly r = eng.reduce(std::move(s), reducers(), num, den);
        if (r.empty()) {
            ++gb.stats_.zero_reductions;
            continue;
        }
        insert(std::move(r));
        if (polys.back().m[0].wdeg == 0) break;  // unit ideal
    }

    // reduced basis
    std::vector<Poly> basis;
    for (std::size_t k = 0; k < polys.size(); ++k)
        if (active[k]) basis.push_back(polys[k]);
    if (std::any_of(basis.begin(), basis.end(), [](const Poly& p) { return p.m[0].wdeg == 0; })) {
        Poly one;
        one.m.push_back(Mono{});
        one.c.push_back(BigInt(1));
        basis = {one};
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
        std::vector<const Poly*> others;
        for (std::size_t l = 0; l < basis.size(); ++l)
            if (l != k) others.push_back(&basis[l]);
        BigInt num, den;
        basis[k] = eng.reduce(basis[k], others, num, den);
    }
    std::sort(basis.begin(), basis.end(), [&](const Poly& x, const Poly& y) { return gb.compare(x.m[0], y.m[0]) < 0; });
    gb.basis_ = std::move(basis);
    gb.stats_.basis_size = gb.basis_.size();
    return gb;
}

std::vector<MultiPoly> GroebnerBasis::polynomials() const {
    std::vector<MultiPoly> out;
    for (const auto& p : basis_) out.push_back(to_multi(p));
    return out;
}

bool GroebnerBasis::is_unit_ideal() const { return basis_.size() == 1 && basis_[0].m[0].wdeg == 0; }

bool GroebnerBasis::is_zero_dimensional() const {
    if (is_unit_ideal()) return true;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
        bool pure = false;
        for (const auto& p : basis_) {
            const Mono& m = p.m[0];
            bool only_v = m.e[v] > 0;
            for (std::size_t i = 0; i < vars_.size() && only_v; ++i)
                if (i != v && m.e[i]) only_v = false;
            if (only_v) {
                pure = true;
                break;
            }
        }
        if (!pure) return false;
    }
    return true;
}

void GroebnerBasis::reduce_full(Poly& f, BigInt& num, BigInt& den) const {
    GbEngine eng{*this, vars_.size()};
    std::vector<const Poly*> r;
    for (const auto& p : basis_) r.push_back(&p);
    f = eng.reduce(std::move(f), r, num, den);
}

GroebnerBasis::NormalForm GroebnerBasis::normal_form(const MultiPoly& f) const {
    Poly p = to_poly(f);
    BigInt num, den;
    reduce_full(p, num, den);
    return {to_multi(p), make_rational(num, den)};
}

bool GroebnerBasis::reduces_to_zero(const MultiPoly& f) const { return normal_form(f).remainder.is_zero(); }

const std::vector<Exponent>& GroebnerBasis::standard_monomials() const {
    if (standard_ready_) return standard_;
    if (!is_zero_dimensional()) throw DegenerateError("quotient algebra is infinite dimensional");
    const std::size_t n = vars_.size();
    std::vector<Mono> found;
    std::deque<Mono> queue{Mono{}};
    std::set<std::vector<std::uint16_t>> seen;
    auto key = [&](const Mono& m) { return std::vector<std::uint16_t>(m.e.begin(), m.e.begin() + n); };
    if (!is_unit_ideal()) seen.insert(key(Mono{}));
    else queue.clear();
    while (!queue.empty()) {
        Mono m = queue.front();
        queue.pop_front();
        found.push_back(m);
        for (std::size_t v = 0; v < n; ++v) {
            Mono x = m;
            ++x.e[v];
            x.wdeg += order_.weights[v];
            if (seen.count(key(x))) continue;
            bool divisible = std::any_of(basis_.begin(), basis_.end(),
                                         [&](const Poly& p) { return mono_divides(p.m[0], x, n); });
            if (divisible) continue;
            seen.insert(key(x));
            queue.push_back(x);
        }
    }
    std::sort(found.begin(), found.end(), [&](const Mono& a, const Mono& b) { return compare(a, b) < 0; });
    standard_.clear();
    for (const auto& m : found) standard_.push_back(to_exponent(m));
    standard_ready_ = true;
    return standard_;
}

std::vector<Rational> GroebnerBasis::coordinates(const MultiPoly& f) const {
    const auto& sm = standard_monomials();
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < sm.size(); ++i) index.emplace(sm[i], i);
    NormalForm nf = normal_form(f);
    std::vector<Rational> v(sm.size(), Rational(0));
    for (const auto& [e, c] : nf.remainder.terms()) v.at(index.at(e)) = Rational(c) / nf.scale;
    return v;
}

const Matrix<Rational>& GroebnerBasis::multiplication_matrix(std::size_t var) const {
    if (var >= vars_.size()) throw std::out_of_range("variable index");
    if (mult_[var]) return *mult_[var];
    const auto& sm = standard_monomials();
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < sm.size(); ++i) index.emplace(sm[i], i);
    auto m = std::make_unique<Matrix<Rational>>(sm.size(), sm.size(), Rational(0));
    for (std::size_t j = 0; j < sm.size(); ++j) {
        Exponent e = sm[j];
        ++e[var];
        auto it = index.find(e);
        if (it != index.end()) {
            (*m)(it->second, j) = 1;
            continue;
        }
        auto col = coordinates(MultiPoly::term(vars_, 1, e));
        for (std::size_t i = 0; i < col.size(); ++i) (*m)(i, j) = std::move(col[i]);
    }
    mult_[var] = std::move(m);
    return *mult_[var];
}

KrylovBasis::KrylovBasis(const Matrix<Rational>& m, std::size_t max_dim) : n_(m.rows()) {
    if (m.rows() != m.cols()) throw std::invalid_argument("Krylov basis of a non-square matrix");
    std::vector<Rational> power(n_, Rational(0));
    if (n_ == 0) {
        minpoly_ = {Rational(1)};
        return;
    }
    power[0] = 1;
    for (std::size_t i = 0; i <= std::min(max_dim, n_); ++i) {
        std::vector<Rational> v = power;
        std::vector<Rational> combo(i + 1, Rational(0));
        combo[i] = 1;
        reduce(v, combo);
        auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
        if (nz == v.end()) {
            minpoly_ = std::move(combo);
            return;
        }
        std::size_t piv = static_cast<std::size_t>(nz - v.begin());
        Rational inv = 1 / v[piv];
        for (auto& x : v) x *= inv;
        for (auto& x : combo) x *= inv;
        rows_.push_back(std::move(v));
        combos_.push_back(std::move(combo));
        pivots_.push_back(piv);
        std::vector<Rational> next(n_, Rational(0));
        for (std::size_t r = 0; r < n_; ++r) {
            Rational s = 0;
            for (std::size_t c = 0; c < n_; ++c)
                if (power[c] != 0 && m(r, c) != 0) s += m(r, c) * power[c];
            next[r] = std::move(s);
        }
        power = std::move(next);
    }
    throw GuardExceeded("Krylov sequence exceeded the dimension limit");
}

void KrylovBasis::reduce(std::vector<Rational>& v, std::vector<Rational>& combo) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational f = v[pivots_[r]];
        if (f == 0) continue;
        for (std::size_t k = 0; k < n_; ++k)
            if (rows_[r][k] != 0) v[k] -= f * rows_[r][k];
        if (combo.size() < combos_[r].size()) combo.resize(combos_[r].size(), Rational(0));
        for (std::size_t k = 0; k < combos_[r].size(); ++k)
            if (combos_[r][k] != 0) combo[k] -= f * combos_[r][k];
    }
}

std::optional<std::vector<Rational>> KrylovBasis::express(const std::vector<Rational>& target) const {
    if (target.size() != n_) throw std::invalid_argument("target vector has the wrong dimension");
    std::vector<Rational> v = target;
    std::vector<Rational> combo(dimension(), Rational(0));
    reduce(v, combo);
    if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; })) return std::nullopt;
    for (auto& x : combo) x = -x;
    combo.resize(dimension(), Rational(0));
    return combo;
}

UniPoly krylov_minimal_polynomial(const Matrix<Rational>& m, const std::string& var) {
    KrylovBasis kb(m, m.rows());
    std::vector<BigInt> c = primitive_integer_vector(kb.minimal_polynomial());
    UniPoly p(var, std::move(c));
    return p.primitive_part();
}

}  // namespace qes
