#include "qes/elimination.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qes {

TailSystem forward_substitute(const TrapMatrix& m) {
    const int q = m.q, N = m.N;
    TailSystem t;
    t.q = q;
    t.N = N;
    t.vars = m.vars();
    auto var = [&](int k) { return MultiPoly::variable(t.vars, static_cast<std::size_t>(k - 1)); };
    std::vector<BigInt> fact(static_cast<std::size_t>(N + q + 1));
    fact[0] = 1;
    for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * static_cast<unsigned long>(i);
    auto f = [&](int i) -> const BigInt& { return fact[static_cast<std::size_t>(i)]; };

    t.p.push_back(MultiPoly::constant(t.vars, 1));
    // row n, n = 0..N-2, determines p_{n+1}; scaled by (n+1)!
    for (int n = 0; n + 1 <= N - 1; ++n) {
        MultiPoly acc(t.vars);
        for (int k = 1; k <= std::min(q, n + 1); ++k) {
            int j = n + 1 - k;
            acc += var(k) * t.p[static_cast<std::size_t>(j)] * BigInt(f(n) / f(j));
        }
        if (n >= q) {
            int j = n - q;
            acc += t.p[static_cast<std::size_t>(j)] * BigInt(BigInt(N - 1 - j) * (f(n) / f(j)));
        }
        t.p.push_back(-acc);
    }
    for (int n = N - 1; n <= N + q - 2; ++n) {
        MultiPoly acc(t.vars);
        for (int k = 1; k <= q; ++k) {
            int j = n + 1 - k;
            if (j < 0 || j > N - 1) continue;
            acc += var(k) * t.p[static_cast<std::size_t>(j)] * BigInt(f(N - 1) / f(j));
        }
        int j = n - q;
        if (j >= 0 && j <= N - 1) acc += t.p[static_cast<std::size_t>(j)] * BigInt(BigInt(N - 1 - j) * (f(N - 1) / f(j)));
        t.tails.push_back(acc.is_zero() ? acc : acc.primitive_part());
    }
    return t;
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Auto:
            return "auto";
        case Method::Direct:
            return "direct";
        case Method::Resultant:
            return "resultant";
        case Method::Groebner:
            return "groebner";
    }
    return "auto";
}

Method parse_method(const std::string& s) {
    if (s == "auto") return Method::Auto;
    if (s == "direct") return Method::Direct;
    if (s == "resultant") return Method::Resultant;
    if (s == "groebner") return Method::Groebner;
    throw std::invalid_argument("unknown elimination method '" + s + "'");
}

std::string default_pivot(int q) {
    switch (q) {
        case 1:
        case 2:
            return "s";
        case 3:
            return "t";
        default:
            return "s" + std::to_string(q);
    }
}

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

void finish(SecularPoly& sp, UniPoly raw) {
    if (raw.is_zero()) throw DegenerateError("eliminant vanishes identically");
    if (raw.is_constant()) throw DegenerateError("eliminant is a nonzero constant: no solutions");
    BigInt c = raw.content();
    if (abs(c) != 1) sp.provenance.push_back("removed integer content " + to_string(BigInt(abs(c))));
    raw = raw.primitive_part();
    sp.factors = squarefree_factorization(raw);
    sp.poly = squarefree_part(raw);
    if (sp.poly.degree() != raw.degree())
        sp.provenance.push_back("square-free part: degree " + std::to_string(sp.poly.degree()) + " of " +
                                std::to_string(raw.degree()));
    for (const auto& [g, k] : sp.factors)
        if (k > 1)
            sp.provenance.push_back("factor of degree " + std::to_string(g.degree()) + " with multiplicity " +
                                    std::to_string(k));
}

MultiPoly checked_resultant(const MultiPoly& a, const MultiPoly& b, std::size_t var, const std::string& what) {
    MultiPoly r = resultant(a, b, var);
    if (r.is_zero())
        throw DegenerateError("resultant of " + what + " in " + a.vars()[var] +
                              " vanishes identically (positive-dimensional component)");
    return r.primitive_part();
}

std::shared_ptr<const GroebnerBasis> groebner_of(const std::vector<MultiPoly>& gens, const std::function<bool()>& cancel,
                                                 std::vector<std::string>& log) {
    auto gb = std::make_shared<GroebnerBasis>(GroebnerBasis::compute(gens, MonomialOrder{}, cancel));
    if (gb->is_unit_ideal()) throw DegenerateError("tail conditions have no common solution");
    if (!gb->is_zero_dimensional()) throw DegenerateError("tail conditions define a positive-dimensional set");
    const auto& st = gb->stats();
    log.push_back("groebner basis (grevlex " + join(gb->vars(), ",") + "): " + std::to_string(gb->size()) +
                  " elements, " + std::to_string(st.pairs_reduced) + " pairs reduced, " +
                  std::to_string(st.zero_reductions) + " to zero");
    log.push_back("quotient dimension " + std::to_string(gb->quotient_dimension()));
    return gb;
}

}  // namespace

SecularPoly eliminate(const TailSystem& t, const EliminationOptions& opt) {
    if (t.q < 1) throw std::invalid_argument("elimination needs q >= 1");
    if (t.q > static_cast<int>(kMaxGbVars)) throw std::invalid_argument("q too large");
    SecularPoly sp;
    sp.pivot = opt.pivot.empty() ? default_pivot(t.q) : opt.pivot;
    auto it = std::find(t.vars.begin(), t.vars.end(), sp.pivot);
    if (it == t.vars.end()) throw std::invalid_argument("pivot '" + sp.pivot + "' is not one of " + join(t.vars, ","));
    const std::size_t pv = static_cast<std::size_t>(it - t.vars.begin());
    Method m = opt.method;
    if (m == Method::Auto) {
        m = t.q == 1 ? Method::Direct : t.q == 2 ? Method::Resultant : Method::Groebner;
        if (m == Method::Resultant) {
            EliminationOptions o = opt;
            o.method = m;
            try {
                return eliminate(t, o);
            } catch (const DegenerateError& e) {
                m = Method::Groebner;
                sp.provenance.push_back(std::string("resultant path degenerate (") + e.what() + "), using groebner");
            }
        }
    }
    if (m == Method::Direct && t.q != 1) throw std::invalid_argument("direct elimination applies to q = 1 only");
    if (m == Method::Resultant && t.q > 3) throw std::invalid_argument("resultant elimination supports q <= 3");
    sp.method = m;
    sp.provenance.push_back("tail system q=" + std::to_string(t.q) + " N=" + std::to_string(t.N) + ", " +
                            std::to_string(t.tails.size()) + " conditions in " + join(t.vars, ","));
    sp.provenance.push_back("method " + to_string(m) + ", pivot " + sp.pivot);

    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < t.vars.size(); ++i)
        if (i != pv) others.push_back(i);

    switch (m) {
        case Method::Direct:
            finish(sp, t.tails[0].to_unipoly(0));
            break;
        case Method::Resultant: {
            const auto& T = t.tails;
            if (t.q == 2) {
                sp.provenance.push_back("eliminated " + t.vars[others[0]] + " by res(T1, T2)");
                finish(sp, checked_resultant(T[0], T[1], others[0], "T1, T2").to_unipoly(pv));
            } else {
                const std::size_t x1 = others[0], x2 = others[1];
                const auto& v1 = t.vars[x1];
                const auto& v2 = t.vars[x2];
                MultiPoly A = checked_resultant(T[0], T[1], x1, "T1, T2");
                MultiPoly B = checked_resultant(T[0], T[2], x1, "T1, T3");
                MultiPoly C = checked_resultant(T[1], T[2], x1, "T2, T3");
                sp.provenance.push_back("eliminated " + v1 + " by pairwise resultants A, B, C of T1, T2, T3");
                UniPoly R1 = checked_resultant(A, B, x2, "A, B").to_unipoly(pv);
                UniPoly R2 = checked_resultant(A, C, x2, "A, C").to_unipoly(pv);
                sp.provenance.push_back("eliminated " + v2 + " by res(A, B) (degree " + std::to_string(R1.degree()) +
                                        ") and res(A, C) (degree " + std::to_string(R2.degree()) + ")");
                UniPoly g = gcd(R1, R2);
                sp.provenance.push_back("gcd of the two eliminants: degree " + std::to_string(g.degree()));
                finish(sp, g);
            }
            break;
        }
        case Method::Groebner:
        case Method::Auto: {
            sp.basis = groebner_of(t.tails, opt.cancel, sp.provenance);
            sp.quotient_dimension = sp.basis->quotient_dimension();
            UniPoly mp = krylov_minimal_polynomial(sp.basis->multiplication_matrix(pv), sp.pivot);
            sp.provenance.push_back("minimal polynomial of " + sp.pivot + " in the quotient: degree " +
                                    std::to_string(mp.degree()));
            finish(sp, mp);
            break;
        }
    }
    return sp;
}

// ---------------------------------------------------------------- quotient ring

QuotientElement::QuotientElement(Modulus mod, std::vector<Rational> c) : mod_(std::move(mod)), c_(std::move(c)) {
    reduce();
    trim();
}

QuotientElement::Modulus QuotientElement::make_modulus(const UniPoly& chi) {
    if (chi.degree() < 1) throw std::invalid_argument("modulus must have positive degree");
    std::vector<Rational> m;
    for (const auto& c : chi.coeffs()) m.push_back(Rational(c) / Rational(chi.lead()));
    return std::make_shared<const std::vector<Rational>>(std::move(m));
}

void QuotientElement::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void QuotientElement::reduce() {
    if (!mod_) return;
    const auto& m = *mod_;
    const std::size_t d = m.size() - 1;
    trim();
    while (c_.size() > d) {
        Rational top = c_.back();
        std::size_t shift = c_.size() - 1 - d;
        for (std::size_t i = 0; i < d; ++i)
            if (m[i] != 0) c_[shift + i] -= top * m[i];
        c_.pop_back();
        trim();
    }
}

Rational QuotientElement::eval(const Rational& x) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
}

UniPoly QuotientElement::to_unipoly(const std::string& var) const {
    if (c_.empty()) return UniPoly(var);
    return UniPoly(var, primitive_integer_vector(c_));
}

QuotientElement operator+(const QuotientElement& a, const QuotientElement& b) {
    QuotientElement r;
    r.mod_ = a.mod_ ? a.mod_ : b.mod_;
    r.c_ = a.c_;
    if (r.c_.size() < b.c_.size()) r.c_.resize(b.c_.size(), Rational(0));
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.trim();
    return r;
}

QuotientElement operator-(const QuotientElement& a, const QuotientElement& b) {
    QuotientElement r;
    r.mod_ = a.mod_ ? a.mod_ : b.mod_;
    r.c_ = a.c_;
    if (r.c_.size() < b.c_.size()) r.c_.resize(b.c_.size(), Rational(0));
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
    r.trim();
    return r;
}

QuotientElement operator*(const QuotientElement& a, const QuotientElement& b) {
    QuotientElement r;
    r.mod_ = a.mod_ ? a.mod_ : b.mod_;
    if (a.c_.empty() || b.c_.empty()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.reduce();
    r.trim();
    return r;
}

// ---------------------------------------------------------------- real solutions

std::optional<std::vector<Rational>> SolutionTuple::rational_values() const {
    std::vector<Rational> out;
    for (const auto& v : values) {
        auto r = v.as_rational();
        if (!r) return std::nullopt;
        out.push_back(*r);
    }
    return out;
}

namespace {

struct Interval {
    Rational lo, hi;
};

Interval interval_eval(const std::vector<Rational>& g, const Rational& lo, const Rational& hi) {
    Interval acc{0, 0};
    for (auto it = g.rbegin(); it != g.rend(); ++it) {
        Rational a = acc.lo * lo, b = acc.lo * hi, c = acc.hi * lo, d = acc.hi * hi;
        acc.lo = std::min({a, b, c, d}) + *it;
        acc.hi = std::max({a, b, c, d}) + *it;
    }
    return acc;
}

Rational horner(const std::vector<Rational>& g, const Rational& x) {
    Rational v = 0;
    for (auto it = g.rbegin(); it != g.rend(); ++it) v = v * x + *it;
    return v;
}

bool is_identity(const std::vector<Rational>& g) { return g.size() == 2 && g[0] == 0 && g[1] == 1; }

/// Picks the real root of `roots` equal to g(alpha).
AlgebraicReal identify(const std::vector<Rational>& g, AlgebraicReal alpha, std::vector<AlgebraicReal> roots,
                       const std::string& var) {
    if (auto a = alpha.as_rational()) return AlgebraicReal::from_rational(horner(g, *a), var);
    if (g.size() <= 1) return AlgebraicReal::from_rational(g.empty() ? Rational(0) : g[0], var);
    for (int iter = 0; iter < 4000; ++iter) {
        Interval e = interval_eval(g, alpha.lo(), alpha.hi());
        std::vector<std::size_t> hit;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (e.lo < roots[i].hi() && roots[i].lo() < e.hi) hit.push_back(i);
        if (hit.size() == 1) return roots[hit[0]];
        if (hit.empty()) throw AlgebraError("coordinate enclosure misses every real root of its minimal polynomial");
        alpha.refine(4);
        for (auto i : hit) roots[i].refine(2);
    }
    throw AlgebraError("coordinate identification did not converge");
}

struct Shape {
    UniPoly chi;
    QuotientElement::Modulus mod;
    std::vector<std::vector<Rational>> coords;
    std::shared_ptr<const GroebnerBasis> basis;  // null for q = 1

    /// Real roots of the square-free minimal polynomial of variable k.
    const std::vector<AlgebraicReal>& var_roots(std::size_t k, const std::string& name) {
        if (roots.size() <= k) roots.resize(coords.size());
        if (!roots[k]) roots[k] = sturm_isolate(krylov_minimal_polynomial(basis->multiplication_matrix(k), name));
        return *roots[k];
    }
    std::vector<std::optional<std::vector<AlgebraicReal>>> roots;
};

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
        if (e & 1) r = mulmod(r, a);
    return r;
}

std::optional<std::uint64_t> reduce_mod(const Rational& x) {
    BigInt p(static_cast<unsigned long>(kPrime));
    BigInt n = x.get_num() % p, d = x.get_den() % p;
    if (n < 0) n += p;
    if (d == 0) return std::nullopt;
    std::uint64_t nn = mpz_get_ui(n.get_mpz_t()), dd = mpz_get_ui(d.get_mpz_t());
    return mulmod(nn, powmod(dd, kPrime - 2));
}

/// Dimension of the Krylov space of e_0 modulo a prime; a lower bound for the
/// rational dimension, nullopt when a denominator vanishes.
std::optional<std::size_t> krylov_dimension_mod_p(const Matrix<Rational>& m) {
    const std::size_t d = m.rows();
    std::vector<std::uint64_t> a(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (m(i, j) == 0) continue;
            auto r = reduce_mod(m(i, j));
            if (!r) return std::nullopt;
            a[i * d + j] = *r;
        }
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<std::size_t> piv;
    std::vector<std::uint64_t> v(d, 0);
    v[0] = 1;
    for (std::size_t k = 0; k <= d; ++k) {
        std::vector<std::uint64_t> w = v;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::uint64_t f = w[piv[r]];
            if (!f) continue;
            for (std::size_t j = 0; j < d; ++j)
                if (rows[r][j]) w[j] = (w[j] + kPrime - mulmod(f, rows[r][j])) % kPrime;
        }
        auto nz = std::find_if(w.begin(), w.end(), [](std::uint64_t x) { return x != 0; });
        if (nz == w.end()) return rows.size();
        std::size_t p = static_cast<std::size_t>(nz - w.begin());
        std::uint64_t inv = powmod(w[p], kPrime - 2);
        for (auto& x : w) x = mulmod(x, inv);
        rows.push_back(std::move(w));
        piv.push_back(p);
        std::vector<std::uint64_t> next(d, 0);
        for (std::size_t i = 0; i < d; ++i) {
            u128 acc = 0;
            for (std::size_t j = 0; j < d; ++j)
                if (a[i * d + j] && v[j]) acc = (acc + static_cast<u128>(a[i * d + j]) * v[j]) % kPrime;
            next[i] = static_cast<std::uint64_t>(acc);
        }
        v = std::move(next);
    }
    return rows.size();
}

bool try_shape(const GroebnerBasis& gb, const std::vector<Rational>& c, Shape& out) {
    const std::size_t n = gb.vars().size(), d = gb.quotient_dimension();
    Matrix<Rational> mu(d, d, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        if (c[k] == 0) continue;
        const auto& mk = gb.multiplication_matrix(k);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (mk(i, j) != 0) mu(i, j) += c[k] * mk(i, j);
    }
    // cheap screen; a separating form rejected by an unlucky prime only moves the search on
    auto dim_p = krylov_dimension_mod_p(mu);
    if (dim_p && *dim_p < d) return false;
    KrylovBasis kb(mu, d);
    if (kb.dimension() != d) return false;
    out.chi = UniPoly("u", primitive_integer_vector(kb.minimal_polynomial())).primitive_part();
    if (squarefree_part(out.chi).degree() != out.chi.degree()) return false;
    out.mod = QuotientElement::make_modulus(out.chi);
    out.coords.clear();
    std::vector<Rational> one(d, Rational(0));
    one[0] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& mk = gb.multiplication_matrix(k);
        std::vector<Rational> col(d);
        for (std::size_t i = 0; i < d; ++i) col[i] = mk(i, 0);
        auto g = kb.express(col);
        if (!g) return false;
        while (!g->empty() && g->back() == 0) g->pop_back();
        out.coords.push_back(std::move(*g));
    }
    return true;
}

std::string describe_form(const std::vector<std::string>& vars, const std::vector<Rational>& c) {
    std::string out;
    for (std::size_t k = 0; k < vars.size(); ++k) {
        if (c[k] == 0) continue;
        if (!out.empty()) out += " + ";
        if (c[k] != 1) out += to_string(c[k]) + "*";
        out += vars[k];
    }
    return out;
}

Shape shape_from_basis(std::shared_ptr<const GroebnerBasis> gb, const TailSystem& t, std::size_t pv,
                       const std::function<bool()>& cancel, std::vector<std::string>& log) {
    const std::size_t n = t.vars.size();
    for (int round = 0; round < 2; ++round) {
        for (int j = 0; j < 16; ++j) {
            std::vector<Rational> c(n, Rational(0));
            c[pv] = 1;
            if (j > 0) {
                Rational w = j;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != pv) {
                        c[k] = w;
                        w *= j;
                    }
            }
            Shape s;
            if (try_shape(*gb, c, s)) {
                log.push_back("separating element u = " + describe_form(t.vars, c) + ", minimal polynomial degree " +
                              std::to_string(s.chi.degree()));
                s.basis = gb;
                return s;
            }
        }
        if (round == 1) break;
        // the ideal may not be radical: add the square-free minimal polynomial of every variable
        std::vector<MultiPoly> gens = t.tails;
        for (std::size_t k = 0; k < n; ++k) {
            UniPoly mp = squarefree_part(krylov_minimal_polynomial(gb->multiplication_matrix(k), t.vars[k]));
            gens.push_back(MultiPoly::from_unipoly(t.vars, mp));
        }
        log.push_back("no separating element found; recomputing with square-free univariate generators");
        gb = groebner_of(gens, cancel, log);
    }
    throw DegenerateError("could not find a separating linear form for the quotient algebra");
}

}  // namespace

RealSolutionSet real_solutions(const TailSystem& t, const SecularPoly& s, const std::function<bool()>& cancel) {
    if (t.q < 1) throw std::invalid_argument("real solutions need q >= 1");
    RealSolutionSet out;
    auto it = std::find(t.vars.begin(), t.vars.end(), s.pivot);
    if (it == t.vars.end()) throw std::invalid_argument("unknown pivot");
    const std::size_t pv = static_cast<std::size_t>(it - t.vars.begin());
    const std::size_t n = t.vars.size();

    Shape shape;
    if (t.q == 1) {
        shape.chi = s.poly.with_var("u");
        shape.mod = QuotientElement::make_modulus(shape.chi);
        shape.coords = {{Rational(0), Rational(1)}};
        out.log.push_back("single variable: u = " + t.vars[0]);
    } else {
        auto gb = s.basis;
        if (!gb) gb = groebner_of(t.tails, cancel, out.log);
        shape = shape_from_basis(gb, t, pv, cancel, out.log);
    }

    std::vector<QuotientElement> point;
    for (const auto& g : shape.coords) point.emplace_back(shape.mod, g);
    // irrational tuples share one parametrization: verified once, kernel computed once
    std::optional<std::vector<std::vector<Rational>>> shared_kernel;
    auto algebraic_data = [&]() -> const std::vector<std::vector<Rational>>& {
        if (shared_kernel) return *shared_kernel;
        for (std::size_t j = 0; j < t.tails.size(); ++j)
            if (!evaluate_in(t.tails[j], point, QuotientElement()).is_zero())
                throw AlgebraError("tail condition T" + std::to_string(j + 1) +
                                   " does not vanish on the parametrization");
        out.log.push_back("all tail conditions vanish modulo the minimal polynomial of u");
        shared_kernel.emplace();
        BigInt f = 1;
        for (int m = 0; m < t.N; ++m) {
            if (m > 0) f *= m;
            QuotientElement pm = evaluate_in(t.p[static_cast<std::size_t>(m)], point, QuotientElement());
            pm = pm * QuotientElement(Rational(1) / Rational(f));
            shared_kernel->push_back(pm.coeffs());
        }
        return *shared_kernel;
    };

    TrapMatrix trap = build_trap(t.q, t.N);

    for (const AlgebraicReal& alpha : sturm_isolate(shape.chi)) {
        SolutionTuple tup;
        tup.vars = t.vars;
        for (std::size_t k = 0; k < n; ++k) {
            if (is_identity(shape.coords[k])) {
                auto r = alpha.as_rational();
                tup.values.push_back(r ? AlgebraicReal::from_rational(*r, t.vars[k])
                                       : AlgebraicReal(shape.chi.with_var(t.vars[k]), alpha.lo(), alpha.hi()));
            } else if (alpha.as_rational() || shape.coords[k].size() <= 1) {
                tup.values.push_back(identify(shape.coords[k], alpha, {}, t.vars[k]));
            } else {
                tup.values.push_back(identify(shape.coords[k], alpha, shape.var_roots(k, t.vars[k]), t.vars[k]));
            }
        }
        if (auto rv = tup.rational_values()) {
            for (std::size_t j = 0; j < t.tails.size(); ++j)
                if (t.tails[j].evaluate(*rv) != 0)
                    throw AlgebraError("tail condition T" + std::to_string(j + 1) + " fails on a recovered tuple");
            tup.kernel = kernel_vector(trap, *rv);
        } else {
            tup.context = AlgebraicContext{shape.chi, alpha, shape.coords};
            tup.algebraic_kernel = algebraic_data();
            QuotientElement last(shape.mod, tup.algebraic_kernel.back());
            if (last.is_zero() || algebraic_is_root(alpha, last.to_unipoly("u")))
                throw DegenerateError("p_{N-1} vanishes on a solution: effective N too large");
        }
        out.tuples.push_back(std::move(tup));
    }

    std::sort(out.tuples.begin(), out.tuples.end(), [](const SolutionTuple& a, const SolutionTuple& b) {
        for (std::size_t k = 0; k < a.values.size(); ++k) {
            if (a.values[k] == b.values[k]) continue;
            return a.values[k] < b.values[k];
        }
        return false;
    });

    for (const auto& root : sturm_isolate(s.poly)) {
        bool found = std::any_of(out.tuples.begin(), out.tuples.end(),
                                 [&](const SolutionTuple& tp) { return tp.values[pv] == root; });
        if (!found) out.complex_completion_only.push_back(root);
    }
    out.log.push_back(std::to_string(out.tuples.size()) + " real tuples, " +
                      std::to_string(out.complex_completion_only.size()) + " real pivot roots with complex completion only");
    return out;
}

std::vector<BigInt> kernel_vector(const TrapMatrix& m, const std::vector<Rational>& s) {
    if (s.size() != static_cast<std::size_t>(m.q)) throw std::invalid_argument("tuple length differs from q");
    auto num = m.evaluate<Rational>(s, Rational(0));
    auto ker = kernel(num);
    if (ker.empty()) throw DegenerateError("trap matrix has trivial kernel at this tuple");
    if (ker.size() > 1) throw DegenerateError("kernel dimension " + std::to_string(ker.size()) + " > 1");
    auto v = primitive_integer_vector(ker[0]);
    if (v.front() <= 0) throw DegenerateError("kernel vector has p_0 = 0");
    if (v.back() == 0) throw DegenerateError("p_{N-1} = 0: effective N too large");
    for (std::size_t i = 0; i < num.rows(); ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < num.cols(); ++j) acc += num(i, j) * Rational(v[j]);
        if (acc != 0) throw AlgebraError("kernel vector fails row " + std::to_string(i));
    }
    return v;
}

namespace {

void check_bruteforce_guard(int N) {
    if (N > 8 && !guard_override())
        throw GuardExceeded("brute_force_check is limited to N <= 8 (N = " + std::to_string(N) +
                            "); set QES_GUARD_OVERRIDE=1 to lift");
}

template <class R, class IsZero>
bool all_minors_vanish(const Matrix<R>& a, const R& zero, const R& one, IsZero is_zero) {
    const std::size_t rows = a.rows(), n = a.cols();
    std::vector<std::size_t> pick(n);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        Matrix<R> sub(n, n, zero);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sub(i, j) = a(pick[i], j);
        if (!is_zero(sub)) return false;
        // next combination
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == rows - n + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    (void)one;
    return true;
}

}  // namespace

bool brute_force_check(const TrapMatrix& m, const std::vector<Rational>& s) {
    check_bruteforce_guard(m.N);
    if (s.size() != static_cast<std::size_t>(m.q)) throw std::invalid_argument("tuple length differs from q");
    auto a = m.evaluate<Rational>(s, Rational(0));
    return all_minors_vanish(a, Rational(0), Rational(1),
                             [](const Matrix<Rational>& sub) { return determinant(sub) == 0; });
}

bool brute_force_check(const TrapMatrix& m, const SolutionTuple& tuple) {
    if (auto rv = tuple.rational_values()) return brute_force_check(m, *rv);
    check_bruteforce_guard(m.N);
    if (!tuple.context) throw std::invalid_argument("irrational tuple without algebraic context");
    const auto& ctx = *tuple.context;
    auto mod = QuotientElement::make_modulus(ctx.chi);
    std::vector<QuotientElement> s;
    for (const auto& g : ctx.coords) s.emplace_back(mod, g);
    if (s.size() != static_cast<std::size_t>(m.q)) throw std::invalid_argument("tuple length differs from q");
    auto a = m.evaluate<QuotientElement>(s, QuotientElement());
    return all_minors_vanish(a, QuotientElement(), QuotientElement(1L), [&](const Matrix<QuotientElement>& sub) {
        QuotientElement d = berkowitz_determinant(sub, QuotientElement(), QuotientElement(1L));
        return d.is_zero() || algebraic_is_root(ctx.alpha, d.to_unipoly("u"));
    });
}

int default_guard_N(int q) { return q <= 3 ? 12 : 6; }

bool guard_override() {
    const char* v = std::getenv("QES_GUARD_OVERRIDE");
    return v && std::string(v) == "1";
}

void check_guard(int q, int N, std::optional<int> limit) {
    int lim = limit.value_or(default_guard_N(q));
    if (N > lim && !guard_override())
        throw GuardExceeded("q=" + std::to_string(q) + " N=" + std::to_string(N) + " exceeds the elimination ceiling N <= " +
                            std::to_string(lim) + "; set QES_GUARD_OVERRIDE=1 to lift");
}

}  // namespace qes
