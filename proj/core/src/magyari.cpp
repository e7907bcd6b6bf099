#include "qes/magyari.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qes {

namespace {

Rational conv(const std::vector<Rational>& a, int k, int lo, int hi) {
    // sum_{i+j=k, lo<=i,j<=hi} a_i a_j
    Rational s = 0;
    for (int i = lo; i <= hi; ++i) {
        int j = k - i;
        if (j < lo || j > hi) continue;
        s += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)];
    }
    return s;
}

void check_q(int q) {
    if (q < 0) throw std::invalid_argument("q must be non-negative");
}

}  // namespace

PotentialSpec from_generators(int q, std::vector<Rational> alpha, std::vector<Rational> G) {
    check_q(q);
    if (alpha.size() != static_cast<std::size_t>(q + 1)) throw std::invalid_argument("need alpha_0..alpha_q");
    if (G.size() != static_cast<std::size_t>(q)) throw std::invalid_argument("need G_0..G_{q-1}");
    if (alpha.back() <= 0) throw std::invalid_argument("alpha_q = gamma must be positive");
    PotentialSpec p;
    p.q = q;
    p.alpha = std::move(alpha);
    p.G = std::move(G);
    p.g.resize(static_cast<std::size_t>(2 * q + 1));
    for (int k = 0; k <= 2 * q; ++k) {
        Rational v = conv(p.alpha, k, 0, q);
        if (k < q) v += p.G[static_cast<std::size_t>(k)];
        if (k == 0 && q >= 1) v += p.alpha[0] * p.alpha[0];
        p.g[static_cast<std::size_t>(k)] = v;
    }
    return p;
}

PotentialSpec from_couplings(int q, std::vector<Rational> g) {
    check_q(q);
    if (g.size() != static_cast<std::size_t>(2 * q + 1)) throw std::invalid_argument("need g_0..g_{2q}");
    if (g.back() <= 0) throw std::invalid_argument("g_{2q} must be positive (normalizability)");
    Rational gamma;
    if (!rational_sqrt(g.back(), gamma))
        throw std::invalid_argument("g_{2q} = " + to_string(g.back()) + " is not the square of a rational");
    PotentialSpec p;
    p.q = q;
    p.g = std::move(g);
    p.alpha.assign(static_cast<std::size_t>(q + 1), Rational(0));
    p.alpha[static_cast<std::size_t>(q)] = gamma;
    for (int m = q - 1; m >= 0; --m) {
        int k = q + m;
        Rational rest = conv(p.alpha, k, m + 1, q - 1);
        p.alpha[static_cast<std::size_t>(m)] = (p.g[static_cast<std::size_t>(k)] - rest) / (2 * gamma);
    }
    p.G.resize(static_cast<std::size_t>(q));
    for (int k = 0; k < q; ++k) {
        Rational v = p.g[static_cast<std::size_t>(k)] - conv(p.alpha, k, 0, q);
        if (k == 0) v -= p.alpha[0] * p.alpha[0];
        p.G[static_cast<std::size_t>(k)] = v;
    }
    return p;
}

PotentialSpec coupling_map(const PotentialSpec& p) {
    if (!p.alpha.empty()) {
        PotentialSpec r = from_generators(p.q, p.alpha, p.G);
        if (!p.g.empty() && p.g != r.g) throw std::invalid_argument("couplings and generators disagree");
        return r;
    }
    return from_couplings(p.q, p.g);
}

Rational sextic_constraint(const Rational& alpha0, const Rational& alpha1, int N, const Rational& ell) {
    if (N < 1) throw std::invalid_argument("N must be at least 1");
    return -alpha0 * alpha0 - alpha1 * (4 * N + 2 * ell + 1);
}

Rational potential_eval(const PotentialSpec& p, const Rational& r) {
    if (r <= 0) throw std::invalid_argument("potential_eval needs r > 0");
    Rational v = 0;
    Rational r2 = r * r, pw = r2;
    for (const auto& gk : p.g) {
        v += gk * pw;
        pw *= r2;
    }
    return v;
}

AffineExpr AffineExpr::symbol(const std::string& name, const Rational& c) {
    AffineExpr e;
    if (c != 0) e.coeff[name] = c;
    return e;
}

Rational AffineExpr::coefficient(const std::string& name) const {
    auto it = coeff.find(name);
    return it == coeff.end() ? Rational(0) : it->second;
}

Rational AffineExpr::evaluate(const std::map<std::string, Rational>& values) const {
    Rational v = constant;
    for (const auto& [k, c] : coeff) {
        auto it = values.find(k);
        if (it == values.end()) throw std::invalid_argument("no value for symbol " + k);
        v += c * it->second;
    }
    return v;
}

AffineExpr AffineExpr::partial(const std::map<std::string, Rational>& values) const {
    AffineExpr r;
    r.constant = constant;
    for (const auto& [k, c] : coeff) {
        auto it = values.find(k);
        if (it == values.end())
            r.coeff[k] = c;
        else
            r.constant += c * it->second;
    }
    return r;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
    constant += o.constant;
    for (const auto& [k, c] : o.coeff) {
        Rational& v = coeff[k];
        v += c;
        if (v == 0) coeff.erase(k);
    }
    return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& o) { return *this += o * Rational(-1); }

AffineExpr& AffineExpr::operator*=(const Rational& k) {
    constant *= k;
    if (k == 0) coeff.clear();
    for (auto& [n, c] : coeff) c *= k;
    return *this;
}

std::string to_string(const AffineExpr& e) {
    std::string out;
    for (const auto& [k, c] : e.coeff) {
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        Rational a = abs(c);
        if (a != 1) out += to_string(a) + "*";
        out += k;
    }
    if (out.empty()) return to_string(e.constant);
    if (e.constant != 0) out += (e.constant < 0 ? " - " : " + ") + to_string(Rational(abs(e.constant)));
    return out;
}

std::string coupling_symbol(int k) { return "g_" + std::to_string(k); }

AffineExpr QesSystem::ell() const {
    AffineExpr e;
    e.constant = Rational(L) - Rational(3, 2);
    if (D)
        e.constant += *D / 2;
    else
        e.coeff[kSymD] = Rational(1, 2);
    return e;
}

void QesSystem::validate() const {
    if (N < 1) throw std::invalid_argument("N must be at least 1");
    if (L < 0) throw std::invalid_argument("L must be non-negative");
    if (potential.alpha.size() != static_cast<std::size_t>(potential.q + 1))
        throw std::invalid_argument("potential lacks generator parameters");
    if (potential.gamma() <= 0) throw std::invalid_argument("gamma must be positive");
    if (D && *D <= 0) throw std::invalid_argument("D must be positive");
}

namespace {

AffineExpr d_term(const QesSystem& sys, const Rational& c) {
    if (sys.D) {
        AffineExpr e;
        e.constant = c * *sys.D;
        return e;
    }
    return AffineExpr::symbol(kSymD, c);
}

AffineExpr constant_expr(const Rational& c) {
    AffineExpr e;
    e.constant = c;
    return e;
}

}  // namespace

AffineExpr constrained_coupling(const QesSystem& sys) {
    sys.validate();
    const auto& p = sys.potential;
    const int q = p.q;
    Rational c = -p.gamma() * (4 * (sys.N + q - 1) + 2 * sys.L - 2 * q);
    if (q >= 1) c += conv(p.alpha, q - 1, 0, q - 1);
    return constant_expr(c) + d_term(sys, -p.gamma());
}

FullMatrix build_full_matrix(const QesSystem& sys) {
    sys.validate();
    const auto& p = sys.potential;
    const int q = p.q, N = sys.N, L = sys.L;
    FullMatrix fm;
    fm.q = q;
    fm.N = N;
    fm.entries = Matrix<AffineExpr>(static_cast<std::size_t>(N + q - 1), static_cast<std::size_t>(N));
    for (int n = 0; n < N + q - 1; ++n) {
        if (n + 1 <= N - 1)
            fm.entries(n, n + 1) = constant_expr(Rational((2 * n + 2) * (2 * n + 2 * L))) + d_term(sys, 2 * n + 2);
        for (int k = 0; k <= q; ++k) {
            int m = n - k;
            if (m < 0 || m > N - 1) continue;
            AffineExpr e;
            if (k == q) {
                e = AffineExpr::symbol(kSymGamma, 4 * (N + q - 1 - n));
            } else {
                const Rational& ak = p.alpha[static_cast<std::size_t>(k)];
                e = AffineExpr::symbol(coupling_symbol(k - 1), -1);
                e += constant_expr(-ak * (4 * n + 2 * L - 2 * k));
                e += d_term(sys, -ak);
                if (k >= 1) e += constant_expr(conv(p.alpha, k - 1, 0, k - 1));
            }
            fm.entries(n, m) = e;
        }
    }
    return fm;
}

void FormalTerm::canonicalize() {
    if (coeff == 0) {
        e2 = eg = eD = 0;
        s = 0;
        return;
    }
    BigInt k = floor(e2);
    if (k != 0) {
        coeff *= pow(Rational(2), static_cast<int>(k.get_si()));
        e2 -= k;
    }
}

FormalTerm operator*(const FormalTerm& a, const FormalTerm& b) {
    if (a.s && b.s) throw std::invalid_argument("formal product of two s symbols");
    FormalTerm r{a.coeff * b.coeff, a.e2 + b.e2, a.eg + b.eg, a.eD + b.eD, std::max(a.s, b.s)};
    r.canonicalize();
    return r;
}

FormalTerm inverse(const FormalTerm& a) {
    if (a.coeff == 0 || a.s) throw std::invalid_argument("formal inverse of a zero or s-carrying term");
    FormalTerm r{1 / a.coeff, -a.e2, -a.eg, -a.eD, 0};
    r.canonicalize();
    return r;
}

FormalTerm power(const FormalTerm& a, int k) {
    FormalTerm base = k < 0 ? inverse(a) : a;
    FormalTerm r{1, 0, 0, 0, 0};
    for (int i = 0; i < std::abs(k); ++i) r = r * base;
    return r;
}

FormalSum::FormalSum(std::initializer_list<FormalTerm> t) : terms(t) { normalize(); }

void FormalSum::normalize() {
    for (auto& t : terms) t.canonicalize();
    auto key = [](const FormalTerm& t) { return std::make_tuple(-t.eD, t.s, t.e2, t.eg); };
    std::sort(terms.begin(), terms.end(), [&](const FormalTerm& a, const FormalTerm& b) { return key(a) < key(b); });
    std::vector<FormalTerm> out;
    for (const auto& t : terms) {
        if (!out.empty() && key(out.back()) == key(t))
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const FormalTerm& t) { return t.coeff == 0; });
    terms = std::move(out);
}

FormalSum& FormalSum::operator+=(const FormalSum& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    normalize();
    return *this;
}

FormalSum operator*(const FormalSum& a, const FormalTerm& t) {
    FormalSum r;
    for (const auto& x : a.terms) r.terms.push_back(x * t);
    r.normalize();
    return r;
}

bool operator==(const FormalSum& a, const FormalSum& b) {
    FormalSum x = a, y = b;
    x.normalize();
    y.normalize();
    return x.terms == y.terms;
}

long double evaluate(const FormalTerm& t, long double D, long double gamma, const std::vector<long double>& s) {
    long double v = to_long_double(t.coeff);
    v *= std::pow(2.0L, to_long_double(t.e2));
    v *= std::pow(gamma, to_long_double(t.eg));
    v *= std::pow(D, to_long_double(t.eD));
    if (t.s) v *= s.at(static_cast<std::size_t>(t.s - 1));
    return v;
}

long double evaluate(const FormalSum& f, long double D, long double gamma, const std::vector<long double>& s) {
    long double v = 0;
    for (const auto& t : f.terms) v += evaluate(t, D, gamma, s);
    return v;
}

std::string to_string(const FormalTerm& t) {
    std::string out = to_string(t.coeff);
    auto factor = [&](const char* name, const Rational& e) {
        if (e == 0) return;
        out += "*";
        out += name;
        if (e != 1) out += "^(" + to_string(e) + ")";
    };
    factor("2", t.e2);
    factor("gamma", t.eg);
    factor("D", t.eD);
    if (t.s) out += "*s" + std::to_string(t.s);
    return out;
}

std::string to_string(const FormalSum& f) {
    if (f.terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < f.terms.size(); ++i) {
        if (i) out += " + ";
        out += to_string(f.terms[i]);
    }
    return out;
}

ScalingParams scaling(int q) {
    check_q(q);
    ScalingParams sp;
    sp.q = q;
    Rational inv(1, q + 1);
    sp.mu = FormalTerm{1, -inv, -inv, inv, 0};
    sp.tau = FormalTerm{1, Rational(q + 2, q + 1), inv, Rational(q, q + 1), 0};
    sp.mu.canonicalize();
    sp.tau.canonicalize();
    return sp;
}

ScalingParams scaling(int q, const Rational& D, const Rational& gamma) {
    if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
    if (D <= 0) throw std::invalid_argument("D must be positive");
    ScalingParams sp = scaling(q);
    sp.mu_value = evaluate(sp.mu, to_long_double(D), to_long_double(gamma));
    sp.tau_value = evaluate(sp.tau, to_long_double(D), to_long_double(gamma));
    return sp;
}

std::vector<FormalSum> reparam_couplings_symbolic(const PotentialSpec& p) {
    const int q = p.q;
    ScalingParams sp = scaling(q);
    std::vector<FormalSum> out;
    for (int k = 1; k <= q; ++k) {
        FormalTerm shift{-p.alpha[static_cast<std::size_t>(k - 1)], 0, 0, 1, 0};
        FormalTerm lin = sp.tau * power(sp.mu, -(k - 1));
        lin.coeff = -lin.coeff;
        lin.s = k;
        out.push_back(FormalSum{shift, lin});
    }
    return out;
}

std::vector<FormalSum> reparam_couplings(const std::vector<Rational>& s, const PotentialSpec& p) {
    if (s.size() != static_cast<std::size_t>(p.q)) throw std::invalid_argument("need one s value per band");
    auto sym = reparam_couplings_symbolic(p);
    for (auto& f : sym) {
        for (auto& t : f.terms)
            if (t.s) {
                t.coeff *= s[static_cast<std::size_t>(t.s - 1)];
                t.s = 0;
            }
        f.normalize();
    }
    return sym;
}

std::vector<std::string> trap_variables(int q) {
    switch (q) {
        case 0:
            return {};
        case 1:
            return {"s"};
        case 2:
            return {"s", "t"};
        case 3:
            return {"r", "s", "t"};
        default: {
            std::vector<std::string> v;
            for (int k = 1; k <= q; ++k) v.push_back("s" + std::to_string(k));
            return v;
        }
    }
}

TrapMatrix build_trap(int q, int N) {
    check_q(q);
    if (N < 1) throw std::invalid_argument("N must be at least 1");
    TrapMatrix t;
    t.q = q;
    t.N = N;
    return t;
}

TrapMatrix::Entry TrapMatrix::entry(int n, int m) const {
    if (m == n + 1 && m <= N - 1) return {m, 0};
    int d = n - m;
    if (d >= 0 && d <= q - 1) return {0, d + 1};
    if (d == q) return {N - 1 - m, 0};
    return {0, 0};
}

const std::vector<std::string>& TrapMatrix::vars() const {
    if (vars_.size() != static_cast<std::size_t>(q)) vars_ = trap_variables(q);
    return vars_;
}

MultiPoly TrapMatrix::entry_poly(int n, int m) const {
    Entry e = entry(n, m);
    if (e.s) return MultiPoly::variable(vars(), static_cast<std::size_t>(e.s - 1));
    return MultiPoly::constant(vars(), e.value);
}

ConsistencyReport leading_order_consistency(const QesSystem& sys) {
    if (sys.D) throw std::invalid_argument("leading_order_consistency needs symbolic D");
    FullMatrix fm = build_full_matrix(sys);
    const int q = sys.potential.q, N = sys.N;
    ScalingParams sp = scaling(q);
    auto recipe = reparam_couplings_symbolic(sys.potential);
    TrapMatrix trap = build_trap(q, N);
    ConsistencyReport rep;
    rep.q = q;
    rep.N = N;
    rep.consistent = true;
    for (int n = 0; n < N + q - 1; ++n) {
        for (int m = 0; m < N; ++m) {
            const AffineExpr& a = fm.entries(n, m);
            TrapMatrix::Entry te = trap.entry(n, m);
            if (a.is_constant() && a.constant == 0 && te.value == 0 && te.s == 0) continue;
            FormalSum f;
            if (a.constant != 0) f += FormalSum{FormalTerm{a.constant, 0, 0, 0, 0}};
            for (const auto& [sym, c] : a.coeff) {
                if (sym == kSymD)
                    f += FormalSum{FormalTerm{c, 0, 0, 1, 0}};
                else if (sym == kSymGamma)
                    f += FormalSum{FormalTerm{c, 0, 1, 0, 0}};
                else {
                    int j = std::stoi(sym.substr(2));
                    f += recipe.at(static_cast<std::size_t>(j + 1)) * FormalTerm{c, 0, 0, 0, 0};
                }
            }
            ConsistencyEntry ce;
            ce.n = n;
            ce.m = m;
            ce.band = n - m;
            if (ce.band < 0) ce.band = -1;
            ce.scaled = f * (power(sp.mu, n - m) * inverse(sp.tau));
            for (const auto& t : ce.scaled.terms) {
                if (t.eD == 0)
                    ce.retained.terms.push_back(t);
                else
                    ce.discarded.terms.push_back(t);
                if (t.eD > 0) rep.consistent = false;
                if (t.eD < 0 && (!ce.leading_exponent || t.eD > *ce.leading_exponent)) ce.leading_exponent = t.eD;
            }
            FormalSum expect;
            if (te.s) expect = FormalSum{FormalTerm{1, 0, 0, 0, te.s}};
            else if (te.value) expect = FormalSum{FormalTerm{te.value, 0, 0, 0, 0}};
            ce.matches_trap = ce.retained == expect;
            if (!ce.matches_trap) rep.consistent = false;
            auto& band = rep.band_leading_exponent[ce.band];
            if (ce.leading_exponent && (!band || *ce.leading_exponent > *band)) band = ce.leading_exponent;
            rep.entries.push_back(std::move(ce));
        }
    }
    return rep;
}

std::string to_json(const QesSystem& sys) {
    nlohmann::ordered_json j;
    j["q"] = sys.potential.q;
    j["N"] = sys.N;
    j["L"] = sys.L;
    j["D"] = sys.D ? to_string(*sys.D) : std::string("symbolic");
    auto list = [](const std::vector<Rational>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : v) a.push_back(to_string(x));
        return a;
    };
    j["couplings"] = list(sys.potential.g);
    j["alpha"] = list(sys.potential.alpha);
    j["G"] = list(sys.potential.G);
    return j.dump();
}

}  // namespace qes
