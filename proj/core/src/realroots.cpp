#include "qes/realroots.hpp"

#include <algorithm>
#include <stdexcept>

namespace qes {

namespace {

int sign_at_infinity(const UniPoly& p, bool positive) {
    if (p.is_zero()) return 0;
    int s = sgn(p.lead());
    if (!positive && p.degree() % 2 == 1) s = -s;
    return s;
}

int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int variations_at(const std::vector<UniPoly>& seq, const std::optional<Rational>& x, bool plus_side) {
    std::vector<int> s;
    s.reserve(seq.size());
    for (const auto& p : seq) s.push_back(x ? p.sign_at(*x) : sign_at_infinity(p, plus_side));
    return variations(s);
}

// A point strictly inside (lo, hi) where f does not vanish, close to the middle.
Rational split_point(const UniPoly& f, const Rational& lo, const Rational& hi) {
    Rational mid = (lo + hi) / 2;
    if (f.sign_at(mid) != 0) return mid;
    for (int k = 3;; k += 2) {
        Rational w = (hi - lo) / (1 << std::min(k, 30));
        for (Rational c : {Rational(mid + w), Rational(mid - w)})
            if (c > lo && c < hi && f.sign_at(c) != 0) return c;
    }
}

}  // namespace

std::vector<UniPoly> sturm_sequence(const UniPoly& f) {
    std::vector<UniPoly> seq;
    if (f.is_zero()) return seq;
    seq.push_back(f);
    UniPoly d = f.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(d.primitive_part());
    for (;;) {
        const UniPoly& a = seq[seq.size() - 2];
        const UniPoly& b = seq.back();
        PseudoDivision pd = pseudo_divide(a, b);
        if (pd.remainder.is_zero()) break;
        const int delta = a.degree() - b.degree();
        const bool lead_power_negative = b.lead() < 0 && ((delta + 1) % 2 == 1);
        UniPoly r = lead_power_negative ? pd.remainder : -pd.remainder;
        BigInt c = abs(r.content());
        seq.push_back(r.exact_div(c));
    }
    return seq;
}

int sturm_count(const std::vector<UniPoly>& seq, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    return variations_at(seq, lo, false) - variations_at(seq, hi, true);
}

Rational root_bound(const UniPoly& f) {
    if (f.degree() <= 0) return 1;
    BigInt m = 0;
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, BigInt(abs(f.coeff(i))));
    // 1 + max|a_i| / |a_n|, rounded up to a power of two
    Rational b = 1 + Rational(m) / abs(f.lead());
    Rational p = 1;
    while (p < b) p *= 2;
    return p;
}

AlgebraicReal::AlgebraicReal(UniPoly poly, Rational lo, Rational hi)
    : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!(lo_ < hi_)) throw std::invalid_argument("empty isolating interval");
    int a = poly_.sign_at(lo_), b = poly_.sign_at(hi_);
    if (a == 0 || b == 0 || a == b) throw std::invalid_argument("interval does not isolate a sign change");
    sign_lo_ = a;
    if (poly_.degree() == 1) exact_ = make_rational(-poly_.coeff(0), poly_.coeff(1));
}

AlgebraicReal AlgebraicReal::from_rational(const Rational& r, const std::string& var) {
    UniPoly p(var, {BigInt(-r.get_num()), r.get_den()});
    return AlgebraicReal(p, r - 1, r + 1);
}

std::optional<Rational> AlgebraicReal::as_rational() const {
    if (exact_) return exact_;
    // rational roots have denominator dividing the leading coefficient
    BigInt a = abs(poly_.lead());
    Rational target = Rational(1) / (2 * a * a);
    AlgebraicReal copy = *this;
    copy.refine_to(target);
    Rational cand = simplest_between(copy.lo_, copy.hi_);
    if (cand.get_den() <= a && poly_.sign_at(cand) == 0) {
        exact_ = cand;
        return cand;
    }
    return std::nullopt;
}

void AlgebraicReal::refine(int steps) {
    for (int i = 0; i < steps; ++i) {
        Rational mid = (lo_ + hi_) / 2;
        int s = poly_.sign_at(mid);
        if (s == 0) {
            // exact hit: shrink to a tiny interval around the rational root
            Rational w = (hi_ - lo_) / 4;
            lo_ = mid - w;
            hi_ = mid + w;
            exact_ = mid;
            sign_lo_ = poly_.sign_at(lo_);
            continue;
        }
        if (s == sign_lo_)
            lo_ = mid;
        else
            hi_ = mid;
    }
}

void AlgebraicReal::refine_to(const Rational& width) {
    while (hi_ - lo_ >= width) refine(1);
}

double AlgebraicReal::approx() const {
    if (exact_) return to_double(*exact_);
    AlgebraicReal c = *this;
    while (to_double(c.hi_ - c.lo_) > 1e-17 * std::max(1.0, std::abs(to_double(c.lo_)))) c.refine(8);
    return to_double(c.midpoint());
}

int AlgebraicReal::compare(const Rational& r) const {
    if (r <= lo_) return 1;
    if (r >= hi_) return -1;
    int s = poly_.sign_at(r);
    if (s == 0) return 0;
    return s == sign_lo_ ? 1 : -1;
}

bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) {
    if (a.hi() <= b.lo() || b.hi() <= a.lo()) return false;
    // b is the only root of its polynomial in its interval
    if (!algebraic_is_root(a, b.poly())) return false;
    return a.compare(b.lo()) > 0 && a.compare(b.hi()) < 0;
}

bool operator<(const AlgebraicReal& a, const AlgebraicReal& b) {
    if (a == b) return false;
    AlgebraicReal x = a, y = b;
    while (!(x.hi() <= y.lo() || y.hi() <= x.lo())) {
        x.refine(1);
        y.refine(1);
    }
    return x.hi() <= y.lo();
}

std::vector<AlgebraicReal> sturm_isolate(const UniPoly& f) {
    if (f.is_zero()) throw std::domain_error("sturm_isolate: zero polynomial");
    UniPoly g = squarefree_part(f);
    std::vector<AlgebraicReal> out;
    if (g.degree() <= 0) return out;
    auto seq = sturm_sequence(g);
    Rational b = root_bound(g);
    struct Box {
        Rational lo, hi;
        int count;
    };
    std::vector<Box> stack{{-b, b, sturm_count(seq, -b, b)}};
    while (!stack.empty()) {
        Box box = stack.back();
        stack.pop_back();
        if (box.count == 0) continue;
        if (box.count == 1) {
            out.emplace_back(g, box.lo, box.hi);
            continue;
        }
        Rational m = split_point(g, box.lo, box.hi);
        int left = sturm_count(seq, box.lo, m);
        stack.push_back({m, box.hi, box.count - left});
        stack.push_back({box.lo, m, left});
    }
    std::sort(out.begin(), out.end(), [](const AlgebraicReal& x, const AlgebraicReal& y) { return x.lo() < y.lo(); });
    return out;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
    if (lo < 0 && hi > 0) return 0;
    if (hi <= 0) return -simplest_between(-hi, -lo);
    // 0 <= lo < hi: continued-fraction descent on the open interval
    BigInt fl = floor(lo);
    if (Rational(fl + 1) < hi) return Rational(fl + 1);
    Rational a = lo - fl, c = hi - fl;  // 0 <= a < c <= 1
    // x in (a, c)  <=>  1/x in (1/c, 1/a)
    if (a == 0) {
        // (0, c): simplest is 1/k with k = floor(1/c) + 1
        BigInt k = floor(Rational(1) / c) + 1;
        return Rational(fl) + Rational(1) / Rational(k);
    }
    Rational inv = simplest_between(Rational(1) / c, Rational(1) / a);
    Rational r = Rational(fl) + Rational(1) / inv;
    r.canonicalize();
    return r;
}

std::vector<Rational> rational_roots(const UniPoly& f) {
    if (f.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
    std::vector<Rational> out;
    for (const auto& [factor, mult] : squarefree_factorization(f)) {
        int z = factor.zero_root_multiplicity();
        UniPoly g = factor.shift_down(z);
        for (int i = 0; i < z * mult; ++i) out.emplace_back(0);
        if (g.degree() <= 0) continue;
        BigInt a = abs(g.lead());
        Rational width = Rational(1) / (2 * a * a);
        for (auto& root : sturm_isolate(g)) {
            root.refine_to(width);
            Rational cand = simplest_between(root.lo(), root.hi());
            if (cand.get_den() <= a && g.eval(cand) == 0)
                for (int i = 0; i < mult; ++i) out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool algebraic_is_root(const AlgebraicReal& a, const UniPoly& f) {
    if (f.is_zero()) return true;
    UniPoly g = gcd(a.poly(), f.with_var(a.poly().var()));
    if (g.degree() <= 0) return false;
    auto seq = sturm_sequence(g);
    return sturm_count(seq, a.lo(), a.hi()) > 0;
}

std::string to_string(const AlgebraicReal& a) {
    if (auto r = a.as_rational()) return to_string(*r);
    return "root of " + to_string(a.poly()) + " in (" + to_string(a.lo()) + ", " + to_string(a.hi()) + ")";
}

}  // namespace qes
