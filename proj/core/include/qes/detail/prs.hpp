#ifndef QES_DETAIL_PRS_HPP
#define QES_DETAIL_PRS_HPP

// Polynomial remainder sequences over an integral domain C, with the
// polynomial stored densely (lowest degree first) as std::vector<C>.
// Shared by the univariate (C = BigInt) and recursive multivariate
// (C = MultiPoly) resultant code.

#include <cstddef>
#include <utility>
#include <vector>

#include "qes/numeric.hpp"

namespace qes::detail {

inline bool is_zero(const BigInt& v) { return v == 0; }
inline BigInt one_like(const BigInt&) { return BigInt(1); }

template <class C>
int dense_degree(const std::vector<C>& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (!is_zero(p[i])) return static_cast<int>(i);
    return -1;
}

template <class C>
void dense_trim(std::vector<C>& p) {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
}

template <class C>
C power(const C& base, int e, const C& one) {
    C r = one;
    C b = base;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e > 0) b = b * b;
    }
    return r;
}

/// prem(a, b): lc(b)^(deg a - deg b + 1) * a = q*b + r.
template <class C>
std::vector<C> pseudo_remainder(std::vector<C> a, const std::vector<C>& b) {
    dense_trim(a);
    const int db = dense_degree(b);
    int da = dense_degree(a);
    if (da < db) return a;
    const C& lb = b[db];
    int steps = da - db + 1;
    while (da >= db) {
        C la = a[da];
        int shift = da - db;
        for (int i = 0; i <= da; ++i) a[i] = a[i] * lb;
        for (int i = 0; i <= db; ++i) a[i + shift] = a[i + shift] - la * b[i];
        --steps;
        dense_trim(a);
        da = dense_degree(a);
    }
    if (steps > 0) {
        C f = power(lb, steps, one_like(lb));
        for (auto& c : a) c = c * f;
    }
    return a;
}

/// Resultant via the subresultant PRS (Collins/Brown). `div` performs exact
/// division in C. Both inputs must be nonzero.
template <class C, class ExactDiv>
C subresultant_resultant(std::vector<C> a, std::vector<C> b, ExactDiv div) {
    dense_trim(a);
    dense_trim(b);
    int da = dense_degree(a), db = dense_degree(b);
    const C one = one_like(a[da]);
    bool negate = false;
    if (da < db) {
        std::swap(a, b);
        std::swap(da, db);
        if ((da % 2 == 1) && (db % 2 == 1)) negate = true;
    }
    if (db == 0) {
        C r = power(b[0], da, one);
        return negate ? -r : r;
    }
    C g = one, h = one;
    bool s = false;
    for (;;) {
        const int delta = da - db;
        if ((da % 2 == 1) && (db % 2 == 1)) s = !s;
        std::vector<C> r = pseudo_remainder(a, b);
        if (r.empty()) return C(one - one);
        a = std::move(b);
        C denom = g * power(h, delta, one);
        for (auto& c : r) c = div(c, denom);
        b = std::move(r);
        da = dense_degree(a);
        db = dense_degree(b);
        g = a[da];
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = div(power(g, delta, one), power(h, delta - 1, one));
        }
        if (db == 0) {
            C res;
            if (da == 1)
                res = b[0];
            else
                res = div(power(b[0], da, one), power(h, da - 1, one));
            if (s != negate) res = -res;
            return res;
        }
    }
}

}  // namespace qes::detail

#endif  // QES_DETAIL_PRS_HPP
