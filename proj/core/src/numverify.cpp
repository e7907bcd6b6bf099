#include "qes/numverify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qes {

namespace {

constexpr long double kEps = std::numeric_limits<long double>::epsilon();

void gershgorin(const std::vector<long double>& d, const std::vector<long double>& e, long double& lo, long double& hi) {
    lo = std::numeric_limits<long double>::max();
    hi = -lo;
    for (std::size_t i = 0; i < d.size(); ++i) {
        long double r = (i > 0 ? std::fabs(e[i - 1]) : 0) + (i + 1 < d.size() ? std::fabs(e[i]) : 0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
}

long double wkb_extend(const RadialPotential& V, long double ell, long double from, long double dir, long double e,
                       long double step, long double kappa) {
    long double r = from, acc = 0;
    for (int i = 0; i < 1000000 && acc < kappa; ++i) {
        long double next = r + dir * step;
        if (next <= 0) return 0;
        long double w = effective_potential(V, ell, 0.5L * (r + next)) - e;
        if (w > 0) acc += std::sqrt(w) * step;
        r = next;
    }
    return r;
}

long double root_between(const std::function<long double(long double)>& f, long double a, long double b) {
    long double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        long double m = 0.5L * (a + b), fm = f(m);
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5L * (a + b);
}

long double eval_affine(const AffineExpr& a, const Rational& gamma) {
    std::map<std::string, Rational> vals{{kSymGamma, gamma}, {coupling_symbol(-1), Rational(0)}};
    return to_long_double(a.evaluate(vals));
}

}  // namespace

void RadialGrid::validate() const {
    if (M < 3) throw std::invalid_argument("radial grid: M >= 3");
    if (!(r_min >= 0) || !(r_max > r_min)) throw std::invalid_argument("radial grid: 0 <= r_min < r_max");
}

int sturm_count(const std::vector<long double>& diag, const std::vector<long double>& off, long double x) {
    int count = 0;
    long double d = 1;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        long double e2 = i ? off[i - 1] * off[i - 1] : 0;
        d = diag[i] - x - (i ? e2 / d : 0);
        if (d == 0) d = -kEps * (std::fabs(diag[i]) + std::fabs(x) + 1);
        if (d < 0) ++count;
    }
    return count;
}

long double tridiagonal_eigenvalue(const std::vector<long double>& diag, const std::vector<long double>& off, int k) {
    if (k < 0 || k >= static_cast<int>(diag.size())) throw std::out_of_range("tridiagonal_eigenvalue: index");
    long double lo, hi;
    gershgorin(diag, off, lo, hi);
    for (int it = 0; it < 400; ++it) {
        long double mid = 0.5L * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(diag, off, mid) > k) hi = mid;
        else lo = mid;
    }
    return 0.5L * (lo + hi);
}

std::vector<long double> tridiagonal_eigenvector(const std::vector<long double>& diag, const std::vector<long double>& off,
                                                 long double lambda) {
    const std::size_t n = diag.size();
    long double scale = 0;
    for (auto v : diag) scale = std::max(scale, std::fabs(v));
    long double shift = lambda + 1e3L * kEps * (scale + std::fabs(lambda) + 1);
    std::vector<long double> x(n, 1), c(n), y(n);
    for (int it = 0; it < 4; ++it) {
        // Thomas algorithm on (T - shift)
        long double b0 = diag[0] - shift;
        if (b0 == 0) b0 = kEps;
        c[0] = n > 1 ? off[0] / b0 : 0;
        y[0] = x[0] / b0;
        for (std::size_t i = 1; i < n; ++i) {
            long double b = diag[i] - shift - off[i - 1] * c[i - 1];
            if (b == 0) b = kEps;
            c[i] = i + 1 < n ? off[i] / b : 0;
            y[i] = (x[i] - off[i - 1] * y[i - 1]) / b;
        }
        for (std::size_t i = n - 1; i-- > 0;) y[i] -= c[i] * y[i + 1];
        long double norm = 0;
        for (auto v : y) norm += v * v;
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    return x;
}

long double effective_potential(const RadialPotential& V, long double ell, long double r) {
    return ell * (ell + 1) / (r * r) + V(r);
}

void radial_matrix(const RadialPotential& V, long double ell, const RadialGrid& g, std::vector<long double>& diag,
                   std::vector<long double>& off) {
    g.validate();
    const long double h = g.h(), ih2 = 1 / (h * h);
    diag.assign(static_cast<std::size_t>(g.M), 0);
    off.assign(static_cast<std::size_t>(g.M - 1), -ih2);
    for (int i = 1; i <= g.M; ++i) diag[static_cast<std::size_t>(i - 1)] = 2 * ih2 + effective_potential(V, ell, g.r(i));
}

NumericSpectrum radial_eigensolve(const RadialPotential& V, long double ell, const RadialGrid& g,
                                  const std::vector<int>& index) {
    NumericSpectrum out;
    out.index = index;
    out.h = g.h();
    RadialGrid grids[3] = {g, g.refined(), g.refined().refined()};
    out.raw.assign(index.size(), {});
    for (const auto& grid : grids) {
        std::vector<long double> d, e;
        radial_matrix(V, ell, grid, d, e);
        for (std::size_t i = 0; i < index.size(); ++i) out.raw[i].push_back(tridiagonal_eigenvalue(d, e, index[i]));
    }
    for (const auto& r : out.raw) {
        long double r1 = (4 * r[1] - r[0]) / 3, r2 = (4 * r[2] - r[1]) / 3;
        long double bound = std::fabs(r2 - r1), raw_change = std::fabs(r[2] - r[1]);
        long double v = r2 + (r2 - r1) / 15;
        bool ok = bound <= raw_change;
        if (!ok) {
            out.converged = false;
            bound = raw_change;
            v = r[2];
        }
        out.values.push_back(v);
        out.bounds.push_back(bound);
    }
    return out;
}

NumericSpectrum radial_eigensolve(const RadialPotential& V, long double ell, const RadialGrid& g, int m) {
    if (m < 1) throw std::invalid_argument("radial_eigensolve: m >= 1");
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
    return radial_eigensolve(V, ell, g, idx);
}

RadialGrid auto_grid(const RadialPotential& V, long double ell, long double e_top, int M, long double kappa) {
    auto W = [&](long double r) { return effective_potential(V, ell, r); };
    // coarse logarithmic scan for the bottom of the well
    long double best_r = 0, best = std::numeric_limits<long double>::max();
    const int n = 4000;
    for (int i = 0; i <= n; ++i) {
        long double r = std::pow(10.0L, -4.0L + 8.0L * i / n);
        long double w = W(r);
        if (w < best) {
            best = w;
            best_r = r;
        }
    }
    long double lo_r = best_r, hi_r = best_r;
    if (best < e_top) {
        auto f = [&](long double r) { return W(r) - e_top; };
        long double a = best_r;
        while (a > 1e-6L && f(a) < 0) a *= 0.5L;
        lo_r = f(a) < 0 ? 0 : root_between(f, a, best_r);
        long double b = best_r;
        while (f(b) < 0) b *= 2;
        hi_r = root_between(f, best_r, b);
    }
    long double width = std::max(hi_r - lo_r, 1e-3L * best_r);
    long double step = width / 400;
    long double r_max = wkb_extend(V, ell, hi_r, +1, e_top, step, kappa);
    long double r_min = lo_r > 0 ? wkb_extend(V, ell, lo_r, -1, e_top, step, kappa) : 0;
    return {r_min, r_max, M};
}

std::vector<long double> harmonic_levels(long double omega, long double ell, int m) {
    std::vector<long double> out;
    for (int k = 0; k < m; ++k) out.push_back(omega * (4 * k + 2 * ell + 3));
    return out;
}

NumericSpectrum harmonic_benchmark(long double omega, long double ell, int m, int M) {
    RadialPotential V = [omega](long double r) { return omega * omega * r * r; };
    long double top = harmonic_levels(omega, ell, m).back();
    return radial_eigensolve(V, ell, auto_grid(V, ell, top, M), m);
}

std::vector<long double> qes_exact_energies(const QesSystem& sys) {
    sys.validate();
    if (!sys.D) throw std::invalid_argument("qes_exact_energies: D must be numeric");
    const int q = sys.potential.q;
    const Rational& gamma = sys.potential.gamma();
    if (q == 0) return {-eval_affine(constrained_coupling(sys), gamma)};
    if (q != 1) throw std::invalid_argument("qes_exact_energies: q <= 1");
    FullMatrix fm = build_full_matrix(sys);
    const int N = sys.N;
    std::vector<long double> d(static_cast<std::size_t>(N)), e(static_cast<std::size_t>(std::max(N - 1, 0)));
    for (int n = 0; n < N; ++n) d[static_cast<std::size_t>(n)] = -eval_affine(fm.B(n), gamma);
    for (int n = 0; n + 1 < N; ++n) {
        long double prod = eval_affine(fm.C(n), gamma) * eval_affine(fm.A(n + 1, 1), gamma);
        if (prod <= 0) throw std::domain_error("qes_exact_energies: recurrence not symmetrizable");
        e[static_cast<std::size_t>(n)] = std::sqrt(prod);
    }
    std::vector<long double> out;
    for (int k = 0; k < N; ++k) out.push_back(tridiagonal_eigenvalue(d, e, k));
    return out;
}

RadialPotential constrained_potential(const QesSystem& sys) {
    sys.validate();
    if (!sys.D) throw std::invalid_argument("constrained_potential: D must be numeric");
    const PotentialSpec& p = sys.potential;
    std::vector<long double> g;
    for (const auto& c : p.g) g.push_back(to_long_double(c));
    if (p.q >= 1) g[static_cast<std::size_t>(p.q - 1)] = eval_affine(constrained_coupling(sys), p.gamma());
    return [g](long double r) {
        long double r2 = r * r, pw = r2, v = 0;
        for (auto c : g) {
            v += c * pw;
            pw *= r2;
        }
        return v;
    };
}

TrendReport largeD_trend(const TrendConfig& cfg) {
    if (cfg.q != 0 && cfg.q != 1) throw std::invalid_argument("largeD_trend: q in {0, 1}");
    if (cfg.gamma <= 0) throw std::invalid_argument("largeD_trend: gamma > 0");
    for (std::size_t i = 1; i < cfg.D.size(); ++i)
        if (!(cfg.D[i - 1] < cfg.D[i])) throw std::invalid_argument("largeD_trend: D list must increase");
    TrendReport rep;
    rep.config = cfg;
    for (const auto& Dq : cfg.D) {
        QesSystem sys;
        sys.N = cfg.q == 0 ? 1 : cfg.N;
        sys.L = cfg.L;
        sys.D = Dq;
        Rational ell = Rational(cfg.L) + (Dq - 3) / 2;
        if (cfg.q == 0) sys.potential = from_generators(0, {cfg.gamma}, {});
        else sys.potential = from_generators(1, {cfg.alpha0, cfg.gamma}, {sextic_constraint(cfg.alpha0, cfg.gamma, cfg.N, ell)});
        const long double D = to_long_double(Dq), l = to_long_double(ell), w = to_long_double(cfg.gamma);
        TrendRow row;
        row.D = Dq;
        long double flipped = 0;
        if (cfg.q == 0) {
            long double R2 = std::sqrt(l * (l + 1)) / w;
            row.predicted = 2 * w * w * R2 + 2 * w;
            flipped = row.predicted;
        } else {
            long double tau = *scaling(1, Dq, cfg.gamma).tau_value, s = to_long_double(cfg.s);
            row.predicted = to_long_double(cfg.alpha0) * D + tau * s;
            flipped = to_long_double(cfg.alpha0) * D - tau * s;
        }
        auto exact = qes_exact_energies(sys);
        row.exact_qes = *std::min_element(exact.begin(), exact.end(), [&](long double a, long double b) {
            return std::fabs(a - row.predicted) < std::fabs(b - row.predicted);
        });
        RadialPotential V = constrained_potential(sys);
        long double e_top = std::max(row.predicted, row.exact_qes) + 0.5L * (std::fabs(row.predicted) + std::fabs(row.exact_qes)) + 10;
        RadialGrid grid = auto_grid(V, l, e_top, cfg.M, cfg.kappa);
        std::vector<long double> d, e;
        radial_matrix(V, l, grid, d, e);
        int k = sturm_count(d, e, row.predicted);
        std::vector<int> idx;
        for (int i = std::max(0, k - 2); i <= k + 1 && i < grid.M; ++i) idx.push_back(i);
        NumericSpectrum ns = radial_eigensolve(V, l, grid, idx);
        std::vector<std::size_t> order(idx.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::fabs(ns.values[a] - row.predicted) < std::fabs(ns.values[b] - row.predicted);
        });
        row.numeric = ns.values[order[0]];
        row.bound = ns.bounds[order[0]];
        row.level = idx[order[0]];
        row.converged = ns.converged;
        row.second_distance = order.size() > 1 ? std::fabs(ns.values[order[1]] - row.predicted)
                                               : std::numeric_limits<long double>::infinity();
        row.rel_error = std::fabs(row.predicted - row.numeric) / std::fabs(row.numeric);
        row.flipped_rel_error = std::fabs(flipped - row.numeric) / std::fabs(row.numeric);
        rep.rows.push_back(row);
    }
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (!(rep.rows[i].rel_error < rep.rows[i - 1].rel_error)) rep.monotone = false;
    return rep;
}

std::string to_csv(const TrendReport& r) {
    std::string out = "D,predicted,numeric,rel_error,bound,exact_qes,second_distance,flipped_rel_error\n";
    for (const auto& row : r.rows)
        out += to_string(row.D) + "," + format_real(row.predicted) + "," + format_real(row.numeric) + "," +
               format_real(row.rel_error, 6) + "," + format_real(row.bound, 3) + "," + format_real(row.exact_qes) + "," +
               format_real(row.second_distance, 6) + "," + format_real(row.flipped_rel_error, 6) + "\n";
    return out;
}

}  // namespace qes
