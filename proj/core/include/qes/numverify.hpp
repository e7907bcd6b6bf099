#ifndef QES_NUMVERIFY_HPP
#define QES_NUMVERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "qes/magyari.hpp"

namespace qes {

/// Dirichlet ends at r_min and r_max, M interior points r_i = r_min + i h, i = 1..M.
struct RadialGrid {
    long double r_min = 0, r_max = 1;
    int M = 3;

    long double h() const { return (r_max - r_min) / static_cast<long double>(M + 1); }
    long double r(int i) const { return r_min + static_cast<long double>(i) * h(); }
    /// Same ends, half the spacing.
    RadialGrid refined() const { return {r_min, r_max, 2 * M + 1}; }
    void validate() const;
};

using RadialPotential = std::function<long double(long double)>;

/// Number of eigenvalues below x of the symmetric tridiagonal matrix (diag, off).
int sturm_count(const std::vector<long double>& diag, const std::vector<long double>& off, long double x);
/// Eigenvalue with 0-based index k (ascending), by bisection to ~machine precision.
long double tridiagonal_eigenvalue(const std::vector<long double>& diag, const std::vector<long double>& off, int k);
/// Unit eigenvector for an eigenvalue, by inverse iteration.
std::vector<long double> tridiagonal_eigenvector(const std::vector<long double>& diag, const std::vector<long double>& off,
                                                 long double lambda);

/// ell(ell+1)/r^2 + V(r).
long double effective_potential(const RadialPotential& V, long double ell, long double r);

/// Central-difference matrix of -d^2/dr^2 + ell(ell+1)/r^2 + V on the grid.
void radial_matrix(const RadialPotential& V, long double ell, const RadialGrid& g, std::vector<long double>& diag,
                   std::vector<long double>& off);

struct NumericSpectrum {
    std::vector<int> index;             // level numbers (0 = ground state)
    std::vector<long double> values;    // Richardson-extrapolated
    std::vector<long double> bounds;    // error estimates
    std::vector<std::vector<long double>> raw;  // per level: h, h/2, h/4
    long double h = 0;
    bool converged = true;
};

/// Levels `index` on grids h, h/2, h/4 with two Richardson steps; the bound is the
/// spread of the two first-order extrapolants. Not converged when extrapolation does
/// not beat the raw change; the bound is then widened to the raw change.
NumericSpectrum radial_eigensolve(const RadialPotential& V, long double ell, const RadialGrid& g,
                                  const std::vector<int>& index);
/// Lowest m levels.
NumericSpectrum radial_eigensolve(const RadialPotential& V, long double ell, const RadialGrid& g, int m);

/// Window around the well: classical turning points of e_top, extended on each side
/// until the WKB decay integral reaches kappa (or r = 0 on the inner side).
RadialGrid auto_grid(const RadialPotential& V, long double ell, long double e_top, int M, long double kappa = 30);

/// Radial harmonic oscillator V = omega^2 r^2: analytic omega (4n + 2 ell + 3).
std::vector<long double> harmonic_levels(long double omega, long double ell, int m);
NumericSpectrum harmonic_benchmark(long double omega, long double ell, int m, int M = 800);

/// Exact finite-D QES energies for q <= 1: eigenvalues of the N x N recurrence matrix.
std::vector<long double> qes_exact_energies(const QesSystem& sys);
/// V(r) of a numeric-D system, with the constrained coupling g_{q-1} imposed.
RadialPotential constrained_potential(const QesSystem& sys);

struct TrendConfig {
    int q = 1;
    int N = 2;
    int L = 1;
    Rational alpha0 = 0;
    Rational gamma = Rational(1, 2);
    Rational s = 1;  // q = 1 only
    std::vector<Rational> D{100, 1000, 10000};
    int M = 1500;
    long double kappa = 30;
};

struct TrendRow {
    Rational D;
    long double predicted = 0;      // leading order
    long double exact_qes = 0;      // finite-D QES energy closest to the prediction
    long double numeric = 0;        // nearest numeric eigenvalue to the prediction
    long double bound = 0;
    long double rel_error = 0;      // |predicted - numeric| / |numeric|
    long double second_distance = 0;
    long double flipped_rel_error = 0;  // same with s -> -s
    int level = 0;
    bool converged = true;
};

struct TrendReport {
    TrendConfig config;
    std::vector<TrendRow> rows;
    bool monotone = false;
};

/// q = 1: prediction alpha0 D + tau s. q = 0: 2 omega^2 R^2 + 2 omega for the ground state.
TrendReport largeD_trend(const TrendConfig& cfg);
/// D,predicted,numeric,rel_error,bound,exact_qes,second_distance,flipped_rel_error
std::string to_csv(const TrendReport& r);

}  // namespace qes

#endif  // QES_NUMVERIFY_HPP
