#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qes/numverify.hpp"

using namespace qes;

namespace {

long double lowest_raw(const RadialPotential& V, long double ell, const RadialGrid& g, int k) {
    std::vector<long double> d, e;
    radial_matrix(V, ell, g, d, e);
    return tridiagonal_eigenvalue(d, e, k);
}

}  // namespace

TEST(Tridiagonal, SmallMatrices) {
    std::vector<long double> d{2, 2}, e{1};
    EXPECT_NEAR(tridiagonal_eigenvalue(d, e, 0), 1, 1e-15);
    EXPECT_NEAR(tridiagonal_eigenvalue(d, e, 1), 3, 1e-15);
    EXPECT_EQ(sturm_count(d, e, 2), 1);
    EXPECT_EQ(sturm_count(d, e, 0), 0);
    EXPECT_EQ(sturm_count(d, e, 4), 2);
    std::vector<long double> d3{2, 2, 2}, e3{-1, -1};
    for (int k = 0; k < 3; ++k) {
        long double expect = 2 - 2 * std::cos((k + 1) * std::numbers::pi_v<long double> / 4);
        EXPECT_NEAR(tridiagonal_eigenvalue(d3, e3, k), expect, 1e-15);
    }
    auto v = tridiagonal_eigenvector(d3, e3, tridiagonal_eigenvalue(d3, e3, 0));
    EXPECT_NEAR(std::fabs(v[0]), 0.5L, 1e-12);
    EXPECT_NEAR(std::fabs(v[1]), std::sqrt(0.5L), 1e-12);
    EXPECT_THROW(tridiagonal_eigenvalue(d, e, 2), std::out_of_range);
}

TEST(Radial, HarmonicBenchmark) {
    auto s = harmonic_benchmark(1, 0, 3);
    auto exact = harmonic_levels(1, 0, 3);
    EXPECT_EQ(exact, (std::vector<long double>{3, 7, 11}));
    EXPECT_TRUE(s.converged);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_LT(std::fabs(s.values[i] - exact[i]) / exact[i], 1e-6);
        EXPECT_LE(std::fabs(s.values[i] - exact[i]), 10 * s.bounds[i] + 1e-12);
    }
}

TEST(Radial, HarmonicWithAngularMomentum) {
    auto s = harmonic_benchmark(2, 3.5L, 2);
    auto exact = harmonic_levels(2, 3.5L, 2);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_LT(std::fabs(s.values[i] - exact[i]) / exact[i], 1e-6);
}

TEST(Radial, ParticleInBox) {
    RadialPotential zero = [](long double) { return 0.0L; };
    RadialGrid g{1, 1 + std::numbers::pi_v<long double>, 400};
    auto s = radial_eigensolve(zero, 0, g, 3);
    for (int k = 1; k <= 3; ++k) EXPECT_NEAR(s.values[static_cast<std::size_t>(k - 1)], k * k, 1e-8);
}

TEST(Radial, SecondOrderConvergence) {
    RadialPotential V = [](long double r) { return r * r; };
    RadialGrid g{0, 8, 100};
    std::vector<long double> err;
    for (int i = 0; i < 4; ++i) {
        err.push_back(std::fabs(lowest_raw(V, 0, g, 0) - 3));
        g = g.refined();
    }
    for (std::size_t i = 1; i < err.size(); ++i) {
        long double slope = std::log(err[i - 1] / err[i]) / std::log(2.0L);
        EXPECT_NEAR(static_cast<double>(slope), 2.0, 0.2);
    }
}

TEST(Radial, GroundStatePeakNearWellMinimum) {
    const long double w = 1, D = 1000, ell = 1 + (D - 3) / 2;
    RadialPotential V = [w](long double r) { return w * w * r * r; };
    RadialGrid g = auto_grid(V, ell, harmonic_levels(w, ell, 2).back(), 2000);
    std::vector<long double> d, e;
    radial_matrix(V, ell, g, d, e);
    auto u = tridiagonal_eigenvector(d, e, tridiagonal_eigenvalue(d, e, 0));
    std::size_t peak = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (std::fabs(u[i]) > std::fabs(u[peak])) peak = i;
    long double R = std::pow(ell * (ell + 1) / (w * w), 0.25L);
    EXPECT_LT(std::fabs(g.r(static_cast<int>(peak) + 1) - R) / R, 0.05);
}

TEST(Radial, EffectiveCurvature) {
    for (long double w : {0.5L, 1.0L, 3.0L}) {
        const long double ell = 1 + (1e4L - 3) / 2;
        RadialPotential V = [w](long double r) { return w * w * r * r; };
        long double R = std::pow(ell * (ell + 1) / (w * w), 0.25L), h = 1e-3L * R;
        long double curv = (effective_potential(V, ell, R + h) - 2 * effective_potential(V, ell, R) +
                            effective_potential(V, ell, R - h)) / (2 * h * h);
        EXPECT_NEAR(static_cast<double>(curv / (4 * w * w)), 1.0, 1e-4);
    }
}

TEST(Radial, GridErrors) {
    RadialPotential V = [](long double r) { return r * r; };
    EXPECT_THROW(radial_eigensolve(V, 0, RadialGrid{0, 1, 2}, 1), std::invalid_argument);
    EXPECT_THROW(radial_eigensolve(V, 0, RadialGrid{1, 0, 10}, 1), std::invalid_argument);
    EXPECT_THROW(radial_eigensolve(V, 0, RadialGrid{0, 1, 10}, 0), std::invalid_argument);
}

TEST(QesEnergies, SexticTwoLevelClosedForm) {
    // alpha0 = 0, N = 2: E = +-sqrt(8 gamma (2L + D))
    QesSystem sys;
    sys.N = 2;
    sys.L = 1;
    sys.D = Rational(100);
    Rational gamma(1, 2), ell = Rational(1) + Rational(97, 2);
    sys.potential = from_generators(1, {Rational(0), gamma}, {sextic_constraint(0, gamma, 2, ell)});
    auto e = qes_exact_energies(sys);
    ASSERT_EQ(e.size(), 2u);
    long double x = std::sqrt(8 * 0.5L * 102);
    EXPECT_NEAR(e[0], -x, 1e-12);
    EXPECT_NEAR(e[1], x, 1e-12);
}

TEST(QesEnergies, NumericAgreesAtFiniteD) {
    for (int N = 1; N <= 4; ++N) {
        QesSystem sys;
        sys.N = N;
        sys.L = 0;
        sys.D = Rational(20);
        Rational a0(1, 2), gamma(1), ell = Rational(17, 2);
        sys.potential = from_generators(1, {a0, gamma}, {sextic_constraint(a0, gamma, N, ell)});
        auto V = constrained_potential(sys);
        for (long double E : qes_exact_energies(sys)) {
            RadialGrid g = auto_grid(V, 8.5L, E + 20, 1200);
            std::vector<long double> d, ev;
            radial_matrix(V, 8.5L, g, d, ev);
            int k = sturm_count(d, ev, E);
            auto s = radial_eigensolve(V, 8.5L, g, std::vector<int>{std::max(0, k - 1), k});
            long double best = std::min(std::fabs(s.values[0] - E), std::fabs(s.values[1] - E));
            EXPECT_LT(best, 1e-6L * (std::fabs(E) + 1)) << N << " " << static_cast<double>(E);
        }
    }
}

TEST(Trend, SexticBothRoots) {
    for (long s : {-1L, 1L}) {
        TrendConfig c;
        c.s = s;
        auto r = largeD_trend(c);
        ASSERT_EQ(r.rows.size(), 3u);
        EXPECT_TRUE(r.monotone);
        EXPECT_LT(r.rows.back().rel_error, 0.02);
        for (const auto& row : r.rows) {
            EXPECT_TRUE(row.converged);
            EXPECT_LT(std::fabs(row.numeric - row.exact_qes), 1e-6L * std::fabs(row.exact_qes));
            EXPECT_GT(row.second_distance, std::fabs(row.predicted - row.numeric));
        }
    }
}

TEST(Trend, WrongSignDoesNotShrink) {
    TrendConfig c;
    auto r = largeD_trend(c);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        EXPECT_GT(r.rows[i].flipped_rel_error, 1.5);
        if (i) EXPECT_GE(r.rows[i].flipped_rel_error, r.rows[i - 1].flipped_rel_error);
    }
}

TEST(Trend, HarmonicLeadingEnergy) {
    TrendConfig c;
    c.q = 0;
    c.gamma = 1;
    auto r = largeD_trend(c);
    EXPECT_TRUE(r.monotone);
    for (const auto& row : r.rows) EXPECT_LT(std::fabs(row.numeric - row.exact_qes), 1e-6L * row.exact_qes);
}

TEST(Trend, CsvAndErrors) {
    TrendConfig c;
    c.D = {Rational(100)};
    auto csv = to_csv(largeD_trend(c));
    EXPECT_EQ(csv.rfind("D,predicted,numeric,rel_error,bound,exact_qes,second_distance,flipped_rel_error\n100,20,", 0), 0u);
    c.D = {Rational(1000), Rational(100)};
    EXPECT_THROW(largeD_trend(c), std::invalid_argument);
    c.q = 2;
    EXPECT_THROW(largeD_trend(c), std::invalid_argument);
}
