#include <gtest/gtest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "qes/physmap.hpp"

using namespace qes;

namespace {

QesSystem sextic(const Rational& alpha0, const Rational& gamma, int N, const Rational& D, int L = 0) {
    QesSystem sys;
    sys.N = N;
    sys.L = L;
    sys.D = D;
    Rational ell = Rational(L) + (D - 3) / 2;
    sys.potential = from_generators(1, {alpha0, gamma}, {sextic_constraint(alpha0, gamma, N, ell)});
    return sys;
}

std::vector<Rational> rats(std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST(Spectrum, SexticExample) {
    auto sys = sextic(0, Rational(1, 2), 3, 10000);
    auto spec = spectrum_from_tuples(sys, spectrum_inputs({rats({2})}));
    ASSERT_EQ(spec.levels.size(), 1u);
    // (64 g_2)^{1/4} sqrt(D) s with g_2 = 1/4
    long double expect = std::pow(64.0L / 4, 0.25L) * 100 * 2;
    EXPECT_NEAR(spec.levels[0].energy, expect, 1e-9L * expect);
    EXPECT_NEAR(spec.levels[0].energy, 400, 1e-9);
    EXPECT_NEAR(spec.levels[0].couplings[0], -400, 1e-9);
    EXPECT_NEAR(spec.tau, 200, 1e-12);
}

TEST(Spectrum, PureShift) {
    auto sys = sextic(3, 2, 2, 500);
    auto spec = spectrum_from_tuples(sys, spectrum_inputs({rats({0})}));
    // alpha0 = g_1 / (2 sqrt(g_2))
    Rational alpha0 = sys.potential.g[1] / (2 * 2);
    EXPECT_EQ(alpha0, 3);
    EXPECT_NEAR(spec.levels[0].energy, 1500, 1e-12);
    EXPECT_EQ(spec.levels[0].energy_formal, "3*D");
}

TEST(Spectrum, FormalEnergy) {
    auto sys = sextic(0, 1, 3, 100);
    auto spec = spectrum_from_tuples(sys, spectrum_inputs({rats({-2})}, {"j=1"}));
    EXPECT_EQ(spec.levels[0].label, "j=1");
    EXPECT_EQ(spec.levels[0].energy_formal, "-4*2^(1/2)*gamma^(1/2)*D^(1/2)");
    EXPECT_NEAR(spec.levels[0].energy, -4 * std::sqrt(2.0L) * 10, 1e-12);
}

TEST(Spectrum, MonotoneInS) {
    for (long N = 1; N <= 8; ++N) {
        auto sys = sextic(Rational(1, 3), Rational(5, 7), static_cast<int>(N), 2000, 1);
        std::vector<std::vector<Rational>> t;
        for (long j = 1; j <= N; ++j) t.push_back(rats({-N - 1 + 2 * j}));
        auto spec = spectrum_from_tuples(sys, spectrum_inputs(t));
        for (std::size_t i = 1; i < spec.levels.size(); ++i) EXPECT_LT(spec.levels[i - 1].energy, spec.levels[i].energy);
    }
}

TEST(Spectrum, PrefactorIdentity) {
    // (64 g_2)^{1/4} sqrt(D) = tau for q = 1, symbolically: 2^{3/2} gamma^{1/2} D^{1/2}
    FormalTerm tau = scaling(1).tau;
    FormalTerm expect{2, Rational(1, 2), Rational(1, 2), Rational(1, 2), 0};
    expect.canonicalize();
    EXPECT_EQ(tau, expect);
    for (long g2num : {1L, 4L, 9L, 49L}) {
        Rational gamma = 0;
        Rational g2(g2num, 16);
        g2.canonicalize();
        ASSERT_TRUE(rational_sqrt(g2, gamma));
        for (long D : {10L, 1000L}) {
            long double lhs = std::pow(64 * to_long_double(g2), 0.25L) * std::sqrt(static_cast<long double>(D));
            EXPECT_NEAR(lhs, *scaling(1, Rational(D), gamma).tau_value, 1e-12L * lhs);
        }
    }
}

TEST(Spectrum, SolverInputs) {
    auto t = forward_substitute(build_trap(4, 4));
    auto set = real_solutions(t, eliminate(t));
    auto in = spectrum_inputs(set);
    ASSERT_EQ(in.size(), 3u);
    for (const auto& x : in) {
        ASSERT_EQ(x.s.size(), 4u);
        EXPECT_NEAR(static_cast<double>(x.s[0]), static_cast<double>(x.s[3]), 1e-15);
    }
    QesSystem sys;
    sys.N = 4;
    sys.D = 1000;
    sys.potential = from_generators(4, rats({0, 0, 0, 0, 1}), rats({0, 0, 0, 0}));
    auto spec = spectrum_from_tuples(sys, in);
    EXPECT_EQ(spec.levels.size(), 3u);
    EXPECT_EQ(spec.levels[0].couplings.size(), 4u);
}

TEST(Spectrum, Errors) {
    auto sys = sextic(0, 1, 2, 100);
    EXPECT_THROW(spectrum_from_tuples(sys, spectrum_inputs({rats({1, 2})})), std::invalid_argument);
    sys.D.reset();
    EXPECT_THROW(spectrum_from_tuples(sys, spectrum_inputs({rats({1})})), std::invalid_argument);
}

TEST(Spectrum, Export) {
    auto sys = sextic(0, Rational(1, 2), 2, 100);
    auto spec = spectrum_from_tuples(sys, spectrum_inputs({rats({-1}), rats({1})}));
    EXPECT_EQ(to_csv(spec), "q,N,D,level,s,energy,couplings\n1,2,100,1,-1,-20,20\n1,2,100,2,1,20,-20\n");
    auto j = nlohmann::json::parse(to_json(spec));
    EXPECT_EQ(j["levels"].size(), 2u);
    EXPECT_EQ(j["levels"][1]["energy"], "20");
    EXPECT_EQ(j["gamma"], "1/2");
}

TEST(Catalog, KnownRows) {
    auto ex = [](int q, int k) {
        std::vector<std::string> out;
        for (const auto& e : potential_catalog(q, k).exponents()) out.push_back(to_string(e));
        return out;
    };
    using V = std::vector<std::string>;
    EXPECT_EQ(ex(1, 2), (V{"-1", "1", "2"}));
    EXPECT_EQ(ex(2, 3), (V{"-4/3", "-2/3", "2/3", "4/3", "2"}));
    EXPECT_EQ(ex(3, 2), (V{"-1", "1", "2", "3", "4", "5", "6"}));
    EXPECT_EQ(to_string(potential_catalog(1, 1)), "a*r^2 + b*r^4 + r^6");
    EXPECT_EQ(to_string(potential_catalog(1, 2)), "a*r^(-1) + b*r + r^2");
    EXPECT_EQ(to_string(potential_catalog(1, 3)), "a*r^(-4/3) + b*r^(-2/3) + r^(2/3)");
    EXPECT_EQ(to_string(potential_catalog(1, 4)), "a*r^(-3/2) + b*r^(-1) + c*r^(-1/2)");
    EXPECT_EQ(to_string(potential_catalog(2, 1)), "a*r^2 + b*r^4 + c*r^6 + d*r^8 + r^10");
    EXPECT_EQ(to_string(potential_catalog(2, 2)), "a*r^(-1) + b*r + c*r^2 + d*r^3 + r^4");
    EXPECT_EQ(to_string(potential_catalog(2, 4)), "a*r^(-3/2) + b*r^(-1) + c*r^(-1/2) + d*r^(1/2) + r");
    EXPECT_EQ(to_string(potential_catalog(2, 5)), "a*r^(-8/5) + b*r^(-6/5) + c*r^(-4/5) + d*r^(-2/5) + r^(2/5)");
    EXPECT_EQ(to_string(potential_catalog(2, 6)), "a*r^(-5/3) + b*r^(-4/3) + c*r^(-1) + d*r^(-2/3) + f*r^(-1/3)");
}

TEST(Catalog, Invariants) {
    for (int q = 0; q <= 5; ++q)
        for (int k = 1; k <= 2 * q + 2; ++k) {
            auto f = potential_catalog(q, k);
            EXPECT_EQ(f.slots.size(), static_cast<std::size_t>(2 * q + 1));
            EXPECT_EQ(f.energy_source, k - 1);
            Rational top = make_rational(2 * (2 * q + 2), k) - 2;
            if (k < 2 * q + 2) EXPECT_EQ(f.slots.back().exponent, top);
            else EXPECT_EQ(top, 0);
        }
    EXPECT_THROW(potential_catalog(1, 5), std::invalid_argument);
    EXPECT_THROW(potential_catalog(1, 0), std::invalid_argument);
}

TEST(WaveFunction, SexticString) {
    auto p = from_generators(1, rats({0, 1}), rats({-11}));
    EXPECT_EQ(wave_function_string(p, {1, 2, 1}), "(1 + 2*y + 1*y^2)*exp(-(1/4*r^4))");
    auto h = from_generators(0, {Rational(3)}, {});
    EXPECT_EQ(wave_function_string(h, {1, -2, 1}), "(1 + -2*y + 1*y^2)*exp(-(3/2*r^2))");
    EXPECT_EQ(lambda_coefficients(from_generators(2, rats({2, 4, 6}), rats({0, 0}))), (std::vector<Rational>{1, 1, 1}));
}
