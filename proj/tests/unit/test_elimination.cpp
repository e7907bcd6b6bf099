#include <gtest/gtest.h>

#include "qes/elimination.hpp"

using namespace qes;

namespace {

TailSystem tails(int q, int N) { return forward_substitute(build_trap(q, N)); }

std::string secular(int q, int N, Method m = Method::Auto, const std::string& pivot = "") {
    EliminationOptions o;
    o.method = m;
    o.pivot = pivot;
    return to_string(eliminate(tails(q, N), o).poly);
}

std::vector<Rational> ints(std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

std::vector<BigInt> bigs(std::initializer_list<long> v) {
    std::vector<BigInt> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

std::vector<std::vector<Rational>> rational_tuples(const RealSolutionSet& r) {
    std::vector<std::vector<Rational>> out;
    for (const auto& t : r.tuples) {
        auto v = t.rational_values();
        if (v) out.push_back(*v);
    }
    return out;
}

}  // namespace

TEST(ForwardSubstitute, QuarticN2) {
    auto t = tails(2, 2);
    EXPECT_EQ(to_string(t.p[1]), "-s");
    ASSERT_EQ(t.tails.size(), 2u);
    EXPECT_EQ(to_string(t.tails[0]), "s^2 - t");
    EXPECT_EQ(to_string(t.tails[1]), "s*t - 1");
}

TEST(ForwardSubstitute, SexticN3) {
    auto t = tails(1, 3);
    ASSERT_EQ(t.tails.size(), 1u);
    EXPECT_EQ(to_string(t.tails[0]), "s^3 - 4*s");
}

TEST(ForwardSubstitute, HarmonicBinomial) {
    auto t = tails(0, 4);
    EXPECT_TRUE(t.tails.empty());
    std::vector<long> expect{1, -3, 3, -1};
    for (int n = 0; n < 4; ++n)
        EXPECT_EQ(t.p[static_cast<std::size_t>(n)].constant_term(), expect[static_cast<std::size_t>(n)] * factorial(n));
}

TEST(ForwardSubstitute, DegreesAndRows) {
    for (int q = 1; q <= 5; ++q)
        for (int N = 1; N <= 6; ++N) {
            auto t = tails(q, N);
            ASSERT_EQ(t.p.size(), static_cast<std::size_t>(N));
            for (int n = 0; n < N; ++n) EXPECT_LE(t.p[static_cast<std::size_t>(n)].total_degree(), n);
            // each row of the trap matrix applied to p: rows 0..N-2 vanish, rows N-1.. are proportional to the tails
            auto trap = build_trap(q, N);
            for (int n = 0; n + 1 < N; ++n) {
                MultiPoly acc(t.vars);
                for (int m = 0; m < N; ++m) {
                    // p_m = p[m] / m!, scaled by (N-1)!
                    acc += trap.entry_poly(n, m) * t.p[static_cast<std::size_t>(m)] * BigInt(factorial(N) / factorial(m));
                }
                EXPECT_TRUE(acc.is_zero()) << q << " " << N << " row " << n;
            }
        }
}

TEST(ForwardSubstitute, SexticConditionIsDeterminant) {
    for (int N = 1; N <= 8; ++N) {
        auto t = tails(1, N);
        UniPoly cond = t.tails[0].to_unipoly(0);
        // det of the square trap matrix at sample points, up to a constant factor
        auto trap = build_trap(1, N);
        std::optional<Rational> ratio;
        for (long x = -N - 3; x <= N + 3; ++x) {
            auto m = trap.evaluate<Rational>({Rational(x)}, Rational(0));
            Rational d = determinant(m), c = cond.eval(Rational(x));
            if (c == 0) {
                EXPECT_EQ(d, 0);
                continue;
            }
            if (!ratio) ratio = d / c;
            EXPECT_EQ(d, *ratio * c);
        }
    }
}

TEST(Eliminate, SexticPolynomials) {
    EXPECT_EQ(secular(1, 3), "s^3 - 4*s");
    EXPECT_EQ(secular(1, 4), "s^4 - 10*s^2 + 9");
    EXPECT_EQ(secular(1, 5), "s^5 - 20*s^3 + 64*s");
    EXPECT_EQ(secular(1, 5, Method::Groebner), "s^5 - 20*s^3 + 64*s");
}

TEST(Eliminate, QuarticPolynomials) {
    EXPECT_EQ(secular(2, 2), "s^3 - 1");
    EXPECT_EQ(secular(2, 3), "s^6 - 7*s^3 - 8");
    EXPECT_EQ(secular(2, 4), "s^10 - 27*s^7 + 27*s^4 - 729*s");
    EXPECT_EQ(secular(2, 4, Method::Groebner), "s^10 - 27*s^7 + 27*s^4 - 729*s");
    EXPECT_EQ(secular(2, 4, Method::Groebner, "t"), "t^10 - 27*t^7 + 27*t^4 - 729*t");
}

TEST(Eliminate, SexticBandThree) {
    EXPECT_EQ(secular(3, 3), "t^9 - 12*t^5 - 64*t");
    EXPECT_EQ(secular(3, 4), "t^16 - 68*t^12 - 442*t^8 - 50116*t^4 + 50625");
}

TEST(Eliminate, ResultantMatchesGroebnerBandThree) {
    for (int N = 2; N <= 4; ++N) {
        auto t = tails(3, N);
        EliminationOptions r, g;
        r.method = Method::Resultant;
        g.method = Method::Groebner;
        UniPoly pr = eliminate(t, r).poly, pg = eliminate(t, g).poly;
        EXPECT_TRUE(pr.exact_div(pg).has_value()) << N;
    }
}

TEST(Eliminate, Errors) {
    EliminationOptions o;
    o.pivot = "z";
    EXPECT_THROW(eliminate(tails(2, 3), o), std::invalid_argument);
    EXPECT_THROW(eliminate(tails(0, 3)), std::invalid_argument);
    o = {};
    o.method = Method::Resultant;
    EXPECT_THROW(eliminate(tails(4, 2), o), std::invalid_argument);
    o.method = Method::Direct;
    EXPECT_THROW(eliminate(tails(2, 2), o), std::invalid_argument);
    EXPECT_THROW(parse_method("magic"), std::invalid_argument);
    EXPECT_EQ(parse_method("groebner"), Method::Groebner);
}

TEST(RealSolutions, QuarticN4) {
    auto t = tails(2, 4);
    auto s = eliminate(t);
    auto r = real_solutions(t, s);
    EXPECT_EQ(rational_tuples(r), (std::vector<std::vector<Rational>>{ints({0, 0}), ints({3, 3})}));
    EXPECT_EQ(r.tuples.size(), 2u);
    EXPECT_TRUE(r.complex_completion_only.empty());
}

TEST(RealSolutions, SexticN5) {
    auto t = tails(1, 5);
    auto r = real_solutions(t, eliminate(t));
    EXPECT_EQ(rational_tuples(r), (std::vector<std::vector<Rational>>{ints({-4}), ints({-2}), ints({0}), ints({2}), ints({4})}));
}

TEST(RealSolutions, BandThreeN3) {
    auto t = tails(3, 3);
    auto r = real_solutions(t, eliminate(t));
    EXPECT_EQ(rational_tuples(r), (std::vector<std::vector<Rational>>{ints({-2, 2, -2}), ints({0, -2, 0}),
                                                                     ints({0, 2, 0}), ints({2, 2, 2})}));
    EXPECT_EQ(r.tuples.size(), 4u);
    for (const auto& tp : r.tuples) EXPECT_TRUE(brute_force_check(build_trap(3, 3), tp));
}

TEST(RealSolutions, GoldenRatioTuples) {
    auto t = tails(4, 4);
    auto r = real_solutions(t, eliminate(t));
    auto golden = parse_unipoly("x^2 - x - 1");
    int irrational = 0;
    for (const auto& tp : r.tuples) {
        ASSERT_EQ(tp.values.size(), 4u);
        EXPECT_TRUE(tp.values[0] == tp.values[3]);
        EXPECT_TRUE(tp.values[1] == tp.values[2]);
        if (!tp.rational_values()) {
            ++irrational;
            EXPECT_TRUE(algebraic_is_root(tp.values[2], golden) || algebraic_is_root(tp.values[3], golden));
            EXPECT_TRUE(brute_force_check(build_trap(4, 4), tp));
            EXPECT_EQ(tp.algebraic_kernel.size(), 4u);
        }
    }
    EXPECT_EQ(r.tuples.size(), 3u);
    EXPECT_EQ(irrational, 2);
}

TEST(Kernel, Examples) {
    auto t2 = build_trap(1, 2);
    EXPECT_EQ(kernel_vector(t2, ints({-1})), bigs({1, 1}));
    EXPECT_EQ(kernel_vector(t2, ints({1})), bigs({1, -1}));
    EXPECT_EQ(kernel_vector(build_trap(1, 3), ints({0})), bigs({1, 0, -1}));
    EXPECT_EQ(kernel_vector(build_trap(0, 3), {}), bigs({1, -2, 1}));
    EXPECT_THROW(kernel_vector(build_trap(1, 3), ints({1})), DegenerateError);
}

TEST(Kernel, MatchesForwardSubstitution) {
    for (int N = 1; N <= 7; ++N) {
        auto t = tails(2, N);
        auto r = real_solutions(t, eliminate(t));
        for (const auto& tp : r.tuples) {
            auto v = *tp.rational_values();
            std::vector<Rational> p;
            for (int n = 0; n < N; ++n) p.push_back(t.p[static_cast<std::size_t>(n)].evaluate(v) / Rational(factorial(n)));
            EXPECT_EQ(primitive_integer_vector(p), tp.kernel);
        }
    }
}

TEST(BruteForce, Examples) {
    EXPECT_TRUE(brute_force_check(build_trap(1, 4), ints({3})));
    EXPECT_FALSE(brute_force_check(build_trap(1, 4), ints({2})));
    EXPECT_TRUE(brute_force_check(build_trap(2, 3), ints({2, 2})));
    EXPECT_FALSE(brute_force_check(build_trap(2, 3), ints({2, 1})));
    if (!guard_override()) EXPECT_THROW(brute_force_check(build_trap(1, 9), ints({0})), GuardExceeded);
}

TEST(QuotientElement, Arithmetic) {
    auto mod = QuotientElement::make_modulus(parse_unipoly("u^2 - u - 1"));
    QuotientElement u(mod, {Rational(0), Rational(1)});
    QuotientElement sq = u * u;
    EXPECT_EQ(sq.coeffs(), ints({1, 1}));
    EXPECT_TRUE((sq - u - QuotientElement(1L)).is_zero());
    EXPECT_EQ((u * u * u).coeffs(), ints({1, 2}));
}

TEST(Guards, Defaults) {
    EXPECT_EQ(default_guard_N(3), 12);
    EXPECT_EQ(default_guard_N(4), 6);
    EXPECT_EQ(default_guard_N(5), 6);
    EXPECT_NO_THROW(check_guard(2, 12));
    if (!guard_override()) {
        EXPECT_THROW(check_guard(2, 13), GuardExceeded);
        EXPECT_THROW(check_guard(5, 7), GuardExceeded);
        EXPECT_THROW(check_guard(1, 5, 4), GuardExceeded);
    }
}
