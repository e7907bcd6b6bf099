#include <gtest/gtest.h>

#include <set>

#include "qes/closedforms.hpp"

using namespace qes;

namespace {

std::vector<BigInt> bigs(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

RootTuple ints(std::initializer_list<long> v) {
    RootTuple out;
    for (long x : v) out.emplace_back(x);
    return out;
}

Surd5 half_surd(long a, long b) { return {make_rational(a, 2), make_rational(b, 2)}; }

TailSystem tails(int q, int N) { return forward_substitute(build_trap(q, N)); }

}  // namespace

namespace qes {
void PrintTo(const Surd5& v, std::ostream* os) { *os << to_string(v); }
}  // namespace qes

TEST(Tables, ChecksumPinned) {
    EXPECT_EQ(embedded_table_sha256(), "d42c83c8b6e88b722dab92af90dbfb570b52eccdf8ddb7054bfae1e7fe13487d");
}

TEST(Tables, RoundTrip) {
    std::string text(embedded_table_text());
    EXPECT_EQ(format_tables(parse_tables(text)), text);
    for (const auto& s : embedded_tables().sections)
        for (const auto& r : s.rows)
            for (const auto& v : r) EXPECT_EQ(parse_surd(to_string(v)), v);
}

TEST(Tables, SectionSizes) {
    const auto& d = embedded_tables();
    EXPECT_EQ(d.section("table1 N=4").rows.size(), 3u);
    EXPECT_EQ(d.section("table1 N=5").rows.size(), 6u);
    EXPECT_EQ(d.section("table1 N=6").rows.size(), 6u);
    EXPECT_EQ(d.section("table2").rows.size(), 4u);
    EXPECT_EQ(d.section("table3").rows.size(), 20u);
    EXPECT_EQ(d.section("table4").rows.size(), 2u);
    EXPECT_THROW(d.section("table5"), std::out_of_range);
}

TEST(Tables, ParseErrors) {
    EXPECT_THROW(parse_tables("1 2\n"), std::invalid_argument);
    EXPECT_THROW(parse_tables("[a]\n(1+x*sqrt5)/2\n"), std::invalid_argument);
    EXPECT_THROW(parse_tables("[a]\n\n"), std::invalid_argument);
    EXPECT_THROW(parse_surd("(1+1*sqrt5)/0"), std::invalid_argument);
}

TEST(Surd5, Tokens) {
    EXPECT_EQ(to_string(half_surd(1, 1)), "(1+1*sqrt5)/2");
    EXPECT_EQ(to_string(Surd5(Rational(-1), Rational(-1))), "(-1-1*sqrt5)/1");
    EXPECT_EQ(to_string(Surd5(Rational(3, 4))), "3/4");
    EXPECT_EQ(to_string(Surd5(Rational(1, 3), Rational(1, 2))), "(2+3*sqrt5)/6");
    EXPECT_EQ(parse_surd("(4-2*sqrt5)/4"), half_surd(2, -1));
    EXPECT_EQ(parse_surd("-7"), Surd5(-7L));
}

TEST(Surd5, Arithmetic) {
    Surd5 phi = half_surd(1, 1);
    EXPECT_EQ(phi * phi - phi - Surd5(1L), Surd5());
    EXPECT_EQ(phi * phi.conjugate(), Surd5(-1L));
    EXPECT_NEAR(phi.approx(), 1.6180339887, 1e-9);
    EXPECT_TRUE(evaluate(parse_unipoly("x^2 - x - 1"), phi).is_zero());
}

TEST(Surd5, ToAlgebraic) {
    auto golden = parse_unipoly("x^2 - x - 1");
    AlgebraicReal p = to_algebraic(half_surd(1, 1)), m = to_algebraic(half_surd(1, -1));
    EXPECT_TRUE(algebraic_is_root(p, golden));
    EXPECT_TRUE(algebraic_is_root(m, golden));
    EXPECT_NEAR(p.approx(), 1.618034, 1e-5);
    EXPECT_NEAR(m.approx(), -0.618034, 1e-5);
    EXPECT_EQ(to_algebraic(Surd5(4L)).as_rational(), Rational(4));
    for (long a = -6; a <= 6; a += 3)
        for (long b = -2; b <= 2; ++b)
            for (long c : {1L, 2L, 3L}) {
                Surd5 v(Rational(a, c), Rational(b, c));
                v.a.canonicalize();
                v.b.canonicalize();
                EXPECT_NEAR(to_algebraic(v).approx(), v.approx(), 1e-6);
            }
}

TEST(ClosedForms, HarmonicKernel) {
    EXPECT_EQ(q0_kernel(1), bigs({1}));
    EXPECT_EQ(q0_kernel(3), bigs({1, -2, 1}));
    EXPECT_EQ(q0_kernel(5), bigs({1, -4, 6, -4, 1}));
    for (int N = 1; N <= 10; ++N) EXPECT_EQ(q0_kernel(N), kernel_vector(build_trap(0, N), {}));
}

TEST(ClosedForms, SexticRoots) {
    EXPECT_EQ(q1_roots(3), bigs({-2, 0, 2}));
    EXPECT_EQ(q1_roots(4), bigs({-3, -1, 1, 3}));
    EXPECT_EQ(q1_roots(1), bigs({0}));
}

TEST(ClosedForms, SexticKernels) {
    EXPECT_EQ(q1_kernel(3, 1), bigs({1, 2, 1}));
    EXPECT_EQ(q1_kernel(3, 2), bigs({1, 0, -1}));
    EXPECT_EQ(q1_kernel(3, 3), bigs({1, -2, 1}));
    EXPECT_EQ(q1_kernel(2, 1), bigs({1, 1}));
    EXPECT_THROW(q1_kernel(3, 4), std::invalid_argument);
}

TEST(ClosedForms, SexticKernelsAnnihilated) {
    for (int N = 1; N <= 12; ++N)
        for (int j = 1; j <= N; ++j) {
            auto m = build_trap(1, N).evaluate<Rational>({Rational(-N - 1 + 2 * j)}, Rational(0));
            auto k = q1_kernel(N, j);
            for (std::size_t r = 0; r < m.rows(); ++r) {
                Rational acc = 0;
                for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * Rational(k[c]);
                EXPECT_EQ(acc, 0) << N << " " << j;
            }
        }
}

TEST(ClosedForms, SexticKernelsIndependent) {
    for (int N = 1; N <= 9; ++N) {
        Matrix<Rational> m(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
        for (int j = 1; j <= N; ++j) {
            auto k = q1_kernel(N, j);
            for (int n = 0; n < N; ++n) m(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(n)) = Rational(k[static_cast<std::size_t>(n)]);
        }
        EXPECT_NE(determinant(m), 0) << N;
    }
}

TEST(ClosedForms, QuarticRoots) {
    EXPECT_EQ(q2_roots(2), (std::vector<RootTuple>{ints({1, 1})}));
    EXPECT_EQ(q2_roots(3), (std::vector<RootTuple>{ints({2, 2}), ints({-1, -1})}));
    EXPECT_EQ(q2_roots(4), (std::vector<RootTuple>{ints({3, 3}), ints({0, 0})}));
    EXPECT_THROW(q2_roots(1), std::invalid_argument);
}

TEST(ClosedForms, BandThreeRoots) {
    auto v3 = q3_roots(3);
    std::set<RootTuple> n3(v3.begin(), v3.end());
    EXPECT_EQ(n3, (std::set<RootTuple>{ints({-2, 2, -2}), ints({0, 2, 0}), ints({2, 2, 2}), ints({0, -2, 0})}));
    auto n4 = q3_roots(4);
    EXPECT_EQ(n4, (std::vector<RootTuple>{ints({-3, 3, -3}), ints({-1, 3, -1}), ints({1, 3, 1}), ints({3, 3, 3}),
                                          ints({-1, -1, -1}), ints({1, -1, 1})}));
    auto sec = parse_unipoly("t^16 - 68*t^12 - 442*t^8 - 50116*t^4 + 50625", "t");
    for (const auto& t : n4) EXPECT_EQ(sec.eval(t[2]), 0);
    for (int N = 2; N <= 10; ++N) {
        std::size_t count = 0;
        for (int j = 1; j <= (N + 1) / 2; ++j) count += static_cast<std::size_t>(N + 2 - 2 * j);
        EXPECT_EQ(q3_roots(N).size(), count);
    }
}

TEST(ClosedForms, QuarticTable) {
    auto n4 = q4_table_pairs(4);
    ASSERT_EQ(n4.size(), 3u);
    EXPECT_EQ(n4[0][0], Surd5(3L));
    EXPECT_EQ(n4[1][0], half_surd(1, 1));
    EXPECT_EQ(n4[1][1], half_surd(1, -1));
    EXPECT_EQ(n4[2][0], half_surd(1, -1));
    auto n5 = q4_table_pairs(5);
    EXPECT_NE(std::find(n5.begin(), n5.end(), std::array<Surd5, 2>{Surd5(-1L), Surd5(-1L)}), n5.end());
    EXPECT_NE(std::find(n5.begin(), n5.end(), std::array<Surd5, 2>{Surd5(4L), Surd5(4L)}), n5.end());
    auto n6 = q4_table_pairs(6);
    Surd5 r5(Rational(0), Rational(1));
    EXPECT_NE(std::find(n6.begin(), n6.end(), std::array<Surd5, 2>{r5, r5.conjugate()}), n6.end());
    EXPECT_NE(std::find(n6.begin(), n6.end(), std::array<Surd5, 2>{Surd5(5L), Surd5(5L)}), n6.end());
    auto roots = q4_table_roots(4);
    EXPECT_TRUE(algebraic_is_root(roots[1][0], parse_unipoly("x^2 - x - 1")));
    EXPECT_THROW(q4_table_pairs(7), std::invalid_argument);
}

TEST(ClosedForms, QuarticTableSatisfiesTails) {
    for (int N = 4; N <= 6; ++N) {
        auto ts = tails(4, N);
        for (const auto& t : q4_table_tuples(N))
            for (const auto& c : ts.tails) EXPECT_TRUE(evaluate_in(c, t, Surd5{}).is_zero()) << N;
    }
}

TEST(FactorFamily, SexticRealRoots) {
    auto F = q5_factor_family(6);
    auto r = rational_roots(F.P(1));
    EXPECT_EQ(r, ints({-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5}));
    UniPoly p1 = F.P(1);
    EXPECT_EQ(gcd(p1, p1.derivative()).degree(), 0);
}

TEST(FactorFamily, QuotedCoefficients) {
    UniPoly p6 = q5_factor_family(6).product();
    EXPECT_EQ(p6.degree(), 91);
    EXPECT_EQ(p6.coeff(91), 1);
    EXPECT_EQ(p6.coeff(85), -16120);
    EXPECT_EQ(p6.coeff(79), 49490694);
    EXPECT_EQ(p6.coeff(73), BigInt("-286066906320"));
    EXPECT_EQ(p6.coeff(67), BigInt("-3553475147614293"));
    EXPECT_EQ(p6.coeff(1), BigInt("-319213100611990814833843025405983064064000000"));
    UniPoly p7 = q5_factor_family(7).product();
    EXPECT_EQ(p7.degree(), 127);
    EXPECT_EQ(p7.coeff(121), -60071);
    EXPECT_EQ(p7.coeff(115), 1021190617);
    EXPECT_EQ(p7.coeff(109), BigInt("-11387407144495"));
    EXPECT_EQ(p7.coeff(1), BigInt("125371220122726667620073789326658415654595883041274311330630729728") * 1000000);
}

TEST(FactorFamily, Positivity) {
    for (int N : {6, 7}) {
        auto F = q5_factor_family(N);
        for (std::size_t i = 1; i < 4; ++i)
            for (const auto& f : F.factors[i]) EXPECT_TRUE(positive_definite_quadratic(f)) << N << " " << to_string(f);
    }
    EXPECT_EQ(q5_factor_family(7).P(1).degree(), 13);
    EXPECT_FALSE(positive_definite_quadratic(parse_unipoly("x^2 - 28*x + 2")));
    EXPECT_THROW(q5_factor_family(5), std::invalid_argument);
}

TEST(FactorFamily, MatchesElimination) {
    auto sec = eliminate(tails(5, 6)).poly;
    EXPECT_EQ(sec, q5_factor_family(6).product().with_var(sec.var()));
}

TEST(Table3, Contents) {
    auto roots = q5_table3_roots();
    ASSERT_EQ(roots.size(), 20u);
    EXPECT_EQ(roots[0], ints({-5, 5, -5, 5, -5}));
    EXPECT_NE(std::find(roots.begin(), roots.end(), ints({-4, 2, -1, 2, -4})), roots.end());
    for (const auto& t : roots) {
        EXPECT_EQ(t[0], t[4]);
        EXPECT_EQ(t[1], t[3]);
        EXPECT_LE(abs(t[4]), 5);
    }
}

TEST(Table3, SatisfiesTailsWithKernel) {
    auto trap = build_trap(5, 6);
    auto ts = forward_substitute(trap);
    for (const auto& t : q5_table3_roots()) {
        for (const auto& c : ts.tails) EXPECT_EQ(c.evaluate(t), 0);
        auto k = kernel_vector(trap, t);
        EXPECT_NE(k.back(), 0);
    }
}

TEST(Verify, Sextic) {
    for (int N = 1; N <= 12; ++N) {
        auto r = verify_closed_forms(1, N);
        EXPECT_TRUE(r.ok()) << N;
        EXPECT_TRUE(r.solver_compared);
        EXPECT_EQ(r.solver_tuples, static_cast<std::size_t>(N));
    }
    EXPECT_TRUE(verify_closed_forms(0, 6).ok());
}

TEST(Verify, Quartic) {
    for (int N = 2; N <= 8; ++N) {
        auto r = verify_closed_forms(2, N);
        EXPECT_TRUE(r.ok()) << N;
        EXPECT_EQ(r.solver_tuples, r.formula_tuples);
    }
}

TEST(Verify, BandThree) {
    for (int N = 2; N <= 6; ++N) EXPECT_TRUE(verify_closed_forms(3, N).ok()) << N;
    VerifyOptions formula_only;
    formula_only.solver = false;
    for (int N = 7; N <= 8; ++N) EXPECT_TRUE(verify_closed_forms(3, N, formula_only).ok()) << N;
}

TEST(Verify, QuarticTableAndSign) {
    auto r = verify_closed_forms(4, 4);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.solver_tuples, 3u);
    ASSERT_EQ(r.candidates.size(), 2u);
    EXPECT_EQ(r.candidates[0].value, "(-1+1*sqrt5)/2");
    EXPECT_FALSE(r.candidates[0].root);
    EXPECT_EQ(r.candidates[1].value, "(1-1*sqrt5)/2");
    EXPECT_TRUE(r.candidates[1].root);
}

TEST(Verify, Counterexample) {
    auto ts = tails(2, 3);
    auto bad = check_tuples(ts, {{Surd5(2L), Surd5(2L)}, {Surd5(2L), Surd5(1L)}});
    ASSERT_FALSE(bad.empty());
    for (const auto& c : bad) {
        EXPECT_EQ(c.tuple, (std::vector<std::string>{"2", "1"}));
        EXPECT_NE(c.residual, "0");
        EXPECT_EQ(c.condition.rfind("tail ", 0), 0u);
    }
    EXPECT_THROW(verify_closed_forms(6, 3), std::invalid_argument);
    EXPECT_THROW(verify_closed_forms(5, 5), std::invalid_argument);
}

TEST(Verify, BandFiveTable) {
    auto r = verify_closed_forms(5, 6);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.formula_tuples, 20u);
    EXPECT_TRUE(r.solver_compared);
}
