#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "commands.hpp"

using namespace qes::cli;

namespace {

RunConfig make(const std::string& command, int q, std::vector<int> N) {
    RunConfig c;
    c.command = command;
    c.q = q;
    c.N = std::move(N);
    return c;
}

}  // namespace

TEST(Cli, SecularText) {
    EXPECT_EQ(run(make("secular", 1, {5})).body, "s^5 - 20*s^3 + 64*s\n");
    EXPECT_EQ(run(make("secular", 2, {3})).body, "s^6 - 7*s^3 - 8\n");
    auto c = make("secular", 3, {3});
    c.pivot = "t";
    EXPECT_EQ(run(c).body, "t^9 - 12*t^5 - 64*t\n");
    c.pivot = "u";
    EXPECT_EQ(run(c).code, kInvalidConfig);
}

TEST(Cli, RootsAndKernel) {
    auto r = run(make("roots", 2, {4}));
    EXPECT_EQ(r.code, kOk);
    EXPECT_EQ(r.body, "(0, 0)\n(3, 3)\n");
    EXPECT_EQ(run(make("kernel", 0, {4})).body, "[1,-3,3,-1]\n");
    auto k = make("kernel", 1, {3});
    k.s = {"2"};
    EXPECT_EQ(run(k).body, "(2) [1,-2,1]\n");
    k.s = {"1"};
    EXPECT_EQ(run(k).code, kCounterexample);
}

TEST(Cli, Verify) {
    auto c = make("verify", 5, {6});
    c.tables = true;
    auto r = run(c);
    EXPECT_EQ(r.code, kOk);
    EXPECT_EQ(r.body.rfind("PASS", 0), 0u);
    auto v = run(make("verify", 2, {2, 3, 4}));
    EXPECT_EQ(v.code, kOk);
    EXPECT_NE(v.body.find("[q=2 N=4]\nPASS"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run(make("secular", 1, {0})).code, kInvalidConfig);
    EXPECT_EQ(run(make("secular", 0, {3})).code, kInvalidConfig);
    EXPECT_EQ(run(make("bogus", 1, {3})).code, kInvalidConfig);
    EXPECT_EQ(run(make("numcheck", 2, {3})).code, kInvalidConfig);
    auto g = make("secular", 1, {5});
    g.guard_N = 4;
    auto r = run(g);
    EXPECT_EQ(r.code, kGuard);
    EXPECT_FALSE(r.error.empty());
    auto bad = make("physmap", 1, {2});
    bad.gamma = "-1";
    EXPECT_EQ(run(bad).code, kInvalidConfig);
}

TEST(Cli, JsonEmbedsConfig) {
    auto c = make("roots", 2, {4});
    c.format = "json";
    auto j = nlohmann::json::parse(run(c).body);
    EXPECT_EQ(j["version"], QES_VERSION);
    EXPECT_EQ(j["config"]["command"], "roots");
    EXPECT_EQ(j["results"][0]["tuples"].size(), 2u);
    EXPECT_EQ(j["results"][0]["tuples"][1]["kernel"], (std::vector<std::string>{"1", "-3", "3", "-1"}));
    c.format = "text";
    auto art = artifact(c, run(c));
    EXPECT_EQ(art.rfind("# qes " QES_VERSION "\n# config {", 0), 0u);
}

TEST(Cli, JobsDoNotChangeResults) {
    auto c = make("roots", 3, {2, 3, 4, 5});
    c.format = "csv";
    auto one = run(c);
    c.jobs = 4;
    auto four = run(c);
    EXPECT_EQ(one.body, four.body);
    EXPECT_EQ(run(c).body, four.body);
}

TEST(Cli, Physmap) {
    auto c = make("physmap", 1, {2});
    c.D = {"100"};
    c.format = "csv";
    EXPECT_EQ(run(c).body, "q,N,D,level,s,energy,couplings\n1,2,100,1,-1,-20,20\n1,2,100,2,1,20,-20\n");
    auto cat = make("physmap", 1, {});
    cat.catalog = true;
    auto r = run(cat);
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.body.find("k=2 V = a*r^(-1) + b*r + r^2"), std::string::npos);
}

TEST(Cli, Numcheck) {
    auto c = make("numcheck", 1, {2});
    c.L = 1;
    auto r = run(c);
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.body.find("trend q=1 N=2 s=-1 monotone"), std::string::npos);
    EXPECT_NE(r.body.find("trend q=1 N=2 s=1 monotone"), std::string::npos);
    c.D = {"1000", "100"};
    EXPECT_EQ(run(c).code, kInvalidConfig);
}

TEST(Cli, Range) {
    EXPECT_EQ(parse_range("2..4"), (std::vector<int>{2, 3, 4}));
    EXPECT_EQ(parse_range("7"), (std::vector<int>{7}));
    EXPECT_THROW(parse_range("4..2"), std::invalid_argument);
    EXPECT_THROW(parse_range("x"), std::invalid_argument);
}
