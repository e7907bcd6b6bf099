#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using qes::cli::RunConfig;
    CLI::App app{"Exact large-D solver for quasi-exactly-solvable polynomial oscillators"};
    app.set_version_flag("--version", std::string("qes ") + QES_VERSION);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string n_single, n_range;
    int guard = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "Degree parameter; the potential has degree 4q+2");
        auto* n = sub->add_option("--N", n_single, "Number of QES levels (integer or a..b)");
        auto* r = sub->add_option("--N-range", n_range, "Inclusive range a..b");
        n->excludes(r);
        sub->add_option("--guard-N", guard, "Largest N attempted without QES_GUARD_OVERRIDE=1");
        sub->add_option("--format", cfg.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--out", cfg.out, "Write the result here (with the run configuration embedded)");
        sub->add_option("--jobs", cfg.jobs, "Parallel (q, N) instances");
        sub->add_option("--seed", cfg.seed, "Seed recorded with the run");
    };
    auto add_solver = [&](CLI::App* sub) {
        sub->add_option("--pivot", cfg.pivot, "Variable kept by the elimination");
        sub->add_option("--method", cfg.method, "auto, direct, resultant or groebner");
    };
    auto add_physics = [&](CLI::App* sub) {
        sub->add_option("--D", cfg.D, "Dimensions, comma separated")->delimiter(',');
        sub->add_option("--gamma", cfg.gamma, "Leading generator coefficient (rational)");
        sub->add_option("--alpha", cfg.alpha, "alpha_0 .. alpha_{q-1}, comma separated")->delimiter(',');
        sub->add_option("--L", cfg.L, "Angular quantum number");
    };

    auto* secular = app.add_subcommand("secular", "Secular polynomial in the pivot variable");
    add_common(secular);
    add_solver(secular);
    auto* roots = app.add_subcommand("roots", "Real solution tuples of the trap system");
    add_common(roots);
    add_solver(roots);
    auto* kernel = app.add_subcommand("kernel", "Integer kernel vectors");
    add_common(kernel);
    add_solver(kernel);
    kernel->add_option("--s", cfg.s, "Explicit tuple s_1..s_q, comma separated")->delimiter(',');
    auto* verify = app.add_subcommand("verify", "Check closed forms and tables against the exact conditions");
    add_common(verify);
    verify->add_flag("--tables", cfg.tables, "Formula and table tuples only, no solver comparison");
    auto* physmap = app.add_subcommand("physmap", "Leading-order energies and couplings");
    add_common(physmap);
    add_solver(physmap);
    add_physics(physmap);
    physmap->add_flag("--catalog", cfg.catalog, "List the potential families for this q");
    auto* numcheck = app.add_subcommand("numcheck", "Finite-difference comparison against the large-D prediction");
    add_common(numcheck);
    add_physics(numcheck);

    try {
        app.parse(argc, argv);
        cfg.command = app.get_subcommands().front()->get_name();
        if (!n_single.empty()) cfg.N = qes::cli::parse_range(n_single);
        if (!n_range.empty()) cfg.N = qes::cli::parse_range(n_range);
        if (guard) cfg.guard_N = guard;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : qes::cli::kInvalidConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qes::cli::kInvalidConfig;
    }

    qes::cli::Output out;
    try {
        out = qes::cli::run(cfg);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return qes::cli::kInternal;
    }
    if (!out.error.empty()) std::cerr << "error: " << out.error << "\n";
    if (cfg.out.empty()) {
        std::cout << out.body;
    } else if (!out.body.empty()) {
        std::ofstream f(cfg.out, std::ios::binary);
        f << qes::cli::artifact(cfg, out);
        if (!f) {
            std::cerr << "error: cannot write " << cfg.out << "\n";
            return qes::cli::kInternal;
        }
    }
    return out.code;
}
