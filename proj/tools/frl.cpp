// frl: verification workflows for the Randers-changed metrics.
//
//   frl <command> --config <path> [--out <path>] [--seed N] [--tol-cond X] [--tol-direct X] [--stamp]
//   commands: tensors, inverse-check, flatness [--projective] [--dual], minkowski-check, all

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "frl/cli/runner.hpp"

namespace {

struct Args {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    double tol_cond = 0.0, tol_direct = 0.0;
    bool stamp = false, projective = false, dual = false;
};

void add_common(CLI::App* sub, Args& a) {
    sub->add_option("--config", a.config, "scenario JSON file")->required();
    sub->add_option("--out", a.out, "report path (default: stdout)");
    sub->add_option("--seed", a.seed, "override the random-sample seed");
    sub->add_option("--tol-cond", a.tol_cond, "override tol_cond")->check(CLI::PositiveNumber);
    sub->add_option("--tol-direct", a.tol_direct, "override tol_direct")->check(CLI::PositiveNumber);
    sub->add_flag("--stamp", a.stamp, "write a UTC timestamp (reports are then not byte-identical)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randers-changed metric verification tool"};
    app.set_version_flag("--version", frl::cli::kVersion);
    app.require_subcommand(1);
    Args a;
    CLI::App* subs[] = {
        app.add_subcommand("tensors", "closed-form gbar and Cartan tensors against the derivative oracles"),
        app.add_subcommand("inverse-check", "inverse cascade against the fundamental tensor"),
        app.add_subcommand("flatness", "projective and dual flatness conditions and direct residuals"),
        app.add_subcommand("minkowski-check", "grid check of the Minkowski-norm inequalities"),
        app.add_subcommand("all", "every check above"),
    };
    for (CLI::App* s : subs) add_common(s, a);
    subs[2]->add_flag("--projective", a.projective, "projective flatness");
    subs[2]->add_flag("--dual", a.dual, "dual flatness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    try {
        const frl::cli::Command cmd = frl::cli::parse_command(chosen->get_name());
        std::ifstream in(a.config);
        if (!in) throw frl::InputError("cannot read config '" + a.config + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        frl::cli::Scenario scenario = frl::cli::parse_scenario_text(buf.str());

        frl::cli::RunOptions opt;
        opt.stamp = a.stamp;
        if (chosen->count("--seed")) opt.seed = a.seed;
        if (chosen->count("--tol-cond")) opt.tol_cond = a.tol_cond;
        if (chosen->count("--tol-direct")) opt.tol_direct = a.tol_direct;
        if (cmd == frl::cli::Command::flatness && (a.projective || a.dual)) {
            opt.projective = a.projective;
            opt.dual = a.dual;
        }
        const frl::cli::RunResult r = frl::cli::run(cmd, std::move(scenario), opt);
        const std::string text = frl::cli::dump(r.report);
        if (a.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(a.out, std::ios::binary);
            if (!out) throw frl::InputError("cannot write report '" + a.out + "'");
            out << text;
        }
        if (r.exit_code != 0) std::cerr << "frl: some checks failed (see summary)\n";
        return r.exit_code;
    } catch (const frl::InputError& e) {
        std::cerr << "frl: input error: " << e.what() << "\n";
        return 2;
    } catch (const frl::Error& e) {
        std::cerr << "frl: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "frl: unexpected error: " << e.what() << "\n";
        return 2;
    }
}
