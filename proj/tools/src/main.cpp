#include "monoblock/cli/commands.hpp"
#include "monoblock/error.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>

using namespace monoblock;
using namespace monoblock::cli;

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string method;
    double delta = 0.0;
    bool no_timing = false;
};

void add_common(CLI::App* sub, Options& o, bool config_required) {
    auto* c = sub->add_option("-c,--config", o.config, "JSON experiment config");
    if (config_required) {
        c->required();
    }
    c->check(CLI::ExistingFile);
    sub->add_option("-o,--out", o.out, "Output directory (overrides the config)");
    sub->add_option("--delta", o.delta, "Stopping tolerance (overrides the config)")->check(CLI::PositiveNumber);
    sub->add_flag("--no-timing", o.no_timing, "Leave wall-clock times out of reports");
}

ExperimentConfig build_config(const Options& o) {
    ExperimentConfig cfg = o.config.empty() ? parse_config(nlohmann::json::object()) : load_config(o.config);
    if (!o.out.empty()) cfg.output.dir = o.out;
    if (!o.method.empty()) cfg.method = method_from_string(o.method);
    if (o.delta > 0.0) cfg.policy.delta = o.delta;
    if (o.no_timing) cfg.timing = false;
    if (const char* env = std::getenv("MONOBLOCK_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || n < 0) {
            raise(ErrorCode::Config, "MONOBLOCK_THREADS must be a nonnegative integer");
        }
        cfg.policy.threads = static_cast<int>(n);
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block monotone solver for coupled reaction-diffusion systems"};
    app.require_subcommand(1);
    Options o;

    auto* solve = app.add_subcommand("solve", "March the configured model and write fields and report.json");
    add_common(solve, o, true);
    solve->add_option("-m,--method", o.method, "jacobi, gauss-seidel or both")
        ->check(CLI::IsMember({"jacobi", "gauss-seidel", "both"}));
    auto* compare = app.add_subcommand("compare", "Jacobi against Gauss-Seidel in lockstep");
    add_common(compare, o, true);
    auto* verify = app.add_subcommand("verify", "Invariant, construction and oracle checks");
    add_common(verify, o, true);
    auto* conv = app.add_subcommand("convergence", "Manufactured-solution convergence studies");
    add_common(conv, o, false);
    auto* models = app.add_subcommand("models", "List bundled models");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    if (models->parsed()) {
        for (const auto& n : model_names()) {
            std::cout << n << '\n';
        }
        return kOk;
    }

    std::function<CommandResult(const ExperimentConfig&, std::ostream&)> cmd;
    if (solve->parsed()) cmd = cmd_solve;
    else if (compare->parsed()) cmd = cmd_compare;
    else if (verify->parsed()) cmd = cmd_verify;
    else cmd = cmd_convergence;

    try {
        const ExperimentConfig cfg = build_config(o);
        return cmd(cfg, std::cout).exit_code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::Config ? kConfigError : kSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSolverFailure;
    }
}
