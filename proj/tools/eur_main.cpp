// eur: run verification scenarios and emit machine-readable reports.
//
//   eur list
//   eur run <scenario> [--param k=v]... [--grid-n N] [--hbar H] [--seed S]
//                      [--out PATH] [--format json|csv] [--config FILE]
//   eur verify --all [--tol-scale T] [--seed S]
//
// A config file holds the same keys as the flags, one `key = value` per line
// (`#` comments allowed). EUR_DEFAULT_GRID_N sets the default grid size.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "eur/scenarios.hpp"

namespace {

struct CliOptions {
    std::string scenario;
    std::vector<std::string> params;
    std::size_t grid_n = 0;
    double hbar = 1.0;
    std::uint64_t seed = 7;
    double tol_scale = 1.0;
    std::string out;
    std::string format = "json";
    std::string config;
};

void apply_param(eur::ScenarioSpec& spec, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("--param expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const double value = std::stod(kv.substr(eq + 1));
    spec.params[key] = value;
}

void apply_config_file(CliOptions& opt, eur::ScenarioSpec& spec) {
    if (opt.config.empty()) return;
    std::ifstream in(opt.config);
    if (!in) throw CLI::ValidationError("cannot open config file " + opt.config);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) continue;
        if (key == "grid-n")
            spec.grid_n = static_cast<std::size_t>(std::stoul(value));
        else if (key == "hbar")
            spec.hbar = std::stod(value);
        else if (key == "seed")
            spec.seed = std::stoull(value);
        else if (key == "tol-scale")
            spec.tol_scale = std::stod(value);
        else if (key == "format")
            opt.format = value;
        else if (key == "out")
            opt.out = value;
        else
            spec.params[key] = std::stod(value);
    }
}

void print_summary(const eur::Report& rep) {
    std::size_t pass = 0, fail = 0, other = 0;
    for (const auto& c : rep.checks) {
        const char* mark = "?";
        switch (c.status) {
            case eur::CheckStatus::pass: mark = "PASS"; ++pass; break;
            case eur::CheckStatus::fail: mark = "FAIL"; ++fail; break;
            case eur::CheckStatus::divergent: mark = "DIVERGENT"; ++other; break;
            case eur::CheckStatus::indeterminate: mark = "INDETERMINATE"; ++other; break;
        }
        std::printf("  [%s] %s (lhs=%.9g rhs=%.9g gap=%.3g)\n", mark, c.name.c_str(), c.lhs,
                    c.rhs, c.absolute_gap);
    }
    std::printf("%s: %zu passed, %zu failed, %zu flagged (%.2f s)\n", rep.scenario.c_str(),
                pass, fail, other, rep.runtime_seconds);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact uncertainty relation scenario runner"};
    app.require_subcommand(1);

    CliOptions opt;
    if (const char* env = std::getenv("EUR_DEFAULT_GRID_N")) opt.grid_n = std::stoul(env);

    auto* list = app.add_subcommand("list", "list available scenarios");

    auto* run = app.add_subcommand("run", "run one scenario and emit its report");
    run->add_option("scenario", opt.scenario, "scenario name")->required();
    run->add_option("--param", opt.params, "scenario parameter override key=value");
    run->add_option("--grid-n", opt.grid_n, "grid size override");
    run->add_option("--hbar", opt.hbar, "value of hbar");
    run->add_option("--seed", opt.seed, "random seed");
    run->add_option("--tol-scale", opt.tol_scale, "tolerance scale factor");
    run->add_option("--out", opt.out, "report output path");
    run->add_option("--format", opt.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--config", opt.config, "key=value config file (same keys as flags)");

    auto* verify = app.add_subcommand("verify", "run scenarios and fail on any failed check");
    bool verify_all = false;
    verify->add_flag("--all", verify_all, "run every registered scenario");
    verify->add_option("--tol-scale", opt.tol_scale, "tolerance scale factor");
    verify->add_option("--seed", opt.seed, "random seed");
    verify->add_option("--grid-n", opt.grid_n, "grid size override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : eur::scenario_names())
                std::printf("%-20s %s\n", name.c_str(),
                            eur::scenario_description(name).c_str());
            return 0;
        }
        if (run->parsed()) {
            eur::ScenarioSpec spec;
            spec.name = opt.scenario;
            if (!eur::has_scenario(spec.name)) {
                std::fprintf(stderr, "unknown scenario '%s' (see `eur list`)\n",
                             spec.name.c_str());
                return 2;
            }
            spec.grid_n = opt.grid_n;
            spec.hbar = opt.hbar;
            spec.seed = opt.seed;
            spec.tol_scale = opt.tol_scale;
            apply_config_file(opt, spec);
            for (const auto& kv : opt.params) apply_param(spec, kv);
            eur::Report rep = eur::run_scenario(spec);
            if (!opt.out.empty()) {
                const auto written = eur::emit_report(rep, opt.format, opt.out);
                for (const auto& p : written) std::printf("wrote %s\n", p.c_str());
            }
            print_summary(rep);
            return rep.all_passed() ? 0 : 1;
        }
        if (verify->parsed()) {
            if (!verify_all) {
                std::fprintf(stderr, "verify: only --all is supported\n");
                return 2;
            }
            bool ok = true;
            for (const auto& name : eur::scenario_names()) {
                eur::ScenarioSpec spec;
                spec.name = name;
                spec.grid_n = opt.grid_n;
                spec.seed = opt.seed;
                spec.tol_scale = opt.tol_scale;
                eur::Report rep = eur::run_scenario(spec);
                print_summary(rep);
                ok = ok && rep.all_passed();
            }
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
