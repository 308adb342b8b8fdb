// Command-line front end. Links only the C interface.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nsf/nsf.h"

namespace {

int exit_code(nsf_status st)
{
    switch (st) {
    case NSF_OK:
        return 0;
    case NSF_ERR_NUMERICAL:
        return 2;
    default:
        return 1;
    }
}

int report(nsf_status st, const char* what)
{
    if (st != NSF_OK)
        std::fprintf(stderr, "nsf %s: %s\n", what, nsf_last_error());
    return exit_code(st);
}

struct Common {
    std::string config;
    std::string output;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("-c,--config", c.config, "INI config file (defaults are used when omitted)");
    sub->add_option("-o,--output", c.output, "output directory (scenario_cli.output_dir)");
    sub->add_option("overrides", c.overrides, "section.key=value overrides");
}

nsf_status make_scenario(const Common& c, nsf_scenario** s)
{
    nsf_status st = c.config.empty() ? nsf_scenario_default(s) : nsf_scenario_load(c.config.c_str(), s);
    if (st != NSF_OK)
        return st;
    for (const auto& o : c.overrides)
        if ((st = nsf_scenario_override(*s, o.c_str())) != NSF_OK)
            return st;
    if (!c.output.empty() && (st = nsf_scenario_set(*s, "scenario_cli.output_dir", c.output.c_str())) != NSF_OK)
        return st;
    return nsf_scenario_validate(*s);
}

int print_and_free(char* text)
{
    std::printf("%s\n", text);
    nsf_string_free(text);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Viscous 3-shock stability lab on the half line"};
    app.require_subcommand(1);

    Common run_opts, sweep_opts, profile_opts, poincare_opts;
    auto* run = app.add_subcommand("run", "simulate one scenario and write diagnostics");
    add_common(run, run_opts);
    auto* sweep = app.add_subcommand("sweep", "run scenario_cli.sweep_parameter over scenario_cli.sweep_values");
    add_common(sweep, sweep_opts);
    auto* prof = app.add_subcommand("check-profile", "profile properties over profile.delta_sweep");
    add_common(prof, profile_opts);
    auto* poin = app.add_subcommand("check-poincare", "randomized Poincare inequality suite");
    add_common(poin, poincare_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    const Common& opts = run->parsed() ? run_opts : sweep->parsed() ? sweep_opts : prof->parsed() ? profile_opts : poincare_opts;
    nsf_scenario* s = nullptr;
    nsf_status st = make_scenario(opts, &s);
    if (st != NSF_OK) {
        nsf_scenario_free(s);
        return report(st, "config");
    }

    int code = 0;
    if (run->parsed()) {
        nsf_result* r = nullptr;
        st = nsf_run(s, &r);
        if (st == NSF_OK) {
            char* text = nullptr;
            if ((st = nsf_result_summary_json(r, &text)) == NSF_OK)
                print_and_free(text);
        }
        nsf_result_free(r);
        code = report(st, "run");
    } else if (sweep->parsed()) {
        char* text = nullptr;
        st = nsf_sweep(s, &text);
        if (st == NSF_OK)
            print_and_free(text);
        code = report(st, "sweep");
    } else {
        char* text = nullptr;
        int ok = 0;
        st = prof->parsed() ? nsf_check_profile(s, &text, &ok) : nsf_check_poincare(s, &text, &ok);
        if (st == NSF_OK) {
            print_and_free(text);
            if (!ok) {
                std::fprintf(stderr, "nsf: check failed\n");
                code = 2;
            }
        } else {
            code = report(st, prof->parsed() ? "check-profile" : "check-poincare");
        }
    }
    nsf_scenario_free(s);
    return code;
}
