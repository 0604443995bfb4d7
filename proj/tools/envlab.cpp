// envlab: scenario runner for the envelope/geodesic laboratory.
//
// envlab run <scenario> [--config file] [--out-dir dir] [--jobs N]
//            [--seed S] [--tol-scale X]
// envlab list-scenarios
// envlab dump-field --domain <spec> --n <N> --generator <spec> --out <file>
//
// exit codes: 0 all checks pass, 1 check failure, 2 parse/usage error,
// 3 solver failure.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "envlab/envelope.hpp"
#include "envlab/grid.hpp"
#include "envlab/io.hpp"
#include "envlab/scenarios.hpp"

namespace {

int cmd_run(const std::string& scenario_arg, const std::string& config_path,
            const std::string& out_dir, int jobs, long long seed, double tol_scale) {
    envlab::ScenarioConfig cfg;
    if (!config_path.empty()) cfg = envlab::ScenarioConfig::from_file(config_path);

    std::string scenario = scenario_arg;
    if (scenario.empty()) scenario = cfg.get_string("scenario", "");
    if (scenario.empty())
        throw envlab::config_error("no scenario given (argument or 'scenario = ...' in the config)");

    // command line overrides the file
    if (jobs > 0) cfg.kv["jobs"] = std::to_string(jobs);
    if (seed >= 0) cfg.kv["seed"] = std::to_string(seed);
    if (tol_scale > 0) cfg.kv["tol_scale"] = envlab::format_double(tol_scale);

    const envlab::ScenarioResult result = envlab::run_scenario(scenario, cfg, out_dir);
    for (const envlab::Check& c : result.checks) {
        if (c.relation == "report")
            std::printf("[info] %-32s value=%.6g %s\n", c.name.c_str(), c.value, c.note.c_str());
        else
            std::printf("[%s] %-32s value=%.6g %s %.6g %s\n", c.pass ? "pass" : "FAIL",
                        c.name.c_str(), c.value, c.relation.c_str(), c.threshold,
                        c.note.c_str());
    }
    if (!result.all_pass()) {
        std::printf("scenario %s: FAILED\n", scenario.c_str());
        return 1;
    }
    std::printf("scenario %s: ok\n", scenario.c_str());
    return 0;
}

int cmd_dump_field(const std::string& domain, int n, const std::string& generator,
                   const std::string& out_path) {
    const envlab::GridPtr grid = envlab::make_grid(envlab::DomainSpec::parse(domain), n);
    const envlab::Field f = envlab::make_field(grid, envlab::GeneratorSpec::parse(generator));
    const std::string csv = envlab::field_to_csv(f);
    if (out_path.empty() || out_path == "-") {
        std::fwrite(csv.data(), 1, csv.size(), stdout);
    } else {
        envlab::write_text_file(out_path, csv);
        std::printf("wrote %s\n", out_path.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for subharmonic envelopes, rooftop envelopes and geodesics"};
    app.require_subcommand(1);

    std::string scenario, config_path, out_dir;
    int jobs = 0;
    long long seed = -1;
    double tol_scale = 0.0;
    CLI::App* run = app.add_subcommand("run", "run a scenario and write its reports");
    run->add_option("scenario", scenario, "scenario name (see list-scenarios)");
    run->add_option("--config", config_path, "key = value configuration file");
    run->add_option("--out-dir", out_dir, "directory for report.json and CSV artifacts");
    run->add_option("--jobs", jobs, "worker cap for parallel solves");
    run->add_option("--seed", seed, "seed for randomized scenarios");
    run->add_option("--tol-scale", tol_scale, "scale factor applied to check tolerances");

    CLI::App* list = app.add_subcommand("list-scenarios", "print the scenario catalogue");

    std::string domain = "disk(1)", generator = "constant(0)", out_path;
    int n = 101;
    CLI::App* dump = app.add_subcommand("dump-field", "evaluate a generator on a grid as CSV");
    dump->add_option("--domain", domain, "disk(r) | rectangle(h) | annulus_radial(rin,rout)");
    dump->add_option("--n", n, "nodes per axis");
    dump->add_option("--generator", generator, "generator spec, e.g. radial_log(1,0,-1)");
    dump->add_option("--out", out_path, "output file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(scenario, config_path, out_dir, jobs, seed, tol_scale);
        if (list->parsed()) {
            for (const envlab::ScenarioInfo& info : envlab::list_scenarios())
                std::printf("%-16s %s\n", info.name.c_str(), info.description.c_str());
            return 0;
        }
        if (dump->parsed()) return cmd_dump_field(domain, n, generator, out_path);
    } catch (const envlab::config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const envlab::envelope_failure& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 3;
    } catch (const envlab::error& e) {
        // setup problems (unknown generator/domain) are usage errors
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
    return 2;
}
