#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "upfmec/commands.hpp"

namespace cli = upfmec::cli;

namespace {

std::vector<std::uint64_t> seeds_or_default(const std::string& text) {
    return text.empty() ? std::vector<std::uint64_t>{1} : cli::parse_index_list(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"upfmec: discrete-epoch UPF/MEC data plane simulator"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir = ".";
    std::string seeds_text;
    std::uint64_t drain_cap_value = 0;  // 0 keeps the scenario value
    bool trace = false;

    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("--scenario", scenario, "Scenario JSON file")->required();

    cli::RunOptions run_opts;
    std::string run_scheme;
    std::uint64_t run_seed = 0;
    auto* run = app.add_subcommand("run", "Run one scheme on one seed");
    run->add_option("--scenario", scenario, "Scenario JSON file")->required();
    run->add_option("--scheme", run_scheme, "Override the scenario's scheme");
    auto* run_seed_opt = run->add_option("--seed", run_seed, "Override the scenario's seed");
    run->add_option("--out", out_dir, "Output directory");
    run->add_flag("--trace", trace, "Write per-epoch queue traces");
    run->add_option("--drain-cap", drain_cap_value, "Maximum drain epochs after the horizon");

    cli::CompareOptions cmp_opts;
    std::vector<std::string> cmp_schemes;
    auto* compare = app.add_subcommand("compare", "Run schemes across seeds and compare");
    compare->add_option("--scenario", scenario, "Scenario JSON file")->required();
    compare->add_option("--scheme", cmp_schemes, "Schemes to compare (default: all)")
        ->delimiter(',');
    compare->add_option("--seeds", seeds_text, "Seed list, e.g. 1-10 or 1,4,9");
    compare->add_option("--out", out_dir, "Output directory");
    compare->add_flag("--trace", trace, "Also write per-run reports and traces");
    compare->add_option("--drain-cap", drain_cap_value, "Maximum drain epochs after the horizon");

    cli::OracleGapOptions gap_opts;
    std::string gap_out;
    auto* gap = app.add_subcommand("oracle-gap", "Heuristic vs exhaustive batch placement");
    gap->add_option("--u", gap_opts.upfs, "Number of UPFs");
    gap->add_option("--n-max", gap_opts.n_max, "Largest batch size");
    gap->add_option("--trials", gap_opts.trials, "Number of random instances");
    gap->add_option("--seed", gap_opts.seed, "RNG seed");
    gap->add_option("--out", gap_out, "Output CSV file (default: stdout)");

    cli::CapexOptions capex_opts;
    std::string pairs_text = "1-10";
    auto* capex = app.add_subcommand("capex", "Sweep the number of UPF-MEC pairs");
    capex->add_option("--scenario", scenario, "Base scenario JSON file")->required();
    capex->add_option("--pairs", pairs_text, "Pair counts, e.g. 1-10");
    capex->add_option("--seeds", seeds_text, "Seed list, e.g. 1-5");
    capex->add_option("--out", out_dir, "Output directory");
    capex->add_option("--drain-cap", drain_cap_value, "Maximum drain epochs after the horizon");

    CLI11_PARSE(app, argc, argv);

    try {
        std::optional<std::uint64_t> drain_cap;
        if (drain_cap_value != 0) drain_cap = drain_cap_value;

        if (*validate) return cli::cmd_validate(scenario, std::cout, std::cerr);
        if (*run) {
            run_opts.scenario = scenario;
            run_opts.out_dir = out_dir;
            run_opts.trace = trace;
            run_opts.drain_cap = drain_cap;
            if (!run_scheme.empty()) run_opts.scheme = run_scheme;
            if (*run_seed_opt) run_opts.seed = run_seed;
            return cli::cmd_run(run_opts, std::cout, std::cerr);
        }
        if (*compare) {
            cmp_opts.scenario = scenario;
            cmp_opts.schemes = cmp_schemes;
            cmp_opts.seeds = seeds_or_default(seeds_text);
            cmp_opts.out_dir = out_dir;
            cmp_opts.trace = trace;
            cmp_opts.drain_cap = drain_cap;
            return cli::cmd_compare(cmp_opts, std::cout, std::cerr);
        }
        if (*gap) {
            if (!gap_out.empty()) gap_opts.out = gap_out;
            return cli::cmd_oracle_gap(gap_opts, std::cout, std::cerr);
        }
        if (*capex) {
            capex_opts.scenario = scenario;
            for (auto k : cli::parse_index_list(pairs_text)) capex_opts.pairs.push_back(k);
            capex_opts.seeds = seeds_or_default(seeds_text);
            capex_opts.out_dir = out_dir;
            capex_opts.drain_cap = drain_cap;
            return cli::cmd_capex(capex_opts, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
