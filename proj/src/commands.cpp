#include "upfmec/commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "upfmec/engine.hpp"
#include "upfmec/metrics.hpp"
#include "upfmec/oracle.hpp"
#include "upfmec/report_io.hpp"
#include "upfmec/scenario_io.hpp"

namespace upfmec::cli {

namespace fs = std::filesystem;

namespace {

std::uint64_t parse_u64(std::string_view s, const std::string& whole) {
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
        throw std::invalid_argument("malformed list \"" + whole + "\"");
    }
    return v;
}

// Loads and validates; prints the problem and returns nullopt on failure.
std::optional<Scenario> load_checked(const fs::path& path, std::ostream& err) {
    Scenario s;
    try {
        s = load_scenario(path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return std::nullopt;
    }
    auto report = validate_scenario(s);
    if (!report.ok()) {
        err << "error: invalid scenario " << path.string() << '\n' << report.to_string();
        return std::nullopt;
    }
    return s;
}

std::optional<Scheme> scheme_or_complain(const std::string& name, std::ostream& err) {
    auto s = parse_scheme(name);
    if (!s) err << "error: unknown scheme \"" << name << "\"; valid: " << scheme_names() << '\n';
    return s;
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    writer(os);
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

// "3" for one seed, "1-10" for a contiguous ascending run, else "1_4_9".
std::string seed_label(std::span<const std::uint64_t> seeds) {
    if (seeds.size() == 1) return std::to_string(seeds[0]);
    bool contiguous = true;
    for (std::size_t i = 1; i < seeds.size(); ++i) contiguous &= seeds[i] == seeds[i - 1] + 1;
    if (contiguous) return std::to_string(seeds.front()) + "-" + std::to_string(seeds.back());
    std::string out;
    for (auto s : seeds) out += (out.empty() ? "" : "_") + std::to_string(s);
    return out;
}

// Returns false when the run must make the exit status nonzero.
bool report_run_health(const RunResult& run, std::ostream& err) {
    if (run.truncated) {
        err << "error: " << to_string(run.scheme) << " seed " << run.seed
            << " hit the drain cap with " << run.residual << " requests in flight\n";
        return false;
    }
    return true;
}

void write_run_files(const RunResult& run, const fs::path& dir, bool trace) {
    const auto scheme = std::string(to_string(run.scheme));
    const auto seed = std::to_string(run.seed);
    const auto summary = summarize(run);
    write_file(dir / output_file_name(run.scenario_name, scheme, seed, "summary", "csv"),
               [&](std::ostream& os) { write_summary_csv(os, summary); });
    write_file(dir / output_file_name(run.scenario_name, scheme, seed, "summary", "json"),
               [&](std::ostream& os) { write_summary_json(os, summary); });
    write_file(dir / output_file_name(run.scenario_name, scheme, seed, "cdf", "csv"),
               [&](std::ostream& os) { write_cdf_csv(os, build_cdf(e2e_samples(run))); });
    write_file(dir / output_file_name(run.scenario_name, scheme, seed, "requests", "csv"),
               [&](std::ostream& os) { write_requests_csv(os, run); });
    if (trace) {
        write_file(dir / output_file_name(run.scenario_name, scheme, seed, "trace", "csv"),
                   [&](std::ostream& os) { write_trace_csv(os, run); });
    }
}

}  // namespace

std::vector<std::uint64_t> parse_index_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::string_view rest(text);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        auto item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
        if (comma != std::string_view::npos && rest.empty()) {
            throw std::invalid_argument("malformed list \"" + text + "\"");
        }
        const auto dash = item.find('-');
        if (dash == std::string_view::npos) {
            out.push_back(parse_u64(item, text));
            continue;
        }
        const auto lo = parse_u64(item.substr(0, dash), text);
        const auto hi = parse_u64(item.substr(dash + 1), text);
        if (hi < lo) throw std::invalid_argument("descending range in \"" + text + "\"");
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

int cmd_validate(const fs::path& scenario, std::ostream& out, std::ostream& err) {
    auto s = load_checked(scenario, err);
    if (!s) return 1;
    out << "ok: " << s->name << " (" << s->num_upfs << " UPFs, " << s->num_mecs << " MECs)\n";
    return 0;
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    auto s = load_checked(opts.scenario, err);
    if (!s) return 1;
    if (opts.seed) s->seed = *opts.seed;
    if (opts.drain_cap) s->drain_cap_epochs = *opts.drain_cap;
    if (opts.scheme) {
        auto scheme = scheme_or_complain(*opts.scheme, err);
        if (!scheme) return 1;
        s->scheme = *scheme;
        if (auto report = validate_scenario(*s); !report.ok()) {
            err << "error: invalid scenario for scheme " << *opts.scheme << '\n'
                << report.to_string();
            return 1;
        }
    }
    try {
        fs::create_directories(opts.out_dir);
        const auto run = run_to_completion(*s);
        write_run_files(run, opts.out_dir, opts.trace);
        out << to_string(run.scheme) << " seed " << run.seed << ": generated " << run.generated
            << ", completed " << run.completed << ", dropped " << run.dropped << '\n';
        return report_run_health(run, err) ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err) {
    std::vector<Scheme> schemes;
    if (opts.schemes.empty()) {
        schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
    } else {
        for (const auto& name : opts.schemes) {
            auto s = scheme_or_complain(name, err);
            if (!s) return 1;
            if (std::find(schemes.begin(), schemes.end(), *s) == schemes.end()) schemes.push_back(*s);
        }
    }
    if (opts.seeds.empty()) {
        err << "error: at least one seed is required\n";
        return 1;
    }
    auto base = load_checked(opts.scenario, err);
    if (!base) return 1;
    if (opts.drain_cap) base->drain_cap_epochs = *opts.drain_cap;

    std::vector<Scenario> grid;
    for (auto scheme : schemes) {
        for (auto seed : opts.seeds) {
            Scenario s = *base;
            s.scheme = scheme;
            s.seed = seed;
            if (auto report = validate_scenario(s); !report.ok()) {
                err << "error: invalid scenario for scheme " << to_string(scheme) << '\n'
                    << report.to_string();
                return 1;
            }
            grid.push_back(std::move(s));
        }
    }
    try {
        fs::create_directories(opts.out_dir);
        const auto runs = run_batch(grid);
        bool healthy = true;
        for (const auto& run : runs) {
            healthy &= report_run_health(run, err);
            if (opts.trace) write_run_files(run, opts.out_dir, true);
        }
        const auto rows = compare_schemes(runs);
        const auto label = seed_label(opts.seeds);
        write_file(opts.out_dir / output_file_name(base->name, "all", label, "comparison", "csv"),
                   [&](std::ostream& os) { write_comparison_csv(os, rows); });
        for (auto scheme : schemes) {
            std::vector<double> pooled;
            for (const auto& run : runs) {
                if (run.scheme != scheme) continue;
                auto samples = e2e_samples(run);
                pooled.insert(pooled.end(), samples.begin(), samples.end());
            }
            write_file(opts.out_dir / output_file_name(base->name, std::string(to_string(scheme)),
                                                       label, "cdf", "csv"),
                       [&](std::ostream& os) { write_cdf_csv(os, build_cdf(std::move(pooled))); });
        }
        write_comparison_csv(out, rows);
        return healthy ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

void write_oracle_gap(const OracleGapOptions& opts, std::ostream& os) {
    if (opts.upfs == 0 || opts.n_max == 0) throw std::invalid_argument("u and n-max must be >= 1");
    if (opts.upfs > oracle::kMaxUpfs || opts.n_max > oracle::kMaxBatch) {
        throw oracle::BoundExceeded("oracle bounds are u <= " + std::to_string(oracle::kMaxUpfs) +
                                    " and n <= " + std::to_string(oracle::kMaxBatch));
    }
    std::mt19937_64 rng(opts.seed);
    os << "instance,u,n,optimum,heuristic,ratio\n";
    for (std::size_t t = 0; t < opts.trials; ++t) {
        const std::size_t n = 1 + t % opts.n_max;
        const auto loads = oracle::random_upf_loads(rng, opts.upfs);
        const auto opt = oracle::minmax_batch_optimum(n, loads);
        const auto heu = oracle::sequential_heuristic_batch(n, loads);
        const double ratio = opt.worst_case_epochs == 0.0
                                 ? (heu.worst_case_epochs == 0.0 ? 1.0 : INFINITY)
                                 : heu.worst_case_epochs / opt.worst_case_epochs;
        os << (t + 1) << ',' << opts.upfs << ',' << n << ',' << format_number(opt.worst_case_epochs)
           << ',' << format_number(heu.worst_case_epochs) << ',' << format_number(ratio) << '\n';
    }
}

int cmd_oracle_gap(const OracleGapOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.out) {
            if (opts.out->has_parent_path()) fs::create_directories(opts.out->parent_path());
            write_file(*opts.out, [&](std::ostream& os) { write_oracle_gap(opts, os); });
        } else {
            write_oracle_gap(opts, out);
        }
        return 0;
    } catch (const oracle::BoundExceeded& e) {
        err << "error: refused: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_capex(const CapexOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.pairs.empty() || opts.seeds.empty()) {
        err << "error: --pairs and --seeds must be non-empty\n";
        return 1;
    }
    if (std::find(opts.pairs.begin(), opts.pairs.end(), 0u) != opts.pairs.end()) {
        err << "error: pair counts must be >= 1\n";
        return 1;
    }
    auto base = load_checked(opts.scenario, err);
    if (!base) return 1;
    if (opts.drain_cap) base->drain_cap_epochs = *opts.drain_cap;
    try {
        fs::create_directories(opts.out_dir);
        const auto sweep = capex_sweep(*base, opts.pairs, opts.seeds, base->thresholds_ms);
        const auto label = seed_label(opts.seeds);
        write_file(opts.out_dir / output_file_name(base->name, "capex", label, "points", "csv"),
                   [&](std::ostream& os) { write_capex_points_csv(os, sweep); });
        write_file(opts.out_dir / output_file_name(base->name, "capex", label, "analysis", "csv"),
                   [&](std::ostream& os) { write_capex_analysis_csv(os, sweep); });
        write_capex_analysis_csv(out, sweep);
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace upfmec::cli
