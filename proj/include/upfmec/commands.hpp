#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace upfmec::cli {

// "1,2,5" or "1-10" or a mix ("1-3,7"). Throws std::invalid_argument.
std::vector<std::uint64_t> parse_index_list(const std::string& text);

struct RunOptions {
    std::filesystem::path scenario;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> scheme;
    std::filesystem::path out_dir = ".";
    bool trace = false;
    std::optional<std::uint64_t> drain_cap;
};

struct CompareOptions {
    std::filesystem::path scenario;
    std::vector<std::string> schemes;  // empty means all four
    std::vector<std::uint64_t> seeds;
    std::filesystem::path out_dir = ".";
    bool trace = false;
    std::optional<std::uint64_t> drain_cap;
};

struct OracleGapOptions {
    std::size_t upfs = 3;
    std::size_t n_max = 6;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::optional<std::filesystem::path> out;  // stdout when absent
};

struct CapexOptions {
    std::filesystem::path scenario;
    std::vector<std::size_t> pairs;
    std::vector<std::uint64_t> seeds;
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> drain_cap;
};

// Each command returns the process exit status: 0 on success, 1 on invalid
// input or a failed run, 2 on a refused request (oracle bounds).
int cmd_validate(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err);
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err);
int cmd_oracle_gap(const OracleGapOptions& opts, std::ostream& out, std::ostream& err);
int cmd_capex(const CapexOptions& opts, std::ostream& out, std::ostream& err);

// Writes the oracle gap CSV for the given options to os.
void write_oracle_gap(const OracleGapOptions& opts, std::ostream& os);

}  // namespace upfmec::cli
