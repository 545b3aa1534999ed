#pragma once

#include <filesystem>
#include <string>

#include "upfmec/model.hpp"

namespace upfmec {

// Scenario files are JSON documents. See docs/scenario-format.md for the schema.
// Parsing checks structure and types only; call validate_scenario() for the
// model invariants.

class ScenarioParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

std::string dump_scenario(const Scenario& s);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

}  // namespace upfmec
