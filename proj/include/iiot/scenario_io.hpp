#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "iiot/scenario.hpp"
#include "iiot/synthesis.hpp"

namespace iiot {

/// Reads a YAML scenario. Syntax problems raise ParseError; every semantic
/// problem is collected (with its line number) into a single ValidationError.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(std::string_view text, const std::string& source = "<memory>");

/// Schedule files list 1-based input indices:
///   initial_state: 4
///   prefix: []
///   cycle: [7, 7, 4, 7]
void write_schedule(const Schedule& schedule, std::ostream& os);
Schedule load_schedule(const std::filesystem::path& path);
Schedule parse_schedule(std::string_view text, const std::string& source = "<memory>");

}  // namespace iiot
