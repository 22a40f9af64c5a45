#pragma once
// Shared fixtures: the bundled two-arm / two-AGV scenario and small helpers.

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "iiot/scenario_io.hpp"
#include "iiot/synthesis.hpp"

namespace fixtures {

inline std::string scenario_path() { return std::string(IIOT_SCENARIO_DIR) + "/two_arms_two_agvs.yaml"; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline iiot::Scenario bundled_scenario() { return iiot::load_scenario(scenario_path()); }

/// Replaces the first occurrence of `from`; fails loudly if it is missing.
inline std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  if (pos == std::string::npos) throw std::runtime_error("fixture text not found: " + from);
  return text.replace(pos, from.size(), to);
}

// 0-based indices of δ_9^a.
constexpr std::size_t d(std::size_t a) { return a - 1; }

/// u*(k) = δ4 at k = 2, 6, 10, ... and δ7 otherwise, from α0 = δ4.
inline iiot::Schedule optimal_schedule() { return {d(4), {}, {d(7), d(7), d(4), d(7)}}; }

/// δ4 → δ2 with δ7, then the δ2 self-loop under δ4 forever.
inline iiot::Schedule c1_schedule() { return {d(4), {d(7)}, {d(4)}}; }

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace fixtures
