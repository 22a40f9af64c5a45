#pragma once
// Human-readable exports: YAML reports, Graphviz DOT for G[Φ].
//
// States and inputs are written 1-based (δ_N^a is written as a).

#include <iosfwd>
#include <span>
#include <vector>

#include "iiot/scenario.hpp"
#include "iiot/synthesis.hpp"

namespace iiot {

/// thresholds, Ω(s), I(Ω(s)), reachability layers and the verdict.
void write_analysis(const Scenario& scenario, const Analysis& analysis, std::span<const double> computed_thresholds,
                    std::ostream& os);

/// Everything from write_analysis plus the synthesized prefix, cycle, schedule and costs.
void write_report(const Scenario& scenario, const SynthesisResult& result, std::span<const double> computed_thresholds,
                  std::ostream& os);

/// G[Φ] with edges labelled "w=<weight>, u={...}"; the optimal cycle is drawn bold red.
void write_dot(const SynthesisResult& result, std::ostream& os);

}  // namespace iiot
