#include "iiot/report.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <ostream>
#include <set>
#include <string>
#include <utility>

namespace iiot {

namespace {

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  out.reserve(v.size());
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

std::vector<std::size_t> one_based(const IndexSet& s) { return one_based(s.to_vector()); }

void flow_list(YAML::Emitter& out, const std::vector<std::size_t>& v) {
  out << YAML::Flow << v;
}

void flow_list(YAML::Emitter& out, const std::vector<double>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (double x : v) out << x;
  out << YAML::EndSeq;
}

void emit_analysis(YAML::Emitter& out, const Scenario& sc, const Analysis& an, std::span<const double> computed) {
  out << YAML::Key << "states" << YAML::Value << sc.states();
  out << YAML::Key << "tau" << YAML::Value << sc.cost.tau;
  out << YAML::Key << "initial_state" << YAML::Value << sc.initial_state + 1;
  out << YAML::Key << "thresholds" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "computed" << YAML::Value;
  flow_list(out, std::vector<double>(computed.begin(), computed.end()));
  out << YAML::Key << "used" << YAML::Value;
  flow_list(out, an.thresholds);
  out << YAML::Key << "overridden" << YAML::Value << sc.threshold_override.has_value();
  out << YAML::EndMap;
  out << YAML::Key << "omega" << YAML::Value;
  flow_list(out, one_based(an.region.omega));
  out << YAML::Key << "invariant" << YAML::Value;
  flow_list(out, one_based(an.invariant));
  out << YAML::Key << "reach_layers" << YAML::Value << YAML::BeginSeq;
  for (const auto& layer : an.reach.layers) flow_list(out, one_based(layer));
  out << YAML::EndSeq;
  out << YAML::Key << "reachable" << YAML::Value;
  flow_list(out, one_based(an.reach.reach));
  out << YAML::Key << "feasible" << YAML::Value << an.verdict.feasible;
  out << YAML::Key << "target" << YAML::Value;
  flow_list(out, one_based(an.verdict.witness));
  if (!sc.warnings.empty()) {
    out << YAML::Key << "warnings" << YAML::Value << YAML::BeginSeq;
    for (const auto& w : sc.warnings) out << w;
    out << YAML::EndSeq;
  }
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_analysis(const Scenario& scenario, const Analysis& analysis, std::span<const double> computed_thresholds,
                    std::ostream& os) {
  YAML::Emitter out;
  out.SetDoublePrecision(12);
  out << YAML::BeginMap;
  emit_analysis(out, scenario, analysis, computed_thresholds);
  out << YAML::EndMap;
  os << out.c_str() << '\n';
}

void write_report(const Scenario& scenario, const SynthesisResult& result, std::span<const double> computed_thresholds,
                  std::ostream& os) {
  YAML::Emitter out;
  out.SetDoublePrecision(12);
  out << YAML::BeginMap;
  emit_analysis(out, scenario, result.analysis, computed_thresholds);
  out << YAML::Key << "graph_edges" << YAML::Value << result.graph.edges.size();
  out << YAML::Key << "prefix" << YAML::Value;
  flow_list(out, one_based(result.prefix));
  out << YAML::Key << "cycle" << YAML::Value;
  flow_list(out, one_based(result.cycle));
  out << YAML::Key << "cycle_weight" << YAML::Value << result.cycle_weight;
  out << YAML::Key << "cycle_length" << YAML::Value << result.cycle_length;
  out << YAML::Key << "mean_weight" << YAML::Value << result.mean_weight;
  out << YAML::Key << "optimal_cost" << YAML::Value << result.optimal_cost;
  out << YAML::Key << "schedule" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "prefix" << YAML::Value;
  flow_list(out, one_based(result.schedule.prefix_inputs));
  out << YAML::Key << "cycle" << YAML::Value;
  flow_list(out, one_based(result.schedule.cycle_inputs));
  out << YAML::EndMap;
  out << YAML::EndMap;
  os << out.c_str() << '\n';
}

void write_dot(const SynthesisResult& result, std::ostream& os) {
  const std::size_t n = result.graph.universe();
  std::set<std::pair<std::size_t, std::size_t>> on_cycle;
  for (std::size_t i = 0; i + 1 < result.cycle.size(); ++i) on_cycle.emplace(result.cycle[i], result.cycle[i + 1]);

  os << "digraph G {\n  rankdir=LR;\n  node [shape=circle];\n";
  result.graph.vertices.for_each([&](std::size_t a) {
    os << "  s" << a + 1 << " [label=\"δ_" << n << "^" << a + 1 << "\"";
    if (a == result.schedule.initial_state) os << ", shape=doublecircle";
    os << "];\n";
  });
  for (const auto& e : result.graph.edges) {
    os << "  s" << e.from + 1 << " -> s" << e.to + 1 << " [label=\"w=" << number(e.weight) << ", u={";
    for (std::size_t i = 0; i < e.optimal_inputs.size(); ++i) os << (i ? "," : "") << e.optimal_inputs[i] + 1;
    os << "}\"";
    if (on_cycle.count({e.from, e.to})) os << ", color=red, penwidth=2.5";
    os << "];\n";
  }
  os << "}\n";
}

}  // namespace iiot
