#include "iiot/scenario_io.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "iiot/errors.hpp"

namespace iiot {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  void fail(const YAML::Node& at, const std::string& msg) {
    std::string where = source_;
    if (at.IsDefined() && at.Mark().line >= 0) where += ":" + std::to_string(at.Mark().line + 1);
    errors_.push_back(where + ": " + msg);
  }
  void fail(const std::string& msg) { errors_.push_back(source_ + ": " + msg); }

  bool ok() const { return errors_.empty(); }
  std::size_t error_count() const { return errors_.size(); }

  [[noreturn]] void raise() const {
    std::string all;
    for (const auto& e : errors_) all += "\n  " + e;
    throw Error(Errc::ValidationError, std::to_string(errors_.size()) + " problem(s):" + all);
  }

  YAML::Node require(const YAML::Node& parent, const char* key) {
    YAML::Node n = parent[key];
    if (!n.IsDefined() || n.IsNull()) {
      fail(parent, std::string("missing key '") + key + "'");
      return YAML::Node(YAML::NodeType::Undefined);
    }
    return n;
  }

  /// Like require, but the value must be a mapping.
  YAML::Node section(const YAML::Node& parent, const char* key) {
    YAML::Node n = require(parent, key);
    if (n.IsDefined() && !n.IsMap()) {
      fail(n, std::string("'") + key + "' must be a mapping");
      return YAML::Node(YAML::NodeType::Undefined);
    }
    return n;
  }

  template <typename T>
  std::optional<T> scalar(const YAML::Node& n, const char* what) {
    if (!n.IsDefined() || n.IsNull()) return std::nullopt;
    if (!n.IsScalar()) {
      fail(n, std::string(what) + " must be a scalar");
      return std::nullopt;
    }
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, std::string("cannot read ") + what + " from '" + n.Scalar() + "'");
      return std::nullopt;
    }
  }

  std::optional<std::vector<double>> vector(const YAML::Node& n, const char* what) {
    if (!n.IsDefined() || n.IsNull()) return std::nullopt;
    if (!n.IsSequence()) {
      fail(n, std::string(what) + " must be a list");
      return std::nullopt;
    }
    std::vector<double> out;
    const std::size_t before = error_count();
    for (const auto& e : n) {
      auto v = scalar<double>(e, what);
      out.push_back(v.value_or(0.0));
    }
    if (error_count() != before) return std::nullopt;
    return out;
  }

  std::optional<DenseMatrix> matrix(const YAML::Node& n, const char* what) {
    if (!n.IsDefined() || n.IsNull()) return std::nullopt;
    if (!n.IsSequence() || n.size() == 0) {
      fail(n, std::string(what) + " must be a nonempty list of rows");
      return std::nullopt;
    }
    std::vector<double> data;
    std::size_t cols = 0;
    for (std::size_t r = 0; r < n.size(); ++r) {
      auto row = vector(n[r], what);
      if (!row) return std::nullopt;
      if (r == 0) cols = row->size();
      if (row->size() != cols || cols == 0) {
        fail(n[r], std::string(what) + " has ragged rows");
        return std::nullopt;
      }
      data.insert(data.end(), row->begin(), row->end());
    }
    return DenseMatrix(n.size(), cols, std::move(data));
  }

 private:
  std::string source_;
  std::vector<std::string> errors_;
};

YAML::Node parse_yaml(std::string_view text, const std::string& source) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw Error(Errc::ParseError, source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
}

// A state is either a 1-based δ-index or a tuple of agent cells.
std::optional<std::size_t> read_state(Reader& rd, const YAML::Node& n, const MasModel& mas, const char* what) {
  if (n.IsSequence()) {
    std::vector<int> tuple;
    for (const auto& e : n) tuple.push_back(rd.scalar<int>(e, what).value_or(-1));
    try {
      if (tuple.size() != mas.agents()) throw Error(Errc::DimensionMismatch, "tuple length");
      return mas.encode(tuple).offset();
    } catch (const Error&) {
      rd.fail(n, std::string(what) + ": tuple is not a valid agent state");
      return std::nullopt;
    }
  }
  auto v = rd.scalar<long long>(n, what);
  if (!v) return std::nullopt;
  if (*v < 1 || static_cast<std::size_t>(*v) > mas.state_count()) {
    rd.fail(n, std::string(what) + " " + std::to_string(*v) + " outside 1.." + std::to_string(mas.state_count()));
    return std::nullopt;
  }
  return static_cast<std::size_t>(*v - 1);
}

std::optional<IndexSet> read_state_set(Reader& rd, const YAML::Node& n, const MasModel& mas, const char* what) {
  if (!n.IsDefined() || n.IsNull()) return std::nullopt;
  if (!n.IsSequence()) {
    rd.fail(n, std::string(what) + " must be a list");
    return std::nullopt;
  }
  IndexSet out(mas.state_count());
  for (const auto& e : n)
    if (auto s = read_state(rd, e, mas, what)) out.insert(*s);
  return out;
}

std::optional<Plant> read_plant(Reader& rd, const YAML::Node& n, std::size_t index) {
  const std::string tag = "plant " + std::to_string(index + 1);
  auto closed = rd.matrix(rd.require(n, "closed_loop"), "closed_loop");
  auto open = rd.matrix(rd.require(n, "open_loop"), "open_loop");
  auto decay = rd.scalar<double>(rd.require(n, "decay"), "decay");
  auto power = rd.scalar<double>(rd.require(n, "power"), "power");
  if (!closed || !open || !decay || !power) return std::nullopt;

  const std::size_t dim = closed->rows();
  Plant p{*closed, *open, SymMatrix::identity(dim), *decay, SymMatrix(DenseMatrix(dim, dim)), *power};

  YAML::Node q = n["lyapunov_weight"];
  try {
    if (!q.IsDefined() || q.IsNull() || (q.IsScalar() && q.Scalar() == "solve")) {
      p.weight = default_lyapunov_weight(p.closed_loop);
    } else if (auto m = rd.matrix(q, "lyapunov_weight")) {
      p.weight = SymMatrix(*m);
    } else {
      return std::nullopt;
    }
  } catch (const Error& e) {
    rd.fail(q.IsDefined() ? q : n, tag + ": " + e.detail());
    return std::nullopt;
  }
  if (YAML::Node xi = n["noise_cov"]; xi.IsDefined() && !xi.IsNull()) {
    auto m = rd.matrix(xi, "noise_cov");
    if (!m) return std::nullopt;
    try {
      p.noise_cov = SymMatrix(*m);
    } catch (const Error& e) {
      rd.fail(xi, tag + ": " + e.detail());
      return std::nullopt;
    }
  }
  try {
    validate_plant(p);
  } catch (const Error& e) {
    rd.fail(n, tag + ": " + e.detail());
    return std::nullopt;
  }
  return p;
}

std::optional<MasModel> read_agents(Reader& rd, const YAML::Node& n) {
  auto count = rd.scalar<long long>(rd.require(n, "count"), "agent count");
  auto kappa = rd.scalar<int>(rd.require(n, "kappa"), "kappa");
  if (!count || !kappa) return std::nullopt;
  if (*count < 1) {
    rd.fail(n["count"], "agent count must be positive");
    return std::nullopt;
  }
  std::vector<std::vector<CouplingTerm>> terms(static_cast<std::size_t>(*count));
  YAML::Node w = n["weights"];
  if (w.IsDefined() && !w.IsNull()) {
    if (!w.IsSequence()) {
      rd.fail(w, "weights must be a list of [agent, source, weight]");
      return std::nullopt;
    }
    for (const auto& e : w) {
      auto t = rd.vector(e, "weight entry");
      if (!t) continue;
      if (t->size() != 3) {
        rd.fail(e, "weight entry must be [agent, source, weight]");
        continue;
      }
      const long j = std::lround((*t)[0]), l = std::lround((*t)[1]);
      if (j < 1 || j > *count || l < 1 || l > *count) {
        rd.fail(e, "weight entry references an unknown agent");
        continue;
      }
      terms[static_cast<std::size_t>(j - 1)].push_back({static_cast<std::size_t>(l - 1), static_cast<int>(std::lround((*t)[2]))});
    }
  }
  try {
    return MasModel(static_cast<std::size_t>(*count), *kappa, std::move(terms));
  } catch (const Error& e) {
    rd.fail(n, e.detail());
    return std::nullopt;
  }
}

std::optional<ConstraintSets> read_constraints(Reader& rd, const YAML::Node& n, const MasModel& mas) {
  const std::size_t big_n = mas.state_count();
  auto states = read_state_set(rd, rd.require(n, "states"), mas, "constrained state");
  if (!states) return std::nullopt;
  if (states->empty()) rd.fail(n["states"], "C_alpha is empty");

  YAML::Node global = n["inputs"];
  YAML::Node per_state = n["inputs_by_state"];
  if (global.IsDefined() == per_state.IsDefined()) {
    rd.fail(n, "give exactly one of 'inputs' or 'inputs_by_state'");
    return std::nullopt;
  }
  if (global.IsDefined()) {
    auto inputs = read_state_set(rd, global, mas, "input");
    if (!inputs) return std::nullopt;
    return ConstraintSets::uniform(*states, *inputs);
  }
  if (!per_state.IsMap()) {
    rd.fail(per_state, "inputs_by_state must map a state to its admissible inputs");
    return std::nullopt;
  }
  ConstraintSets c{*states, std::vector<IndexSet>(big_n, IndexSet(big_n))};
  for (const auto& kv : per_state) {
    auto s = read_state(rd, kv.first, mas, "state");
    auto u = read_state_set(rd, kv.second, mas, "input");
    if (s && u) c.inputs[*s] = *u;
  }
  return c;
}

std::optional<ChannelModel> read_channel(Reader& rd, const YAML::Node& n, const MasModel& mas, std::size_t links) {
  const std::size_t big_n = mas.state_count();
  ChannelModel ch;
  auto local = rd.scalar<long long>(rd.require(n, "local_states"), "local_states");
  auto policy = rd.matrix(rd.require(n, "policy"), "policy");
  if (!local || !policy) return std::nullopt;
  if (*local < 1) {
    rd.fail(n["local_states"], "local_states must be positive");
    return std::nullopt;
  }
  ch.policy.local_states = static_cast<std::size_t>(*local);
  if (policy->rows() != links || policy->cols() != ch.policy.local_states) {
    rd.fail(n["policy"], "policy must have one row per plant and one column per local state");
    return std::nullopt;
  }
  for (std::size_t i = 0; i < links; ++i) {
    std::vector<std::uint8_t> row;
    for (std::size_t c = 0; c < ch.policy.local_states; ++c) {
      const double h = (*policy)(i, c);
      if (h != 0.0 && h != 1.0) rd.fail(n["policy"], "policy entries must be 0 or 1");
      row.push_back(h != 0.0);
    }
    ch.policy.table.push_back(std::move(row));
  }

  if (YAML::Node table = n["table"]; table.IsDefined() && !table.IsNull()) {
    ChannelTables t{links, big_n, ch.policy.local_states,
                    std::vector<double>(links * big_n * ch.policy.local_states, -1.0),
                    std::vector<double>(links * big_n, -1.0)};
    std::vector<bool> covered(big_n, false);
    for (const auto& row : table) {
      auto states = read_state_set(rd, rd.require(row, "states"), mas, "channel table state");
      auto eta = rd.vector(rd.require(row, "eta"), "eta");
      auto gamma = rd.matrix(rd.require(row, "gamma"), "gamma");
      if (!states || !eta || !gamma) continue;
      if (eta->size() != links || gamma->rows() != links || gamma->cols() != ch.policy.local_states) {
        rd.fail(row, "table row needs one eta and one gamma distribution per link");
        continue;
      }
      for (std::size_t i = 0; i < links; ++i) {
        double sum = 0.0;
        for (std::size_t c = 0; c < ch.policy.local_states; ++c) sum += (*gamma)(i, c);
        if (std::abs(sum - 1.0) > 1e-9)
          rd.fail(row["gamma"], "gamma for link " + std::to_string(i + 1) + " sums to " + std::to_string(sum));
        for (std::size_t c = 0; c < ch.policy.local_states; ++c)
          if ((*gamma)(i, c) < 0.0 || (*gamma)(i, c) > 1.0) rd.fail(row["gamma"], "gamma entries must lie in [0,1]");
        if ((*eta)[i] < 0.0 || (*eta)[i] > 1.0) rd.fail(row["eta"], "eta entries must lie in [0,1]");
      }
      states->for_each([&](std::size_t a) {
        if (covered[a]) rd.fail(row, "state " + std::to_string(a + 1) + " appears in more than one table row");
        covered[a] = true;
        for (std::size_t i = 0; i < links; ++i) {
          t.eta[i * big_n + a] = (*eta)[i];
          for (std::size_t c = 0; c < ch.policy.local_states; ++c)
            t.gamma[(i * big_n + a) * ch.policy.local_states + c] = (*gamma)(i, c);
        }
      });
    }
    for (std::size_t a = 0; a < big_n; ++a)
      if (!covered[a]) rd.fail(table, "channel table has no row for state " + std::to_string(a + 1));
    ch.tables = std::move(t);
  }

  if (YAML::Node success = n["success"]; success.IsDefined() && !success.IsNull()) {
    auto m = rd.matrix(success, "success");
    if (m) {
      if (m->rows() != links || m->cols() != big_n) {
        rd.fail(success, "success table must be " + std::to_string(links) + " x " + std::to_string(big_n));
      } else {
        std::vector<std::vector<double>> rows(links);
        for (std::size_t i = 0; i < links; ++i)
          for (std::size_t a = 0; a < big_n; ++a) rows[i].push_back((*m)(i, a));
        try {
          ch.direct = load_direct_success(rows);
        } catch (const Error& e) {
          rd.fail(success, e.detail());
        }
      }
    }
  }
  if (!ch.tables && !ch.direct) rd.fail(n, "channel needs 'table' or 'success'");
  return ch;
}

std::optional<StageCost> read_cost(Reader& rd, const YAML::Node& n, std::size_t tau, std::size_t big_n) {
  auto lambda = rd.scalar<double>(rd.require(n, "lambda"), "lambda");
  if (!lambda) return std::nullopt;
  YAML::Node by_input = n["by_input"];
  YAML::Node table = n["table"];
  if (by_input.IsDefined() == table.IsDefined()) {
    rd.fail(n, "give exactly one of 'by_input' or 'table' (rows = states, columns = inputs)");
    return std::nullopt;
  }
  StageCost c;
  if (by_input.IsDefined()) {
    auto v = rd.vector(by_input, "by_input");
    if (!v) return std::nullopt;
    if (v->size() != big_n) {
      rd.fail(by_input, "by_input needs " + std::to_string(big_n) + " entries");
      return std::nullopt;
    }
    c = StageCost::input_indexed(tau, *lambda, *v);
  } else {
    auto m = rd.matrix(table, "cost table");
    if (!m) return std::nullopt;
    if (m->rows() != big_n || m->cols() != big_n) {
      rd.fail(table, "cost table must be N x N");
      return std::nullopt;
    }
    c = StageCost{tau, *lambda, big_n, std::vector<double>(m->data().begin(), m->data().end())};
  }
  for (double g : c.g)
    if (g < 0.0) {
      rd.fail(by_input.IsDefined() ? by_input : table, "stage costs must be nonnegative");
      break;
    }
  if (*lambda <= 0.0) rd.fail(n["lambda"], "lambda must be positive");
  return c;
}


Scenario build_scenario(std::string_view text, const std::string& source) {
  const YAML::Node root = parse_yaml(text, source);
  Reader rd(source);
  if (!root.IsMap()) {
    rd.fail(root, "scenario must be a mapping");
    rd.raise();
  }

  auto tau = rd.scalar<long long>(rd.require(root, "tau"), "tau");
  if (tau && *tau < 1) rd.fail(root["tau"], "tau must be at least 1");

  WcsModel wcs;
  YAML::Node plants = rd.require(root, "plants");
  if (plants.IsSequence()) {
    for (std::size_t i = 0; i < plants.size(); ++i)
      if (auto p = read_plant(rd, plants[i], i)) wcs.plants.push_back(std::move(*p));
    if (plants.size() == 0) rd.fail(plants, "at least one plant required");
  } else if (plants.IsDefined()) {
    rd.fail(plants, "plants must be a list");
  }
  const std::size_t links = plants.IsSequence() ? plants.size() : 0;

  std::optional<MasModel> mas;
  if (YAML::Node agents = rd.section(root, "agents"); agents.IsDefined()) mas = read_agents(rd, agents);
  if (!mas) rd.raise();

  std::optional<ConstraintSets> constraints;
  if (YAML::Node c = rd.section(root, "constraints"); c.IsDefined()) constraints = read_constraints(rd, c, *mas);

  std::optional<std::size_t> initial;
  if (YAML::Node a0 = rd.require(root, "initial_state"); a0.IsDefined()) {
    initial = read_state(rd, a0, *mas, "initial state");
    if (initial && constraints && !constraints->states.contains(*initial))
      rd.fail(a0, "initial state " + std::to_string(*initial + 1) + " is not in C_alpha");
  }

  std::optional<ChannelModel> channel;
  if (YAML::Node ch = rd.section(root, "channel"); ch.IsDefined()) channel = read_channel(rd, ch, *mas, links);

  std::optional<StageCost> cost;
  if (YAML::Node c = rd.section(root, "cost"); c.IsDefined() && tau)
    cost = read_cost(rd, c, static_cast<std::size_t>(std::max<long long>(*tau, 1)), mas->state_count());

  std::optional<std::vector<double>> thresholds;
  if (YAML::Node s = root["thresholds"]; s.IsDefined() && !s.IsNull()) {
    thresholds = rd.vector(s, "thresholds");
    if (thresholds && thresholds->size() != links) rd.fail(s, "thresholds need one entry per plant");
    if (thresholds)
      for (double v : *thresholds)
        if (v < 0.0 || v > 1.0) rd.fail(s, "thresholds must lie in [0,1]");
  }

  if (!rd.ok() || !constraints || !initial || !channel || !cost) rd.raise();

  Scenario sc{std::move(wcs), *mas, build_structure_matrix(*mas), std::move(*constraints), std::move(*channel),
              std::move(*cost), *initial, thresholds, {}};
  for (const auto& m : consistency_mismatches(sc.channel, 0.01)) {
    std::ostringstream w;
    w << "link " << m.link + 1 << ", state " << m.state + 1 << ": eta*transmit = " << m.derived
      << " but the success table gives " << m.direct << "; using the success table";
    sc.warnings.push_back(w.str());
  }
  validate_scenario(sc);
  return sc;
}

// Structural surprises (a map where a list was expected, and so on) that the
// readers above did not anticipate still get a location.
template <typename F>
auto guarded(F&& build, const std::string& source) {
  try {
    return build();
  } catch (const YAML::Exception& e) {
    std::string where = source;
    if (e.mark.line >= 0) where += ":" + std::to_string(e.mark.line + 1);
    throw Error(Errc::ValidationError, where + ": " + e.msg);
  }
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& source) {
  return guarded([&] { return build_scenario(text, source); }, source);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

void write_schedule(const Schedule& schedule, std::ostream& os) {
  auto list = [&](const std::vector<std::size_t>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i] + 1;
    os << "]\n";
  };
  os << "# input u(k): prefix entries first, then the cycle repeats; 1-based input indices\n";
  os << "initial_state: " << schedule.initial_state + 1 << '\n';
  os << "prefix: ";
  list(schedule.prefix_inputs);
  os << "cycle: ";
  list(schedule.cycle_inputs);
}

namespace {

Schedule build_schedule(std::string_view text, const std::string& source) {
  const YAML::Node root = parse_yaml(text, source);
  Reader rd(source);
  Schedule s;
  auto read_list = [&](const char* key, std::vector<std::size_t>& out) {
    YAML::Node n = root[key];
    if (!n.IsDefined() || n.IsNull()) return;
    auto v = rd.vector(n, key);
    if (!v) return;
    for (double x : *v) {
      if (x < 1.0 || x != std::floor(x)) {
        rd.fail(n, std::string(key) + " entries must be positive integers");
        return;
      }
      out.push_back(static_cast<std::size_t>(x) - 1);
    }
  };
  if (!root.IsMap()) {
    rd.fail(root, "schedule must be a mapping");
    rd.raise();
  }
  auto a0 = rd.scalar<long long>(rd.require(root, "initial_state"), "initial_state");
  if (a0 && *a0 < 1) rd.fail(root["initial_state"], "initial_state must be positive");
  read_list("prefix", s.prefix_inputs);
  read_list("cycle", s.cycle_inputs);
  if (s.cycle_inputs.empty()) rd.fail(root, "schedule needs a nonempty 'cycle'");
  if (!rd.ok() || !a0) rd.raise();
  s.initial_state = static_cast<std::size_t>(*a0 - 1);
  return s;
}

}  // namespace

Schedule parse_schedule(std::string_view text, const std::string& source) {
  return guarded([&] { return build_schedule(text, source); }, source);
}

Schedule load_schedule(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_schedule(buf.str(), path.string());
}

}  // namespace iiot
