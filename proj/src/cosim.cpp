#include "iiot/cosim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

#include "iiot/errors.hpp"
#include "iiot/rng.hpp"

namespace iiot {

namespace {

// Stream ids: 2i for link i's delivery draws, 2i+1 for plant i's noise.
constexpr std::uint64_t delivery_stream(std::size_t link) { return 2 * link; }
constexpr std::uint64_t noise_stream(std::size_t plant) { return 2 * plant + 1; }

}  // namespace

SimTrace simulate(const Scenario& scenario, const Schedule& schedule, const SimConfig& config) {
  if (config.horizon < 1 || config.trials < 1) throw Error(Errc::ValidationError, "horizon and trials must be positive");
  const auto& plants = scenario.wcs.plants;
  const std::size_t q = plants.size();
  const std::size_t tau = scenario.cost.tau;

  SimTrace tr;
  tr.trials = config.trials;
  tr.horizon = config.horizon;
  tr.tau = tau;
  tr.entry_step = schedule.prefix_inputs.size() * tau;
  const std::size_t slow_steps = (config.horizon - 1) / tau;
  tr.mas_path = replay(scenario.structure, scenario.constraints, schedule, slow_steps);
  tr.running_cost = average_cost_trace(scenario, schedule, config.horizon);

  std::vector<std::vector<double>> x0 = config.initial_states;
  if (x0.empty())
    for (const auto& p : plants) x0.emplace_back(p.dim(), 1.0);
  if (x0.size() != q) throw Error(Errc::DimensionMismatch, "one initial state per plant required");
  for (std::size_t i = 0; i < q; ++i) {
    if (x0[i].size() != plants[i].dim()) throw Error(Errc::DimensionMismatch, "initial state dimension");
    tr.plant_dims.push_back(plants[i].dim());
    tr.states.emplace_back(config.trials * (config.horizon + 1) * plants[i].dim());
  }
  tr.delivered.assign(config.trials * config.horizon * q, 0);

  const SuccessTable success = scenario.channel.success();
  std::vector<DenseMatrix> noise_factor;
  for (const auto& p : plants) noise_factor.push_back(cholesky_psd(p.noise_cov));

  auto run_trial = [&](std::size_t t) {
    std::vector<CounterRng> deliver_rng, noise_rng;
    for (std::size_t i = 0; i < q; ++i) {
      deliver_rng.emplace_back(config.seed, t, delivery_stream(i));
      noise_rng.emplace_back(config.seed, t, noise_stream(i));
    }
    std::vector<double> z, w;
    for (std::size_t i = 0; i < q; ++i) {
      const std::size_t n = plants[i].dim();
      double* traj = tr.states[i].data() + t * (config.horizon + 1) * n;
      std::copy(x0[i].begin(), x0[i].end(), traj);
      z.resize(n);
      for (std::size_t l = 0; l < config.horizon; ++l) {
        const std::size_t alpha = tr.alpha_at(l);
        const bool ok = deliver_rng[i].uniform(l, 0) < success.at(i, alpha);
        tr.delivered[(t * config.horizon + l) * q + i] = ok ? 1 : 0;
        for (std::size_t d = 0; d < n; ++d) z[d] = noise_rng[i].gaussian(l, d);
        w = noise_factor[i] * std::span<const double>(z);
        const auto next = plant_step(plants[i], std::span<const double>(traj + l * n, n), ok, w);
        std::copy(next.begin(), next.end(), traj + (l + 1) * n);
      }
    }
  };

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.trials));
  if (threads <= 1) {
    for (std::size_t t = 0; t < config.trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < config.trials; t += threads) run_trial(t);
      });
    for (auto& th : pool) th.join();
  }
  return tr;
}

bool LyapunovReport::pass() const {
  return std::all_of(plants.begin(), plants.end(), [](const PlantCheck& p) { return p.pass; });
}

LyapunovReport empirical_lyapunov_check(const SimTrace& trace, const WcsModel& wcs) {
  if (trace.trials < 100)
    throw Error(Errc::InsufficientTrials, "need at least 100 trials, got " + std::to_string(trace.trials));
  if (wcs.plants.size() != trace.links()) throw Error(Errc::DimensionMismatch, "trace and model disagree on plants");

  LyapunovReport report;
  const double trials = static_cast<double>(trace.trials);
  for (std::size_t i = 0; i < wcs.plants.size(); ++i) {
    const Plant& p = wcs.plants[i];
    const std::size_t n = p.dim();
    const double floor = noise_floor(p);
    PlantCheck check;
    check.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t l = trace.entry_step; l + 1 <= trace.horizon; ++l) {
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t t = 0; t < trace.trials; ++t) {
        const double v_now = lyapunov_value(p, std::span<const double>(trace.state(i, t, l), n));
        const double v_next = lyapunov_value(p, std::span<const double>(trace.state(i, t, l + 1), n));
        const double excess = v_next - p.decay * v_now - floor;
        sum += excess;
        sum_sq += excess * excess;
      }
      const double mean = sum / trials;
      const double var = std::max(0.0, (sum_sq - trials * mean * mean) / (trials - 1.0));
      const double margin = 3.0 * std::sqrt(var / trials) - mean;
      ++check.steps_checked;
      if (margin < check.worst_margin) {
        check.worst_margin = margin;
        check.worst_step = l;
      }
    }
    check.pass = check.steps_checked == 0 || check.worst_margin >= 0.0;
    if (check.steps_checked == 0) check.worst_margin = 0.0;
    report.plants.push_back(check);
  }
  return report;
}

std::vector<std::vector<DeliveryCount>> delivery_counts(const SimTrace& trace, std::size_t states) {
  std::vector<std::vector<DeliveryCount>> out(trace.links(), std::vector<DeliveryCount>(states));
  for (std::size_t t = 0; t < trace.trials; ++t)
    for (std::size_t l = 0; l < trace.horizon; ++l) {
      const std::size_t a = trace.alpha_at(l);
      for (std::size_t i = 0; i < trace.links(); ++i) {
        ++out[i][a].attempts;
        if (trace.was_delivered(t, l, i)) ++out[i][a].successes;
      }
    }
  return out;
}

std::vector<double> average_cost_trace(const Scenario& scenario, const Schedule& schedule, std::size_t horizon) {
  std::vector<double> out;
  if (horizon == 0) return out;
  out.reserve(horizon);
  const std::size_t tau = scenario.cost.tau;
  const auto path = replay(scenario.structure, scenario.constraints, schedule, (horizon - 1) / tau);
  const auto powers = scenario.powers();
  double total = 0.0;
  for (std::size_t l = 0; l < horizon; ++l) {
    const std::size_t k = l / tau;
    const std::size_t a = path[k];
    if (l % tau == 0) total += scenario.cost.lambda * scenario.cost.at(a, schedule.input_at(k));
    total += scenario.channel.expected_power(powers, a);
    out.push_back(total / static_cast<double>(l + 1));
  }
  return out;
}

void write_trace_csv(const SimTrace& trace, const WcsModel& wcs, std::ostream& os) {
  const std::size_t q = trace.links();
  os << "l,k,alpha";
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t d = 0; d < trace.plant_dims[i]; ++d) os << ",x" << i + 1 << "_" << d + 1;
  for (std::size_t i = 0; i < q; ++i) os << ",V" << i + 1;
  for (std::size_t i = 0; i < q; ++i) os << ",delivered" << i + 1;
  os << ",running_cost\n";

  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.12g", v);
    os << buf;
  };
  const double trials = static_cast<double>(trace.trials);
  for (std::size_t l = 0; l < trace.horizon; ++l) {
    os << l << ',' << l / trace.tau << ',' << trace.alpha_at(l) + 1;
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t d = 0; d < trace.plant_dims[i]; ++d) {
        double s = 0.0;
        for (std::size_t t = 0; t < trace.trials; ++t) s += trace.state(i, t, l)[d];
        put(s / trials);
      }
    }
    for (std::size_t i = 0; i < q; ++i) {
      double s = 0.0;
      for (std::size_t t = 0; t < trace.trials; ++t)
        s += lyapunov_value(wcs.plants[i], std::span<const double>(trace.state(i, t, l), trace.plant_dims[i]));
      put(s / trials);
    }
    for (std::size_t i = 0; i < q; ++i) {
      std::size_t c = 0;
      for (std::size_t t = 0; t < trace.trials; ++t) c += trace.was_delivered(t, l, i);
      put(static_cast<double>(c) / trials);
    }
    put(trace.running_cost[l]);
    os << '\n';
  }
}

}  // namespace iiot
