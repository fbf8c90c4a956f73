#include "uavmec/harness/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <map>

#include "json.hpp"
#include "uavmec/agents/checkpoint.hpp"
#include "uavmec/agents/ppo.hpp"
#include "uavmec/agents/td3.hpp"
#include "uavmec/error.hpp"
#include "uavmec/harness/greedy.hpp"

#ifndef UAVMEC_VERSION
#define UAVMEC_VERSION "unknown"
#endif

namespace uavmec::harness {

namespace fs = std::filesystem;

namespace {

// Forwards to an OffloadingEnv and appends one ledger row per step.
class RecordingEnv final : public Environment {
 public:
  RecordingEnv(const EnvConfig& cfg, CsvTable* table) : env_(cfg), table_(table) {}

  std::vector<double> reset(std::uint64_t seed) override {
    ++episode_;
    return env_.reset(seed);
  }
  Step step(std::span<const double> action) override {
    Step s = env_.step(action);
    if (table_ != nullptr) append_ledger_row(*table_, episode_, env_.last_ledger());
    return s;
  }
  std::size_t state_dim() const override { return env_.state_dim(); }
  std::size_t action_dim() const override { return env_.action_dim(); }

 private:
  OffloadingEnv env_;
  CsvTable* table_;
  std::size_t episode_ = std::numeric_limits<std::size_t>::max();  // first reset wraps to 0
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string seed_tag(Algorithm a, std::uint64_t seed) {
  return std::string(algorithm_name(a)) + "_seed" + std::to_string(seed);
}

struct RunWriter {
  RunArtifacts art;
  std::string started = utc_now();
  std::string command;

  RunWriter(const ExperimentConfig& cfg, const std::string& root, std::string cmd)
      : command(std::move(cmd)) {
    art.directory = run_directory(cfg, root);
    fs::create_directories(art.directory);
    put("resolved_config.json", to_json(cfg));
  }
  void put(const std::string& name, const std::string& text) {
    const fs::path p = art.directory / name;
    write_file_atomic(p.string(), text);
    art.files.push_back(p);
  }
  void put(const std::string& name, const CsvTable& t) { put(name, t.str()); }
  void checkpoint(const std::string& name, const agents::Mlp& actor) {
    const fs::path p = art.directory / name;
    agents::save_checkpoint(p.string(), actor);
    art.files.push_back(p);
  }
  RunArtifacts finish(const ExperimentConfig& cfg, nlohmann::json extra = nlohmann::json::object()) {
    nlohmann::json meta = std::move(extra);
    meta["command"] = command;
    meta["name"] = cfg.name;
    meta["seeds"] = cfg.seeds;
    meta["started_utc"] = started;
    meta["finished_utc"] = utc_now();
    meta["code_version"] = UAVMEC_VERSION;
    put("metadata.json", meta.dump(2) + "\n");
    return art;
  }
};

}  // namespace

std::string output_root_from_env() {
  const char* v = std::getenv(kOutputRootEnv);
  return v != nullptr && *v != '\0' ? std::string(v) : std::string(".");
}

fs::path run_directory(const ExperimentConfig& cfg, const std::string& root) {
  return fs::path(root) / cfg.output_dir / cfg.name;
}

agents::EnvFactory env_factory(const EnvConfig& cfg) {
  return [cfg]() -> std::unique_ptr<Environment> { return std::make_unique<OffloadingEnv>(cfg); };
}

CsvTable ledger_table(std::size_t n_uav) {
  std::vector<std::string> h{"episode", "slot", "q", "u_uav", "u_idle", "u_busy",
                             "f1", "f2", "f3", "f4", "reward"};
  for (std::size_t k = 0; k < n_uav; ++k) {
    for (const char* c : {"x", "y", "z", "energy"}) h.push_back("uav" + std::to_string(k) + "_" + c);
  }
  return CsvTable(std::move(h));
}

void append_ledger_row(CsvTable& table, std::size_t episode, const LedgerEntry& e) {
  std::vector<std::string> r{cell(episode), cell(e.slot), cell(e.q), cell(e.u_uav),
                             cell(e.u_idle), cell(e.u_busy), cell(e.f1), cell(e.f2),
                             cell(e.f3), cell(e.f4), cell(e.reward)};
  for (const UavLedger& u : e.uavs) {
    r.push_back(cell(u.next.pos.x));
    r.push_back(cell(u.next.pos.y));
    r.push_back(cell(u.next.pos.z));
    r.push_back(cell(u.next.remaining_energy));
  }
  table.add_row(std::move(r));
}

CsvTable convergence_table(const std::vector<agents::EpisodeLog>& log) {
  CsvTable t({"episode", "return", "critic1_loss", "critic2_loss", "actor_objective", "f1_total",
              "f2_total", "f3_total", "f4_total", "steps", "updates"});
  for (const auto& e : log) {
    t.add_row({cell(e.episode), cell(e.episode_return), cell(e.critic1_loss), cell(e.critic2_loss),
               cell(e.actor_objective), cell(e.penalties[0]), cell(e.penalties[1]),
               cell(e.penalties[2]), cell(e.penalties[3]), cell(e.steps), cell(e.updates)});
  }
  return t;
}

AlgorithmRun run_algorithm(const ExperimentConfig& cfg, const EnvConfig& env, Algorithm algo,
                           std::uint64_t seed, bool record_ledger) {
  AlgorithmRun run;
  run.ledger = ledger_table(env.world.n_uav);
  CsvTable* sink = record_ledger ? &run.ledger : nullptr;
  if (algo == Algorithm::kGreedy) {
    for (std::size_t ep = 0; ep < cfg.baseline.episodes; ++ep) {
      const EpisodeResult r = greedy_episode(env, derive_seed(seed, 1000 + ep));
      agents::EpisodeLog row;
      row.episode = ep;
      row.episode_return = r.episode_return;
      row.steps = r.ledger.size();
      for (const LedgerEntry& e : r.ledger) {
        row.penalties[0] += e.f1;
        row.penalties[1] += e.f2;
        row.penalties[2] += e.f3;
        row.penalties[3] += e.f4;
        if (sink != nullptr) append_ledger_row(*sink, ep, e);
      }
      run.log.push_back(row);
    }
    return run;
  }
  const agents::EnvFactory factory = [&env, sink]() -> std::unique_ptr<Environment> {
    return std::make_unique<RecordingEnv>(env, sink);
  };
  agents::TrainResult tr;
  switch (algo) {
    case Algorithm::kTd3: tr = agents::td3_train(factory, cfg.td3, seed); break;
    case Algorithm::kDdpg: tr = agents::ddpg_train(factory, cfg.td3, seed); break;
    case Algorithm::kPpo: tr = agents::ppo_train(factory, cfg.ppo, seed); break;
    case Algorithm::kGreedy: break;
  }
  run.log = std::move(tr.log);
  run.actor = std::move(tr.actor);
  return run;
}

std::vector<double> axis_values(const ExperimentConfig& cfg, const std::string& axis) {
  auto widen = [](const std::vector<std::size_t>& v) { return std::vector<double>(v.begin(), v.end()); };
  if (axis == "n_uav") return widen(cfg.sweep.n_uav);
  if (axis == "n_idle") return widen(cfg.sweep.n_idle);
  if (axis == "n_busy") return widen(cfg.sweep.n_busy);
  if (axis == "f_uav_max_ghz") return cfg.sweep.f_uav_max_ghz;
  throw ConfigError("axis", "unknown sweep axis \"" + axis +
                                "\" (expected n_uav, n_idle, n_busy or f_uav_max_ghz)");
}

EnvConfig apply_axis(EnvConfig env, const std::string& axis, double value) {
  if (axis == "n_uav") {
    env.world.n_uav = static_cast<std::size_t>(value);
  } else if (axis == "n_idle") {
    env.world.n_idle = static_cast<std::size_t>(value);
  } else if (axis == "n_busy") {
    env.world.n_busy = static_cast<std::size_t>(value);
  } else if (axis == "f_uav_max_ghz") {
    env.resources.f_uav_max_hz = value * 1e9;
  } else {
    throw ConfigError("axis", "unknown sweep axis \"" + axis + "\"");
  }
  validate(env);
  return env;
}

std::vector<SweepCell> sweep_cells(const ExperimentConfig& cfg, const std::string& axis) {
  const std::vector<double> values = axis_values(cfg, axis);
  std::vector<SweepCell> cells;
  for (double v : values) {
    for (Algorithm a : cfg.algorithms) {
      for (std::uint64_t s : cfg.seeds) cells.push_back({v, a, s, 0.0});
    }
  }
  std::vector<EnvConfig> envs;
  for (const SweepCell& c : cells) envs.push_back(apply_axis(cfg.env, axis, c.axis_value));

  std::vector<std::string> errors(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cells.size(); ++i) {
    try {
      const AlgorithmRun r = run_algorithm(cfg, envs[i], cells[i].algorithm, cells[i].seed, false);
      cells[i].converged_return = agents::converged_return(r.log, 0.1);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw Error("sweep", e);
  }
  return cells;
}

std::vector<SweepSummaryRow> summarise(const std::vector<SweepCell>& cells) {
  std::vector<SweepSummaryRow> rows;
  std::vector<std::vector<double>> samples;
  for (const SweepCell& c : cells) {
    std::size_t idx = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].axis_value == c.axis_value && rows[r].algorithm == c.algorithm) idx = r;
    }
    if (idx == rows.size()) {
      rows.push_back({c.axis_value, c.algorithm, 0.0, 0.0, 0});
      samples.emplace_back();
    }
    samples[idx].push_back(c.converged_return);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& x = samples[r];
    double sum = 0.0;
    for (double v : x) sum += v;
    const double mean = sum / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    rows[r].mean = mean;
    rows[r].n = x.size();
    rows[r].stddev = x.size() > 1 ? std::sqrt(ss / static_cast<double>(x.size() - 1)) : 0.0;
  }
  return rows;
}

TrajectoryResult rollout_policy(const agents::Mlp& actor, const EnvConfig& cfg, std::uint64_t seed) {
  OffloadingEnv env(cfg);
  std::vector<double> state = env.reset(seed);
  if (actor.input_size() != env.state_dim() || actor.output_size() != env.action_dim()) {
    throw Error("shape", "actor does not match the environment's state/action sizes");
  }
  TrajectoryResult t;
  t.start = env.world();
  std::vector<double> rewards;
  while (!env.done()) {
    const Environment::Step s = env.step(actor.forward(state));
    rewards.push_back(s.reward);
    t.ledger.push_back(env.last_ledger());
    std::vector<Position> pos;
    for (const UavState& u : env.world().uavs) pos.push_back(u.pos);
    t.uav_positions.push_back(std::move(pos));
    state = s.state;
  }
  t.episode_return = episode_return(rewards);
  return t;
}

CsvTable trajectory_table(const TrajectoryResult& t) {
  CsvTable table({"slot", "kind", "index", "x", "y", "z"});
  auto add = [&table](std::size_t slot, const char* kind, std::size_t idx, const Position& p) {
    table.add_row({cell(slot), cell(std::string(kind)), cell(idx), cell(p.x), cell(p.y), cell(p.z)});
  };
  for (std::size_t i = 0; i < t.start.busy.size(); ++i) add(0, "busy", i, t.start.busy[i]);
  for (std::size_t j = 0; j < t.start.idle.size(); ++j) add(0, "idle", j, t.start.idle[j]);
  for (std::size_t k = 0; k < t.start.uavs.size(); ++k) add(0, "uav_start", k, t.start.uavs[k].pos);
  for (std::size_t n = 0; n < t.uav_positions.size(); ++n) {
    for (std::size_t k = 0; k < t.uav_positions[n].size(); ++k) add(n + 1, "uav", k, t.uav_positions[n][k]);
  }
  return table;
}

RunArtifacts run_experiment(const ExperimentConfig& cfg, const std::string& root) {
  validate(cfg);
  RunWriter w(cfg, root, "run");
  CsvTable summary({"algorithm", "seed", "converged_return", "final_return"});
  for (Algorithm a : cfg.algorithms) {
    for (std::uint64_t seed : cfg.seeds) {
      const AlgorithmRun r = run_algorithm(cfg, cfg.env, a, seed, cfg.write_ledger);
      const std::string tag = seed_tag(a, seed);
      w.put("convergence_" + tag + ".csv", convergence_table(r.log));
      if (cfg.write_ledger) w.put("ledger_" + tag + ".csv", r.ledger);
      if (a != Algorithm::kGreedy) w.checkpoint("actor_" + tag + ".ckpt", r.actor);
      summary.add_row({cell(std::string(algorithm_name(a))), cell(seed),
                       cell(agents::converged_return(r.log, 0.1)),
                       cell(r.log.back().episode_return)});
    }
  }
  w.put("run_summary.csv", summary);
  return w.finish(cfg);
}

RunArtifacts sweep_experiment(const ExperimentConfig& cfg, const std::string& axis,
                              const std::string& root) {
  validate(cfg);
  axis_values(cfg, axis);
  RunWriter w(cfg, root, "sweep " + axis);
  const std::vector<SweepCell> cells = sweep_cells(cfg, axis);
  CsvTable cell_table({"axis", "value", "algorithm", "seed", "converged_return"});
  for (const SweepCell& c : cells) {
    cell_table.add_row({cell(axis), cell(c.axis_value), cell(std::string(algorithm_name(c.algorithm))),
                        cell(c.seed), cell(c.converged_return)});
  }
  CsvTable summary({"axis", "value", "algorithm", "mean", "stddev", "n"});
  for (const SweepSummaryRow& r : summarise(cells)) {
    summary.add_row({cell(axis), cell(r.axis_value), cell(std::string(algorithm_name(r.algorithm))),
                     cell(r.mean), cell(r.stddev), cell(r.n)});
  }
  w.put("sweep_" + axis + "_cells.csv", cell_table);
  w.put("sweep_" + axis + "_summary.csv", summary);
  return w.finish(cfg, {{"axis", axis}});
}

RunArtifacts baseline_experiment(const ExperimentConfig& cfg, const std::string& root) {
  validate(cfg);
  RunWriter w(cfg, root, "baseline");
  CsvTable summary({"seed", "converged_return"});
  for (std::uint64_t seed : cfg.seeds) {
    const AlgorithmRun r = run_algorithm(cfg, cfg.env, Algorithm::kGreedy, seed, cfg.write_ledger);
    const std::string tag = seed_tag(Algorithm::kGreedy, seed);
    w.put("convergence_" + tag + ".csv", convergence_table(r.log));
    if (cfg.write_ledger) w.put("ledger_" + tag + ".csv", r.ledger);
    summary.add_row({cell(seed), cell(agents::converged_return(r.log, 0.1))});
  }
  w.put("baseline_summary.csv", summary);
  return w.finish(cfg);
}

RunArtifacts trajectory_experiment(const agents::Mlp& actor, const ExperimentConfig& cfg,
                                   std::uint64_t seed, const std::string& root) {
  validate(cfg);
  RunWriter w(cfg, root, "trajectory");
  const TrajectoryResult t = rollout_policy(actor, cfg.env, seed);
  w.put("trajectory_seed" + std::to_string(seed) + ".csv", trajectory_table(t));
  CsvTable ledger = ledger_table(cfg.env.world.n_uav);
  for (const LedgerEntry& e : t.ledger) append_ledger_row(ledger, 0, e);
  w.put("trajectory_ledger_seed" + std::to_string(seed) + ".csv", ledger);
  return w.finish(cfg, {{"trajectory_seed", seed}});
}

}  // namespace uavmec::harness
