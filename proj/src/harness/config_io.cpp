#include "uavmec/harness/config_io.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <type_traits>

#include "json.hpp"

#include "uavmec/error.hpp"

namespace uavmec::harness {

using nlohmann::json;

namespace {

static_assert(std::is_same_v<std::size_t, std::uint64_t>, "size_t and uint64_t must coincide");

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const char* optimizer_name(agents::OptimizerKind k) {
  return k == agents::OptimizerKind::kAdam ? "adam" : "sgd";
}

// Every serialisable field is listed once, in visit(); the reader and the
// writer below are the two visitors.
template <typename V>
void visit_link(V& v, LinkParams& l) {
  v.field("beta0", l.beta0);
  v.field("path_loss_exponent", l.path_loss_exponent);
  v.field("rician_k", l.rician_k);
  v.field("bandwidth_hz", l.bandwidth_hz);
}

template <typename V>
void visit_td3(V& v, agents::Td3Config& c) {
  v.field("gamma", c.gamma);
  v.field("actor_lr", c.actor_lr);
  v.field("critic_lr", c.critic_lr);
  v.field("tau", c.tau);
  v.field("policy_delay", c.policy_delay);
  v.field("target_noise_sigma", c.target_noise_sigma);
  v.field("target_noise_clip", c.target_noise_clip);
  v.field("exploration_noise_sigma", c.exploration_noise_sigma);
  v.field("batch_size", c.batch_size);
  v.field("buffer_capacity", c.buffer_capacity);
  v.field("episodes", c.episodes);
  v.field("warmup_steps", c.warmup_steps);
  v.field("max_episode_steps", c.max_episode_steps);
  v.field("hidden", c.hidden);
  v.field("optimizer", c.optimizer);
  v.field("reward_scale", c.reward_scale);
}

template <typename V>
void visit_ppo(V& v, agents::PpoConfig& c) {
  v.field("gamma", c.gamma);
  v.field("actor_lr", c.actor_lr);
  v.field("critic_lr", c.critic_lr);
  v.field("clip_ratio", c.clip_ratio);
  v.field("gae_lambda", c.gae_lambda);
  v.field("epochs", c.epochs);
  v.field("minibatch_size", c.minibatch_size);
  v.field("rollout_episodes", c.rollout_episodes);
  v.field("episodes", c.episodes);
  v.field("max_episode_steps", c.max_episode_steps);
  v.field("init_log_std", c.init_log_std);
  v.field("hidden", c.hidden);
  v.field("optimizer", c.optimizer);
  v.field("reward_scale", c.reward_scale);
}

template <typename V>
void visit(V& v, ExperimentConfig& c) {
  v.field("name", c.name);
  v.field("output_dir", c.output_dir);
  v.field("write_ledger", c.write_ledger);
  v.field("seeds", c.seeds);
  v.field("algorithms", c.algorithms);
  v.section("world", [&](V& s) {
    WorldConfig& w = c.env.world;
    s.field("area_side", w.area_side);
    s.field("n_busy", w.n_busy);
    s.field("n_idle", w.n_idle);
    s.field("n_uav", w.n_uav);
    s.field("h_min", w.h_min);
    s.field("h_max", w.h_max);
    s.field("v_max", w.v_max);
    s.field("d_min", w.d_min);
    s.field("slot_seconds", w.slot_seconds);
    s.field("n_slots", w.n_slots);
    s.field("battery_joules", w.battery_joules);
  });
  v.section("channel", [&](V& s) {
    s.section("uav", [&](V& l) { visit_link(l, c.env.channel.uav); });
    s.section("d2d", [&](V& l) { visit_link(l, c.env.channel.d2d); });
    s.field("noise_power_w", c.env.channel.noise_power_w);
  });
  v.section("energy", [&](V& s) {
    EnergyParams& e = c.env.energy;
    s.field("kappa", e.kappa);
    s.field("s1", e.s1);
    s.field("y1", e.y1);
    s.field("m1", e.m1);
    s.field("m2", e.m2);
    s.field("blade_power_w", e.blade_power_w);
    s.field("induced_power_w", e.induced_power_w);
    s.field("tip_speed", e.tip_speed);
    s.field("rotor_induced_speed", e.rotor_induced_speed);
    s.field("air_density", e.air_density);
    s.field("fuselage_drag_ratio", e.fuselage_drag_ratio);
    s.field("rotor_area", e.rotor_area);
    s.field("rotor_solidity", e.rotor_solidity);
    s.field("classical_induced_term", e.classical_induced_term);
  });
  v.section("task", [&](V& s) {
    s.field("bits_min", c.env.task.bits_min);
    s.field("bits_max", c.env.task.bits_max);
    s.field("cycles_min", c.env.task.cycles_min);
    s.field("cycles_max", c.env.task.cycles_max);
  });
  v.section("resources", [&](V& s) {
    s.field("f_busy_max_hz", c.env.resources.f_busy_max_hz);
    s.field("f_idle_max_hz", c.env.resources.f_idle_max_hz);
    s.field("f_uav_max_hz", c.env.resources.f_uav_max_hz);
    s.field("tx_power_w", c.env.resources.tx_power_w);
  });
  v.section("economics", [&](V& s) {
    EconomicsParams& e = c.env.economics;
    s.field("p_uav_min", e.p_uav_min);
    s.field("p_uav_max", e.p_uav_max);
    s.field("p_idle_min", e.p_idle_min);
    s.field("p_idle_max", e.p_idle_max);
    s.field("energy_price", e.energy_price);
    s.field("beta_busy", e.beta_busy);
    s.field("beta_idle", e.beta_idle);
    s.field("eps1_cap", e.eps1_cap);
    s.field("offload_energy_credit", e.offload_energy_credit);
  });
  v.section("penalties", [&](V& s) {
    s.field("f1", c.env.penalties.f1);
    s.field("f2", c.env.penalties.f2);
    s.field("f3", c.env.penalties.f3);
    s.field("f4", c.env.penalties.f4);
  });
  v.section("td3", [&](V& s) { visit_td3(s, c.td3); });
  v.section("ppo", [&](V& s) { visit_ppo(s, c.ppo); });
  v.section("baseline", [&](V& s) { s.field("episodes", c.baseline.episodes); });
  v.section("sweep", [&](V& s) {
    s.field("n_uav", c.sweep.n_uav);
    s.field("n_idle", c.sweep.n_idle);
    s.field("n_busy", c.sweep.n_busy);
    s.field("f_uav_max_ghz", c.sweep.f_uav_max_ghz);
  });
}

class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  void field(const char* key, double& out) {
    const json* j = take(key);
    if (j == nullptr) return;
    if (!j->is_number()) throw ConfigError(join(path_, key), "expected a number");
    out = j->get<double>();
    if (!std::isfinite(out)) throw ConfigError(join(path_, key), "must be finite");
  }
  void field(const char* key, std::size_t& out) {
    const json* j = take(key);
    if (j != nullptr) out = as_count(*j, join(path_, key));
  }
  void field(const char* key, bool& out) {
    const json* j = take(key);
    if (j == nullptr) return;
    if (!j->is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
    out = j->get<bool>();
  }
  void field(const char* key, std::string& out) {
    const json* j = take(key);
    if (j == nullptr) return;
    if (!j->is_string()) throw ConfigError(join(path_, key), "expected a string");
    out = j->get<std::string>();
  }
  void field(const char* key, std::vector<std::size_t>& out) {
    const json* j = take(key);
    if (j == nullptr) return;
    const std::string p = join(path_, key);
    if (!j->is_array()) throw ConfigError(p, "expected an array of non-negative integers");
    out.clear();
    for (std::size_t i = 0; i < j->size(); ++i) out.push_back(as_count((*j)[i], p + "[" + std::to_string(i) + "]"));
  }
  void field(const char* key, std::vector<double>& out) {
    const json* j = take(key);
    if (j == nullptr) return;
    const std::string p = join(path_, key);
    if (!j->is_array()) throw ConfigError(p, "expected an array of numbers");
    out.clear();
    for (std::size_t i = 0; i < j->size(); ++i) {
      const json& e = (*j)[i];
      if (!e.is_number() || !std::isfinite(e.get<double>())) {
        throw ConfigError(p + "[" + std::to_string(i) + "]", "expected a finite number");
      }
      out.push_back(e.get<double>());
    }
  }
  void field(const char* key, agents::OptimizerKind& out) {
    std::string name;
    const bool present = obj_.contains(key);
    field(key, name);
    if (!present) return;
    if (name == "adam") {
      out = agents::OptimizerKind::kAdam;
    } else if (name == "sgd") {
      out = agents::OptimizerKind::kSgd;
    } else {
      throw ConfigError(join(path_, key), "expected \"adam\" or \"sgd\"");
    }
  }
  void field(const char* key, std::vector<Algorithm>& out) {
    const json* j = take(key);
    if (j == nullptr) return;
    const std::string p = join(path_, key);
    if (!j->is_array()) throw ConfigError(p, "expected an array of algorithm names");
    out.clear();
    for (std::size_t i = 0; i < j->size(); ++i) {
      const std::string ep = p + "[" + std::to_string(i) + "]";
      if (!(*j)[i].is_string()) throw ConfigError(ep, "expected an algorithm name");
      out.push_back(parse_algorithm((*j)[i].get<std::string>(), ep));
    }
  }
  void section(const char* key, const std::function<void(Reader&)>& body) {
    const json* j = take(key);
    if (j == nullptr) return;
    Reader child(*j, join(path_, key));
    body(child);
    child.finish();
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown field");
    }
  }
  void mark(const std::string& key) { seen_.insert(key); }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }
  static std::size_t as_count(const json& j, const std::string& p) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)) {
      throw ConfigError(p, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

class Writer {
 public:
  explicit Writer(json& out) : out_(out) { out_ = json::object(); }

  template <typename T>
  void field(const char* key, const T& value) {
    out_[key] = value;
  }
  void field(const char* key, const agents::OptimizerKind& k) { out_[key] = optimizer_name(k); }
  void field(const char* key, const std::vector<Algorithm>& algos) {
    json arr = json::array();
    for (Algorithm a : algos) arr.push_back(algorithm_name(a));
    out_[key] = arr;
  }
  void section(const char* key, const std::function<void(Writer&)>& body) {
    json child;
    Writer w(child);
    body(w);
    out_[key] = child;
  }

 private:
  json& out_;
};

// Rewrites unit aliases in place: "<x>_ghz" -> "<x>_hz", "noise_dbm" -> "noise_power_w".
void normalise_aliases(json& root) {
  if (root.contains("resources") && root["resources"].is_object()) {
    json& r = root["resources"];
    for (const char* base : {"f_busy_max", "f_idle_max", "f_uav_max"}) {
      const std::string ghz = std::string(base) + "_ghz";
      const std::string hz = std::string(base) + "_hz";
      if (!r.contains(ghz)) continue;
      if (r.contains(hz)) throw ConfigError("resources." + ghz, "given together with " + hz);
      if (!r[ghz].is_number()) throw ConfigError("resources." + ghz, "expected a number");
      r[hz] = r[ghz].get<double>() * 1e9;
      r.erase(ghz);
    }
  }
  if (root.contains("channel") && root["channel"].is_object()) {
    json& ch = root["channel"];
    if (ch.contains("noise_dbm")) {
      if (ch.contains("noise_power_w")) throw ConfigError("channel.noise_dbm", "given together with noise_power_w");
      if (!ch["noise_dbm"].is_number()) throw ConfigError("channel.noise_dbm", "expected a number");
      ch["noise_power_w"] = dbm_to_watts(ch["noise_dbm"].get<double>());
      ch.erase("noise_dbm");
    }
  }
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kTd3: return "td3";
    case Algorithm::kDdpg: return "ddpg";
    case Algorithm::kPpo: return "ppo";
    case Algorithm::kGreedy: return "greedy";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name, const std::string& field) {
  for (Algorithm a : {Algorithm::kTd3, Algorithm::kDdpg, Algorithm::kPpo, Algorithm::kGreedy}) {
    if (name == algorithm_name(a)) return a;
  }
  throw ConfigError(field, "unknown algorithm \"" + name + "\"");
}

void validate(const ExperimentConfig& c) {
  if (c.name.empty() || c.name.find('/') != std::string::npos) {
    throw ConfigError("name", "must be a non-empty name without '/'");
  }
  if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
  if (c.seeds.empty()) throw ConfigError("seeds", "must not be empty");
  if (std::set<std::uint64_t>(c.seeds.begin(), c.seeds.end()).size() != c.seeds.size()) {
    throw ConfigError("seeds", "must be distinct");
  }
  if (c.algorithms.empty()) throw ConfigError("algorithms", "must not be empty");
  validate(c.env);
  agents::validate(c.td3);
  agents::validate(c.ppo);
  if (c.baseline.episodes == 0) throw ConfigError("baseline.episodes", "must be at least 1");
  if (c.sweep.n_uav.empty()) throw ConfigError("sweep.n_uav", "must not be empty");
  if (c.sweep.n_idle.empty()) throw ConfigError("sweep.n_idle", "must not be empty");
  if (c.sweep.n_busy.empty()) throw ConfigError("sweep.n_busy", "must not be empty");
  if (c.sweep.f_uav_max_ghz.empty()) throw ConfigError("sweep.f_uav_max_ghz", "must not be empty");
  for (std::size_t v : c.sweep.n_uav) if (v == 0) throw ConfigError("sweep.n_uav", "values must be positive");
  for (std::size_t v : c.sweep.n_idle) if (v == 0) throw ConfigError("sweep.n_idle", "values must be positive");
  for (std::size_t v : c.sweep.n_busy) if (v == 0) throw ConfigError("sweep.n_busy", "values must be positive");
  for (double v : c.sweep.f_uav_max_ghz) if (!(v > 0)) throw ConfigError("sweep.f_uav_max_ghz", "values must be positive");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("<root>", "expected an object");
  if (!root.contains("schema_version")) throw ConfigError("schema_version", "missing required field");
  const json& ver = root["schema_version"];
  if (!ver.is_number_integer() || ver.get<long long>() != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version, expected " + std::to_string(kSchemaVersion));
  }
  normalise_aliases(root);
  ExperimentConfig cfg;
  Reader reader(root, "");
  reader.mark("schema_version");
  visit(reader, cfg);
  reader.finish();
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const ExperimentConfig& cfg) {
  json root;
  ExperimentConfig copy = cfg;
  Writer writer(root);
  visit(writer, copy);
  root["schema_version"] = kSchemaVersion;
  return root.dump(2) + "\n";
}

}  // namespace uavmec::harness
