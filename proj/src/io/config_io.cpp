#include "convsim/io/config_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <set>

#include "convsim/io/formats.hpp"

namespace convsim {

namespace {

// Strict object reader: consumed keys are tracked and finish() rejects
// anything left over, so typos never pass silently.
class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      throw std::runtime_error("config: " + path_ + " must be an object");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  const nlohmann::json& get(const char* key) {
    used_.insert(key);
    return j_.at(key);
  }

  template <typename T>
  T require(const char* key) {
    if (!j_.contains(key)) {
      throw std::runtime_error("config: missing required key '" + qualify(key) + "'");
    }
    return read<T>(key);
  }

  template <typename T>
  T fallback(const char* key, T def) {
    if (!j_.contains(key)) {
      return def;
    }
    return read<T>(key);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.contains(it.key())) {
        throw std::runtime_error("config: unknown key '" + qualify(it.key()) + "'");
      }
    }
  }

  std::string qualify(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  template <typename T>
  T read(const char* key) {
    used_.insert(key);
    try {
      return j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw std::runtime_error("config: key '" + qualify(key) + "' has the wrong type");
    }
  }

  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> used_;
};

GamePayoffs payoffs_from_json(const nlohmann::json& j, const std::string& path) {
  ObjectReader r(j, path);
  GamePayoffs g;
  g.x1 = r.require<double>("x1");
  g.y1 = r.require<double>("y1");
  g.x2 = r.require<double>("x2");
  g.y2 = r.require<double>("y2");
  r.finish();
  return g;
}

ClassifierThresholds thresholds_from_json(const nlohmann::json& j, const std::string& path) {
  ObjectReader r(j, path);
  ClassifierThresholds t;
  t.theta_s = r.fallback<double>("theta_s", t.theta_s);
  t.theta_p = r.fallback<double>("theta_p", t.theta_p);
  t.hub_factor = r.fallback<double>("hub_factor", t.hub_factor);
  t.homog_max = r.fallback<double>("homog_max", t.homog_max);
  r.finish();
  t.validate();
  return t;
}

nlohmann::json payoffs_to_json(const GamePayoffs& g) {
  return {{"x1", g.x1}, {"y1", g.y1}, {"x2", g.x2}, {"y2", g.y2}};
}

nlohmann::json thresholds_to_json(const ClassifierThresholds& t) {
  return {{"theta_s", t.theta_s},
          {"theta_p", t.theta_p},
          {"hub_factor", t.hub_factor},
          {"homog_max", t.homog_max}};
}

SimConfig sim_config_from_reader(ObjectReader& r, bool with_payoffs) {
  SimConfig cfg;
  cfg.n = r.require<std::uint32_t>("n");
  if (with_payoffs) {
    cfg.payoffs = payoffs_from_json(r.get("payoffs"), r.qualify("payoffs"));
  } else if (r.has("payoffs")) {
    throw std::runtime_error(
        "config: 'base.payoffs' is not allowed in a sweep (payoffs come from the grid)");
  }
  cfg.delta = r.require<double>("delta");
  cfg.epsilon = r.require<double>("epsilon");
  cfg.seed = r.require<std::uint64_t>("seed");
  if (r.has("mode")) {
    cfg.mode = update_mode_from_string(r.get("mode").get<std::string>());
  }
  cfg.network_scale = r.fallback<double>("network_scale", cfg.network_scale);
  cfg.strategy_scale = r.fallback<double>("strategy_scale", cfg.strategy_scale);
  if (r.has("strategy_init")) {
    cfg.strategy_init = strategy_init_from_string(r.get("strategy_init").get<std::string>());
  }
  cfg.rounds = r.fallback<std::uint64_t>("rounds", cfg.rounds);
  cfg.snapshot_every = r.fallback<std::uint64_t>("snapshot_every", cfg.snapshot_every);
  return cfg;
}

nlohmann::json sim_config_to_json(const SimConfig& cfg, bool with_payoffs) {
  nlohmann::json j{
      {"n", cfg.n},
      {"delta", cfg.delta},
      {"epsilon", cfg.epsilon},
      {"seed", cfg.seed},
      {"mode", to_string(cfg.mode)},
      {"network_scale", cfg.network_scale},
      {"strategy_scale", cfg.strategy_scale},
      {"strategy_init", to_string(cfg.strategy_init)},
      {"rounds", cfg.rounds},
      {"snapshot_every", cfg.snapshot_every},
  };
  if (with_payoffs) {
    j["payoffs"] = payoffs_to_json(cfg.payoffs);
  }
  return j;
}

SweepKind sweep_kind_from_string(const std::string& s) {
  if (s == "symmetric_square") return SweepKind::SymmetricSquare;
  if (s == "asymmetric_slice") return SweepKind::AsymmetricSlice;
  if (s == "bias_line") return SweepKind::BiasLine;
  if (s == "explicit") return SweepKind::Explicit;
  throw std::runtime_error(
      "config: sweep.kind must be one of symmetric_square, asymmetric_slice, "
      "bias_line, explicit (got '" + s + "')");
}

const char* to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::SymmetricSquare: return "symmetric_square";
    case SweepKind::AsymmetricSlice: return "asymmetric_slice";
    case SweepKind::BiasLine: return "bias_line";
    case SweepKind::Explicit: return "explicit";
  }
  return "symmetric_square";
}

}  // namespace

RunSetup run_setup_from_json(const nlohmann::json& j) {
  ObjectReader r(j, "");
  RunSetup setup;
  setup.config = sim_config_from_reader(r, /*with_payoffs=*/true);
  if (r.has("thresholds")) {
    setup.thresholds = thresholds_from_json(r.get("thresholds"), "thresholds");
  }
  r.finish();
  setup.config.validate();
  return setup;
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  ObjectReader r(j, "");
  SweepSpec spec;
  {
    ObjectReader s(r.get("sweep"), "sweep");
    spec.kind = sweep_kind_from_string(s.require<std::string>("kind"));
    switch (spec.kind) {
      case SweepKind::SymmetricSquare:
      case SweepKind::AsymmetricSlice:
        spec.step = s.fallback<double>("step", spec.step);
        break;
      case SweepKind::BiasLine:
        spec.bias.x1 = s.fallback<double>("x1", spec.bias.x1);
        spec.bias.y1 = s.fallback<double>("y1", spec.bias.y1);
        spec.bias.y2_from = s.fallback<double>("y2_from", spec.bias.y2_from);
        spec.bias.y2_to = s.fallback<double>("y2_to", spec.bias.y2_to);
        spec.bias.y2_step = s.fallback<double>("y2_step", spec.bias.y2_step);
        spec.bias.x2_offset = s.fallback<double>("x2_offset", spec.bias.x2_offset);
        break;
      case SweepKind::Explicit: {
        const nlohmann::json& pts = s.get("points");
        if (!pts.is_array()) {
          throw std::runtime_error("config: sweep.points must be an array");
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
          spec.explicit_points.push_back(
              payoffs_from_json(pts[i], "sweep.points[" + std::to_string(i) + "]"));
        }
        break;
      }
    }
    s.finish();
  }
  spec.seeds_per_point = r.require<std::uint32_t>("seeds_per_point");
  {
    ObjectReader b(r.get("base"), "base");
    spec.base = sim_config_from_reader(b, /*with_payoffs=*/false);
    b.finish();
  }
  if (r.has("thresholds")) {
    spec.thresholds = thresholds_from_json(r.get("thresholds"), "thresholds");
  }
  r.finish();
  spec.validate();
  return spec;
}

nlohmann::json run_setup_to_json(const RunSetup& setup) {
  nlohmann::json j = sim_config_to_json(setup.config, /*with_payoffs=*/true);
  j["thresholds"] = thresholds_to_json(setup.thresholds);
  return j;
}

nlohmann::json sweep_spec_to_json(const SweepSpec& spec) {
  nlohmann::json sweep{{"kind", to_string(spec.kind)}};
  switch (spec.kind) {
    case SweepKind::SymmetricSquare:
    case SweepKind::AsymmetricSlice:
      sweep["step"] = spec.step;
      break;
    case SweepKind::BiasLine:
      sweep["x1"] = spec.bias.x1;
      sweep["y1"] = spec.bias.y1;
      sweep["y2_from"] = spec.bias.y2_from;
      sweep["y2_to"] = spec.bias.y2_to;
      sweep["y2_step"] = spec.bias.y2_step;
      sweep["x2_offset"] = spec.bias.x2_offset;
      break;
    case SweepKind::Explicit: {
      nlohmann::json pts = nlohmann::json::array();
      for (const GamePayoffs& g : spec.explicit_points) {
        pts.push_back(payoffs_to_json(g));
      }
      sweep["points"] = std::move(pts);
      break;
    }
  }
  return {
      {"sweep", std::move(sweep)},
      {"seeds_per_point", spec.seeds_per_point},
      {"base", sim_config_to_json(spec.base, /*with_payoffs=*/false)},
      {"thresholds", thresholds_to_json(spec.thresholds)},
  };
}

LoadedSetup setup_from_json(const nlohmann::json& j) {
  const nlohmann::json* config = &j;
  if (j.is_object() && j.contains("tool") && j.contains("config")) {
    config = &j.at("config");  // manifest file
  }
  LoadedSetup setup;
  if (config->is_object() && config->contains("sweep")) {
    setup.sweep = sweep_spec_from_json(*config);
  } else {
    setup.run = run_setup_from_json(*config);
  }
  return setup;
}

LoadedSetup load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open '" + path + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config: '" + path + "' is not valid JSON: " + e.what());
  }
  return setup_from_json(j);
}

std::uint64_t config_digest(const nlohmann::json& config_json) {
  const std::string canonical = config_json.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

nlohmann::json make_manifest(const std::string& kind, const nlohmann::json& config_json) {
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return {
      {"tool", kToolName},
      {"version", kToolVersion},
      {"kind", kind},
      {"config", config_json},
      {"config_digest", hex_u64(config_digest(config_json))},
      {"created_utc", stamp},
  };
}

}  // namespace convsim
