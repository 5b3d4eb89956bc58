#include "convsim/io/formats.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace convsim {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, res.ptr};
}

std::string hex_u64(std::uint64_t v) {
  char buf[19] = "0x";
  const auto res = std::to_chars(buf + 2, buf + sizeof(buf), v, 16);
  return {buf, res.ptr};
}

nlohmann::json snapshot_to_json(const Snapshot& snap) {
  nlohmann::json agents = nlohmann::json::array();
  for (const SnapshotAgent& a : snap.agents) {
    agents.push_back({
        {"host_w", a.host_weights},
        {"visitor_w", a.visitor_weights},
        {"partner_w", a.partner_weights},
        {"p_hawk_host", a.p_hawk_host},
        {"p_hawk_visit", a.p_hawk_visit},
        {"p_hawk_host_eps", a.p_hawk_host_eps},
        {"p_hawk_visit_eps", a.p_hawk_visit_eps},
        {"expected_visitors", a.expected_visitors},
    });
  }
  return {
      {"round", snap.round},
      {"mode", to_string(snap.mode)},
      {"epsilon", snap.epsilon},
      {"agents", std::move(agents)},
  };
}

Snapshot snapshot_from_json(const nlohmann::json& j) {
  Snapshot snap;
  snap.round = j.at("round").get<std::uint64_t>();
  snap.mode = update_mode_from_string(j.at("mode").get<std::string>());
  snap.epsilon = j.at("epsilon").get<double>();
  for (const nlohmann::json& a : j.at("agents")) {
    SnapshotAgent sa;
    sa.host_weights = a.at("host_w").get<std::array<double, 2>>();
    sa.visitor_weights = a.at("visitor_w").get<std::array<double, 2>>();
    sa.partner_weights = a.at("partner_w").get<std::vector<double>>();
    sa.p_hawk_host = a.at("p_hawk_host").get<double>();
    sa.p_hawk_visit = a.at("p_hawk_visit").get<double>();
    sa.p_hawk_host_eps = a.at("p_hawk_host_eps").get<double>();
    sa.p_hawk_visit_eps = a.at("p_hawk_visit_eps").get<double>();
    sa.expected_visitors = a.at("expected_visitors").get<double>();
    snap.agents.push_back(std::move(sa));
  }
  return snap;
}

nlohmann::json run_record_to_json(const RunRecord& rec) {
  return {
      {"grid_digest", rec.grid_digest},
      {"point", rec.point},
      {"replicate", rec.replicate},
      {"job_seed", rec.job_seed},
      {"x1", rec.payoffs.x1},
      {"y1", rec.payoffs.y1},
      {"x2", rec.payoffs.x2},
      {"y2", rec.payoffs.y2},
      {"label", to_string(rec.label)},
      {"rounds_to_class", rec.rounds_to_class},
      {"final_homogeneity", rec.final_homogeneity},
      {"error", rec.error},
  };
}

RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord rec;
  rec.grid_digest = j.at("grid_digest").get<std::uint64_t>();
  rec.point = j.at("point").get<std::uint32_t>();
  rec.replicate = j.at("replicate").get<std::uint32_t>();
  rec.job_seed = j.at("job_seed").get<std::uint64_t>();
  rec.payoffs.x1 = j.at("x1").get<double>();
  rec.payoffs.y1 = j.at("y1").get<double>();
  rec.payoffs.x2 = j.at("x2").get<double>();
  rec.payoffs.y2 = j.at("y2").get<double>();
  rec.label = outcome_label_from_string(j.at("label").get<std::string>());
  rec.rounds_to_class = j.at("rounds_to_class").get<std::int64_t>();
  rec.final_homogeneity = j.at("final_homogeneity").get<double>();
  rec.error = j.at("error").get<bool>();
  return rec;
}

void append_jsonl(std::ostream& out, const nlohmann::json& j) {
  out << j.dump() << '\n';
}

void write_sweep_table(std::ostream& out, const SweepTable& table) {
  out << "x1\ty1\tx2\ty2\tn_seeds\tn_bourgeois\tn_paradoxical\tn_network\t"
         "n_hybrid\tn_unresolved\tprop_paradoxical\tmean_rounds_to_class\t"
         "mean_homogeneity\n";
  for (const PointResult& row : table.points) {
    out << format_double(row.payoffs.x1) << '\t' << format_double(row.payoffs.y1)
        << '\t' << format_double(row.payoffs.x2) << '\t'
        << format_double(row.payoffs.y2) << '\t' << row.n_seeds << '\t'
        << row.n_bourgeois << '\t' << row.n_paradoxical << '\t' << row.n_network
        << '\t' << row.n_hybrid << '\t' << row.n_unresolved << '\t'
        << format_double(row.prop_paradoxical()) << '\t'
        << format_double(row.mean_rounds_to_class()) << '\t'
        << format_double(row.mean_homogeneity()) << '\n';
  }
}

void write_edge_list(std::ostream& out, const Snapshot& snap) {
  out << "from\tto\tweight\tprobability\n";
  const std::size_t n = snap.agents.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool underflow = false;
    const std::vector<double> probs = action_probabilities(
        snap.agents[i].partner_weights, snap.epsilon, i, &underflow);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        continue;
      }
      out << i << '\t' << j << '\t'
          << format_double(snap.agents[i].partner_weights[j]) << '\t'
          << format_double(probs[j]) << '\n';
    }
  }
}

const char* to_string(UpdateMode mode) {
  switch (mode) {
    case UpdateMode::Asymmetric: return "asymmetric";
    case UpdateMode::Symmetric: return "symmetric";
    case UpdateMode::NoNetwork: return "no_network";
  }
  return "asymmetric";
}

const char* to_string(StrategyInit init) {
  return init == StrategyInit::Uniform ? "uniform" : "random";
}

UpdateMode update_mode_from_string(const std::string& s) {
  if (s == "asymmetric") return UpdateMode::Asymmetric;
  if (s == "symmetric") return UpdateMode::Symmetric;
  if (s == "no_network") return UpdateMode::NoNetwork;
  throw std::invalid_argument(
      "mode must be one of asymmetric, symmetric, no_network (got '" + s + "')");
}

StrategyInit strategy_init_from_string(const std::string& s) {
  if (s == "uniform") return StrategyInit::Uniform;
  if (s == "random") return StrategyInit::Random;
  throw std::invalid_argument(
      "strategy_init must be uniform or random (got '" + s + "')");
}

}  // namespace convsim
