#include "convsim/io/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>

#include "convsim/engine.hpp"
#include "convsim/io/formats.hpp"

namespace convsim {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + path.string() + "'");
  }
  return out;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

class RunWriter : public RunObserver {
 public:
  RunWriter(const std::filesystem::path& dir, const RunSetup& setup,
            std::uint64_t summary_every)
      : snapshots_(open_out(dir / "snapshots.jsonl")),
        summary_(open_out(dir / "summary.tsv")),
        monitor_(setup.thresholds),
        epsilon_(setup.config.epsilon),
        summary_every_(summary_every) {
    summary_ << "round\thost_hawk\thost_dove\tvisitor_hawk\tvisitor_dove\t"
                "mean_host_payoff\tmean_visitor_payoff\n";
  }

  void on_snapshot(std::uint64_t round, const Population& pop) override {
    append_jsonl(snapshots_, snapshot_to_json(make_snapshot(pop, round, epsilon_)));
    monitor_.on_snapshot(round, pop);
  }

  void on_round(const RoundAggregate& agg) override {
    if ((agg.round + 1) % summary_every_ != 0) {
      return;
    }
    summary_ << agg.round << '\t' << agg.host_hawk << '\t' << agg.host_dove << '\t'
             << agg.visitor_hawk << '\t' << agg.visitor_dove << '\t'
             << format_double(agg.mean_host_payoff) << '\t'
             << format_double(agg.mean_visitor_payoff) << '\n';
  }

  const ClassificationMonitor& monitor() const { return monitor_; }

 private:
  std::ofstream snapshots_;
  std::ofstream summary_;
  ClassificationMonitor monitor_;
  double epsilon_;
  std::uint64_t summary_every_;
};

}  // namespace

void cmd_run(const RunSetup& setup, const std::filesystem::path& out_dir,
             std::uint64_t summary_every) {
  setup.config.validate();
  setup.thresholds.validate();
  if (summary_every == 0) {
    throw std::invalid_argument("run: summary_every must be at least 1");
  }
  std::filesystem::create_directories(out_dir);
  write_json_file(out_dir / "manifest.json",
                  make_manifest("run", run_setup_to_json(setup)));

  RunWriter writer(out_dir, setup, summary_every);
  const RunResult result = run_simulation(setup.config, &writer);

  const Snapshot final_snapshot =
      make_snapshot(result.population, setup.config.rounds, setup.config.epsilon);
  {
    std::ofstream edges = open_out(out_dir / "edges.tsv");
    write_edge_list(edges, final_snapshot);
  }

  const OutcomeLabel label = writer.monitor().final_label();
  double max_expected = 0.0;
  for (const SnapshotAgent& a : final_snapshot.agents) {
    max_expected = std::max(max_expected, a.expected_visitors);
  }
  nlohmann::json final_json{
      {"rounds", setup.config.rounds},
      {"label", to_string(label)},
      {"homogeneity", network_homogeneity(final_snapshot)},
      {"max_expected_visitors", max_expected},
      {"distance_from_mixed_nash",
       distance_from_mixed_nash(final_snapshot, setup.config.payoffs)},
      {"underflow_events", result.summary.underflow_events},
      {"summary",
       {{"host_hawk", result.summary.host_hawk},
        {"host_dove", result.summary.host_dove},
        {"visitor_hawk", result.summary.visitor_hawk},
        {"visitor_dove", result.summary.visitor_dove},
        {"mean_host_payoff", result.summary.mean_host_payoff},
        {"mean_visitor_payoff", result.summary.mean_visitor_payoff}}},
  };
  const std::int64_t rtc = writer.monitor().rounds_to_classification();
  final_json["rounds_to_classification"] =
      rtc < 0 ? nlohmann::json(nullptr) : nlohmann::json(rtc);
  write_json_file(out_dir / "final.json", final_json);
}

void cmd_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
               unsigned workers) {
  spec.validate();
  std::filesystem::create_directories(out_dir);
  write_json_file(out_dir / "manifest.json",
                  make_manifest("sweep", sweep_spec_to_json(spec)));

  const std::vector<Job> jobs = generate_grid(spec);
  const std::uint64_t digest = spec.grid_digest();
  const std::filesystem::path records_path = out_dir / "records.jsonl";

  // Resume support: completed (point, replicate) pairs are skipped.
  std::vector<RunRecord> records;
  std::set<std::pair<std::uint32_t, std::uint32_t>> done;
  if (std::filesystem::exists(records_path)) {
    std::ifstream in(records_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) {
        continue;
      }
      RunRecord rec;
      try {
        rec = run_record_from_json(nlohmann::json::parse(line));
      } catch (const std::exception& e) {
        throw std::runtime_error("sweep: corrupt record at " + records_path.string() +
                                 ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (rec.grid_digest != digest) {
        throw std::runtime_error(
            "sweep: existing records in '" + records_path.string() +
            "' belong to a different sweep; use a fresh output directory");
      }
      if (done.emplace(rec.point, rec.replicate).second) {
        records.push_back(rec);
      }
    }
  }

  std::vector<Job> pending;
  for (const Job& job : jobs) {
    if (!done.contains({job.point, job.replicate})) {
      pending.push_back(job);
    }
  }

  if (!pending.empty()) {
    std::ofstream appender(records_path, std::ios::app);
    if (!appender) {
      throw std::runtime_error("cannot open '" + records_path.string() + "' for append");
    }
    std::mutex io_mutex;
    std::size_t completed = 0;
    const std::size_t tick = std::max<std::size_t>(1, pending.size() / 20);
    std::vector<RunRecord> fresh(pending.size());
    parallel_for(pending.size(), workers, [&](std::size_t i) {
      fresh[i] = run_job(pending[i], spec);
      std::lock_guard<std::mutex> lock(io_mutex);
      append_jsonl(appender, run_record_to_json(fresh[i]));
      appender.flush();
      if (++completed % tick == 0 || completed == pending.size()) {
        std::cerr << "sweep: " << completed << "/" << pending.size()
                  << " pending jobs done\n";
      }
    });
    records.insert(records.end(), fresh.begin(), fresh.end());
  }

  const SweepTable table = aggregate(spec, records);
  std::ofstream table_out = open_out(out_dir / "table.tsv");
  write_sweep_table(table_out, table);
}

void cmd_analyze(const std::filesystem::path& run_dir, const AnalyzeOptions& options) {
  const std::filesystem::path manifest_path = run_dir / "manifest.json";
  std::ifstream manifest_in(manifest_path);
  if (!manifest_in) {
    throw std::runtime_error("analyze: missing manifest '" + manifest_path.string() + "'");
  }
  nlohmann::json manifest;
  manifest_in >> manifest;
  if (manifest.value("kind", "") != "run") {
    throw std::runtime_error("analyze: '" + run_dir.string() + "' is not a run directory");
  }
  const RunSetup setup = run_setup_from_json(manifest.at("config"));
  const ClassifierThresholds thresholds = options.thresholds.value_or(setup.thresholds);
  const GamePayoffs payoffs = setup.config.payoffs;

  const std::filesystem::path snapshots_path = run_dir / "snapshots.jsonl";
  std::ifstream snaps(snapshots_path);
  if (!snaps) {
    throw std::runtime_error("analyze: missing snapshot stream '" +
                             snapshots_path.string() + "'");
  }

  std::ofstream homogeneity_out = open_out(run_dir / "homogeneity.tsv");
  homogeneity_out << "round\thomogeneity\n";
  std::ofstream nash_out = open_out(run_dir / "nash_distance.tsv");
  nash_out << "round\tdistance\n";
  std::ofstream labels_out = open_out(run_dir / "labels.tsv");
  labels_out << "round\tlabel\thas_hub\n";

  std::vector<SnapshotClassification> steps;
  Snapshot last;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(snaps, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    Snapshot snap;
    try {
      snap = snapshot_from_json(nlohmann::json::parse(line));
    } catch (const std::exception& e) {
      throw std::runtime_error("analyze: corrupt snapshot at " +
                               snapshots_path.string() + ":" +
                               std::to_string(line_no) + ": " + e.what());
    }
    const NetworkView view = network_view(snap);
    const OutcomeLabel label = classify_population(snap, thresholds);
    bool has_hub = false;
    for (double e : view.expected) {
      has_hub |= e >= thresholds.hub_factor;
    }
    homogeneity_out << snap.round << '\t'
                    << format_double(network_homogeneity(snap)) << '\n';
    nash_out << snap.round << '\t'
             << format_double(distance_from_mixed_nash(snap, payoffs)) << '\n';
    labels_out << snap.round << '\t' << to_string(label) << '\t' << has_hub << '\n';
    steps.push_back({snap.round, label, has_hub});
    last = std::move(snap);
    any = true;
  }
  if (!any) {
    throw std::runtime_error("analyze: snapshot stream '" + snapshots_path.string() +
                             "' is empty");
  }

  nlohmann::json trajectory{{"snapshot_every", setup.config.snapshot_every},
                            {"snapshots", steps.size()},
                            {"final_label", to_string(steps.back().label)}};
  if (is_convention(steps.back().label)) {
    trajectory["applicable"] = true;
    trajectory["label"] = to_string(classify_trajectory(steps));
  } else {
    trajectory["applicable"] = false;
    trajectory["reason"] = "run did not end in a convention";
  }
  write_json_file(run_dir / "trajectory.json", trajectory);

  const std::vector<double> threshold_hist =
      degree_distribution_threshold(last, options.tie_c);
  {
    std::ofstream out = open_out(run_dir / "degree_threshold.tsv");
    out << "degree\tcount\n";
    for (std::size_t d = 0; d < threshold_hist.size(); ++d) {
      out << d << '\t' << format_double(threshold_hist[d]) << '\n';
    }
  }
  {
    const std::vector<double> hist = degree_distribution_expected(last, options.bin_width);
    std::ofstream out = open_out(run_dir / "degree_expected.tsv");
    out << "bin_lo\tbin_hi\tcount\n";
    for (std::size_t k = 0; k < hist.size(); ++k) {
      out << format_double(static_cast<double>(k) * options.bin_width) << '\t'
          << format_double(static_cast<double>(k + 1) * options.bin_width) << '\t'
          << format_double(hist[k]) << '\n';
    }
  }

  const std::size_t n = last.agents.size();
  double max_expected = 0.0;
  double tie_total = 0.0;
  for (std::size_t d = 0; d < threshold_hist.size(); ++d) {
    tie_total += threshold_hist[d] * static_cast<double>(d);
  }
  const NetworkView final_view = network_view(last);
  for (double e : final_view.expected) {
    max_expected = std::max(max_expected, e);
  }
  const double mean_degree = tie_total / static_cast<double>(n);

  if (options.er_baseline) {
    const double p = options.er_p >= 0.0
                         ? options.er_p
                         : std::clamp(mean_degree / static_cast<double>(n - 1), 0.0, 1.0);
    const std::vector<double> er = erdos_renyi_degree_baseline(
        static_cast<std::uint32_t>(n), p, options.er_seeds, Rng(options.er_seed));
    std::ofstream out = open_out(run_dir / "er_baseline.tsv");
    out << "degree\tmean_count\n";
    for (std::size_t d = 0; d < er.size(); ++d) {
      out << d << '\t' << format_double(er[d]) << '\n';
    }
  }

  write_json_file(run_dir / "analysis.json",
                  {{"final_label", to_string(steps.back().label)},
                   {"final_homogeneity", network_homogeneity(last)},
                   {"final_nash_distance", distance_from_mixed_nash(last, payoffs)},
                   {"max_expected_visitors", max_expected},
                   {"mean_degree_threshold", mean_degree},
                   {"heavy_tail", max_expected >= thresholds.hub_factor},
                   {"tie_c", options.tie_c},
                   {"thresholds",
                    {{"theta_s", thresholds.theta_s},
                     {"theta_p", thresholds.theta_p},
                     {"hub_factor", thresholds.hub_factor},
                     {"homog_max", thresholds.homog_max}}}});
}

void cmd_baseline(std::uint32_t n, double p, std::uint32_t seeds, std::uint64_t seed,
                  const std::filesystem::path& out_file) {
  const std::vector<double> hist = erdos_renyi_degree_baseline(n, p, seeds, Rng(seed));
  if (out_file.has_parent_path()) {
    std::filesystem::create_directories(out_file.parent_path());
  }
  std::ofstream out = open_out(out_file);
  out << "degree\tmean_count\n";
  for (std::size_t d = 0; d < hist.size(); ++d) {
    out << d << '\t' << format_double(hist[d]) << '\n';
  }
}

}  // namespace convsim
