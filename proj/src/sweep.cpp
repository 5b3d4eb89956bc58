#include "convsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "convsim/engine.hpp"
#include "convsim/rng.hpp"

namespace convsim {

namespace {

// Interior step grid over (0, 1): k * step for k = 1 .. ceil(1/step) - 1.
std::vector<double> interior_grid(double step) {
  if (!(step > 0.0) || !(step < 0.5)) {
    throw std::invalid_argument("sweep: step must lie in (0, 0.5)");
  }
  const auto divisions = static_cast<std::size_t>(std::lround(1.0 / step));
  std::vector<double> values;
  for (std::size_t k = 1; k < divisions; ++k) {
    const double v = static_cast<double>(k) * step;
    if (v > 0.0 && v < 1.0) {
      values.push_back(v);
    }
  }
  return values;
}

std::uint64_t fnv1a64(std::uint64_t h, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fnv1a64_value(std::uint64_t h, double v) {
  return fnv1a64(h, &v, sizeof(v));
}

}  // namespace

std::vector<GamePayoffs> SweepSpec::grid() const {
  std::vector<GamePayoffs> points;
  switch (kind) {
    case SweepKind::SymmetricSquare: {
      const std::vector<double> axis = interior_grid(step);
      for (double y : axis) {
        for (double x : axis) {
          points.push_back({x, y, x, y});
        }
      }
      break;
    }
    case SweepKind::AsymmetricSlice: {
      const std::vector<double> axis = interior_grid(step);
      for (double y1 : axis) {
        for (double y2 : axis) {
          points.push_back({1.0 - y1, y1, 1.0 - y2, y2});
        }
      }
      break;
    }
    case SweepKind::BiasLine: {
      if (!(bias.y2_step > 0.0)) {
        throw std::invalid_argument("sweep: bias line y2_step must be positive");
      }
      const auto count = static_cast<std::size_t>(
          std::floor((bias.y2_to - bias.y2_from) / bias.y2_step + 0.5));
      for (std::size_t k = 0; k <= count; ++k) {
        const double y2 = bias.y2_from + static_cast<double>(k) * bias.y2_step;
        points.push_back({bias.x1, bias.y1, y2 + bias.x2_offset, y2});
      }
      break;
    }
    case SweepKind::Explicit:
      points = explicit_points;
      break;
  }
  if (points.empty()) {
    throw std::invalid_argument("sweep: generated grid is empty");
  }
  for (const GamePayoffs& g : points) {
    g.validate();
  }
  return points;
}

void SweepSpec::validate() const {
  if (seeds_per_point == 0) {
    throw std::invalid_argument("sweep: seeds_per_point must be positive");
  }
  thresholds.validate();
  // Base config is validated with a grid point substituted for the payoffs.
  const std::vector<GamePayoffs> points = grid();
  SimConfig probe = base;
  probe.payoffs = points.front();
  probe.validate();
}

std::uint64_t SweepSpec::grid_digest() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const auto k = static_cast<std::uint64_t>(kind);
  h = fnv1a64(h, &k, sizeof(k));
  for (const GamePayoffs& g : grid()) {
    h = fnv1a64_value(h, g.x1);
    h = fnv1a64_value(h, g.y1);
    h = fnv1a64_value(h, g.x2);
    h = fnv1a64_value(h, g.y2);
  }
  const std::uint64_t s = seeds_per_point;
  h = fnv1a64(h, &s, sizeof(s));
  h = fnv1a64(h, &base.seed, sizeof(base.seed));
  h = fnv1a64(h, &base.rounds, sizeof(base.rounds));
  h = fnv1a64(h, &base.n, sizeof(base.n));
  const auto mode = static_cast<std::uint64_t>(base.mode);
  h = fnv1a64(h, &mode, sizeof(mode));
  h = fnv1a64_value(h, base.delta);
  h = fnv1a64_value(h, base.epsilon);
  return h;
}

std::vector<Job> generate_grid(const SweepSpec& spec) {
  spec.validate();
  const std::vector<GamePayoffs> points = spec.grid();
  std::vector<Job> jobs;
  jobs.reserve(points.size() * spec.seeds_per_point);
  for (std::uint32_t p = 0; p < points.size(); ++p) {
    for (std::uint32_t r = 0; r < spec.seeds_per_point; ++r) {
      jobs.push_back({p, r, points[p], derive_seed(spec.base.seed, p, r)});
    }
  }
  return jobs;
}

RunRecord run_job(const Job& job, const SweepSpec& spec) {
  RunRecord rec;
  rec.grid_digest = spec.grid_digest();
  rec.point = job.point;
  rec.replicate = job.replicate;
  rec.job_seed = job.seed;
  rec.payoffs = job.payoffs;
  try {
    SimConfig config = spec.base;
    config.payoffs = job.payoffs;
    config.seed = job.seed;
    ClassificationMonitor monitor(spec.thresholds);
    run_simulation(config, &monitor);
    rec.label = monitor.final_label();
    rec.rounds_to_class = monitor.rounds_to_classification();
    rec.final_homogeneity = monitor.final_homogeneity();
  } catch (const std::exception&) {
    rec.label = OutcomeLabel::Unresolved;
    rec.rounds_to_class = -1;
    rec.error = true;
  }
  return rec;
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        body(i);
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
}

std::vector<RunRecord> run_jobs(const SweepSpec& spec, const std::vector<Job>& jobs,
                                unsigned workers, const JobRunner& runner) {
  std::vector<RunRecord> records(jobs.size());
  if (runner) {
    parallel_for(jobs.size(), workers, [&](std::size_t i) {
      try {
        records[i] = runner(jobs[i]);
      } catch (const std::exception&) {
        records[i].grid_digest = spec.grid_digest();
        records[i].point = jobs[i].point;
        records[i].replicate = jobs[i].replicate;
        records[i].job_seed = jobs[i].seed;
        records[i].payoffs = jobs[i].payoffs;
        records[i].label = OutcomeLabel::Unresolved;
        records[i].rounds_to_class = -1;
        records[i].error = true;
      }
    });
  } else {
    parallel_for(jobs.size(), workers,
                 [&](std::size_t i) { records[i] = run_job(jobs[i], spec); });
  }
  return records;
}

SweepTable aggregate(const SweepSpec& spec, const std::vector<RunRecord>& records) {
  const std::vector<GamePayoffs> points = spec.grid();
  const std::uint64_t digest = spec.grid_digest();

  // Canonical order plus dedup makes the fold independent of arrival order.
  std::vector<const RunRecord*> sorted;
  sorted.reserve(records.size());
  for (const RunRecord& r : records) {
    if (r.grid_digest != digest) {
      throw std::invalid_argument("aggregate: record from a different grid");
    }
    if (r.point >= points.size()) {
      throw std::invalid_argument("aggregate: record point index out of range");
    }
    sorted.push_back(&r);
  }
  std::sort(sorted.begin(), sorted.end(), [](const RunRecord* a, const RunRecord* b) {
    return a->point != b->point ? a->point < b->point : a->replicate < b->replicate;
  });

  SweepTable table;
  table.grid_digest = digest;
  table.points.resize(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    table.points[p].payoffs = points[p];
  }

  const RunRecord* last = nullptr;
  for (const RunRecord* r : sorted) {
    if (last != nullptr && last->point == r->point && last->replicate == r->replicate) {
      continue;  // duplicate record (e.g. a resumed sweep), keep the first
    }
    last = r;
    PointResult& row = table.points[r->point];
    ++row.n_seeds;
    switch (r->label) {
      case OutcomeLabel::Bourgeois: ++row.n_bourgeois; break;
      case OutcomeLabel::Paradoxical: ++row.n_paradoxical; break;
      case OutcomeLabel::Network: ++row.n_network; break;
      case OutcomeLabel::Hybrid: ++row.n_hybrid; break;
      case OutcomeLabel::Unresolved: ++row.n_unresolved; break;
    }
    row.n_error += r->error;
    if (r->label != OutcomeLabel::Unresolved && r->rounds_to_class >= 0) {
      row.sum_rounds_to_class += static_cast<double>(r->rounds_to_class);
      ++row.n_classified;
    }
    row.sum_homogeneity += r->final_homogeneity;
    if (is_convention(r->label)) {
      row.sum_homogeneity_convention += r->final_homogeneity;
      ++row.n_convention;
    }
  }
  return table;
}

SweepTable run_sweep(const SweepSpec& spec, unsigned workers) {
  const std::vector<Job> jobs = generate_grid(spec);
  return aggregate(spec, run_jobs(spec, jobs, workers));
}

}  // namespace convsim
