#include "fluidc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "fluidc/fluid.hpp"
#include "fluidc/lfr.hpp"
#include "fluidc/lpa.hpp"
#include "fluidc/metrics.hpp"
#include "fluidc/rng.hpp"

namespace fluidc {

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t record_seed(std::uint64_t master, std::size_t n, double mu,
                          std::size_t replicate, std::string_view algorithm) {
  return seed_mix({master, n, std::bit_cast<std::uint64_t>(mu), replicate,
                   fnv1a(algorithm)});
}

BenchRecord failed_record(BenchRecord record) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  record.mu_realized = nan;
  record.nmi = nan;
  record.modularity = nan;
  record.wall_time_total = nan;
  record.wall_time_per_superstep = nan;
  return record;
}

void run_one(const SweepConfig& config, const GroundTruthGraph& instance,
             BenchRecord& record) {
  Rng rng(record.seed);
  RunTiming timing;
  FluidResult result;

  if (record.algorithm == "lpa") {
    result = run_lpa(instance.graph, rng, config.max_supersteps, &timing);
    record.k_used = static_cast<std::uint32_t>(result.partition.block_count());
  } else if (record.algorithm == "fluidc") {
    if (config.k_policy == KPolicy::truth) {
      record.k_used = static_cast<std::uint32_t>(instance.truth.block_count());
      result = run_fluidc_disconnected(instance.graph, record.k_used, rng,
                                       config.max_supersteps, &timing);
    } else {
      const auto n = instance.graph.vertex_count();
      std::uint32_t k_min = config.k_min != 0 ? config.k_min : 2;
      std::uint32_t k_max =
          config.k_max != 0
              ? config.k_max
              : static_cast<std::uint32_t>(
                    std::ceil(std::sqrt(static_cast<double>(n))));
      k_max = std::min<std::uint32_t>(k_max, static_cast<std::uint32_t>(n));
      k_min = std::min(k_min, k_max);
      // Timing of a best-k record covers the chosen run only; re-run it with
      // the winning (k, trial) seed to get a clean loop measurement.
      const BestKResult best = best_k_by_modularity(
          instance.graph, k_min, k_max, config.trials_per_k, record.seed,
          config.max_supersteps);
      record.k_used = best.k;
      Rng winner(seed_mix({record.seed, best.k, best.trial}));
      result = run_fluidc_disconnected(instance.graph, best.k, winner,
                                       config.max_supersteps, &timing);
    }
  } else {
    throw std::invalid_argument("unknown algorithm: " + record.algorithm);
  }

  record.nmi = nmi_geometric(result.partition, instance.truth);
  record.modularity = modularity(instance.graph, result.partition);
  record.supersteps = result.supersteps;
  record.converged = result.converged;
  record.wall_time_total = timing.loop_seconds;
  record.wall_time_per_superstep =
      result.supersteps == 0 ? 0.0
                             : timing.loop_seconds /
                                   static_cast<double>(result.supersteps);
}

}  // namespace

std::vector<BenchRecord> bench_sweep(const SweepConfig& config) {
  const std::size_t tasks =
      config.sizes.size() * config.mus.size() * config.replicates;
  const std::size_t algos = config.algorithms.size();
  std::vector<BenchRecord> records(tasks * algos);

  auto run_task = [&](std::size_t task) {
    const std::size_t rep = task % config.replicates;
    const std::size_t mu_index = (task / config.replicates) % config.mus.size();
    const std::size_t size_index = task / (config.replicates * config.mus.size());
    const std::size_t n = config.sizes[size_index];
    const double mu = config.mus[mu_index];

    // One instance per task, shared by every algorithm.
    LfrParams params = LfrParams::benchmark_defaults(
        n, mu, record_seed(config.master_seed, n, mu, rep, "instance"));
    bool generated = true;
    GroundTruthGraph instance;
    try {
      instance = lfr_generate(params);
    } catch (const std::exception&) {
      generated = false;
    }

    for (std::size_t ai = 0; ai < algos; ++ai) {
      BenchRecord& record = records[task * algos + ai];
      record.algorithm = config.algorithms[ai];
      record.n = n;
      record.mu_requested = mu;
      record.replicate = rep;
      record.seed =
          record_seed(config.master_seed, n, mu, rep, record.algorithm);
      if (!generated) {
        record = failed_record(record);
        continue;
      }
      record.m = instance.graph.edge_count();
      record.mu_realized = instance.realized_mu;
      try {
        run_one(config, instance, record);
      } catch (const std::exception&) {
        record = failed_record(record);
      }
    }
  };

  if (config.workers <= 1) {
    for (std::size_t task = 0; task < tasks; ++task) run_task(task);
  } else {
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
      for (std::size_t task = next.fetch_add(1); task < tasks;
           task = next.fetch_add(1))
        run_task(task);
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < config.workers; ++w) pool.emplace_back(drain);
    for (auto& thread : pool) thread.join();
  }
  return records;
}

namespace {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
    fields.back().pop_back();
  return fields;
}

constexpr const char* kRecordHeader =
    "algorithm,n,m,mu_requested,mu_realized,replicate,seed,k_used,nmi,"
    "modularity,supersteps,converged,wall_time_total,wall_time_per_superstep";

}  // namespace

void write_records_csv(std::span<const BenchRecord> records, std::ostream& out) {
  out << kRecordHeader << "\n";
  for (const auto& r : records) {
    out << r.algorithm << ',' << r.n << ',' << r.m << ','
        << format_double(r.mu_requested) << ',' << format_double(r.mu_realized)
        << ',' << r.replicate << ',' << r.seed << ',' << r.k_used << ','
        << format_double(r.nmi) << ',' << format_double(r.modularity) << ','
        << r.supersteps << ',' << (r.converged ? 1 : 0) << ','
        << format_double(r.wall_time_total) << ','
        << format_double(r.wall_time_per_superstep) << "\n";
  }
}

std::vector<BenchRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("records csv: missing header");
  if (split_csv_line(line) != split_csv_line(kRecordHeader))
    throw std::runtime_error("records csv: unexpected header");

  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 14)
      throw std::runtime_error("records csv: expected 14 fields");
    BenchRecord r;
    r.algorithm = fields[0];
    r.n = std::strtoull(fields[1].c_str(), nullptr, 10);
    r.m = std::strtoull(fields[2].c_str(), nullptr, 10);
    r.mu_requested = std::strtod(fields[3].c_str(), nullptr);
    r.mu_realized = std::strtod(fields[4].c_str(), nullptr);
    r.replicate = std::strtoull(fields[5].c_str(), nullptr, 10);
    r.seed = std::strtoull(fields[6].c_str(), nullptr, 10);
    r.k_used = static_cast<std::uint32_t>(std::strtoul(fields[7].c_str(), nullptr, 10));
    r.nmi = std::strtod(fields[8].c_str(), nullptr);
    r.modularity = std::strtod(fields[9].c_str(), nullptr);
    r.supersteps = std::strtoull(fields[10].c_str(), nullptr, 10);
    r.converged = fields[11] == "1";
    r.wall_time_total = std::strtod(fields[12].c_str(), nullptr);
    r.wall_time_per_superstep = std::strtod(fields[13].c_str(), nullptr);
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

struct Accumulator {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_squares = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_squares += x * x;
  }
  double mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
  double sample_std() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double var =
        (sum_squares - static_cast<double>(count) * m * m) /
        static_cast<double>(count - 1);
    return std::sqrt(std::max(var, 0.0));
  }
};

}  // namespace

std::vector<SummaryRow> summarize(std::span<const BenchRecord> records) {
  struct Key {
    std::string algorithm;
    std::size_t n;
    double mu;
    auto operator<=>(const Key&) const = default;
  };
  struct Group {
    Accumulator nmi, supersteps, time_total, time_per_superstep;
  };

  std::vector<std::pair<Key, Group>> groups;
  auto find_group = [&](const Key& key) -> Group& {
    for (auto& [k, g] : groups)
      if (k == key) return g;
    groups.emplace_back(key, Group{});
    return groups.back().second;
  };

  for (const auto& r : records) {
    if (std::isnan(r.nmi)) continue;  // failed row
    Group& g = find_group({r.algorithm, r.n, r.mu_requested});
    g.nmi.add(r.nmi);
    g.supersteps.add(static_cast<double>(r.supersteps));
    g.time_total.add(r.wall_time_total);
    g.time_per_superstep.add(r.wall_time_per_superstep);
  }

  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<SummaryRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, g] : groups) {
    SummaryRow row;
    row.algorithm = key.algorithm;
    row.n = key.n;
    row.mu = key.mu;
    row.count = g.nmi.count;
    row.degenerate = g.nmi.count < 2;
    row.nmi_mean = g.nmi.mean();
    row.nmi_std = g.nmi.sample_std();
    row.supersteps_mean = g.supersteps.mean();
    row.supersteps_std = g.supersteps.sample_std();
    row.time_total_mean = g.time_total.mean();
    row.time_total_std = g.time_total.sample_std();
    row.time_per_superstep_mean = g.time_per_superstep.mean();
    row.time_per_superstep_std = g.time_per_superstep.sample_std();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out) {
  out << "algorithm,n,mu,count,degenerate,nmi_mean,nmi_std,supersteps_mean,"
         "supersteps_std,time_total_mean,time_total_std,"
         "time_per_superstep_mean,time_per_superstep_std\n";
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.n << ',' << format_double(r.mu) << ','
        << r.count << ',' << (r.degenerate ? 1 : 0) << ','
        << format_double(r.nmi_mean) << ',' << format_double(r.nmi_std) << ','
        << format_double(r.supersteps_mean) << ','
        << format_double(r.supersteps_std) << ','
        << format_double(r.time_total_mean) << ','
        << format_double(r.time_total_std) << ','
        << format_double(r.time_per_superstep_mean) << ','
        << format_double(r.time_per_superstep_std) << "\n";
  }
}

LinearFit linearity_check(std::span<const BenchRecord> records) {
  std::vector<std::pair<double, double>> points;
  for (const auto& r : records) {
    if (std::isnan(r.wall_time_per_superstep)) continue;
    points.emplace_back(static_cast<double>(r.m), r.wall_time_per_superstep);
  }

  std::vector<double> distinct;
  for (const auto& [x, y] : points) distinct.push_back(x);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    throw std::invalid_argument("linearity_check: need at least 3 distinct edge counts");

  const double count = static_cast<double>(points.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= count;
  mean_y /= count;

  double covariance = 0.0, variance_x = 0.0, variance_y = 0.0;
  for (const auto& [x, y] : points) {
    covariance += (x - mean_x) * (y - mean_y);
    variance_x += (x - mean_x) * (x - mean_x);
    variance_y += (y - mean_y) * (y - mean_y);
  }

  LinearFit fit;
  fit.slope = covariance / variance_x;
  fit.intercept = mean_y - fit.slope * mean_x;
  if (variance_y == 0.0) {
    fit.r_squared = 1.0;  // constant data, fit exactly by the flat line
  } else {
    double ss_res = 0.0;
    for (const auto& [x, y] : points) {
      const double predicted = fit.intercept + fit.slope * x;
      ss_res += (y - predicted) * (y - predicted);
    }
    fit.r_squared = 1.0 - ss_res / variance_y;
  }
  return fit;
}

}  // namespace fluidc
