#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fluidc {

// One (instance, algorithm) measurement. Timing covers the superstep loop
// only. Failed runs carry NaN metric columns.
struct BenchRecord {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t m = 0;
  double mu_requested = 0.0;
  double mu_realized = 0.0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::uint32_t k_used = 0;
  double nmi = 0.0;
  double modularity = 0.0;
  std::size_t supersteps = 0;
  bool converged = false;
  double wall_time_total = 0.0;
  double wall_time_per_superstep = 0.0;
};

enum class KPolicy { truth, best };

struct SweepConfig {
  std::vector<std::size_t> sizes;
  std::vector<double> mus;
  std::size_t replicates = 20;
  std::vector<std::string> algorithms = {"fluidc", "lpa"};
  KPolicy k_policy = KPolicy::truth;
  // best-k search; 0 means the defaults [2, ceil(sqrt(n))]
  std::uint32_t k_min = 0;
  std::uint32_t k_max = 0;
  std::uint32_t trials_per_k = 5;
  std::size_t max_supersteps = 100;
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
};

// Runs every (size, mu, replicate) x algorithm combination. Each instance is
// generated once and shared by all algorithms; per-record seeds derive from
// (master_seed, n, mu, replicate, algorithm), so records are reproducible
// independently of sweep order or the worker count. Generation or algorithm
// failures become NaN rows and the sweep continues.
std::vector<BenchRecord> bench_sweep(const SweepConfig& config);

// CSV with a mandatory header, columns in BenchRecord field order, floats at
// 9 significant digits.
void write_records_csv(std::span<const BenchRecord> records, std::ostream& out);
std::vector<BenchRecord> read_records_csv(std::istream& in);

struct SummaryRow {
  std::string algorithm;
  std::size_t n = 0;
  double mu = 0.0;
  std::size_t count = 0;
  bool degenerate = false;  // single-record group, std fixed at 0
  double nmi_mean = 0.0, nmi_std = 0.0;
  double supersteps_mean = 0.0, supersteps_std = 0.0;
  double time_total_mean = 0.0, time_total_std = 0.0;
  double time_per_superstep_mean = 0.0, time_per_superstep_std = 0.0;
};

// Per-(algorithm, n, mu) means and sample standard deviations (n-1
// denominator), groups ordered by that key. Failed (NaN) rows are skipped.
std::vector<SummaryRow> summarize(std::span<const BenchRecord> records);
void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares of wall_time_per_superstep against edge count.
// Needs at least three distinct edge counts.
LinearFit linearity_check(std::span<const BenchRecord> records);

}  // namespace fluidc
