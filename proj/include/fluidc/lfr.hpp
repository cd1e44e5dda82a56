#pragma once

#include <cstdint>
#include <vector>

#include "fluidc/graph.hpp"
#include "fluidc/partition.hpp"
#include "fluidc/rng.hpp"

namespace fluidc {

// LFR-style benchmark parameters. Degrees follow a truncated power law with
// the given exponent and a minimum solved from avg_degree; community sizes
// follow their own truncated power law and are fit to sum to n.
struct LfrParams {
  std::size_t n = 0;
  double mu = 0.0;  // requested mixing: fraction of a vertex's edges leaving its community
  double avg_degree = 20.0;
  std::uint32_t max_degree = 0;
  double degree_exponent = -2.0;
  double community_exponent = -1.0;
  std::uint32_t min_community = 0;
  std::uint32_t max_community = 0;
  std::uint64_t seed = 0;

  // Benchmark defaults: max degree and max community size at n/10, average
  // degree 20, exponents -2 / -1.
  static LfrParams benchmark_defaults(std::size_t n, double mu, std::uint64_t seed);

  // Multi-ground-truth defaults: mu = 0 and community sizes in [n/5, 3n/10].
  static LfrParams multi_gt_defaults(std::size_t n, std::uint64_t seed);

  void validate() const;
};

struct GroundTruthGraph {
  Graph graph;
  Partition truth;
  double realized_mu = 0.0;  // measured, see realized_mixing
};

// Optional generation diagnostics: the degree sequence the wiring was asked
// to realize, and how many stubs had to be discarded.
struct LfrDiagnostics {
  std::vector<std::uint32_t> target_degrees;
  std::size_t dropped_stubs = 0;
};

// `count` i.i.d. integers with P(x) proportional to x^exponent on
// [x_min, x_max], drawn by inverse CDF over the discrete support.
std::vector<std::uint32_t> sample_power_law(std::size_t count, double exponent,
                                            std::uint32_t x_min, std::uint32_t x_max,
                                            Rng& rng);

// Smallest x_min whose truncated power-law mean on [x_min, max_degree]
// reaches avg_degree.
std::uint32_t solve_min_degree(double avg_degree, double exponent,
                               std::uint32_t max_degree);

// Power-law community sizes summing exactly to n; the final block is clamped
// to make the total exact, and when the clamp would undershoot min_size the
// difference is taken back from the largest blocks.
std::vector<std::uint32_t> sample_community_sizes(std::size_t n, double exponent,
                                                  std::uint32_t min_size,
                                                  std::uint32_t max_size, Rng& rng);

// Full instance: sample degrees and community sizes, assign vertices so each
// one's internal degree fits its community, wire internal stubs per
// community and external stubs globally, repair conflicts by bounded
// edge-swap sweeps, drop what cannot be repaired.
GroundTruthGraph lfr_generate(const LfrParams& params,
                              LfrDiagnostics* diagnostics = nullptr);

// Mean over vertices of degree >= 1 of the fraction of incident edges
// leaving the vertex's ground-truth community.
double realized_mixing(const Graph& g, const Partition& truth);

struct MultiGroundTruth {
  Graph graph;
  Partition t1;
  Partition t2;
};

// Two independent mu = 0 instances with four communities each; the second
// one's vertex ids are randomly permuted and the edge sets are unioned, so
// the combined graph carries two statistically independent ground truths.
MultiGroundTruth multi_ground_truth(const LfrParams& params);

}  // namespace fluidc
