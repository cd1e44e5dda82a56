#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fluidc/graph.hpp"
#include "fluidc/lfr.hpp"
#include "fluidc/partition.hpp"

namespace fluidc {

// Which of two ground truths a detection run recovered: +1 when its NMI
// against t1 beats t2 by more than alpha, -1 for the reverse, 0 otherwise.
int theta(double nmi_t1, double nmi_t2, double alpha);

// Categorical tally of theta over repeated runs; counts indexed by
// theta + 1, i.e. {-1, 0, +1} -> {0, 1, 2}.
struct ThetaSeries {
  std::array<std::uint64_t, 3> counts{};
  std::uint64_t runs = 0;

  std::uint64_t count(int theta_value) const { return counts[theta_value + 1]; }
  void add(int theta_value) {
    ++counts[theta_value + 1];
    ++runs;
  }
};

// A detection algorithm under test: graph plus a seed in, partition out.
using AlgoRunner = std::function<Partition(const Graph&, std::uint64_t)>;

// Runs the algorithm `runs` times with seeds derived from `seed` and tallies
// which ground truth each run recovered.
ThetaSeries theta_series(const AlgoRunner& runner, const Graph& g,
                         const Partition& t1, const Partition& t2,
                         std::size_t runs, double alpha, std::uint64_t seed);

// Chi-square homogeneity test between two theta series: probability of both
// coming from the same categorical distribution. Categories empty in the
// pooled counts are dropped; with fewer than two surviving categories the
// series are trivially identical and p = 1.
double chi_square_homogeneity(const ThetaSeries& a, const ThetaSeries& b);

struct SimilarityMatrix {
  std::vector<std::string> algorithms;
  std::vector<std::vector<double>> values;  // symmetric, diagonal 1.0
};

// Pairwise behaviour similarity across multi-ground-truth instances: one
// theta series per (algorithm, graph), chi-square p-values per pair, matrix
// averaged over the graphs. Each algorithm entry gets its own derived seed
// stream, so listing the same algorithm twice measures its self-consistency.
SimilarityMatrix similarity_matrix(
    const std::vector<std::pair<std::string, AlgoRunner>>& algorithms,
    std::span<const MultiGroundTruth> graphs, std::size_t runs, double alpha,
    std::uint64_t seed);

}  // namespace fluidc
