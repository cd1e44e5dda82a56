#include "fluidc/diversity.hpp"

#include <stdexcept>

#include "fluidc/chi2.hpp"
#include "fluidc/metrics.hpp"
#include "fluidc/rng.hpp"

namespace fluidc {

int theta(double nmi_t1, double nmi_t2, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("theta: alpha must be non-negative");
  if (nmi_t1 - nmi_t2 > alpha) return 1;
  if (nmi_t2 - nmi_t1 > alpha) return -1;
  return 0;
}

ThetaSeries theta_series(const AlgoRunner& runner, const Graph& g,
                         const Partition& t1, const Partition& t2,
                         std::size_t runs, double alpha, std::uint64_t seed) {
  if (t1.size() != g.vertex_count() || t2.size() != g.vertex_count())
    throw std::invalid_argument("theta_series: ground truths must cover the graph");

  ThetaSeries series;
  for (std::size_t run = 0; run < runs; ++run) {
    const Partition found = runner(g, seed_mix({seed, run}));
    series.add(theta(nmi_geometric(found, t1), nmi_geometric(found, t2), alpha));
  }
  return series;
}

double chi_square_homogeneity(const ThetaSeries& a, const ThetaSeries& b) {
  if (a.runs == 0 || b.runs == 0)
    throw std::invalid_argument("chi_square_homogeneity: empty series");

  std::array<std::uint64_t, 3> pooled{};
  int kept = 0;
  for (int j = 0; j < 3; ++j) {
    pooled[j] = a.counts[j] + b.counts[j];
    if (pooled[j] > 0) ++kept;
  }
  if (kept <= 1) return 1.0;

  const double grand = static_cast<double>(a.runs + b.runs);
  double statistic = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (pooled[j] == 0) continue;
    for (const ThetaSeries* series : {&a, &b}) {
      const double expected = static_cast<double>(series->runs) *
                              static_cast<double>(pooled[j]) / grand;
      const double diff = static_cast<double>(series->counts[j]) - expected;
      statistic += diff * diff / expected;
    }
  }
  return chi_square_survival(statistic, kept - 1);
}

SimilarityMatrix similarity_matrix(
    const std::vector<std::pair<std::string, AlgoRunner>>& algorithms,
    std::span<const MultiGroundTruth> graphs, std::size_t runs, double alpha,
    std::uint64_t seed) {
  if (algorithms.size() < 2)
    throw std::invalid_argument("similarity_matrix: need at least two algorithms");
  if (graphs.empty())
    throw std::invalid_argument("similarity_matrix: need at least one graph");

  const std::size_t k = algorithms.size();
  SimilarityMatrix matrix;
  matrix.algorithms.reserve(k);
  for (const auto& [name, runner] : algorithms) matrix.algorithms.push_back(name);
  matrix.values.assign(k, std::vector<double>(k, 0.0));

  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    std::vector<ThetaSeries> series(k);
    for (std::size_t ai = 0; ai < k; ++ai)
      series[ai] = theta_series(algorithms[ai].second, graphs[gi].graph,
                                graphs[gi].t1, graphs[gi].t2, runs, alpha,
                                seed_mix({seed, gi, ai}));

    for (std::size_t i = 0; i < k; ++i) {
      matrix.values[i][i] += 1.0;
      for (std::size_t j = i + 1; j < k; ++j) {
        const double p = chi_square_homogeneity(series[i], series[j]);
        matrix.values[i][j] += p;
        matrix.values[j][i] += p;
      }
    }
  }

  const double scale = 1.0 / static_cast<double>(graphs.size());
  for (auto& row : matrix.values)
    for (double& value : row) value *= scale;
  return matrix;
}

}  // namespace fluidc
