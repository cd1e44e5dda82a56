#include "fluidc/lpa.hpp"

#include <chrono>

#include "fluidc/kernels.hpp"

namespace fluidc {

namespace {

struct LpaWorkspace {
  std::vector<std::uint32_t> labels;
  std::vector<std::uint32_t> count;  // one slot per initial label, zeroed via touched
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> scratch;
  std::vector<std::uint32_t> ties;
  std::vector<VertexId> permutation;
};

// Histogram of neighbor labels; returns the maximum count (0 for isolated
// vertices). Counts remain valid until reset_counts.
std::uint32_t tally_neighbors(LpaWorkspace& ws, const Graph& g, VertexId v) {
  const auto row = g.neighbors(v);
  ws.scratch.resize(row.size());
  kernels::gather_u32(ws.labels.data(), row.data(), row.size(), ws.scratch.data());

  ws.touched.clear();
  std::uint32_t best = 0;
  for (const std::uint32_t label : ws.scratch) {
    if (ws.count[label]++ == 0) ws.touched.push_back(label);
    best = std::max(best, ws.count[label]);
  }
  return best;
}

void reset_counts(LpaWorkspace& ws) {
  for (const std::uint32_t label : ws.touched) ws.count[label] = 0;
}

// Original stopping criterion: every vertex's label must be held by a
// maximal number of its neighbors.
bool is_stable(LpaWorkspace& ws, const Graph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const std::uint32_t best = tally_neighbors(ws, g, v);
    const std::uint32_t own = ws.count[ws.labels[v]];
    reset_counts(ws);
    if (own < best) return false;
  }
  return true;
}

}  // namespace

FluidResult run_lpa(const Graph& g, Rng& rng, std::size_t max_supersteps,
                    RunTiming* timing) {
  const std::size_t n = g.vertex_count();

  LpaWorkspace ws;
  ws.labels.resize(n);
  for (VertexId v = 0; v < n; ++v) ws.labels[v] = v;
  ws.count.assign(n, 0);
  ws.permutation = ws.labels;

  FluidResult result;
  const auto start = std::chrono::steady_clock::now();
  while (result.supersteps < max_supersteps) {
    rng.shuffle(ws.permutation);
    for (const VertexId v : ws.permutation) {
      const std::uint32_t best = tally_neighbors(ws, g, v);
      if (best == 0) {
        reset_counts(ws);
        continue;  // no neighbors: label kept
      }
      if (ws.count[ws.labels[v]] == best) {
        reset_counts(ws);
        continue;  // current label among the maxima
      }
      ws.ties.clear();
      for (const std::uint32_t label : ws.touched)
        if (ws.count[label] == best) ws.ties.push_back(label);
      reset_counts(ws);
      ws.labels[v] = ws.ties.size() == 1
                         ? ws.ties[0]
                         : ws.ties[static_cast<std::size_t>(
                               rng.uniform_index(ws.ties.size()))];
    }
    ++result.supersteps;
    if (is_stable(ws, g)) {
      result.converged = true;
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  if (timing)
    timing->loop_seconds += std::chrono::duration<double>(stop - start).count();

  result.partition = Partition(ws.labels);
  return result;
}

}  // namespace fluidc
