#include "fluidc/fluid.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>

#include "fluidc/kernels.hpp"
#include "fluidc/metrics.hpp"

namespace fluidc {

namespace {
// Two density sums are tied when they agree to this relative precision.
// Ties are semantically load-bearing (they are what keeps a single-vertex
// community alive), and the sums are short series of reciprocals of small
// integers, so 1e-12 separates genuinely distinct values by a wide margin.
constexpr double kTieRelativeEpsilon = 1e-12;
}  // namespace

FluidState::FluidState(std::size_t vertex_count, std::uint32_t k)
    : k_(k),
      community_of_(vertex_count, kUnassigned),
      community_size_(k, 0),
      candidate_count_(k, 0) {
  scratch_labels_.reserve(64);
  touched_.reserve(64);
  tie_set_.reserve(16);
}

FluidState FluidState::from_assignment(std::span<const std::uint32_t> community_of,
                                       std::uint32_t k) {
  FluidState state(community_of.size(), k);
  for (std::size_t v = 0; v < community_of.size(); ++v) {
    const std::uint32_t c = community_of[v];
    if (c == kUnassigned) continue;
    if (c >= k) throw std::invalid_argument("from_assignment: label out of range");
    state.community_of_[v] = c;
    ++state.community_size_[c];
    ++state.assigned_count_;
  }
  return state;
}

void FluidState::assign(VertexId v, std::uint32_t c) {
  const std::uint32_t old = community_of_[v];
  if (old == c) return;
  if (old != kUnassigned) {
    --community_size_[old];
  } else {
    ++assigned_count_;
  }
  ++community_size_[c];
  community_of_[v] = c;
}

FluidState init_communities(const Graph& g, std::uint32_t k, Rng& rng) {
  const std::size_t n = g.vertex_count();
  if (k == 0 || k > n)
    throw std::invalid_argument("init_communities: need 0 < k <= |V|");

  FluidState state(n, k);
  const auto seeds = rng.sample_without_replacement(static_cast<std::uint32_t>(n), k);
  for (std::uint32_t c = 0; c < k; ++c) state.assign(seeds[c], c);
  return state;
}

bool update_vertex(FluidState& state, const Graph& g, VertexId v, Rng& rng) {
  const auto row = g.neighbors(v);
  const std::uint32_t current = state.community_of_[v];

  auto& scratch = state.scratch_labels_;
  scratch.resize(row.size());
  kernels::gather_u32(state.community_of_.data(), row.data(), row.size(),
                      scratch.data());

  // Occurrence count per community over the ego network {v} + neighbors(v),
  // unassigned members contributing nothing.
  auto& count = state.candidate_count_;
  auto& touched = state.touched_;
  touched.clear();
  if (current != kUnassigned) {
    count[current] = 1;
    touched.push_back(current);
  }
  for (const std::uint32_t c : scratch) {
    if (c == kUnassigned) continue;
    if (count[c]++ == 0) touched.push_back(c);
  }

  if (touched.empty()) return false;  // nothing assigned in the ego network

  // Density-weighted sum for community c is count(c) / size(c), since every
  // member contributes the same current density 1/size(c).
  double best = 0.0;
  for (const std::uint32_t c : touched) {
    const double score =
        static_cast<double>(count[c]) / static_cast<double>(state.community_size_[c]);
    best = std::max(best, score);
  }
  auto& ties = state.tie_set_;
  ties.clear();
  bool current_is_best = false;
  for (const std::uint32_t c : touched) {
    const double score =
        static_cast<double>(count[c]) / static_cast<double>(state.community_size_[c]);
    if (best - score <= kTieRelativeEpsilon * best) {
      ties.push_back(c);
      if (c == current) current_is_best = true;
    }
  }
  for (const std::uint32_t c : touched) count[c] = 0;

  if (current_is_best) return false;

  const std::uint32_t chosen =
      ties.size() == 1
          ? ties[0]
          : ties[static_cast<std::size_t>(rng.uniform_index(ties.size()))];
  state.assign(v, chosen);

#ifndef NDEBUG
  // A community shrunk to one vertex has density 1.0, the maximum the update
  // rule can produce, so it can never lose its last member.
  for (std::uint32_t c = 0; c < state.k_; ++c) assert(state.community_size_[c] >= 1);
#endif
  return true;
}

std::size_t superstep(FluidState& state, const Graph& g, Rng& rng) {
  auto& perm = state.permutation_;
  if (perm.size() != g.vertex_count()) {
    perm.resize(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) perm[v] = v;
  }
  rng.shuffle(perm);

  std::size_t changes = 0;
  for (const VertexId v : perm) changes += update_vertex(state, g, v, rng);
  return changes;
}

FluidResult run_fluidc(const Graph& g, std::uint32_t k, Rng& rng,
                       std::size_t max_supersteps, RunTiming* timing) {
  const auto components = connected_components(g);
  if (components.component_count > 1)
    throw std::invalid_argument("run_fluidc: graph is not connected");

  FluidState state = init_communities(g, k, rng);

  FluidResult result;
  const auto start = std::chrono::steady_clock::now();
  while (result.supersteps < max_supersteps) {
    const std::size_t changes = superstep(state, g, rng);
    ++result.supersteps;
    if (changes == 0 && state.all_assigned()) {
      result.converged = true;
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  if (timing)
    timing->loop_seconds += std::chrono::duration<double>(stop - start).count();

  result.partition = Partition(state.community_table());
  return result;
}

namespace {

// Proportional largest-remainder split of k over the component sizes, with
// every component receiving at least 1.
std::vector<std::uint32_t> allocate_k(const std::vector<std::size_t>& sizes,
                                      std::uint32_t k, std::size_t n) {
  const std::size_t parts = sizes.size();
  std::vector<std::uint32_t> alloc(parts, 0);
  std::vector<std::pair<double, std::size_t>> remainders(parts);

  std::uint32_t assigned = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    const double quota = static_cast<double>(k) * static_cast<double>(sizes[i]) /
                         static_cast<double>(n);
    alloc[i] = static_cast<std::uint32_t>(quota);
    remainders[i] = {quota - static_cast<double>(alloc[i]), i};
    assigned += alloc[i];
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (std::size_t j = 0; assigned < k; ++j, ++assigned) ++alloc[remainders[j % parts].second];

  // Raise empty allocations to 1, taking from the currently largest share.
  for (std::size_t i = 0; i < parts; ++i) {
    while (alloc[i] == 0) {
      std::size_t donor = 0;
      for (std::size_t j = 1; j < parts; ++j)
        if (alloc[j] > alloc[donor]) donor = j;
      --alloc[donor];
      ++alloc[i];
    }
  }
  return alloc;
}

}  // namespace

FluidResult run_fluidc_disconnected(const Graph& g, std::uint32_t k, Rng& rng,
                                    std::size_t max_supersteps, RunTiming* timing) {
  const auto components = connected_components(g);
  if (components.component_count == 0)
    throw std::invalid_argument("run_fluidc_disconnected: empty graph");
  if (components.component_count == 1)
    return run_fluidc(g, k, rng, max_supersteps, timing);
  if (k < components.component_count)
    throw std::invalid_argument(
        "run_fluidc_disconnected: k smaller than the number of connected components");

  const auto alloc = allocate_k(components.component_sizes, k, g.vertex_count());

  std::vector<std::vector<VertexId>> members(components.component_count);
  for (std::size_t i = 0; i < components.component_count; ++i)
    members[i].reserve(components.component_sizes[i]);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    members[components.component_of[v]].push_back(v);

  std::vector<std::uint32_t> global_labels(g.vertex_count(), kUnassigned);
  FluidResult result;
  result.converged = true;
  std::uint32_t label_base = 0;

  for (std::size_t i = 0; i < components.component_count; ++i) {
    Rng component_rng(rng.next_u64());
    const Subgraph sub = induced_subgraph(g, members[i]);
    FluidResult local =
        run_fluidc(sub.graph, alloc[i], component_rng, max_supersteps, timing);

    for (std::size_t s = 0; s < sub.to_parent.size(); ++s)
      global_labels[sub.to_parent[s]] = label_base + local.partition.label_of(s);

    label_base += alloc[i];
    result.supersteps = std::max(result.supersteps, local.supersteps);
    result.converged = result.converged && local.converged;
  }

  result.partition = Partition(global_labels);
  return result;
}

BestKResult best_k_by_modularity(const Graph& g, std::uint32_t k_min,
                                 std::uint32_t k_max, std::uint32_t trials_per_k,
                                 std::uint64_t seed, std::size_t max_supersteps) {
  if (k_min == 0 || k_min > k_max || k_max > g.vertex_count())
    throw std::invalid_argument("best_k_by_modularity: need 1 <= k_min <= k_max <= |V|");
  if (trials_per_k == 0)
    throw std::invalid_argument("best_k_by_modularity: need trials_per_k >= 1");

  // k below the component count cannot run at all; start the scan there.
  const auto components = connected_components(g);
  const auto floor_k = static_cast<std::uint32_t>(components.component_count);
  if (k_max < floor_k)
    throw std::invalid_argument(
        "best_k_by_modularity: every k in range is below the component count");
  k_min = std::max(k_min, floor_k);

  BestKResult best;
  bool have_best = false;
  for (std::uint32_t k = k_min; k <= k_max; ++k) {
    for (std::uint32_t trial = 0; trial < trials_per_k; ++trial) {
      Rng trial_rng(seed_mix({seed, k, trial}));
      FluidResult run = run_fluidc_disconnected(g, k, trial_rng, max_supersteps);
      const double q = modularity(g, run.partition);
      if (!have_best || q > best.modularity) {
        best = {std::move(run), k, q, trial};
        have_best = true;
      }
    }
  }
  return best;
}

}  // namespace fluidc
