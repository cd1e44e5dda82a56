#pragma once

#include <cstdint>
#include <vector>

#include "fluidc/graph.hpp"
#include "fluidc/partition.hpp"
#include "fluidc/rng.hpp"

namespace fluidc {

inline constexpr std::uint32_t kUnassigned = 0xffffffffu;

// Wall time of the superstep loop alone, for the scalability harness.
// Generation, initialization and metric evaluation are excluded.
struct RunTiming {
  double loop_seconds = 0.0;
};

// Mutable state of one Fluid Communities execution: per-vertex community,
// per-community vertex count, and the scratch buffers the update rule needs.
// Densities are always derived from the sizes on read (1 / size), never
// cached, so they stay consistent under asynchronous updates. Confined to a
// single thread.
class FluidState {
 public:
  FluidState(std::size_t vertex_count, std::uint32_t k);

  // Explicit assignment, for driving the update rule from a known
  // configuration. Labels must be < k or kUnassigned.
  static FluidState from_assignment(std::span<const std::uint32_t> community_of,
                                    std::uint32_t k);

  std::uint32_t k() const { return k_; }
  std::size_t vertex_count() const { return community_of_.size(); }
  std::uint32_t community_of(VertexId v) const { return community_of_[v]; }
  std::uint32_t community_size(std::uint32_t c) const { return community_size_[c]; }
  double density(std::uint32_t c) const {
    return 1.0 / static_cast<double>(community_size_[c]);
  }
  std::size_t assigned_count() const { return assigned_count_; }
  bool all_assigned() const { return assigned_count_ == community_of_.size(); }

  const std::vector<std::uint32_t>& community_table() const { return community_of_; }

 private:
  friend FluidState init_communities(const Graph&, std::uint32_t, Rng&);
  friend bool update_vertex(FluidState&, const Graph&, VertexId, Rng&);
  friend std::size_t superstep(FluidState&, const Graph&, Rng&);

  void assign(VertexId v, std::uint32_t c);

  std::uint32_t k_ = 0;
  std::vector<std::uint32_t> community_of_;
  std::vector<std::uint32_t> community_size_;
  std::size_t assigned_count_ = 0;

  // update_vertex workspace, reused across calls
  std::vector<std::uint32_t> scratch_labels_;
  std::vector<std::uint32_t> candidate_count_;  // k entries, zeroed via touched_
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> tie_set_;
  std::vector<VertexId> permutation_;
};

struct FluidResult {
  Partition partition;
  std::size_t supersteps = 0;
  bool converged = false;
};

// Seeds k communities on k distinct vertices sampled uniformly without
// replacement; everything else starts unassigned.
FluidState init_communities(const Graph& g, std::uint32_t k, Rng& rng);

// One application of the update rule to v: among the communities present in
// {v} + neighbors(v), find those maximizing count * density; keep the
// current community if it is in that set, otherwise adopt a uniformly random
// member. Community sizes are adjusted immediately. Returns whether v's
// community changed.
bool update_vertex(FluidState& state, const Graph& g, VertexId v, Rng& rng);

// Updates every vertex once in a fresh random order; returns how many
// vertices changed community.
std::size_t superstep(FluidState& state, const Graph& g, Rng& rng);

// Full run on a connected graph: init, then supersteps until one makes no
// change (and every vertex is assigned), or max_supersteps is hit.
FluidResult run_fluidc(const Graph& g, std::uint32_t k, Rng& rng,
                       std::size_t max_supersteps = 100,
                       RunTiming* timing = nullptr);

// Disconnected graphs: k is split across components proportionally to their
// size (largest remainder, minimum 1 each), one independent run per
// component, results relabeled into disjoint ranges. Requires
// k >= component count.
FluidResult run_fluidc_disconnected(const Graph& g, std::uint32_t k, Rng& rng,
                                    std::size_t max_supersteps = 100,
                                    RunTiming* timing = nullptr);

struct BestKResult {
  FluidResult result;
  std::uint32_t k = 0;
  double modularity = 0.0;
  std::uint32_t trial = 0;  // which trial of the winning k produced the result
};

// Runs trials_per_k executions for each k in [k_min, k_max] and returns the
// run with the highest modularity; ties go to the smaller k, then the
// earlier trial. Per-trial seeds derive from (seed, k, trial).
BestKResult best_k_by_modularity(const Graph& g, std::uint32_t k_min,
                                 std::uint32_t k_max, std::uint32_t trials_per_k,
                                 std::uint64_t seed,
                                 std::size_t max_supersteps = 100);

}  // namespace fluidc
