#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fluidc {

using VertexId = std::uint32_t;
inline constexpr VertexId kInvalidVertex = 0xffffffffu;

using Edge = std::pair<VertexId, VertexId>;

// Immutable undirected simple graph in CSR form: a flat neighbor array plus
// per-vertex offsets, each adjacency row sorted. Construction drops
// self-loops and duplicate edges, so the symmetry / no-self-loop / no-dup
// invariants hold for every instance. Safe to share across threads.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edge_count_; }

  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }

  // Flat CSR arrays, for the kernel-level loops.
  const std::uint32_t* adjacency_data() const { return adjacency_.data(); }
  std::uint64_t offset(VertexId v) const { return offsets_[v]; }

  bool has_edge(VertexId u, VertexId v) const;

  // Each undirected edge once, u < v, sorted.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::uint64_t> offsets_;  // vertex_count + 1
  std::vector<VertexId> adjacency_;     // 2 * edge_count, rows sorted
  std::size_t edge_count_ = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Edge-list text format: lines "u v", '#' starts a comment, an optional
// "# vertices N" header raises the vertex count (ids beyond max_id). Parse
// failures throw ParseError carrying the line number; duplicate edges and
// self-loops are dropped silently.
Graph load_edge_list(std::istream& in);
void save_edge_list(const Graph& g, std::ostream& out);

struct ComponentLabeling {
  std::vector<VertexId> component_of;        // vertex -> dense component id
  std::size_t component_count = 0;
  std::vector<std::size_t> component_sizes;  // component id -> vertex count
};

// Component ids assigned in order of first-seen vertex id.
ComponentLabeling connected_components(const Graph& g);

struct Subgraph {
  Graph graph;
  std::vector<VertexId> to_sub;     // parent id -> sub id, kInvalidVertex outside
  std::vector<VertexId> to_parent;  // sub id -> parent id
};

// Subgraph over the given vertices re-indexed to dense 0-based ids in
// increasing parent-id order; keeps exactly the edges with both endpoints
// inside. Out-of-range ids throw.
Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

}  // namespace fluidc
