#include "fluidc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>

namespace fluidc {

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) {
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
  }

  std::vector<std::uint64_t> counts(vertex_count + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;  // self-loops dropped
    ++counts[u + 1];
    ++counts[v + 1];
  }
  offsets_ = std::move(counts);
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];

  adjacency_.resize(offsets_.back());
  std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    adjacency_[cursor[u]++] = v;
    adjacency_[cursor[v]++] = u;
  }

  // Sort rows and drop duplicate neighbors, then compact in place.
  std::vector<std::uint64_t> new_offsets(vertex_count + 1, 0);
  std::uint64_t write = 0;
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto* begin = adjacency_.data() + offsets_[v];
    auto* end = adjacency_.data() + offsets_[v + 1];
    std::sort(begin, end);
    auto* unique_end = std::unique(begin, end);
    new_offsets[v] = write;
    for (auto* p = begin; p != unique_end; ++p) adjacency_[write++] = *p;
  }
  new_offsets[vertex_count] = write;
  adjacency_.resize(write);
  offsets_ = std::move(new_offsets);
  edge_count_ = write / 2;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  const auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (VertexId u = 0; u < vertex_count(); ++u)
    for (VertexId v : neighbors(u))
      if (u < v) result.emplace_back(u, v);
  return result;
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

// Splits on any whitespace.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
      ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

VertexId parse_vertex(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line_no, "expected a non-negative integer, got '" +
                                  std::string(token) + "'");
  if (value >= kInvalidVertex)
    throw ParseError(line_no, "vertex id too large");
  return static_cast<VertexId>(value);
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::uint64_t max_id_plus_one = 0;
  std::uint64_t declared_vertices = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first_non_ws = view.find_first_not_of(" \t\r");
    if (first_non_ws == std::string_view::npos) continue;
    if (view[first_non_ws] == '#') {
      // "# vertices N" declares trailing isolated vertices; any other
      // comment is skipped.
      auto tokens = tokenize(view.substr(first_non_ws + 1));
      if (tokens.size() == 2 && tokens[0] == "vertices") {
        std::uint64_t n = 0;
        const auto [ptr, ec] = std::from_chars(
            tokens[1].data(), tokens[1].data() + tokens[1].size(), n);
        if (ec != std::errc{} || ptr != tokens[1].data() + tokens[1].size())
          throw ParseError(line_no, "malformed '# vertices N' header");
        declared_vertices = std::max(declared_vertices, n);
      }
      continue;
    }

    auto tokens = tokenize(view);
    if (tokens.size() != 2)
      throw ParseError(line_no, "expected two vertex ids, got " +
                                    std::to_string(tokens.size()) + " tokens");
    const VertexId u = parse_vertex(tokens[0], line_no);
    const VertexId v = parse_vertex(tokens[1], line_no);
    edges.emplace_back(u, v);
    max_id_plus_one =
        std::max<std::uint64_t>(max_id_plus_one, std::uint64_t{std::max(u, v)} + 1);
  }

  const std::size_t n = std::max(max_id_plus_one, declared_vertices);
  return Graph(n, edges);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << "# vertices " << g.vertex_count() << "\n";
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    for (VertexId v : g.neighbors(u))
      if (u < v) out << u << " " << v << "\n";
}

ComponentLabeling connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  ComponentLabeling result;
  result.component_of.assign(n, kInvalidVertex);

  std::vector<VertexId> queue;
  for (VertexId start = 0; start < n; ++start) {
    if (result.component_of[start] != kInvalidVertex) continue;
    const auto comp = static_cast<VertexId>(result.component_count++);
    result.component_sizes.push_back(0);

    queue.clear();
    queue.push_back(start);
    result.component_of[start] = comp;
    std::size_t head = 0;
    while (head < queue.size()) {
      const VertexId v = queue[head++];
      ++result.component_sizes[comp];
      for (VertexId w : g.neighbors(v)) {
        if (result.component_of[w] == kInvalidVertex) {
          result.component_of[w] = comp;
          queue.push_back(w);
        }
      }
    }
  }
  return result;
}

Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) {
  const std::size_t n = g.vertex_count();
  Subgraph sub;
  sub.to_sub.assign(n, kInvalidVertex);

  std::vector<VertexId> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  for (VertexId v : sorted) {
    if (v >= n) throw std::invalid_argument("induced_subgraph: vertex id out of range");
    sub.to_sub[v] = static_cast<VertexId>(sub.to_parent.size());
    sub.to_parent.push_back(v);
  }

  std::vector<Edge> edges;
  for (VertexId v : sorted)
    for (VertexId w : g.neighbors(v))
      if (v < w && sub.to_sub[w] != kInvalidVertex)
        edges.emplace_back(sub.to_sub[v], sub.to_sub[w]);

  sub.graph = Graph(sub.to_parent.size(), edges);
  return sub;
}

}  // namespace fluidc
