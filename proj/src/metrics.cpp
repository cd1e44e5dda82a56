#include "fluidc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "fluidc/kernels.hpp"

namespace fluidc {

ContingencyTable contingency(const Partition& x, const Partition& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("contingency: partitions over different vertex sets");

  ContingencyTable table;
  table.n = x.size();
  table.row_marginals = x.block_sizes();
  table.col_marginals = y.block_sizes();

  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  counts.reserve(std::max(x.block_count(), y.block_count()) * 2);
  for (std::size_t v = 0; v < x.size(); ++v) {
    const std::uint64_t key =
        (std::uint64_t{x.label_of(v)} << 32) | y.label_of(v);
    ++counts[key];
  }

  table.cells.reserve(counts.size());
  for (const auto& [key, count] : counts)
    table.cells.push_back({static_cast<std::uint32_t>(key >> 32),
                           static_cast<std::uint32_t>(key & 0xffffffffu), count});
  std::sort(table.cells.begin(), table.cells.end(),
            [](const auto& a, const auto& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  return table;
}

double entropy(const Partition& p) {
  if (p.size() == 0) throw std::invalid_argument("entropy: empty partition");
  const double n = static_cast<double>(p.size());
  double h = 0.0;
  for (std::uint64_t size : p.block_sizes()) {
    const double q = static_cast<double>(size) / n;
    h -= q * std::log(q);
  }
  return h;
}

double nmi_geometric(const Partition& x, const Partition& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("nmi: partitions over different vertex sets");
  if (x.size() == 0) throw std::invalid_argument("nmi: empty partition");

  const double hx = entropy(x);
  const double hy = entropy(y);
  if (hx == 0.0 && hy == 0.0) return 1.0;
  if (hx == 0.0 || hy == 0.0) return 0.0;

  const ContingencyTable table = contingency(x, y);
  const double n = static_cast<double>(table.n);
  double mi = 0.0;
  for (const auto& cell : table.cells) {
    const double joint = static_cast<double>(cell.count) / n;
    const double px = static_cast<double>(table.row_marginals[cell.row]) / n;
    const double py = static_cast<double>(table.col_marginals[cell.col]) / n;
    mi += joint * std::log(joint / (px * py));
  }
  return std::clamp(mi / std::sqrt(hx * hy), 0.0, 1.0);
}

double modularity(const Graph& g, const Partition& p) {
  if (p.size() != g.vertex_count())
    throw std::invalid_argument("modularity: partition does not cover the graph");
  if (g.edge_count() == 0)
    throw std::invalid_argument("modularity: undefined on an edgeless graph");

  const std::size_t blocks = p.block_count();
  std::vector<std::uint64_t> intra_degree(blocks, 0);  // 2 * e_c when summed
  std::vector<std::uint64_t> total_degree(blocks, 0);

  const std::uint32_t* labels = p.labels().data();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto row = g.neighbors(v);
    const std::uint32_t c = labels[v];
    intra_degree[c] +=
        kernels::count_gather_eq_u32(labels, row.data(), row.size(), c);
    total_degree[c] += row.size();
  }

  const double m = static_cast<double>(g.edge_count());
  double q = 0.0;
  for (std::size_t c = 0; c < blocks; ++c) {
    const double e_c = static_cast<double>(intra_degree[c]) / 2.0;
    const double d_c = static_cast<double>(total_degree[c]);
    const double frac = d_c / (2.0 * m);
    q += e_c / m - frac * frac;
  }
  return q;
}

}  // namespace fluidc
