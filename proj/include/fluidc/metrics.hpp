#pragma once

#include <cstdint>
#include <vector>

#include "fluidc/graph.hpp"
#include "fluidc/partition.hpp"

namespace fluidc {

// Sparse co-occurrence table between two partitions over the same vertex
// set; only nonzero cells are stored, sorted by (row, col).
struct ContingencyTable {
  struct Cell {
    std::uint32_t row;    // label in x
    std::uint32_t col;    // label in y
    std::uint64_t count;  // vertices carrying both
  };
  std::vector<Cell> cells;
  std::vector<std::uint64_t> row_marginals;
  std::vector<std::uint64_t> col_marginals;
  std::uint64_t n = 0;
};

ContingencyTable contingency(const Partition& x, const Partition& y);

// Shannon entropy of the block-size distribution, natural-log units.
double entropy(const Partition& p);

// Mutual information normalized by sqrt(H(x) * H(y)). Both partitions
// single-block -> 1.0; exactly one single-block -> 0.0.
double nmi_geometric(const Partition& x, const Partition& y);

// Newman modularity Q = sum_c [ e_c/m - (d_c/2m)^2 ]. Undefined (throws)
// on an edgeless graph.
double modularity(const Graph& g, const Partition& p);

}  // namespace fluidc
