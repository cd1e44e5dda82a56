#pragma once

#include "fluidc/fluid.hpp"
#include "fluidc/graph.hpp"
#include "fluidc/rng.hpp"

namespace fluidc {

// Asynchronous Label Propagation (the classic majority-vote baseline).
// Every vertex starts with a unique label; each superstep visits vertices in
// a fresh random order and adopts the label held by most neighbors, keeping
// the current label when it is among the tied maxima. Stops once every
// vertex's label is a neighborhood maximum, or at max_supersteps. Handles
// disconnected graphs natively; labels are compacted in the result.
FluidResult run_lpa(const Graph& g, Rng& rng, std::size_t max_supersteps = 100,
                    RunTiming* timing = nullptr);

}  // namespace fluidc
