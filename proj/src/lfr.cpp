#include "fluidc/lfr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "fluidc/kernels.hpp"

namespace fluidc {

LfrParams LfrParams::benchmark_defaults(std::size_t n, double mu, std::uint64_t seed) {
  LfrParams p;
  p.n = n;
  p.mu = mu;
  p.avg_degree = 20.0;
  p.max_degree = static_cast<std::uint32_t>(std::max<std::size_t>(2, n / 10));
  p.degree_exponent = -2.0;
  p.community_exponent = -1.0;
  p.min_community = 10;
  p.max_community = static_cast<std::uint32_t>(std::max<std::size_t>(p.min_community, n / 10));
  p.seed = seed;
  return p;
}

LfrParams LfrParams::multi_gt_defaults(std::size_t n, std::uint64_t seed) {
  LfrParams p = benchmark_defaults(n, 0.0, seed);
  p.min_community = static_cast<std::uint32_t>(n / 5);
  p.max_community = static_cast<std::uint32_t>(3 * n / 10);
  return p;
}

void LfrParams::validate() const {
  if (n == 0) throw std::invalid_argument("lfr: n must be positive");
  if (mu < 0.0 || mu >= 1.0) throw std::invalid_argument("lfr: mu must be in [0, 1)");
  if (min_community < 1 || min_community > max_community || max_community > n)
    throw std::invalid_argument("lfr: need 1 <= min_community <= max_community <= n");
  if (avg_degree <= 0.0 || avg_degree >= static_cast<double>(max_degree))
    throw std::invalid_argument("lfr: need 0 < avg_degree < max_degree");
  if (max_degree >= n)
    throw std::invalid_argument("lfr: max_degree must be below n");
  if (degree_exponent >= 0.0 || community_exponent >= 0.0)
    throw std::invalid_argument("lfr: exponents must be negative");
}

std::vector<std::uint32_t> sample_power_law(std::size_t count, double exponent,
                                            std::uint32_t x_min, std::uint32_t x_max,
                                            Rng& rng) {
  if (x_min < 1 || x_min > x_max)
    throw std::invalid_argument("sample_power_law: need 1 <= x_min <= x_max");

  const std::size_t support = x_max - x_min + 1;
  std::vector<double> cdf(support);
  double total = 0.0;
  for (std::size_t i = 0; i < support; ++i) {
    total += std::pow(static_cast<double>(x_min + i), exponent);
    cdf[i] = total;
  }
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;

  std::vector<std::uint32_t> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = rng.uniform_real();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    values[i] = x_min + static_cast<std::uint32_t>(it - cdf.begin());
  }
  return values;
}

std::uint32_t solve_min_degree(double avg_degree, double exponent,
                               std::uint32_t max_degree) {
  if (avg_degree >= static_cast<double>(max_degree))
    throw std::invalid_argument("solve_min_degree: avg_degree must be below max_degree");

  for (std::uint32_t x_min = 1; x_min <= max_degree; ++x_min) {
    double weight = 0.0, weighted = 0.0;
    for (std::uint32_t x = x_min; x <= max_degree; ++x) {
      const double w = std::pow(static_cast<double>(x), exponent);
      weight += w;
      weighted += w * static_cast<double>(x);
    }
    if (weighted / weight >= avg_degree) return x_min;
  }
  throw std::runtime_error("solve_min_degree: no feasible minimum degree");
}

std::vector<std::uint32_t> sample_community_sizes(std::size_t n, double exponent,
                                                  std::uint32_t min_size,
                                                  std::uint32_t max_size, Rng& rng) {
  if (min_size < 1 || min_size > max_size || max_size > n)
    throw std::invalid_argument("sample_community_sizes: need 1 <= min <= max <= n");

  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::uint32_t> sizes;
    std::uint64_t total = 0;
    while (total < n) {
      const std::uint32_t s =
          sample_power_law(1, exponent, min_size, max_size, rng)[0];
      sizes.push_back(s);
      total += s;
    }

    // Clamp the final block so the total is exactly n.
    const std::uint64_t overshoot = total - n;
    std::uint32_t clamped = sizes.back() - static_cast<std::uint32_t>(overshoot);
    if (clamped >= min_size) {
      sizes.back() = clamped;
      return sizes;
    }

    // Raise the clamped block back to min_size and take the surplus from the
    // largest blocks, one unit at a time, never dropping any below min_size.
    sizes.back() = min_size;
    std::uint32_t surplus = min_size - clamped;
    while (surplus > 0) {
      std::size_t largest = 0;
      for (std::size_t i = 1; i + 1 < sizes.size(); ++i)
        if (sizes[i] > sizes[largest]) largest = i;
      if (sizes[largest] <= min_size) break;  // cannot repair this draw
      --sizes[largest];
      --surplus;
    }
    if (surplus == 0) return sizes;
  }
  throw std::runtime_error("sample_community_sizes: could not fit sizes to n");
}

namespace {

using EdgeKey = std::uint64_t;

EdgeKey edge_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Random stub matching with bounded conflict repair. Stubs are shuffled and
// paired; a pair conflicts when it is a self-loop, duplicates an edge in
// `present`, or fails `compatible`. Conflicting pairs are repaired by
// swapping endpoints with a random accepted pair; whatever survives the
// sweep budget unrepaired is dropped. Returns the number of dropped stubs.
template <typename Compatible>
std::size_t wire_stubs(std::vector<VertexId>& stubs, Rng& rng,
                       const Compatible& compatible,
                       std::unordered_set<EdgeKey>& present,
                       std::vector<Edge>& edges, int max_sweeps) {
  rng.shuffle(stubs);

  std::vector<Edge> good;
  std::vector<Edge> bad;
  good.reserve(stubs.size() / 2);

  auto acceptable = [&](VertexId u, VertexId v) {
    return u != v && compatible(u, v) && !present.contains(edge_key(u, v));
  };

  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const VertexId u = stubs[i], v = stubs[i + 1];
    if (acceptable(u, v)) {
      present.insert(edge_key(u, v));
      good.emplace_back(u, v);
    } else {
      bad.emplace_back(u, v);
    }
  }

  for (int sweep = 0; sweep < max_sweeps && !bad.empty() && !good.empty(); ++sweep) {
    std::vector<Edge> still_bad;
    for (const auto& [u, v] : bad) {
      bool fixed = false;
      for (int attempt = 0; attempt < 50 && !fixed; ++attempt) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_index(good.size()));
        const auto [x, y] = good[j];
        // Two ways to recombine the four endpoints; try one at random, then
        // the other.
        const bool flip = rng.uniform_index(2) == 1;
        for (int variant = 0; variant < 2 && !fixed; ++variant) {
          const bool use_flip = (variant == 0) ? flip : !flip;
          const Edge p1 = use_flip ? Edge{u, y} : Edge{u, x};
          const Edge p2 = use_flip ? Edge{x, v} : Edge{y, v};
          present.erase(edge_key(x, y));
          const bool ok = acceptable(p1.first, p1.second) &&
                          acceptable(p2.first, p2.second) &&
                          edge_key(p1.first, p1.second) != edge_key(p2.first, p2.second);
          if (ok) {
            present.insert(edge_key(p1.first, p1.second));
            present.insert(edge_key(p2.first, p2.second));
            good[j] = p1;
            good.push_back(p2);
            fixed = true;
          } else {
            present.insert(edge_key(x, y));
          }
        }
      }
      if (!fixed) still_bad.emplace_back(u, v);
    }
    bad = std::move(still_bad);
  }

  edges.insert(edges.end(), good.begin(), good.end());
  return 2 * bad.size();
}

// Internal degree of a vertex: ceil((1 - mu) * degree), computed as
// degree - floor(mu * degree) with a snap against floating error on exact
// integer products.
std::uint32_t internal_degree(double mu, std::uint32_t degree) {
  const auto external =
      static_cast<std::uint32_t>(std::floor(mu * static_cast<double>(degree) + 1e-9));
  return degree - std::min(external, degree);
}

}  // namespace

GroundTruthGraph lfr_generate(const LfrParams& params, LfrDiagnostics* diagnostics) {
  params.validate();
  Rng rng(params.seed);

  const std::uint32_t min_degree =
      solve_min_degree(params.avg_degree, params.degree_exponent, params.max_degree);
  if (internal_degree(params.mu, min_degree) > params.max_community - 1)
    throw std::runtime_error(
        "lfr_generate: degree sampling infeasible, minimum internal degree "
        "exceeds the largest community");

  // Degrees whose internal part cannot fit even the largest community are
  // resampled; this truncates only the infeasible tail of the law.
  auto degrees = sample_power_law(params.n, params.degree_exponent, min_degree,
                                  params.max_degree, rng);
  for (auto& degree : degrees)
    while (internal_degree(params.mu, degree) > params.max_community - 1)
      degree = sample_power_law(1, params.degree_exponent, min_degree,
                                params.max_degree, rng)[0];

  const auto sizes = sample_community_sizes(params.n, params.community_exponent,
                                            params.min_community,
                                            params.max_community, rng);

  // Assign shuffled vertices to communities in order, requiring each
  // vertex's internal degree to fit (at most community size - 1 internal
  // partners).
  std::vector<std::uint32_t> community_of(params.n);
  std::vector<VertexId> order(params.n);
  for (VertexId v = 0; v < params.n; ++v) order[v] = v;

  bool assigned = false;
  for (int attempt = 0; attempt < 100 && !assigned; ++attempt) {
    rng.shuffle(order);
    std::vector<std::uint32_t> capacity(sizes.begin(), sizes.end());
    assigned = true;
    for (const VertexId v : order) {
      const std::uint32_t need = internal_degree(params.mu, degrees[v]);
      bool placed = false;
      for (std::size_t c = 0; c < sizes.size(); ++c) {
        if (capacity[c] > 0 && need <= sizes[c] - 1) {
          community_of[v] = static_cast<std::uint32_t>(c);
          --capacity[c];
          placed = true;
          break;
        }
      }
      if (!placed) {
        assigned = false;
        break;
      }
    }
  }
  if (!assigned)
    throw std::runtime_error("lfr_generate: community assignment failed");

  std::vector<std::uint32_t> internal(params.n);
  for (VertexId v = 0; v < params.n; ++v)
    internal[v] = internal_degree(params.mu, degrees[v]);

  std::size_t dropped = 0;

  // A community whose internal stub count is odd sheds one stub; converting
  // it to an external stub instead would break the mu = 0 exactness.
  std::vector<std::vector<VertexId>> members(sizes.size());
  for (VertexId v = 0; v < params.n; ++v) members[community_of[v]].push_back(v);
  for (auto& group : members) {
    std::uint64_t stub_sum = 0;
    for (VertexId v : group) stub_sum += internal[v];
    if (stub_sum % 2 == 1) {
      VertexId victim = kInvalidVertex;
      for (VertexId v : group)
        if (internal[v] > 0 && (victim == kInvalidVertex || internal[v] > internal[victim]))
          victim = v;
      --internal[victim];
      ++dropped;
    }
  }

  std::unordered_set<EdgeKey> present;
  present.reserve(static_cast<std::size_t>(params.avg_degree * params.n));
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(params.avg_degree * params.n / 2));

  std::vector<VertexId> stubs;
  for (const auto& group : members) {
    stubs.clear();
    for (VertexId v : group)
      for (std::uint32_t s = 0; s < internal[v]; ++s) stubs.push_back(v);
    dropped += wire_stubs(
        stubs, rng, [](VertexId, VertexId) { return true; }, present, edges, 10);
  }

  std::vector<std::uint32_t> external(params.n);
  std::uint64_t external_sum = 0;
  for (VertexId v = 0; v < params.n; ++v) {
    external[v] = degrees[v] - internal[v];
    external_sum += external[v];
  }
  if (external_sum % 2 == 1) {
    VertexId victim = kInvalidVertex;
    for (VertexId v = 0; v < params.n; ++v)
      if (external[v] > 0 && (victim == kInvalidVertex || external[v] > external[victim]))
        victim = v;
    --external[victim];
    ++dropped;
  }

  stubs.clear();
  for (VertexId v = 0; v < params.n; ++v)
    for (std::uint32_t s = 0; s < external[v]; ++s) stubs.push_back(v);
  dropped += wire_stubs(
      stubs, rng,
      [&](VertexId u, VertexId v) { return community_of[u] != community_of[v]; },
      present, edges, 10);

  GroundTruthGraph out;
  out.graph = Graph(params.n, edges);
  out.truth = Partition(community_of);
  out.realized_mu = realized_mixing(out.graph, out.truth);

  if (diagnostics) {
    diagnostics->target_degrees = std::move(degrees);
    diagnostics->dropped_stubs = dropped;
  }
  return out;
}

double realized_mixing(const Graph& g, const Partition& truth) {
  if (truth.size() != g.vertex_count())
    throw std::invalid_argument("realized_mixing: truth does not cover the graph");

  const std::uint32_t* labels = truth.labels().data();
  double sum = 0.0;
  std::size_t counted = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto row = g.neighbors(v);
    if (row.empty()) continue;
    const std::size_t same =
        kernels::count_gather_eq_u32(labels, row.data(), row.size(), labels[v]);
    sum += static_cast<double>(row.size() - same) / static_cast<double>(row.size());
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

namespace {

GroundTruthGraph generate_four_community_instance(const LfrParams& base,
                                                  std::uint64_t stream) {
  LfrParams p = base;
  for (int attempt = 0; attempt < 200; ++attempt) {
    p.seed = seed_mix({base.seed, stream, static_cast<std::uint64_t>(attempt)});
    GroundTruthGraph instance = lfr_generate(p);
    if (instance.truth.block_count() == 4) return instance;
  }
  throw std::runtime_error(
      "multi_ground_truth: could not sample a four-community instance");
}

}  // namespace

MultiGroundTruth multi_ground_truth(const LfrParams& params) {
  if (params.mu != 0.0)
    throw std::invalid_argument("multi_ground_truth: requires mu = 0");
  params.validate();

  const GroundTruthGraph a = generate_four_community_instance(params, 0);
  const GroundTruthGraph b = generate_four_community_instance(params, 1);

  // Random re-identification of the second graph's vertices makes the two
  // truths statistically independent.
  Rng perm_rng(seed_mix({params.seed, 2}));
  std::vector<VertexId> perm(params.n);
  for (VertexId v = 0; v < params.n; ++v) perm[v] = v;
  perm_rng.shuffle(perm);

  std::vector<Edge> edges = a.graph.edges();
  for (const auto& [u, v] : b.graph.edges())
    edges.emplace_back(perm[u], perm[v]);

  std::vector<std::uint32_t> t2_labels(params.n);
  for (VertexId v = 0; v < params.n; ++v)
    t2_labels[perm[v]] = b.truth.label_of(v);

  MultiGroundTruth out;
  out.graph = Graph(params.n, edges);  // duplicate overlay edges collapse here
  out.t1 = a.truth;
  out.t2 = Partition(t2_labels);
  return out;
}

}  // namespace fluidc
