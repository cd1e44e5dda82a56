// Command-line front end: generation, detection, evaluation, benchmark
// sweeps and the diversity analysis.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fluidc/bench.hpp"
#include "fluidc/diversity.hpp"
#include "fluidc/fluid.hpp"
#include "fluidc/kernels.hpp"
#include "fluidc/lfr.hpp"
#include "fluidc/lpa.hpp"
#include "fluidc/metrics.hpp"

namespace fs = std::filesystem;
using namespace fluidc;

namespace {

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return load_edge_list(in);
}

Partition load_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open community file: " + path);
  return load_partition(in);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

// "a,b,c" -> values; "lo:hi:step" -> inclusive range.
std::vector<double> parse_mus(const std::string& text) {
  std::vector<double> mus;
  if (text.find(':') != std::string::npos) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
      throw std::runtime_error("bad mu range, expected lo:hi:step");
    for (double mu = lo; mu <= hi + 1e-9; mu += step) mus.push_back(mu);
    return mus;
  }
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) mus.push_back(std::stod(token));
  return mus;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) out.push_back(token);
  return out;
}

void write_instance(const GroundTruthGraph& instance, const std::string& prefix) {
  auto edges = open_output(prefix + ".edges");
  edges << "# realized_mu " << instance.realized_mu << "\n";
  edges << "# communities " << instance.truth.block_count() << "\n";
  save_edge_list(instance.graph, edges);
  auto cmty = open_output(prefix + ".cmty");
  save_partition(instance.truth, cmty);
}

AlgoRunner make_runner(const std::string& name, std::uint32_t fluidc_k,
                       std::size_t max_supersteps) {
  if (name == "lpa") {
    return [max_supersteps](const Graph& g, std::uint64_t seed) {
      Rng rng(seed);
      return run_lpa(g, rng, max_supersteps).partition;
    };
  }
  if (name == "fluidc") {
    return [fluidc_k, max_supersteps](const Graph& g, std::uint64_t seed) {
      Rng rng(seed);
      return run_fluidc_disconnected(g, fluidc_k, rng, max_supersteps).partition;
    };
  }
  throw std::runtime_error("unknown algorithm: " + name);
}

// key=value lines, '#' comments; keys mirror the bench flags.
void apply_config_file(const std::string& path, SweepConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad config line: " + line);
    const std::string key = line.substr(first, eq - first);
    const std::string value = line.substr(eq + 1);
    if (key == "sizes") {
      config.sizes.clear();
      for (const auto& s : split_list(value)) config.sizes.push_back(std::stoull(s));
    } else if (key == "mus") {
      config.mus = parse_mus(value);
    } else if (key == "reps") {
      config.replicates = std::stoull(value);
    } else if (key == "algos") {
      config.algorithms = split_list(value);
    } else if (key == "k-policy") {
      config.k_policy = value == "best" ? KPolicy::best : KPolicy::truth;
    } else if (key == "k-min") {
      config.k_min = static_cast<std::uint32_t>(std::stoul(value));
    } else if (key == "k-max") {
      config.k_max = static_cast<std::uint32_t>(std::stoul(value));
    } else if (key == "trials") {
      config.trials_per_k = static_cast<std::uint32_t>(std::stoul(value));
    } else if (key == "max-supersteps") {
      config.max_supersteps = std::stoull(value);
    } else {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fluid Communities: propagation-based community detection"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out_path;
  std::string kernel_backend = "auto";
  app.add_option("--seed", seed, "master random seed")->capture_default_str();
  app.add_option("--workers", workers, "worker threads for sweeps")
      ->capture_default_str();
  app.add_option("--out", out_path, "output path (meaning depends on subcommand)");
  app.add_option("--kernels", kernel_backend, "kernel backend: auto|scalar|avx2|neon")
      ->capture_default_str();
  app.fallthrough();

  // gen
  auto* gen = app.add_subcommand("gen", "generate one benchmark instance");
  std::size_t gen_n = 1000;
  double gen_mu = 0.3;
  LfrParams gen_params;
  bool gen_have_custom = false;
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--mu", gen_mu, "mixing parameter")->required();
  double gen_avg_degree = 20.0;
  std::uint32_t gen_max_degree = 0, gen_min_comm = 0, gen_max_comm = 0;
  double gen_exp_degree = -2.0, gen_exp_comm = -1.0;
  gen->add_option("--avg-degree", gen_avg_degree);
  gen->add_option("--max-degree", gen_max_degree, "default n/10");
  gen->add_option("--min-community", gen_min_comm, "default 10");
  gen->add_option("--max-community", gen_max_comm, "default n/10");
  gen->add_option("--degree-exponent", gen_exp_degree);
  gen->add_option("--community-exponent", gen_exp_comm);

  // gen-multi
  auto* gen_multi =
      app.add_subcommand("gen-multi", "generate a multi-ground-truth instance");
  std::size_t multi_n = 2000;
  gen_multi->add_option("--n", multi_n, "vertex count")->required();

  // detect
  auto* detect = app.add_subcommand("detect", "run a community detection algorithm");
  std::string detect_graph, detect_algo = "fluidc";
  std::uint32_t detect_k = 0;
  std::size_t detect_max_supersteps = 100;
  detect->add_option("--graph", detect_graph, "edge-list file")->required();
  detect->add_option("--algo", detect_algo, "fluidc|lpa")->capture_default_str();
  detect->add_option("--k", detect_k, "number of communities (fluidc)");
  detect->add_option("--max-supersteps", detect_max_supersteps)->capture_default_str();

  // best-k
  auto* best_k = app.add_subcommand("best-k", "fluidc with modularity-based k selection");
  std::string bestk_graph;
  std::uint32_t bestk_min = 0, bestk_max = 0, bestk_trials = 5;
  std::size_t bestk_max_supersteps = 100;
  best_k->add_option("--graph", bestk_graph, "edge-list file")->required();
  best_k->add_option("--k-min", bestk_min, "default 2");
  best_k->add_option("--k-max", bestk_max, "default ceil(sqrt(n))");
  best_k->add_option("--trials", bestk_trials)->capture_default_str();
  best_k->add_option("--max-supersteps", bestk_max_supersteps)->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "score a partition");
  std::string eval_metric, eval_pred, eval_truth, eval_graph;
  eval->add_option("--metric", eval_metric, "nmi|modularity")->required();
  eval->add_option("--pred", eval_pred, "predicted community file")->required();
  eval->add_option("--truth", eval_truth, "reference community file (nmi)");
  eval->add_option("--graph", eval_graph, "edge-list file (modularity)");

  // bench
  auto* bench = app.add_subcommand("bench", "parameter sweep with timing");
  std::string bench_sizes = "1000", bench_mus = "0.1,0.3,0.5";
  std::string bench_algos = "fluidc,lpa", bench_k_policy = "truth";
  std::string bench_config, bench_summary;
  SweepConfig sweep;
  bench->add_option("--sizes", bench_sizes, "comma list of vertex counts")
      ->capture_default_str();
  bench->add_option("--mus", bench_mus, "comma list or lo:hi:step")
      ->capture_default_str();
  bench->add_option("--reps", sweep.replicates, "instances per (size, mu)")
      ->capture_default_str();
  bench->add_option("--algos", bench_algos)->capture_default_str();
  bench->add_option("--k-policy", bench_k_policy, "truth|best")->capture_default_str();
  bench->add_option("--k-min", sweep.k_min);
  bench->add_option("--k-max", sweep.k_max);
  bench->add_option("--trials", sweep.trials_per_k)->capture_default_str();
  bench->add_option("--max-supersteps", sweep.max_supersteps)->capture_default_str();
  bench->add_option("--config", bench_config, "key=value config file");
  bench->add_option("--summary", bench_summary, "also write per-group summary CSV");

  // diversity
  auto* diversity = app.add_subcommand("diversity", "multi-ground-truth similarity matrix");
  std::string div_dir, div_algos = "fluidc,lpa";
  std::size_t div_runs = 100;
  double div_alpha = 0.5;
  std::uint32_t div_k = 4;
  std::size_t div_max_supersteps = 100;
  diversity->add_option("--graphs", div_dir, "directory of *.edges with .t1/.t2 files")
      ->required();
  diversity->add_option("--algos", div_algos, "comma list; repeats get independent streams")
      ->capture_default_str();
  diversity->add_option("--runs", div_runs)->capture_default_str();
  diversity->add_option("--alpha", div_alpha)->capture_default_str();
  diversity->add_option("--k", div_k, "fluidc community count")->capture_default_str();
  diversity->add_option("--max-supersteps", div_max_supersteps)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (kernel_backend != "auto") {
      kernels::Backend backend;
      if (kernel_backend == "scalar") backend = kernels::Backend::scalar;
      else if (kernel_backend == "avx2") backend = kernels::Backend::avx2;
      else if (kernel_backend == "neon") backend = kernels::Backend::neon;
      else throw std::runtime_error("unknown kernel backend: " + kernel_backend);
      if (!kernels::select(backend))
        throw std::runtime_error("kernel backend unavailable on this machine: " +
                                 kernel_backend);
    }

    if (gen->parsed()) {
      if (out_path.empty()) throw std::runtime_error("gen: --out PREFIX required");
      gen_params = LfrParams::benchmark_defaults(gen_n, gen_mu, seed);
      gen_params.avg_degree = gen_avg_degree;
      if (gen_max_degree != 0) gen_params.max_degree = gen_max_degree;
      if (gen_min_comm != 0) gen_params.min_community = gen_min_comm;
      if (gen_max_comm != 0) gen_params.max_community = gen_max_comm;
      gen_params.degree_exponent = gen_exp_degree;
      gen_params.community_exponent = gen_exp_comm;
      (void)gen_have_custom;
      const GroundTruthGraph instance = lfr_generate(gen_params);
      write_instance(instance, out_path);
      std::cout << "n=" << instance.graph.vertex_count()
                << " m=" << instance.graph.edge_count()
                << " communities=" << instance.truth.block_count()
                << " realized_mu=" << instance.realized_mu << "\n";
    } else if (gen_multi->parsed()) {
      if (out_path.empty()) throw std::runtime_error("gen-multi: --out PREFIX required");
      const LfrParams params = LfrParams::multi_gt_defaults(multi_n, seed);
      const MultiGroundTruth instance = multi_ground_truth(params);
      auto edges = open_output(out_path + ".edges");
      save_edge_list(instance.graph, edges);
      auto t1 = open_output(out_path + ".t1.cmty");
      save_partition(instance.t1, t1);
      auto t2 = open_output(out_path + ".t2.cmty");
      save_partition(instance.t2, t2);
      std::cout << "n=" << instance.graph.vertex_count()
                << " m=" << instance.graph.edge_count()
                << " nmi_t1_t2=" << nmi_geometric(instance.t1, instance.t2) << "\n";
    } else if (detect->parsed()) {
      if (out_path.empty()) throw std::runtime_error("detect: --out FILE required");
      const Graph g = load_graph_file(detect_graph);
      Rng rng(seed);
      FluidResult result;
      if (detect_algo == "lpa") {
        result = run_lpa(g, rng, detect_max_supersteps);
      } else if (detect_algo == "fluidc") {
        if (detect_k == 0)
          throw std::runtime_error("detect --algo fluidc requires --k");
        result = run_fluidc_disconnected(g, detect_k, rng, detect_max_supersteps);
      } else {
        throw std::runtime_error("unknown algorithm: " + detect_algo);
      }
      auto out = open_output(out_path);
      save_partition(result.partition, out);
      std::cout << detect_algo << ": " << result.partition.block_count()
                << " communities, " << result.supersteps << " supersteps, "
                << (result.converged ? "converged" : "not converged") << "\n";
    } else if (best_k->parsed()) {
      const Graph g = load_graph_file(bestk_graph);
      const auto n = g.vertex_count();
      const std::uint32_t lo = bestk_min != 0 ? bestk_min : 2;
      const std::uint32_t hi =
          bestk_max != 0 ? bestk_max
                         : static_cast<std::uint32_t>(
                               std::ceil(std::sqrt(static_cast<double>(n))));
      const BestKResult best =
          best_k_by_modularity(g, lo, std::min<std::uint32_t>(hi, n), bestk_trials,
                               seed, bestk_max_supersteps);
      if (!out_path.empty()) {
        auto out = open_output(out_path);
        save_partition(best.result.partition, out);
      }
      std::cout << "k=" << best.k << " modularity=" << std::setprecision(6)
                << std::fixed << best.modularity << "\n";
    } else if (eval->parsed()) {
      const Partition pred = load_partition_file(eval_pred);
      double value = 0.0;
      if (eval_metric == "nmi") {
        if (eval_truth.empty()) throw std::runtime_error("eval nmi requires --truth");
        value = nmi_geometric(pred, load_partition_file(eval_truth));
      } else if (eval_metric == "modularity") {
        if (eval_graph.empty())
          throw std::runtime_error("eval modularity requires --graph");
        value = modularity(load_graph_file(eval_graph), pred);
      } else {
        throw std::runtime_error("unknown metric: " + eval_metric);
      }
      std::cout << std::fixed << std::setprecision(6) << value << "\n";
    } else if (bench->parsed()) {
      if (out_path.empty()) throw std::runtime_error("bench: --out FILE required");
      sweep.sizes.clear();
      for (const auto& s : split_list(bench_sizes)) sweep.sizes.push_back(std::stoull(s));
      sweep.mus = parse_mus(bench_mus);
      sweep.algorithms = split_list(bench_algos);
      sweep.k_policy = bench_k_policy == "best" ? KPolicy::best : KPolicy::truth;
      if (!bench_config.empty()) apply_config_file(bench_config, sweep);
      sweep.master_seed = seed;
      sweep.workers = workers;

      const auto records = bench_sweep(sweep);
      auto out = open_output(out_path);
      write_records_csv(records, out);
      if (!bench_summary.empty()) {
        const auto rows = summarize(records);
        auto summary_out = open_output(bench_summary);
        write_summary_csv(rows, summary_out);
      }
      // Per-algorithm superstep-cost regression when the sweep spans enough sizes.
      for (const auto& algo : sweep.algorithms) {
        std::vector<BenchRecord> own;
        for (const auto& r : records)
          if (r.algorithm == algo) own.push_back(r);
        try {
          const LinearFit fit = linearity_check(own);
          std::cout << algo << ": slope=" << fit.slope
                    << " intercept=" << fit.intercept << " r2=" << fit.r_squared
                    << "\n";
        } catch (const std::invalid_argument&) {
        }
      }
    } else if (diversity->parsed()) {
      if (out_path.empty()) throw std::runtime_error("diversity: --out FILE required");
      std::vector<MultiGroundTruth> instances;
      std::vector<fs::path> edge_files;
      for (const auto& entry : fs::directory_iterator(div_dir))
        if (entry.path().extension() == ".edges") edge_files.push_back(entry.path());
      std::sort(edge_files.begin(), edge_files.end());
      for (const auto& path : edge_files) {
        fs::path base = path;
        base.replace_extension();
        std::ifstream edges(path);
        MultiGroundTruth instance;
        instance.graph = load_edge_list(edges);
        instance.t1 = load_partition_file(base.string() + ".t1.cmty");
        instance.t2 = load_partition_file(base.string() + ".t2.cmty");
        instances.push_back(std::move(instance));
      }
      if (instances.empty())
        throw std::runtime_error("no *.edges instances found in " + div_dir);

      std::vector<std::pair<std::string, AlgoRunner>> algos;
      std::vector<std::string> names = split_list(div_algos);
      for (std::size_t i = 0; i < names.size(); ++i) {
        std::string label = names[i];
        for (std::size_t j = 0; j < i; ++j)
          if (names[j] == names[i]) {
            label += "#" + std::to_string(i);
            break;
          }
        algos.emplace_back(label, make_runner(names[i], div_k, div_max_supersteps));
      }

      const SimilarityMatrix matrix =
          similarity_matrix(algos, instances, div_runs, div_alpha, seed);
      auto out = open_output(out_path);
      for (std::size_t i = 0; i < matrix.algorithms.size(); ++i)
        out << matrix.algorithms[i]
            << (i + 1 == matrix.algorithms.size() ? "\n" : ",");
      for (const auto& row : matrix.values) {
        for (std::size_t i = 0; i < row.size(); ++i)
          out << std::setprecision(9) << row[i] << (i + 1 == row.size() ? "\n" : ",");
      }
      std::cout << "wrote " << matrix.algorithms.size() << "x"
                << matrix.algorithms.size() << " similarity matrix over "
                << instances.size() << " graphs\n";
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
