// gfstab command line: gen, perturb, bound, run, report.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gfstab/bounds.hpp"
#include "gfstab/config.hpp"
#include "gfstab/experiment.hpp"
#include "gfstab/generators.hpp"
#include "gfstab/io.hpp"
#include "gfstab/laplacian.hpp"
#include "gfstab/perturb.hpp"
#include "gfstab/pgd.hpp"
#include "gfstab/report.hpp"
#include "gfstab/spectral.hpp"

namespace fs = std::filesystem;
using namespace gfstab;

namespace {

struct GenArgs {
  std::string model = "ER";
  int n = 100;
  std::uint64_t seed = 0;
  int max_tries = 1000;
  std::optional<double> p;
  std::optional<int> m, k;
  std::optional<double> rewire_p, threshold;
  bool stats = false;
  std::string output;
};

struct PerturbArgs {
  std::string graph;
  std::string strategy = "AddDelete";
  std::optional<int> budget;
  double fraction = 0.1;
  std::uint64_t seed = 0;
  std::string clean, noisy;
  double alpha = 1.0;
  double snr_db = 0.0;
  int modes = 10;
  PgdParams pgd = PgdParams::desk();
  std::string output;
};

struct BoundArgs {
  std::string graph, perturbation, signal;
  std::string filter = "lowpass";
  double alpha = 1.0;
  std::vector<double> theta;
  bool per_node = false;
};

struct RunArgs {
  std::string config;
  std::string output, failures;
  std::optional<int> threads;
};

struct ReportArgs {
  std::string input;
  std::string out_dir = ".";
  std::vector<std::string> metrics = {"E1", "E2", "thm_bound", "rel_output_distance", "loose_E1_thm"};
  bool valid_only = false;
  bool outliers = false;
};

// Writes to `path`, or to stdout when it is empty or "-".
template <class F>
void emit(const std::string& path, F write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  write(f);
}

SpectralFilter make_filter(const std::string& name, double alpha, const std::vector<double>& theta) {
  switch (parse_filter_kind(name)) {
    case FilterKind::LowPass: return SpectralFilter::lowpass(alpha);
    case FilterKind::Polynomial: return SpectralFilter::polynomial(theta);
    case FilterKind::Identity: return SpectralFilter::identity();
    case FilterKind::Monomial: break;
  }
  throw std::invalid_argument("filter '" + name + "' has no stability constant here");
}

int cmd_gen(const GenArgs& a) {
  GenSpec s;
  s.model = parse_graph_model(a.model);
  s.n = a.n;
  s.seed = a.seed;
  if (a.p) {
    s.er_p = *a.p;
    s.ws_p = *a.p;
    s.assort_base_p = *a.p;
  }
  if (a.m) s.ba_m = *a.m;
  if (a.k) {
    s.ws_k = *a.k;
    s.kreg_k = *a.k;
    s.knn_k = *a.k;
  }
  if (a.rewire_p) s.assort_rewire_p = *a.rewire_p;
  if (a.threshold) s.assort_threshold = *a.threshold;
  const Graph g = sample_connected(s, a.max_tries);
  emit(a.output, [&](std::ostream& os) { write_edge_list(os, g); });
  if (a.stats) {
    const GraphStats st = summary_stats(g);
    std::cerr << "nodes " << g.num_nodes() << "\nedges " << g.num_edges() << "\nmean_degree "
              << st.mean_degree << "\ndegree_std " << st.degree_std << "\naspl " << st.avg_shortest_path
              << "\ndiameter " << st.diameter << "\ndegree_corr ";
    if (st.degree_correlation) std::cerr << *st.degree_correlation << "\n";
    else std::cerr << "NA\n";
  }
  return 0;
}

int cmd_perturb(const PerturbArgs& a) {
  const Graph g = load_edge_list(a.graph);
  const Budget b = a.budget ? Budget(*a.budget) : Budget::fraction_of_edges(g, a.fraction);
  Rng rng(a.seed);
  Perturbation p;
  switch (parse_strategy(a.strategy)) {
    case StrategyKind::Delete: p = strat_delete(g, b, rng); break;
    case StrategyKind::Add: p = strat_add(g, b, rng); break;
    case StrategyKind::AddDelete: p = strat_add_delete(g, b, rng); break;
    case StrategyKind::Rewire: p = strat_rewire(g, b, rng); break;
    case StrategyKind::Robust: p = strat_robust(g, b); break;
    case StrategyKind::Pgd: {
      Signal clean, noisy;
      if (!a.clean.empty()) {
        clean = load_signal(a.clean);
        noisy = a.noisy.empty() ? add_noise_snr(clean, a.snr_db, rng) : load_signal(a.noisy);
      } else {
        const EigenSystem eig = eig_sym(normalized_laplacian(g));
        clean = gen_smooth_signal(eig, std::min(a.modes, g.num_nodes()), rng);
        noisy = add_noise_snr(clean, a.snr_db, rng);
      }
      p = strat_pgd(g, b, clean, noisy, SpectralFilter::lowpass(a.alpha), a.pgd, rng);
      break;
    }
  }
  emit(a.output, [&](std::ostream& os) { write_perturbation(os, p); });
  return 0;
}

int cmd_bound(const BoundArgs& a) {
  const Graph g = load_edge_list(a.graph);
  const Graph gp = apply_perturbation(g, load_perturbation(a.perturbation));
  std::optional<Signal> x;
  if (!a.signal.empty()) x = load_signal(a.signal);
  const BoundReport r = chain_bound(make_filter(a.filter, a.alpha, a.theta), g, gp, x);
  write_bound_report(std::cout, r, a.per_node);
  return 0;
}

int cmd_run(const RunArgs& a) {
  ExperimentPlan plan = load_plan(a.config);
  if (!a.output.empty()) plan.output = a.output;
  if (!a.failures.empty()) plan.failures = a.failures;
  if (a.threads) plan.threads = *a.threads;
  const SuiteResult res = run_suite(plan.expand(), plan.threads);
  write_csv(plan.output, res.records);
  emit(plan.failures_path(), [&](std::ostream& os) { write_failures(os, res.failures); });
  std::cerr << res.records.size() << " records written to " << plan.output << ", " << res.failures.size()
            << " failures written to " << plan.failures_path() << "\n";
  return 0;
}

int cmd_report(const ReportArgs& a) {
  std::vector<RunRecord> rs = read_csv(a.input);
  if (a.valid_only) std::erase_if(rs, [](const RunRecord& r) { return !r.valid; });
  if (rs.empty()) throw std::runtime_error("no records to report");
  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  emit((dir / "summary.csv").string(), [&](std::ostream& os) { write_summary(os, aggregate(rs)); });
  for (const std::string& metric : a.metrics) {
    BoxplotOptions opts;
    opts.show_outliers = a.outliers;
    opts.title = metric;
    render_boxplot((dir / (metric + ".svg")).string(), rs, metric, opts);
  }
  std::cerr << "summary and " << a.metrics.size() << " plots written to " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability of graph filters under structural perturbations"};
  app.require_subcommand(1);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Sample a connected graph and write its edge list");
  gen->add_option("--model", ga.model, "ER, BA, WS, KREG, KNN or ASSORT")->capture_default_str();
  gen->add_option("-n,--nodes", ga.n, "Node count")->capture_default_str();
  gen->add_option("--seed", ga.seed)->capture_default_str();
  gen->add_option("--max-tries", ga.max_tries, "Connected-sample attempts")->capture_default_str();
  gen->add_option("--p", ga.p, "ER edge probability, WS rewiring probability or ASSORT base probability");
  gen->add_option("--m", ga.m, "BA edges per new node");
  gen->add_option("--k", ga.k, "WS, KREG or KNN degree parameter");
  gen->add_option("--rewire-p", ga.rewire_p, "ASSORT probability of an assortative move");
  gen->add_option("--threshold", ga.threshold, "ASSORT target degree correlation");
  gen->add_flag("--stats", ga.stats, "Print summary statistics to stderr");
  gen->add_option("-o,--output", ga.output, "Edge list path (default stdout)");

  PerturbArgs pa;
  auto* perturb = app.add_subcommand("perturb", "Perturb a graph with one strategy");
  perturb->add_option("-g,--graph", pa.graph, "Edge list")->required();
  perturb->add_option("-s,--strategy", pa.strategy, "Delete, Add, AddDelete, Rewire, Robust or PGD")
      ->capture_default_str();
  perturb->add_option("-b,--budget", pa.budget, "Edit count (overrides --fraction)");
  perturb->add_option("--fraction", pa.fraction, "Budget as a fraction of |E|, rounded down")
      ->capture_default_str();
  perturb->add_option("--seed", pa.seed)->capture_default_str();
  perturb->add_option("--clean", pa.clean, "PGD clean signal (default: random smooth signal)");
  perturb->add_option("--noisy", pa.noisy, "PGD noisy signal (default: clean plus noise at --snr)");
  perturb->add_option("--snr", pa.snr_db, "PGD noise level in dB")->capture_default_str();
  perturb->add_option("--modes", pa.modes, "Eigenvectors mixed into the random smooth signal")
      ->capture_default_str();
  perturb->add_option("--alpha", pa.alpha, "PGD lowpass parameter")->capture_default_str();
  perturb->add_option("--iterations", pa.pgd.iterations)->capture_default_str();
  perturb->add_option("--trials", pa.pgd.trials)->capture_default_str();
  perturb->add_option("--eta", pa.pgd.eta)->capture_default_str();
  perturb->add_option("-o,--output", pa.output, "Perturbation path (default stdout)");

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Exact norms, bounds and distances for a perturbation");
  bound->add_option("-g,--graph", ba.graph, "Edge list")->required();
  bound->add_option("-p,--perturbation", ba.perturbation, "Perturbation file")->required();
  bound->add_option("-f,--filter", ba.filter, "lowpass, polynomial or identity")->capture_default_str();
  bound->add_option("--alpha", ba.alpha, "Lowpass parameter")->capture_default_str();
  bound->add_option("--theta", ba.theta, "Polynomial coefficients on L - I")->delimiter(',');
  bound->add_option("-x,--signal", ba.signal, "Signal for the relative output distance");
  bound->add_flag("--per-node", ba.per_node, "Also print the per-node table");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run an experiment plan and write the records as CSV");
  run->add_option("config", ra.config, "Plan file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", ra.output, "CSV path (overrides the plan)");
  run->add_option("--failures", ra.failures, "Failures path (overrides the plan)");
  run->add_option("-j,--threads", ra.threads, "Worker threads, 0 = all cores");

  ReportArgs rp;
  auto* report = app.add_subcommand("report", "Summarise a results CSV and draw box plots");
  report->add_option("input", rp.input, "Results CSV")->required()->check(CLI::ExistingFile);
  report->add_option("-d,--out-dir", rp.out_dir)->capture_default_str();
  report->add_option("-m,--metrics", rp.metrics, "Metrics to plot")->delimiter(',')->capture_default_str();
  report->add_flag("--valid-only", rp.valid_only, "Drop records whose theorem bound is invalid");
  report->add_flag("--outliers", rp.outliers, "Draw points beyond the whiskers");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(ga);
    if (*perturb) return cmd_perturb(pa);
    if (*bound) return cmd_bound(ba);
    if (*run) return cmd_run(ra);
    if (*report) return cmd_report(rp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
