#include "gfstab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "gfstab/io.hpp"
#include "gfstab/laplacian.hpp"

namespace gfstab {

namespace {

enum Stream : std::uint64_t { kGraph = 1, kSignal = 2, kStrategy = 3 };

}  // namespace

void RunConfig::validate() const {
  gen.validate();
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (!(budget_fraction >= 0)) throw std::invalid_argument("budget fraction must be nonnegative");
  if (smooth_modes < 1 || smooth_modes > gen.n)
    throw std::invalid_argument("smooth-mode count must lie in [1, n]");
  if (strategy_retries < 1) throw std::invalid_argument("strategy retries must be at least 1");
  if (strategy == StrategyKind::Pgd) {
    pgd.validate();
    if (filter.kind != FilterKind::LowPass) throw std::invalid_argument("PGD needs the lowpass filter");
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over a combination of the two inputs
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + stream * 0xD1B54A32D192ED03ULL + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<double> dirichlet_weights(int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("need at least one weight");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(k));
  double total = 0;
  for (double& v : w) total += (v = expo(rng));
  for (double& v : w) v /= total;
  return w;
}

Signal gen_smooth_signal(const EigenSystem& eig, int k, Rng& rng) {
  if (k < 1 || k > eig.order())
    throw std::invalid_argument("smooth-mode count " + std::to_string(k) + " outside [1, " +
                                std::to_string(eig.order()) + "]");
  const std::vector<double> w = dirichlet_weights(k, rng);
  Signal x = Signal::Zero(eig.order());
  for (int i = 0; i < k; ++i) x += w[static_cast<std::size_t>(i)] * eig.vectors.col(i);
  return x;
}

Signal add_noise_snr(const Signal& x, double snr_db, Rng& rng) {
  const double xn = x.norm();
  if (!(xn > 0)) throw std::invalid_argument("cannot set the SNR of a zero signal");
  if (std::isinf(snr_db) && snr_db > 0) return x;
  if (std::isnan(snr_db)) throw std::invalid_argument("SNR is NaN");
  std::normal_distribution<double> normal;
  Signal z(x.size());
  do {
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
  } while (!(z.norm() > 0));
  return x + z * (xn / z.norm()) * std::pow(10.0, -snr_db / 20.0);
}

namespace {

Perturbation draw_perturbation(const RunConfig& c, const Graph& g, Budget b, const Signal& clean,
                               const Signal& noisy, Rng& rng) {
  switch (c.strategy) {
    case StrategyKind::Delete: return strat_delete(g, b, rng);
    case StrategyKind::Add: return strat_add(g, b, rng);
    case StrategyKind::AddDelete: return strat_add_delete(g, b, rng);
    case StrategyKind::Rewire: return strat_rewire(g, b, rng);
    case StrategyKind::Robust: return strat_robust(g, b);
    case StrategyKind::Pgd: return strat_pgd(g, b, clean, noisy, c.filter, c.pgd, rng);
  }
  throw std::logic_error("unhandled strategy");
}

}  // namespace

RunRecord run_one(const RunConfig& config, std::uint64_t seed) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  GenSpec gs = config.gen;
  gs.seed = derive_seed(seed, kGraph);
  const Graph g = sample_connected(gs, config.max_tries);

  Rng signal_rng(derive_seed(seed, kSignal));
  const EigenSystem eig = eig_sym(normalized_laplacian(g));
  const Signal clean = gen_smooth_signal(eig, config.smooth_modes, signal_rng);
  const Signal noisy = add_noise_snr(clean, config.snr_db, signal_rng);

  const Budget budget = Budget::fraction_of_edges(g, config.budget_fraction);
  Rng strategy_rng(derive_seed(seed, kStrategy));
  RunRecord r;
  Graph gp = g;
  Perturbation p;
  std::string last_error = "the perturbed graph had isolated nodes";
  for (int attempt = 0;; ++attempt) {
    if (attempt == config.strategy_retries)
      throw PerturbError("no admissible perturbation after " + std::to_string(config.strategy_retries) +
                         " draws; last: " + last_error);
    try {
      p = draw_perturbation(config, g, budget, clean, noisy, strategy_rng);
    } catch (const PerturbError& e) {
      // Robust is deterministic, so a redraw cannot help.
      if (config.strategy == StrategyKind::Robust) throw;
      last_error = e.what();
      ++r.rejections;
      continue;
    }
    gp = apply_perturbation(g, p);
    if (!has_isolated(gp)) break;
    last_error = "the perturbed graph had isolated nodes";
    ++r.rejections;
  }

  const BoundReport rep = chain_bound(config.filter, g, gp, noisy);
  if (!rep.chain_holds(1e-9)) {
    std::ostringstream os;
    os << std::setprecision(17) << "bound chain violated: rod " << rep.rel_output_distance.value_or(0)
       << ", fd " << rep.filter_distance << ", C*E2 " << rep.stability_constant * rep.e2 << ", E1 "
       << rep.e1 << ", thm " << rep.theorem.value;
    throw std::logic_error(os.str());
  }
  const GraphStats st = summary_stats(g);

  r.model = to_string(config.gen.model);
  r.strategy = to_string(config.strategy);
  r.seed = seed;
  r.n = g.num_nodes();
  r.m = static_cast<int>(g.num_edges());
  r.budget = budget.edits;
  r.valid = rep.theorem.valid;
  r.e1 = rep.e1;
  r.e2 = rep.e2;
  r.thm_bound = rep.theorem.value;
  r.corollary_bound = rep.corollary;
  r.chain_bound = rep.chain;
  r.filter_distance = rep.filter_distance;
  r.rel_output_distance = rep.rel_output_distance.value_or(0);
  r.loose_rod_fd = rep.loose_rod_fd;
  r.loose_fd_ce2 = rep.loose_fd_ce2;
  r.loose_e2_e1 = rep.loose_e2_e1;
  r.loose_e1_thm = rep.loose_e1_thm;
  r.mean_degree = st.mean_degree;
  r.degree_std = st.degree_std;
  r.aspl = st.avg_shortest_path;
  r.diameter = st.diameter;
  r.degree_corr = st.degree_correlation;
  r.edits = static_cast<int>(edit_count(p));
  for (const NodeReport& nr : rep.nodes) r.max_remaining = std::max(r.max_remaining, nr.exact.remaining);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SuiteResult run_suite(const std::vector<RunConfig>& configs, int threads) {
  struct Job {
    std::size_t config;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    configs[c].validate();
    for (int i = 0; i < configs[c].repeats; ++i)
      jobs.push_back({c, configs[c].base_seed + static_cast<std::uint64_t>(i)});
  }

  std::vector<std::optional<RunRecord>> done(jobs.size());
  std::vector<std::optional<RunFailure>> failed(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const RunConfig& c = configs[jobs[j].config];
      try {
        done[j] = run_one(c, jobs[j].seed);
      } catch (const std::exception& e) {
        failed[j] = RunFailure{to_string(c.gen.model), to_string(c.strategy), jobs[j].seed, e.what()};
      }
    }
  };

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max<int>(1, static_cast<int>(jobs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SuiteResult out;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (done[j]) out.records.push_back(std::move(*done[j]));
    if (failed[j]) out.failures.push_back(std::move(*failed[j]));
  }
  return out;
}

SuiteResult run_suite(const RunConfig& config, int threads) {
  return run_suite(std::vector<RunConfig>{config}, threads);
}

const char* const kCsvHeader =
    "model,strategy,seed,n,m,budget,valid,E1,E2,thm_bound,corollary_bound,chain_bound,"
    "filter_distance,rel_output_distance,loose_rod_fd,loose_fd_CE2,loose_E2_E1,loose_E1_thm,"
    "mean_degree,degree_std,aspl,diameter,degree_corr,wall_ms";

namespace {

std::string real(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string real(const std::optional<double>& v) { return v ? real(*v) : std::string(); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

std::optional<double> parse_opt(const std::string& s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  return parse_real(s, line);
}

long long parse_int(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kCsvHeader << "\n";
  for (const RunRecord& r : records) {
    os << r.model << ',' << r.strategy << ',' << r.seed << ',' << r.n << ',' << r.m << ','
       << r.budget << ',' << (r.valid ? "true" : "false") << ',' << real(r.e1) << ',' << real(r.e2)
       << ',' << real(r.thm_bound) << ',' << real(r.corollary_bound) << ',' << real(r.chain_bound)
       << ',' << real(r.filter_distance) << ',' << real(r.rel_output_distance) << ','
       << real(r.loose_rod_fd) << ',' << real(r.loose_fd_ce2) << ',' << real(r.loose_e2_e1) << ','
       << real(r.loose_e1_thm) << ',' << real(r.mean_degree) << ',' << real(r.degree_std) << ','
       << real(r.aspl) << ',' << real(r.diameter) << ',' << real(r.degree_corr) << ','
       << real(r.wall_ms) << "\n";
  }
}

void write_csv(const std::string& path, const std::vector<RunRecord>& records) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(f, records);
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

std::vector<RunRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError("unexpected CSV header");
  std::vector<RunRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 24)
      throw ParseError("line " + std::to_string(lineno) + ": expected 24 fields, got " +
                       std::to_string(f.size()));
    RunRecord r;
    r.model = f[0];
    r.strategy = f[1];
    r.seed = static_cast<std::uint64_t>(parse_int(f[2], lineno));
    r.n = static_cast<int>(parse_int(f[3], lineno));
    r.m = static_cast<int>(parse_int(f[4], lineno));
    r.budget = static_cast<int>(parse_int(f[5], lineno));
    if (f[6] != "true" && f[6] != "false")
      throw ParseError("line " + std::to_string(lineno) + ": bad validity flag '" + f[6] + "'");
    r.valid = f[6] == "true";
    r.e1 = parse_real(f[7], lineno);
    r.e2 = parse_real(f[8], lineno);
    r.thm_bound = parse_real(f[9], lineno);
    r.corollary_bound = parse_opt(f[10], lineno);
    r.chain_bound = parse_real(f[11], lineno);
    r.filter_distance = parse_real(f[12], lineno);
    r.rel_output_distance = parse_real(f[13], lineno);
    r.loose_rod_fd = parse_opt(f[14], lineno);
    r.loose_fd_ce2 = parse_opt(f[15], lineno);
    r.loose_e2_e1 = parse_opt(f[16], lineno);
    r.loose_e1_thm = parse_opt(f[17], lineno);
    r.mean_degree = parse_real(f[18], lineno);
    r.degree_std = parse_real(f[19], lineno);
    r.aspl = parse_real(f[20], lineno);
    r.diameter = parse_real(f[21], lineno);
    r.degree_corr = parse_opt(f[22], lineno);
    r.wall_ms = parse_real(f[23], lineno);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RunRecord> read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_csv(f);
}

void write_failures(std::ostream& os, const std::vector<RunFailure>& failures) {
  os << "model,strategy,seed,message\n";
  for (const RunFailure& f : failures) {
    std::string msg = f.message;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    os << f.model << ',' << f.strategy << ',' << f.seed << ',' << msg << "\n";
  }
}

}  // namespace gfstab
