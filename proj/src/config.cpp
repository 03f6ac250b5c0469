#include "gfstab/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "gfstab/io.hpp"

namespace gfstab {

namespace {

const std::vector<StrategyKind> kAllStrategies = {StrategyKind::Delete,  StrategyKind::Add,
                                                  StrategyKind::AddDelete, StrategyKind::Rewire,
                                                  StrategyKind::Robust,  StrategyKind::Pgd};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_real(const std::string& v) {
  std::size_t used = 0;
  const double x = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument("trailing characters");
  return x;
}

long to_int(const std::string& v) {
  std::size_t used = 0;
  const long x = std::stol(v, &used);
  if (used != v.size()) throw std::invalid_argument("trailing characters");
  return x;
}

}  // namespace

ExperimentPlan ExperimentPlan::desk() {
  ExperimentPlan p;
  p.base.gen.n = 50;
  p.base.repeats = 20;
  p.base.pgd = PgdParams::desk();
  p.models.assign(kAllModels.begin(), kAllModels.end());
  p.strategies = kAllStrategies;
  return p;
}

ExperimentPlan ExperimentPlan::full() {
  ExperimentPlan p = desk();
  p.base.gen.n = 100;
  p.base.repeats = 100;
  p.base.pgd = PgdParams::full();
  return p;
}

std::vector<RunConfig> ExperimentPlan::expand() const {
  std::vector<RunConfig> out;
  for (GraphModel m : models) {
    for (StrategyKind s : strategies) {
      RunConfig c = base;
      c.gen.model = m;
      c.strategy = s;
      out.push_back(c);
    }
  }
  return out;
}

std::string ExperimentPlan::failures_path() const {
  return failures.empty() ? output + ".failures.csv" : failures;
}

ExperimentPlan parse_plan(std::istream& is) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    lines.push_back(lineno);
  }

  ExperimentPlan plan = ExperimentPlan::desk();
  for (const auto& [k, v] : entries) {
    if (k != "preset") continue;
    if (v == "desk") plan = ExperimentPlan::desk();
    else if (v == "full") plan = ExperimentPlan::full();
    else throw ParseError("unknown preset '" + v + "'");
  }

  RunConfig& c = plan.base;
  GenSpec& g = c.gen;
  std::vector<double> theta;
  std::string filter = "lowpass";
  double alpha = c.filter.alpha;
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"preset", [](const std::string&) {}},
      {"models",
       [&](const std::string& v) {
         plan.models.clear();
         if (v == "all") plan.models.assign(kAllModels.begin(), kAllModels.end());
         else for (const auto& s : split_list(v)) plan.models.push_back(parse_graph_model(s));
       }},
      {"strategies",
       [&](const std::string& v) {
         plan.strategies.clear();
         if (v == "all") plan.strategies = kAllStrategies;
         else for (const auto& s : split_list(v)) plan.strategies.push_back(parse_strategy(s));
       }},
      {"n", [&](const std::string& v) { g.n = static_cast<int>(to_int(v)); }},
      {"repeats", [&](const std::string& v) { c.repeats = static_cast<int>(to_int(v)); }},
      {"base_seed", [&](const std::string& v) { c.base_seed = std::stoull(v); }},
      {"threads", [&](const std::string& v) { plan.threads = static_cast<int>(to_int(v)); }},
      {"budget_fraction", [&](const std::string& v) { c.budget_fraction = to_real(v); }},
      {"snr_db", [&](const std::string& v) { c.snr_db = to_real(v); }},
      {"smooth_modes", [&](const std::string& v) { c.smooth_modes = static_cast<int>(to_int(v)); }},
      {"filter", [&](const std::string& v) { filter = v; }},
      {"alpha", [&](const std::string& v) { alpha = to_real(v); }},
      {"theta",
       [&](const std::string& v) {
         theta.clear();
         for (const auto& s : split_list(v)) theta.push_back(to_real(s));
       }},
      {"pgd_iterations", [&](const std::string& v) { c.pgd.iterations = static_cast<int>(to_int(v)); }},
      {"pgd_trials", [&](const std::string& v) { c.pgd.trials = static_cast<int>(to_int(v)); }},
      {"pgd_eta", [&](const std::string& v) { c.pgd.eta = to_real(v); }},
      {"pgd_noise_std", [&](const std::string& v) { c.pgd.noise_std = to_real(v); }},
      {"er_p", [&](const std::string& v) { g.er_p = to_real(v); }},
      {"ba_m", [&](const std::string& v) { g.ba_m = static_cast<int>(to_int(v)); }},
      {"ws_k", [&](const std::string& v) { g.ws_k = static_cast<int>(to_int(v)); }},
      {"ws_p", [&](const std::string& v) { g.ws_p = to_real(v); }},
      {"kreg_k", [&](const std::string& v) { g.kreg_k = static_cast<int>(to_int(v)); }},
      {"knn_k", [&](const std::string& v) { g.knn_k = static_cast<int>(to_int(v)); }},
      {"assort_base_p", [&](const std::string& v) { g.assort_base_p = to_real(v); }},
      {"assort_rewire_p", [&](const std::string& v) { g.assort_rewire_p = to_real(v); }},
      {"assort_threshold", [&](const std::string& v) { g.assort_threshold = to_real(v); }},
      {"assort_max_iterations", [&](const std::string& v) { g.assort_max_iterations = to_int(v); }},
      {"output", [&](const std::string& v) { plan.output = v; }},
      {"failures", [&](const std::string& v) { plan.failures = v; }},
  };

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& [k, v] = entries[i];
    const std::string where = "line " + std::to_string(lines[i]) + ": ";
    auto it = setters.find(k);
    if (it == setters.end()) throw ParseError(where + "unknown key '" + k + "'");
    try {
      it->second(v);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(where + "bad value '" + v + "' for " + k + " (" + e.what() + ")");
    }
  }

  try {
    if (filter == "lowpass") c.filter = SpectralFilter::lowpass(alpha);
    else if (filter == "polynomial") c.filter = SpectralFilter::polynomial(theta);
    else if (filter == "identity") c.filter = SpectralFilter::identity();
    else throw std::invalid_argument("unknown filter '" + filter + "'");
    if (plan.models.empty() || plan.strategies.empty())
      throw std::invalid_argument("models and strategies must be nonempty");
    for (const RunConfig& rc : plan.expand()) rc.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid configuration: ") + e.what());
  }
  return plan;
}

ExperimentPlan load_plan(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return parse_plan(f);
}

void write_plan(std::ostream& os, const ExperimentPlan& plan) {
  const RunConfig& c = plan.base;
  const GenSpec& g = c.gen;
  auto join = [](const auto& items) {
    std::string s;
    for (const auto& x : items) s += (s.empty() ? "" : ",") + to_string(x);
    return s;
  };
  os << std::setprecision(17);
  os << "models = " << join(plan.models) << "\n"
     << "strategies = " << join(plan.strategies) << "\n"
     << "n = " << g.n << "\nrepeats = " << c.repeats << "\nbase_seed = " << c.base_seed
     << "\nthreads = " << plan.threads << "\nbudget_fraction = " << c.budget_fraction
     << "\nsnr_db = " << c.snr_db << "\nsmooth_modes = " << c.smooth_modes
     << "\nfilter = " << to_string(c.filter.kind) << "\nalpha = " << c.filter.alpha << "\n";
  if (!c.filter.coefficients.empty()) {
    os << "theta = ";
    for (std::size_t i = 0; i < c.filter.coefficients.size(); ++i)
      os << (i ? "," : "") << c.filter.coefficients[i];
    os << "\n";
  }
  os << "pgd_iterations = " << c.pgd.iterations << "\npgd_trials = " << c.pgd.trials
     << "\npgd_eta = " << c.pgd.eta << "\npgd_noise_std = " << c.pgd.noise_std << "\ner_p = " << g.er_p
     << "\nba_m = " << g.ba_m << "\nws_k = " << g.ws_k << "\nws_p = " << g.ws_p << "\nkreg_k = " << g.kreg_k
     << "\nknn_k = " << g.knn_k << "\nassort_base_p = " << g.assort_base_p
     << "\nassort_rewire_p = " << g.assort_rewire_p << "\nassort_threshold = " << g.assort_threshold
     << "\nassort_max_iterations = " << g.assort_max_iterations << "\noutput = " << plan.output << "\n";
  if (!plan.failures.empty()) os << "failures = " << plan.failures << "\n";
}

}  // namespace gfstab
