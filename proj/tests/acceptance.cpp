// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Tolerances are fixed here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "gfstab/bounds.hpp"
#include "gfstab/config.hpp"
#include "gfstab/experiment.hpp"
#include "gfstab/generators.hpp"
#include "gfstab/laplacian.hpp"
#include "gfstab/pgd.hpp"
#include "gfstab/report.hpp"
#include "gfstab/spectral.hpp"

using namespace gfstab;

namespace {

constexpr double kChainTol = 1e-9;
constexpr double kRowTol = 1e-12;
constexpr double kLemmaTol = 1e-12;
constexpr double kRewireTol = 1e-9;
constexpr double kPropTol = 1e-9;
constexpr double kGradRelTol = 1e-5;
constexpr double kGradStep = 1e-5;
constexpr double kRuntimeLimitS = 900;
constexpr double kAssortFloor = 0.80;
constexpr double kErLo = 4.2, kErHi = 5.1;
constexpr double kCorrFloor = 0.8;
constexpr double kReferenceCorr = 0.90, kReferenceCorrBand = 0.1;
constexpr double kReferenceLooseness = 1.5;

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
  if (!pass) ++failures;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? std::numeric_limits<double>::quiet_NaN() : s / static_cast<double>(v.size());
}

std::vector<const RunRecord*> select(const std::vector<RunRecord>& rs, const std::string& model,
                                     const std::string& strategy) {
  std::vector<const RunRecord*> out;
  for (const RunRecord& r : rs)
    if ((model.empty() || r.model == model) && (strategy.empty() || r.strategy == strategy)) out.push_back(&r);
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// 1. Chain domination over the desk suite.
void criterion1(const ExperimentPlan& plan, const SuiteResult& res, double seconds) {
  const double c = stability_constant(plan.base.filter);
  std::size_t expected = 0;
  for (const RunConfig& rc : plan.expand()) expected += static_cast<std::size_t>(rc.repeats);
  std::size_t checked = 0, violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const RunRecord& r : res.records) {
    if (!r.valid) continue;
    ++checked;
    const double links[] = {r.rel_output_distance - r.filter_distance, r.filter_distance - c * r.e2,
                            c * r.e2 - c * r.e1, c * r.e1 - c * r.thm_bound};
    for (double l : links) {
      worst = std::max(worst, l);
      if (l > kChainTol) ++violations;
    }
  }
  const std::size_t rows = res.records.size() + res.failures.size();
  std::string detail = std::to_string(rows) + "/" + std::to_string(expected) + " rows (" +
                       std::to_string(res.records.size()) + " records, " + std::to_string(res.failures.size()) +
                       " failure rows), " + std::to_string(checked) + " valid records, " +
                       std::to_string(violations) + " link violations, worst link excess " + fmt(worst) +
                       ", runtime " + fmt(seconds) + " s";
  for (const RunFailure& f : res.failures)
    std::cout << "  failure row: " << f.model << " " << f.strategy << " seed " << f.seed << ": " << f.message
              << "\n";
  verdict(1, rows == expected && violations == 0 && checked > 0 && seconds < kRuntimeLimitS, detail);
}

// 2. The three exact terms add up to the rows of |L_p - L|.
void criterion2() {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> nodes(2, 50);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int pair = 0; pair < 1000; ++pair) {
    const int n = nodes(gen);
    const Graph g = fixtures::random_connected(n, 0.3 * u(gen), gen);
    const Perturbation p = fixtures::random_perturbation(g, 0.4 * u(gen), 0.1 * u(gen), gen);
    const Graph gp = apply_perturbation(g, p);
    const SymMatrix e = error_matrix(normalized_laplacian(g), normalized_laplacian(gp));
    for (Node v = 0; v < n; ++v) {
      const double direct = e.dense().row(v).cwiseAbs().sum();
      worst = std::max(worst, std::abs(exact_row_terms(g, gp, v).total() - direct));
    }
  }
  verdict(2, worst <= kRowTol, "1000 pairs, max |terms - row sum| = " + fmt(worst));
}

// 3. Grid oracle for the two-degree lemma.
void criterion3() {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> deg(1, 50);
  int corner_misses = 0, excess = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 200; ++t) {
    const int du = deg(gen), dv = deg(gen);
    for (int k = 1; k <= 9; ++k) {
      const double a = k / 10.0;
      const Lemma1Result r = lemma1_oracle(du, dv, a);
      if (std::abs(r.du_shift + a * du) > kLemmaTol || std::abs(r.dv_shift + a * dv) > kLemmaTol) ++corner_misses;
      const double closed = (a / (1 - a)) / std::sqrt(static_cast<double>(du) * dv);
      worst = std::max(worst, r.value - closed);
      if (r.value > closed + kLemmaTol) ++excess;
    }
  }
  verdict(3, corner_misses == 0 && excess == 0,
          "1800 cases, " + std::to_string(corner_misses) + " argmax off the lower corner, " +
              std::to_string(excess) + " above the closed form, max(grid - closed) = " + fmt(worst));
}

// 4. Rewiring tightness.
void criterion4(const SuiteResult& res) {
  const BoundReport r = chain_bound(SpectralFilter::lowpass(1.0), fixtures::c6(),
                                    apply_perturbation(fixtures::c6(), fixtures::c6_rewire()));
  const bool tight = r.corollary && std::abs(r.e2 - 1.0) <= kRewireTol && std::abs(*r.corollary - 1.0) <= kRewireTol;
  const auto rewires = select(res.records, "", "Rewire");
  std::size_t bad = 0;
  for (const RunRecord* rr : rewires)
    if (rr->max_remaining != 0.0 || !rr->valid) ++bad;
  verdict(4, tight && !rewires.empty() && bad == 0,
          "C6 rewire E2 = " + fmt(r.e2) + ", corollary = " + (r.corollary ? fmt(*r.corollary) : "NA") + "; " +
              std::to_string(rewires.size()) + " Rewire records, " + std::to_string(bad) +
              " with a nonzero remaining term or invalid");
}

// 5. Filter distance against C * ||E||_2.
void criterion5(const SuiteResult& res) {
  std::mt19937_64 gen(55);
  std::uniform_int_distribution<int> nodes(5, 40);
  std::uniform_real_distribution<double> u(0.0, 1.0), coef(-1.0, 1.0);
  std::size_t cases = 0, violations = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  auto check = [&](const SpectralFilter& f, const Graph& g, const Graph& gp) {
    const BoundReport r = chain_bound(f, g, gp);
    ++cases;
    if (r.filter_distance > r.stability_constant * r.e2 + kPropTol) ++violations;
    if (r.filter_distance > 0) min_ratio = std::min(min_ratio, r.stability_constant * r.e2 / r.filter_distance);
  };
  for (int pair = 0; pair < 100; ++pair) {
    const Graph g = fixtures::random_connected(nodes(gen), 0.25 * u(gen), gen);
    const Graph gp = apply_perturbation(g, fixtures::random_perturbation(g, 0.3 * u(gen), 0.1 * u(gen), gen));
    for (double a : {0.5, 1.0, 2.0}) check(SpectralFilter::lowpass(a), g, gp);
    check(SpectralFilter::polynomial({coef(gen), coef(gen), coef(gen), coef(gen)}), g, gp);
  }
  double suite_min = std::numeric_limits<double>::infinity();
  for (const RunRecord& r : res.records)
    if (r.loose_fd_ce2) suite_min = std::min(suite_min, *r.loose_fd_ce2);
  verdict(5, violations == 0 && min_ratio >= 1.0 - kPropTol && suite_min >= 1.0 - kPropTol,
          std::to_string(cases) + " filter/pair cases, " + std::to_string(violations) +
              " violations, min C*E2/fd = " + fmt(min_ratio) + "; desk suite min = " + fmt(suite_min) +
              " (reference observation " + fmt(kReferenceLooseness) + ")");
}

// 6. PGD gradient against central differences.
void criterion6() {
  std::mt19937_64 gen(66);
  const int n = 20;
  const Graph g = fixtures::random_connected(n, 0.15, gen);
  Rng rng(67);
  std::normal_distribution<double> z;
  Signal y(n), x(n);
  for (int i = 0; i < n; ++i) y[i] = z(rng);
  for (int i = 0; i < n; ++i) x[i] = y[i] + z(rng);
  const PgdObjective obj(g, y, x, 1.0);
  std::uniform_real_distribution<double> u(0.05, 0.45);
  Eigen::VectorXd s(obj.num_pairs());
  for (int k = 0; k < obj.num_pairs(); ++k) s[k] = u(rng);
  const Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad;
  obj.loss_and_gradient(s, diag, grad);
  std::uniform_int_distribution<int> pick(0, obj.num_pairs() - 1);
  double worst = 0;
  for (int probe = 0; probe < 10; ++probe) {
    const int k = pick(rng);
    Eigen::VectorXd sp = s, sm = s;
    sp[k] += kGradStep;
    sm[k] -= kGradStep;
    const double fd = (obj.loss(sp, diag) - obj.loss(sm, diag)) / (2 * kGradStep);
    worst = std::max(worst, std::abs(grad[k] - fd) / std::abs(fd));
  }
  verdict(6, worst < kGradRelTol, "n=20, 10 coordinates, max relative error " + fmt(worst));
}

// 7. Strategy orderings on BA(n=50, m=3).
void criterion7(const SuiteResult& res) {
  auto means = [&](const std::string& strategy) {
    std::vector<double> e1, rod;
    for (const RunRecord* r : select(res.records, "BA", strategy)) {
      e1.push_back(r->e1);
      rod.push_back(r->rel_output_distance);
    }
    return std::make_tuple(mean(e1), mean(rod), e1.size());
  };
  const auto [robust_e1, robust_rod, robust_n] = means("Robust");
  const auto [ad_e1, ad_rod, ad_n] = means("AddDelete");
  const auto [pgd_e1, pgd_rod, pgd_n] = means("PGD");
  const bool complete = robust_n == 20 && ad_n == 20 && pgd_n == 20;
  verdict(7, complete && robust_e1 < ad_e1 && ad_e1 < pgd_e1 && pgd_rod > ad_rod,
          "mean E1 Robust " + fmt(robust_e1) + " < AddDelete " + fmt(ad_e1) + " < PGD " + fmt(pgd_e1) +
              "; mean rod PGD " + fmt(pgd_rod) + " > AddDelete " + fmt(ad_rod) + " (" + std::to_string(robust_n) +
              "/" + std::to_string(ad_n) + "/" + std::to_string(pgd_n) + " seeds)");
}

// 8. Generator calibration at n=100.
void criterion8() {
  auto spec = [](GraphModel m, std::uint64_t seed) {
    GenSpec s;
    s.model = m;
    s.n = 100;
    s.seed = seed;
    return s;
  };
  bool kreg_ok = true, ws_ok = true, assort_ok = true;
  double assort_min = 1;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph k = sample_connected(spec(GraphModel::KReg, seed));
    for (int d : k.degrees()) kreg_ok = kreg_ok && d == 3;
    const Graph w = sample_connected(spec(GraphModel::WS, seed));
    ws_ok = ws_ok && 2 * w.num_edges() == 4 * static_cast<std::size_t>(w.num_nodes());
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = degree_correlation(sample_connected(spec(GraphModel::Assortative, seed)));
    assort_ok = assort_ok && c && *c >= kAssortFloor;
    if (c) assort_min = std::min(assort_min, *c);
  }
  const Graph ba = sample_connected(spec(GraphModel::BA, 0));
  const bool ba_ok = 2 * ba.num_edges() == 582 && ba.num_nodes() == 100;
  std::vector<double> er;
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    er.push_back(summary_stats(sample_connected(spec(GraphModel::ER, seed))).mean_degree);
  const double er_mean = mean(er);
  const bool er_ok = er_mean >= kErLo && er_mean <= kErHi;
  verdict(8, kreg_ok && ws_ok && assort_ok && ba_ok && er_ok,
          std::string("KREG degrees all 3: ") + (kreg_ok ? "yes" : "no") + "; WS mean degree 4: " +
              (ws_ok ? "yes" : "no") + "; BA mean degree " + fmt(2.0 * ba.num_edges() / 100) +
              "; ASSORT min degree correlation " + fmt(assort_min) + " over 10 seeds; ER mean degree " +
              fmt(er_mean) + " over 50 samples");
}

// 9. Validity proportions.
void criterion9(const SuiteResult& desk) {
  const auto groups = aggregate(desk.records);
  double min_delete = 1, min_rewire = 1;
  for (const GroupSummary& g : groups) {
    if (g.strategy == "Delete") min_delete = std::min(min_delete, g.validity);
    if (g.strategy == "Rewire") min_rewire = std::min(min_rewire, g.validity);
  }
  RunConfig add;
  add.gen.model = GraphModel::BA;
  add.gen.n = 100;
  add.strategy = StrategyKind::Add;
  add.repeats = 100;
  const SuiteResult res = run_suite(add, 0);
  const double add_validity = res.records.empty() ? 1.0 : aggregate(res.records).front().validity;
  verdict(9, min_delete == 1.0 && min_rewire == 1.0 && res.failures.empty() && add_validity < 1.0,
          "min validity Delete " + fmt(min_delete) + ", Rewire " + fmt(min_rewire) + " across models; Add on BA(n=100) " +
              fmt(add_validity) + " over " + std::to_string(res.records.size()) + " seeds");
}

// 10. ||E||_1 and ||E||_2 correlate across random strategies at n=100. The
// pooled value over all six strategies is printed alongside, not asserted.
void criterion10() {
  ExperimentPlan plan = ExperimentPlan::desk();
  plan.base.gen.n = 100;
  const SuiteResult res = run_suite(plan.expand(), 0);
  auto is_random = [](const std::string& s) {
    return s == "Delete" || s == "Add" || s == "AddDelete" || s == "Rewire";
  };
  std::vector<double> e1, e2, rand1, rand2, six1, six2;
  for (const RunRecord& r : res.records) {
    if (!r.valid) continue;
    six1.push_back(r.e1);
    six2.push_back(r.e2);
    if (!is_random(r.strategy)) continue;
    e1.push_back(r.e1);
    e2.push_back(r.e2);
  }
  for (const RunRecord& r : res.records) {
    if (!is_random(r.strategy)) continue;
    rand1.push_back(r.e1);
    rand2.push_back(r.e2);
  }
  const auto r = pearson(e1, e2);
  const auto r_any = pearson(rand1, rand2);
  const auto r_six = pearson(six1, six2);
  auto show = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string("NA"); };
  const bool in_band = r && std::abs(*r - kReferenceCorr) <= kReferenceCorrBand;
  verdict(10, r && *r > kCorrFloor,
          "random strategies r(E1, E2) = " + show(r) + " over " + std::to_string(e1.size()) + " valid records (" +
              show(r_any) + " including invalid), " + (in_band ? "within " : "outside ") + fmt(kReferenceCorrBand) +
              " of the reference " + fmt(kReferenceCorr) + "; all six strategies pooled: " + show(r_six) + " over " +
              std::to_string(six1.size()) + " valid records");
}

void guarded(int id, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    verdict(id, false, std::string("threw: ") + e.what());
  }
}

}  // namespace

int main() {
  const ExperimentPlan desk = ExperimentPlan::desk();
  SuiteResult suite;
  double seconds = 0;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    suite = run_suite(desk.expand(), 0);
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  } catch (const std::exception& e) {
    std::cout << "desk suite threw: " << e.what() << "\n";
  }

  guarded(1, [&] { criterion1(desk, suite, seconds); });
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, [&] { criterion4(suite); });
  guarded(5, [&] { criterion5(suite); });
  guarded(6, criterion6);
  guarded(7, [&] { criterion7(suite); });
  guarded(8, criterion8);
  guarded(9, [&] { criterion9(suite); });
  guarded(10, criterion10);

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
