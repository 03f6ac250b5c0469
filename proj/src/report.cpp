#include "gfstab/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace gfstab {

namespace {

using Getter = std::function<std::optional<double>(const RunRecord&)>;

const std::vector<std::pair<std::string, Getter>>& getters() {
  static const std::vector<std::pair<std::string, Getter>> table = {
      {"seed", [](const RunRecord& r) { return std::optional<double>(static_cast<double>(r.seed)); }},
      {"n", [](const RunRecord& r) { return std::optional<double>(r.n); }},
      {"m", [](const RunRecord& r) { return std::optional<double>(r.m); }},
      {"budget", [](const RunRecord& r) { return std::optional<double>(r.budget); }},
      {"valid", [](const RunRecord& r) { return std::optional<double>(r.valid ? 1.0 : 0.0); }},
      {"E1", [](const RunRecord& r) { return std::optional<double>(r.e1); }},
      {"E2", [](const RunRecord& r) { return std::optional<double>(r.e2); }},
      {"thm_bound", [](const RunRecord& r) { return std::optional<double>(r.thm_bound); }},
      {"corollary_bound", [](const RunRecord& r) { return r.corollary_bound; }},
      {"chain_bound", [](const RunRecord& r) { return std::optional<double>(r.chain_bound); }},
      {"filter_distance", [](const RunRecord& r) { return std::optional<double>(r.filter_distance); }},
      {"rel_output_distance", [](const RunRecord& r) { return std::optional<double>(r.rel_output_distance); }},
      {"loose_rod_fd", [](const RunRecord& r) { return r.loose_rod_fd; }},
      {"loose_fd_CE2", [](const RunRecord& r) { return r.loose_fd_ce2; }},
      {"loose_E2_E1", [](const RunRecord& r) { return r.loose_e2_e1; }},
      {"loose_E1_thm", [](const RunRecord& r) { return r.loose_e1_thm; }},
      {"mean_degree", [](const RunRecord& r) { return std::optional<double>(r.mean_degree); }},
      {"degree_std", [](const RunRecord& r) { return std::optional<double>(r.degree_std); }},
      {"aspl", [](const RunRecord& r) { return std::optional<double>(r.aspl); }},
      {"diameter", [](const RunRecord& r) { return std::optional<double>(r.diameter); }},
      {"degree_corr", [](const RunRecord& r) { return r.degree_corr; }},
      {"wall_ms", [](const RunRecord& r) { return std::optional<double>(r.wall_ms); }},
  };
  return table;
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, get] : getters()) v.push_back(name);
    return v;
  }();
  return names;
}

std::optional<double> metric_value(const RunRecord& r, const std::string& metric) {
  for (const auto& [name, get] : getters())
    if (name == metric) return get(r);
  throw std::invalid_argument("unknown metric '" + metric + "'");
}

Quartiles quartiles(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("quartiles of an empty sample");
  std::sort(v.begin(), v.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return {v.size(), v.front(), at(0.25), at(0.5), at(0.75), v.back()};
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0) || !(syy > 0)) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

const Quartiles* GroupSummary::metric(const std::string& name) const {
  for (const auto& [m, q] : metrics)
    if (m == name) return q ? &*q : nullptr;
  return nullptr;
}

const std::vector<std::string>& summary_metrics() {
  static const std::vector<std::string> names = {
      "E1", "E2", "thm_bound", "filter_distance", "rel_output_distance",
      "loose_rod_fd", "loose_fd_CE2", "loose_E2_E1", "loose_E1_thm"};
  return names;
}

std::vector<GroupSummary> aggregate(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : records) {
    auto key = std::make_pair(r.model, r.strategy);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::vector<GroupSummary> out;
  for (const auto& key : order) {
    const auto& rows = groups[key];
    GroupSummary s;
    s.model = key.first;
    s.strategy = key.second;
    s.runs = rows.size();
    std::vector<double> e1, e2;
    for (const RunRecord* r : rows) {
      if (!r->valid) continue;
      ++s.valid_runs;
      e1.push_back(r->e1);
      e2.push_back(r->e2);
    }
    s.validity = static_cast<double>(s.valid_runs) / static_cast<double>(s.runs);
    for (const std::string& m : summary_metrics()) {
      std::vector<double> vals;
      for (const RunRecord* r : rows)
        if (auto v = metric_value(*r, m)) vals.push_back(*v);
      s.metrics.emplace_back(m, vals.empty() ? std::nullopt : std::optional<Quartiles>(quartiles(vals)));
    }
    s.corr_e1_e2 = pearson(e1, e2);
    out.push_back(std::move(s));
  }
  return out;
}

void write_summary(std::ostream& os, const std::vector<GroupSummary>& groups) {
  os << "model,strategy,runs,valid_runs,validity,corr_E1_E2";
  for (const std::string& m : summary_metrics())
    os << ',' << m << "_q1," << m << "_median," << m << "_q3";
  os << "\n";
  for (const GroupSummary& g : groups) {
    os << g.model << ',' << g.strategy << ',' << g.runs << ',' << g.valid_runs << ','
       << fmt(g.validity, 17) << ',' << (g.corr_e1_e2 ? fmt(*g.corr_e1_e2, 17) : "");
    for (const auto& [m, q] : g.metrics) {
      if (q) os << ',' << fmt(q->q1, 17) << ',' << fmt(q->median, 17) << ',' << fmt(q->q3, 17);
      else os << ",,,";
    }
    os << "\n";
  }
}

void render_boxplot(std::ostream& os, const std::vector<RunRecord>& records,
                    const std::string& metric, const BoxplotOptions& opts) {
  metric_value(RunRecord{}, metric);  // reject unknown names early

  std::vector<std::string> labels;
  std::map<std::string, std::vector<double>> data;
  for (const RunRecord& r : records) {
    const std::string label = r.model + " / " + r.strategy;
    if (!data.count(label)) labels.push_back(label);
    auto& bucket = data[label];
    if (auto v = metric_value(r, metric)) bucket.push_back(*v);
  }

  struct Box {
    std::string label;
    std::optional<Quartiles> q;
    double lo = 0, hi = 0;
    std::vector<double> outliers;
  };
  std::vector<Box> boxes;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const std::string& label : labels) {
    Box b{label, std::nullopt, 0, 0, {}};
    const auto& vals = data[label];
    if (!vals.empty()) {
      Quartiles q = quartiles(vals);
      const double iqr = q.q3 - q.q1;
      const double fence_lo = q.q1 - 1.5 * iqr, fence_hi = q.q3 + 1.5 * iqr;
      b.lo = q.q3;
      b.hi = q.q1;
      for (double v : vals) {
        if (v < fence_lo || v > fence_hi) {
          b.outliers.push_back(v);
        } else {
          b.lo = std::min(b.lo, v);
          b.hi = std::max(b.hi, v);
        }
      }
      b.lo = std::min(b.lo, q.q1);
      b.hi = std::max(b.hi, q.q3);
      b.q = q;
      ymin = std::min(ymin, b.lo);
      ymax = std::max(ymax, b.hi);
      if (opts.show_outliers)
        for (double v : b.outliers) {
          ymin = std::min(ymin, v);
          ymax = std::max(ymax, v);
        }
    }
    boxes.push_back(std::move(b));
  }
  if (!(ymin <= ymax)) {
    ymin = 0;
    ymax = 1;
  }
  if (ymax - ymin < 1e-12 * std::max(1.0, std::abs(ymax))) {
    const double pad = std::max(1e-9, 0.05 * std::abs(ymax));
    ymin -= pad;
    ymax += pad;
  }

  const double left = 70, right = 20, top = 40, bottom = 140;
  const double w = opts.width, h = opts.height;
  const double plot_w = w - left - right, plot_h = h - top - bottom;
  auto ypix = [&](double v) { return top + plot_h * (ymax - v) / (ymax - ymin); };
  const double slot = boxes.empty() ? plot_w : plot_w / static_cast<double>(boxes.size());

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << xml_escape(opts.title.empty() ? metric : opts.title) << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
     << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = ymin + (ymax - ymin) * t / 4.0;
    const double y = ypix(v);
    os << "<line x1=\"" << left - 4 << "\" y1=\"" << y << "\" x2=\"" << left + plot_w << "\" y2=\"" << y
       << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << y + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v, 4) << "</text>\n";
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const Box& b = boxes[i];
    const double cx = left + slot * (static_cast<double>(i) + 0.5);
    const double half = std::min(20.0, slot * 0.3);
    os << "<g class=\"box\" data-label=\"" << xml_escape(b.label) << "\">\n";
    if (b.q) {
      const Quartiles& q = *b.q;
      os << "<line x1=\"" << cx << "\" y1=\"" << ypix(b.lo) << "\" x2=\"" << cx << "\" y2=\"" << ypix(b.hi)
         << "\" stroke=\"black\"/>\n";
      os << "<rect x=\"" << cx - half << "\" y=\"" << ypix(q.q3) << "\" width=\"" << 2 * half
         << "\" height=\"" << ypix(q.q1) - ypix(q.q3)
         << "\" fill=\"#9ecae1\" stroke=\"black\" data-q1=\"" << fmt(q.q1, 17) << "\" data-q3=\""
         << fmt(q.q3, 17) << "\"/>\n";
      os << "<line x1=\"" << cx - half << "\" y1=\"" << ypix(q.median) << "\" x2=\"" << cx + half
         << "\" y2=\"" << ypix(q.median) << "\" stroke=\"black\" stroke-width=\"2\" data-median=\""
         << fmt(q.median, 17) << "\"/>\n";
      if (opts.show_outliers)
        for (double v : b.outliers)
          os << "<circle class=\"outlier\" cx=\"" << cx << "\" cy=\"" << ypix(v)
             << "\" r=\"2.5\" fill=\"none\" stroke=\"black\"/>\n";
    }
    os << "<text transform=\"translate(" << cx << ',' << top + plot_h + 10
       << ") rotate(60)\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(b.label)
       << "</text>\n</g>\n";
  }
  os << "</svg>\n";
}

void render_boxplot(const std::string& path, const std::vector<RunRecord>& records,
                    const std::string& metric, const BoxplotOptions& opts) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  render_boxplot(f, records, metric, opts);
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace gfstab
