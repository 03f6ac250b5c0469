#include "gfstab/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

namespace gfstab {

namespace {

// Next non-blank, non-comment line; false at EOF.
bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for reading");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  return f;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError("empty edge list");
  long n = 0, m = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> n >> m) || n < 0 || m < 0) fail(lineno, "expected header 'n m'");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (next_line(in, line, lineno)) {
    std::istringstream ls(line);
    long u = 0, v = 0;
    if (!(ls >> u >> v)) fail(lineno, "expected 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) fail(lineno, "node id out of range");
    if (u == v) fail(lineno, "self-loop at node " + std::to_string(u));
    edges.emplace_back(static_cast<Node>(u), static_cast<Node>(v));
  }
  if (static_cast<long>(edges.size()) != m) {
    throw ParseError("header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw ParseError("duplicate edge " + to_string(*dup));
  return Graph(static_cast<int>(n), edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Perturbation read_perturbation(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<Edge> add, del;
  while (next_line(in, line, lineno)) {
    std::istringstream ls(line);
    char sign = 0;
    long u = 0, v = 0;
    if (!(ls >> sign >> u >> v) || (sign != '+' && sign != '-'))
      fail(lineno, "expected '+ u v' or '- u v'");
    if (u < 0 || v < 0) fail(lineno, "negative node id");
    if (u == v) fail(lineno, "self-loop");
    (sign == '+' ? add : del).emplace_back(static_cast<Node>(u), static_cast<Node>(v));
  }
  Perturbation p(std::move(add), std::move(del));
  for (const Edge& e : p.added)
    if (std::binary_search(p.deleted.begin(), p.deleted.end(), e))
      throw ParseError("edge " + to_string(e) + " is both added and deleted");
  return p;
}

void write_perturbation(std::ostream& out, const Perturbation& p) {
  for (const Edge& e : p.added) out << "+ " << e.u << ' ' << e.v << '\n';
  for (const Edge& e : p.deleted) out << "- " << e.u << ' ' << e.v << '\n';
}

Eigen::VectorXd read_signal(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<double> values;
  while (next_line(in, line, lineno)) {
    std::istringstream ls(line);
    double v = 0;
    if (!(ls >> v) || !std::isfinite(v)) fail(lineno, "expected a finite real");
    values.push_back(v);
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_signal(std::ostream& out, const Eigen::VectorXd& x) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < x.size(); ++i) out << x[i] << '\n';
}

Graph load_edge_list(const std::string& path) {
  auto f = open_in(path);
  return read_edge_list(f);
}

void save_edge_list(const std::string& path, const Graph& g) {
  auto f = open_out(path);
  write_edge_list(f, g);
}

Perturbation load_perturbation(const std::string& path) {
  auto f = open_in(path);
  return read_perturbation(f);
}

void save_perturbation(const std::string& path, const Perturbation& p) {
  auto f = open_out(path);
  write_perturbation(f, p);
}

Eigen::VectorXd load_signal(const std::string& path) {
  auto f = open_in(path);
  return read_signal(f);
}

void save_signal(const std::string& path, const Eigen::VectorXd& x) {
  auto f = open_out(path);
  write_signal(f, x);
}

}  // namespace gfstab
