// Plain-text formats.
//
//   edge list:     "n m" header, then m lines "u v" (0-indexed, u < v)
//   perturbation:  lines "+ u v" (added) and "- u v" (deleted)
//   signal:        one real value per line
//
// Lines starting with '#' and blank lines are ignored by every reader.

#ifndef GFSTAB_IO_HPP
#define GFSTAB_IO_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "gfstab/graph.hpp"

namespace gfstab {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

Perturbation read_perturbation(std::istream& in);
void write_perturbation(std::ostream& out, const Perturbation& p);

Eigen::VectorXd read_signal(std::istream& in);
void write_signal(std::ostream& out, const Eigen::VectorXd& x);

// File-path conveniences; throw std::runtime_error when the file cannot be
// opened.
Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);
Perturbation load_perturbation(const std::string& path);
void save_perturbation(const std::string& path, const Perturbation& p);
Eigen::VectorXd load_signal(const std::string& path);
void save_signal(const std::string& path, const Eigen::VectorXd& x);

}  // namespace gfstab

#endif  // GFSTAB_IO_HPP
