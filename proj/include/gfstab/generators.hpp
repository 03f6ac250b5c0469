// Seeded random graph models and summary statistics.

#ifndef GFSTAB_GENERATORS_HPP
#define GFSTAB_GENERATORS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfstab/graph.hpp"

namespace gfstab {

using Rng = std::mt19937_64;

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GraphModel { ER, BA, WS, KReg, KNN, Assortative };

std::string to_string(GraphModel m);
GraphModel parse_graph_model(const std::string& s);
inline constexpr std::array<GraphModel, 6> kAllModels = {
    GraphModel::KReg, GraphModel::WS, GraphModel::KNN,
    GraphModel::ER,   GraphModel::Assortative, GraphModel::BA};

/// Model tag plus parameters. Probabilities left at 0 default to ln(n)/n.
struct GenSpec {
  GraphModel model = GraphModel::ER;
  int n = 100;
  double er_p = 0;
  int ba_m = 3;
  int ws_k = 4;
  double ws_p = 0.1;
  int kreg_k = 3;
  int knn_k = 3;
  double assort_base_p = 0;
  double assort_rewire_p = 1.0;
  double assort_threshold = 0.8;
  long assort_max_iterations = 1'000'000;
  std::uint64_t seed = 0;

  double effective_er_p() const;
  double effective_assort_base_p() const;
  /// Throws std::invalid_argument on inconsistent parameters.
  void validate() const;
};

Graph gen_er(int n, double p, Rng& rng);
/// Star on m+1 nodes grown by preferential attachment.
Graph gen_ba(int n, int m, Rng& rng);
Graph gen_ws(int n, int k, double p, Rng& rng);
/// Pairing construction with restarts; every node has degree exactly k.
Graph gen_kreg(int n, int k, Rng& rng);
Graph gen_knn(int n, int k, Rng& rng);
/// Union-of-directions k-nearest-neighbour graph over explicit 2-D points.
Graph knn_graph(const std::vector<std::array<double, 2>>& points, int k);

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge. Empty when the degree variance over edge endpoints is zero.
std::optional<double> degree_correlation(const Graph& g);

/// One assortative reconnection of the disjoint edges a and b: the two
/// highest-degree endpoints are joined, and the two lowest (ties broken by
/// node id). Returns the new pair of edges, or nothing when the endpoints
/// are not four distinct nodes or a new edge would duplicate one that
/// survives the deletion of a and b.
std::optional<std::pair<Edge, Edge>> xbs_reconnect(const Graph& g, Edge a, Edge b);

/// Rewires an (assumed connected) base graph with the XBS procedure until
/// the degree correlation reaches spec.assort_threshold. Throws
/// GenerationError on a degenerate degree sequence or when
/// spec.assort_max_iterations is exhausted.
Graph gen_assortative(const Graph& base, const GenSpec& spec, Rng& rng);

/// One draw from the model (no connectivity check, except that the
/// assortative model rejects disconnected ER bases before rewiring).
Graph generate(const GenSpec& spec, Rng& rng);

/// Draws from the model, seeded by spec.seed, until the sample is connected.
Graph sample_connected(const GenSpec& spec, int max_tries = 1000);

struct GraphStats {
  double mean_degree = 0;
  double degree_std = 0;
  double avg_shortest_path = 0;
  double diameter = 0;
  std::optional<double> degree_correlation;
};

/// Throws GraphError for disconnected graphs.
GraphStats summary_stats(const Graph& g);

}  // namespace gfstab

#endif  // GFSTAB_GENERATORS_HPP
