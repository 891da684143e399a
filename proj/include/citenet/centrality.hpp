#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "citenet/graph.hpp"
#include "citenet/snapshots.hpp"

namespace citenet {

enum class CentralityKind {
  degree,      // total degree (in + out on directed graphs)
  in_degree,   // directed only
  out_degree,  // directed only
  betweenness,
  closeness,
  pagerank,
  semi_local,
  volume,
  coreness,
};

const char* centrality_kind_name(CentralityKind k);
std::optional<CentralityKind> parse_centrality_kind(const std::string& name);
std::vector<CentralityKind> all_centrality_kinds();

enum class BetweennessNormalizer {
  undirected_pairs,  // (n-1)(n-2)/2, the default on every graph
  directed_pairs,    // (n-1)(n-2)
};

enum class ClosenessMode {
  strict,         // whole graph must be (strongly) connected
  per_component,  // component-local scores, isolated nodes 0
};

struct CentralityParams {
  double q = 0.15;       // pagerank teleport probability
  double tol = 1e-10;    // pagerank L1 convergence threshold
  int max_iter = 200;    // pagerank iteration cap
  int h = 2;             // volume-centrality radius
  int workers = 1;
  BetweennessNormalizer normalizer = BetweennessNormalizer::undirected_pairs;
  ClosenessMode closeness_mode = ClosenessMode::strict;
  bool distinct_degree = false;  // count distinct neighbors instead of edge endpoints
};

/// Scores for every node of one graph, in the graph's node order. Node
/// labels follow LabeledGraph::node_label.
struct CentralityTable {
  CentralityKind kind = CentralityKind::degree;
  CentralityParams params;
  std::vector<std::string> nodes;
  std::vector<double> scores;
  bool converged = true;  // pagerank convergence within max_iter
  int iterations = 0;     // pagerank iterations actually run

  std::optional<double> score_of(const std::string& node) const;
};

/// Raised by strict-mode closeness when some node cannot reach another;
/// names one offending pair deterministically.
struct DisconnectedGraphError : std::runtime_error {
  DisconnectedGraphError(std::string from, std::string to);
  std::string from_node;
  std::string to_node;
};

/// Computes one centrality over one graph.
///
/// Semantics:
///  - degree family: counts edge endpoints with multiplicity, a self-loop
///    adding 1 to in and out (2 undirected); normalized by n-1. With
///    params.distinct_degree, counts distinct neighbors and ignores
///    self-loops. in/out modes reject undirected graphs.
///  - betweenness/closeness: parallel edges collapse, self-loops are
///    ignored; directed graphs use directed shortest paths. Betweenness on
///    n < 3 is all zeros.
///  - pagerank: in-edge formulation with out-degree division; parallel
///    edges weight proportionally; dangling mass is redistributed
///    uniformly. Scores sum to 1.
///  - semi_local/volume/coreness: computed on the undirected simple view.
///  - every kind returns 0.0 at n = 1 except pagerank, which returns 1.0
///    (its invariants, sum 1 and min >= q/n, hold on every graph).
///
/// Throws std::invalid_argument for inapplicable modes and
/// DisconnectedGraphError for strict closeness on a disconnected graph.
CentralityTable compute_centrality(const LabeledGraph& g, CentralityKind kind,
                                   const CentralityParams& params = {});

/// Largest h such that at least h entries are >= h.
int h_index(std::span<const int> citation_counts);

struct CentralityOutcome {
  std::optional<CentralityTable> table;
  std::string error;  // set when the kind failed for this graph
};

using CentralityBatch =
    std::map<std::pair<int, CentralityKind>, CentralityOutcome>;

/// Computes every requested kind for every snapshot. A kind that fails on
/// one snapshot records its error and the batch continues; results are
/// identical to individual compute_centrality calls.
CentralityBatch all_centralities(const SnapshotSeries& series,
                                 const std::vector<CentralityKind>& kinds,
                                 const CentralityParams& params = {});

}  // namespace citenet
