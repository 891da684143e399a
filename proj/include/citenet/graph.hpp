#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace citenet {

enum class NodeKind : uint8_t { author, paper, country };
enum class EdgeKind : uint8_t { citation, collaboration, authorship };

const char* node_kind_name(NodeKind k);
const char* edge_kind_name(EdgeKind k);

using NodeId = uint32_t;

/// Directed or undirected labeled graph. Nodes are (kind, key) pairs; edge
/// multiplicity is representable (parallel edges are stored as repeated
/// entries). Node and edge storage preserve insertion order, which makes
/// builds reproducible bit-for-bit.
///
/// Edge-kind legality is enforced on insertion: collaboration edges may only
/// appear in undirected graphs, citation and authorship edges only in
/// directed ones.
class LabeledGraph {
 public:
  struct Node {
    std::string key;
    NodeKind kind;
    bool operator==(const Node&) const = default;
  };
  struct Edge {
    NodeId src;
    NodeId dst;
    EdgeKind kind;
    bool operator==(const Edge&) const = default;
  };

  LabeledGraph(bool directed, bool multigraph)
      : directed_(directed), multigraph_(multigraph) {}

  bool directed() const { return directed_; }
  bool multigraph() const { return multigraph_; }

  size_t node_count() const { return nodes_.size(); }
  /// Edge count including multiplicity.
  size_t edge_count() const { return edges_.size(); }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Node& node(NodeId id) const { return nodes_[id]; }

  /// Returns the node's id, inserting it if new.
  NodeId ensure_node(NodeKind kind, const std::string& key);
  std::optional<NodeId> find_node(NodeKind kind, const std::string& key) const;

  /// Adds an edge. In a simple graph a duplicate (src, dst, kind) is a
  /// silent no-op and the call returns false; undirected duplicates are
  /// detected irrespective of endpoint order. Throws std::logic_error when
  /// the edge kind is illegal for the graph's direction.
  bool add_edge(NodeId src, NodeId dst, EdgeKind kind);

  /// Total multiplicity of (src, dst, kind) edges (order-insensitive for
  /// undirected graphs).
  size_t multiplicity(NodeId src, NodeId dst, EdgeKind kind) const;

  /// True when nodes of more than one kind are present.
  bool mixed_kinds() const;

  /// Display label: the bare key, or "kind:key" in mixed-kind graphs.
  std::string node_label(NodeId id) const;

  bool operator==(const LabeledGraph& other) const;

 private:
  uint64_t pack_edge(NodeId src, NodeId dst, EdgeKind kind) const;

  bool directed_;
  bool multigraph_;
  uint8_t kind_mask_ = 0;  // bit per NodeKind present
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, NodeId> index_[3];  // one map per NodeKind
  std::unordered_set<uint64_t> simple_guard_;         // populated iff !multigraph_
};

/// CSV/JSON export. Edge rows aggregate parallel edges into a multiplicity
/// column, in first-occurrence order.
std::string nodes_csv(const LabeledGraph& g);
std::string edges_csv(const LabeledGraph& g);
std::string adjacency_json(const LabeledGraph& g);

/// Lossless serialization used by the snapshot cache.
std::string graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const std::string& text);

}  // namespace citenet
