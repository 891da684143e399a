#include "citenet/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "citenet/table_io.hpp"

namespace citenet {

using nlohmann::json;

const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::author: return "author";
    case NodeKind::paper: return "paper";
    case NodeKind::country: return "country";
  }
  return "author";
}

const char* edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::citation: return "citation";
    case EdgeKind::collaboration: return "collaboration";
    case EdgeKind::authorship: return "authorship";
  }
  return "citation";
}

NodeId LabeledGraph::ensure_node(NodeKind kind, const std::string& key) {
  auto& index = index_[static_cast<int>(kind)];
  const auto it = index.find(key);
  if (it != index.end()) return it->second;
  const NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({key, kind});
  index.emplace(key, id);
  kind_mask_ |= static_cast<uint8_t>(1u << static_cast<int>(kind));
  return id;
}

std::optional<NodeId> LabeledGraph::find_node(NodeKind kind,
                                              const std::string& key) const {
  const auto& index = index_[static_cast<int>(kind)];
  const auto it = index.find(key);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

uint64_t LabeledGraph::pack_edge(NodeId src, NodeId dst, EdgeKind kind) const {
  NodeId a = src, b = dst;
  if (!directed_ && a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 34) | (static_cast<uint64_t>(b) << 2) |
         static_cast<uint64_t>(kind);
}

bool LabeledGraph::add_edge(NodeId src, NodeId dst, EdgeKind kind) {
  const bool needs_directed = kind != EdgeKind::collaboration;
  if (needs_directed != directed_)
    throw std::logic_error(std::string("edge kind ") + edge_kind_name(kind) +
                           " is illegal in a " +
                           (directed_ ? "directed" : "undirected") + " graph");
  if (src >= nodes_.size() || dst >= nodes_.size())
    throw std::logic_error("edge endpoint is not a node");
  if (!multigraph_) {
    if (!simple_guard_.insert(pack_edge(src, dst, kind)).second) return false;
  }
  edges_.push_back({src, dst, kind});
  return true;
}

size_t LabeledGraph::multiplicity(NodeId src, NodeId dst, EdgeKind kind) const {
  size_t count = 0;
  for (const auto& e : edges_) {
    if (e.kind != kind) continue;
    if (e.src == src && e.dst == dst) ++count;
    else if (!directed_ && e.src == dst && e.dst == src) ++count;
  }
  return count;
}

bool LabeledGraph::mixed_kinds() const {
  return (kind_mask_ & (kind_mask_ - 1)) != 0;
}

std::string LabeledGraph::node_label(NodeId id) const {
  const Node& n = nodes_[id];
  if (mixed_kinds()) return std::string(node_kind_name(n.kind)) + ":" + n.key;
  return n.key;
}

bool LabeledGraph::operator==(const LabeledGraph& other) const {
  return directed_ == other.directed_ && multigraph_ == other.multigraph_ &&
         nodes_ == other.nodes_ && edges_ == other.edges_;
}

// ---- exports ---------------------------------------------------------------

namespace {

// (src, dst, kind) -> multiplicity, in first-occurrence order.
std::vector<std::pair<LabeledGraph::Edge, size_t>> aggregated_edges(
    const LabeledGraph& g) {
  std::vector<std::pair<LabeledGraph::Edge, size_t>> out;
  std::map<std::tuple<NodeId, NodeId, EdgeKind>, size_t> seen;
  for (const auto& e : g.edges()) {
    const auto key = std::make_tuple(e.src, e.dst, e.kind);
    const auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, out.size());
      out.push_back({e, 1});
    } else {
      ++out[it->second].second;
    }
  }
  return out;
}

}  // namespace

std::string nodes_csv(const LabeledGraph& g) {
  std::ostringstream out;
  out << "key,kind\n";
  for (const auto& n : g.nodes())
    out << io::csv_escape(n.key) << ',' << node_kind_name(n.kind) << '\n';
  return out.str();
}

std::string edges_csv(const LabeledGraph& g) {
  std::ostringstream out;
  out << "source,target,kind,multiplicity\n";
  for (const auto& [e, mult] : aggregated_edges(g)) {
    out << io::csv_escape(g.node_label(e.src)) << ','
        << io::csv_escape(g.node_label(e.dst)) << ',' << edge_kind_name(e.kind)
        << ',' << mult << '\n';
  }
  return out.str();
}

std::string adjacency_json(const LabeledGraph& g) {
  json j;
  j["directed"] = g.directed();
  j["multigraph"] = g.multigraph();
  json nodes = json::array();
  for (const auto& n : g.nodes())
    nodes.push_back({{"key", n.key}, {"kind", node_kind_name(n.kind)}});
  j["nodes"] = std::move(nodes);
  json adjacency = json::object();
  for (NodeId u = 0; u < g.node_count(); ++u)
    adjacency[g.node_label(u)] = json::array();
  for (const auto& [e, mult] : aggregated_edges(g)) {
    adjacency[g.node_label(e.src)].push_back(
        {{"target", g.node_label(e.dst)},
         {"kind", edge_kind_name(e.kind)},
         {"multiplicity", mult}});
  }
  j["adjacency"] = std::move(adjacency);
  return j.dump(2);
}

std::string graph_to_json(const LabeledGraph& g) {
  json j;
  j["directed"] = g.directed();
  j["multigraph"] = g.multigraph();
  json nodes = json::array();
  for (const auto& n : g.nodes())
    nodes.push_back({n.key, static_cast<int>(n.kind)});
  j["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back({e.src, e.dst, static_cast<int>(e.kind)});
  j["edges"] = std::move(edges);
  return j.dump();
}

LabeledGraph graph_from_json(const std::string& text) {
  const json j = json::parse(text);
  LabeledGraph g(j.at("directed").get<bool>(), j.at("multigraph").get<bool>());
  for (const auto& n : j.at("nodes")) {
    const int kind = n.at(1).get<int>();
    if (kind < 0 || kind > 2) throw std::runtime_error("bad node kind");
    g.ensure_node(static_cast<NodeKind>(kind), n.at(0).get<std::string>());
  }
  for (const auto& e : j.at("edges")) {
    const int kind = e.at(2).get<int>();
    if (kind < 0 || kind > 2) throw std::runtime_error("bad edge kind");
    g.add_edge(e.at(0).get<NodeId>(), e.at(1).get<NodeId>(),
               static_cast<EdgeKind>(kind));
  }
  return g;
}

}  // namespace citenet
