#pragma once

#include <climits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citenet/geo.hpp"
#include "citenet/graph.hpp"
#include "citenet/ingest.hpp"

namespace citenet {

/// The five graph datasets derivable from a record corpus.
enum class GraphKind {
  author_citation,      // directed multigraph, self-loops legal
  collaboration,        // undirected simple graph
  paper_citation,       // directed simple graph
  author_paper,         // directed, authorship + citation edges
  country_citation,     // directed multigraph over countries
};

const char* graph_kind_name(GraphKind k);  // "ACi", "ACo", "PC", "APC", "CC"
std::optional<GraphKind> parse_graph_kind(const std::string& name);

struct BuildStats {
  size_t skipped_references = 0;   // references to ids absent at fold time
  size_t self_references = 0;      // records listing their own id
  size_t unresolved_citing_authors = 0;  // country graph only
  std::vector<std::string> diagnostics;

  void merge(const BuildStats& other);
};

/// Incremental graph construction. Years must be fed in ascending order;
/// a year's own records become resolvable reference targets before that
/// year's references are processed, so same-year citations connect.
///
/// Folding years 1..k and snapshotting gives bit-identical results to a
/// fresh fold of years 1..k.
class GraphBuilder {
 public:
  virtual ~GraphBuilder() = default;

  void add_year(int year, std::span<const PaperRecord> records);

  /// Discards accumulated nodes and edges but keeps the resolution state
  /// (paper -> authors/countries tables, author history). Lets a caller emit
  /// single-year graphs whose references still resolve against everything
  /// folded so far.
  void reset_graph() { graph_ = LabeledGraph(directed_, multigraph_); }

  const LabeledGraph& graph() const { return graph_; }
  const BuildStats& stats() const { return stats_; }

 protected:
  GraphBuilder(bool directed, bool multigraph)
      : graph_(directed, multigraph),
        directed_(directed),
        multigraph_(multigraph) {}

  virtual void fold_year(int year, std::span<const PaperRecord> records) = 0;

  LabeledGraph graph_;
  BuildStats stats_;
  int last_year_ = INT_MIN;

 private:
  bool directed_;
  bool multigraph_;
};

/// `curated` is required for the country graph (its author occurrences run
/// through the inference cascade with a fresh past_table) and ignored
/// otherwise.
std::unique_ptr<GraphBuilder> make_builder(
    GraphKind kind, const geo::CountryLookup* curated = nullptr);

/// One-shot build over all buckets, ascending.
LabeledGraph build_graph(GraphKind kind, const YearBuckets& buckets,
                         BuildStats* stats = nullptr,
                         const geo::CountryLookup* curated = nullptr);

}  // namespace citenet
